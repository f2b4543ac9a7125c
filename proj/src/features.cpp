#include "texlbp/features.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace texlbp {

namespace {

constexpr std::string_view kStoreHeader = "texlbp-features v1";

std::string format_value(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(text.substr(start));
            return out;
        }
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

}  // namespace

Histogram normalize_l1(const Histogram& h) {
    const double total = std::accumulate(h.bins.begin(), h.bins.end(), 0.0);
    if (!(total > 0.0)) throw std::invalid_argument("cannot normalize an all-zero histogram");
    Histogram out;
    out.config = h.config;
    out.normalized = true;
    out.bins.resize(h.bins.size());
    for (std::size_t i = 0; i < h.bins.size(); ++i) out.bins[i] = h.bins[i] / total;
    return out;
}

FeatureVector extract_multi(const GrayImage& img, std::span<const LbpOperator> ops) {
    if (ops.empty()) throw std::invalid_argument("need at least one LBP configuration");
    FeatureVector fv;
    for (const LbpOperator& op : ops) {
        const Histogram h = normalize_l1(op.histogram(img));
        fv.layout.push_back({op.config(), fv.values.size(), h.bins.size()});
        fv.values.insert(fv.values.end(), h.bins.begin(), h.bins.end());
    }
    return fv;
}

FeatureVector extract_multi(const GrayImage& img, const std::vector<LbpConfig>& configs) {
    if (configs.empty()) throw std::invalid_argument("need at least one LBP configuration");
    std::vector<LbpOperator> ops;
    ops.reserve(configs.size());
    for (const LbpConfig& cfg : configs) ops.emplace_back(cfg);
    return extract_multi(img, ops);
}

bool layout_matches(const FeatureVector& v, const std::vector<LbpConfig>& configs) {
    if (v.layout.size() != configs.size()) return false;
    std::size_t offset = 0;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        const FeatureSegment& seg = v.layout[i];
        if (seg.config != configs[i] || seg.offset != offset ||
            seg.length != bin_count(configs[i]))
            return false;
        offset += seg.length;
    }
    return offset == v.values.size();
}

FeatureStore make_store(std::vector<LbpConfig> configs, std::vector<FeatureSample> samples) {
    if (configs.empty()) throw std::invalid_argument("feature store needs at least one config");
    for (const FeatureSample& s : samples)
        if (!layout_matches(s.features, configs))
            throw std::invalid_argument("sample '" + s.source +
                                        "' does not match the store layout");
    std::set<std::string> names;
    for (const FeatureSample& s : samples) names.insert(s.label);
    FeatureStore store;
    store.configs = std::move(configs);
    store.samples = std::move(samples);
    store.class_names.assign(names.begin(), names.end());
    return store;
}

std::string format_configs(const std::vector<LbpConfig>& configs) {
    std::string out;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        if (i) out += ';';
        out += to_string(configs[i]);
    }
    return out;
}

std::vector<LbpConfig> parse_configs(std::string_view text) {
    std::vector<LbpConfig> out;
    for (std::string_view part : split(text, ';')) {
        if (part.empty())
            throw std::invalid_argument("empty entry in config list '" + std::string(text) + "'");
        out.push_back(parse_lbp_config(part));
    }
    return out;
}

namespace {

std::string columns_line(std::size_t dims) {
    return "columns=label,source,v0..v" + std::to_string(dims - 1);
}

std::size_t total_dims(const std::vector<LbpConfig>& configs) {
    std::size_t n = 0;
    for (const LbpConfig& cfg : configs) n += bin_count(cfg);
    return n;
}

}  // namespace

void write_store(const FeatureStore& store, const std::filesystem::path& path) {
    if (store.samples.empty())
        throw std::invalid_argument("refusing to write an empty feature store");
    for (const FeatureSample& s : store.samples) {
        if (s.label.empty() || s.label.find_first_of(",\n") != std::string::npos)
            throw std::invalid_argument("label not representable in the store format: '" +
                                        s.label + "'");
        if (s.source.find_first_of(",\n") != std::string::npos)
            throw std::invalid_argument("source path not representable in the store format: '" +
                                        s.source + "'");
    }

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write feature store: " + path.string());
    out << kStoreHeader << '\n';
    out << "configs=" << format_configs(store.configs) << '\n';
    out << columns_line(total_dims(store.configs)) << '\n';
    for (const FeatureSample& s : store.samples) {
        out << s.label << ',' << s.source;
        for (const double v : s.features.values) out << ',' << format_value(v);
        out << '\n';
    }
    out.flush();
    if (!out) throw std::runtime_error("failed writing feature store: " + path.string());
}

FeatureStore read_store(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open feature store: " + path.string());
    const std::string name = path.string();

    auto fail = [&](std::size_t line_no, const std::string& what) -> std::runtime_error {
        return std::runtime_error(name + ": line " + std::to_string(line_no) + ": " + what);
    };

    std::string line;
    if (!std::getline(in, line)) throw fail(1, "empty file");
    if (line != kStoreHeader)
        throw fail(1, "unsupported store version (expected '" + std::string(kStoreHeader) +
                          "', got '" + line + "')");

    if (!std::getline(in, line) || !line.starts_with("configs="))
        throw fail(2, "missing configs line");
    std::vector<LbpConfig> configs;
    try {
        configs = parse_configs(std::string_view(line).substr(8));
    } catch (const std::invalid_argument& e) {
        throw fail(2, e.what());
    }
    const std::size_t dims = total_dims(configs);

    if (!std::getline(in, line)) throw fail(3, "missing columns line");
    if (line != columns_line(dims))
        throw fail(3, "column count inconsistent with declared configs (expected '" +
                          columns_line(dims) + "', got '" + line + "')");

    std::vector<FeatureSegment> layout;
    std::size_t offset = 0;
    for (const LbpConfig& cfg : configs) {
        const std::size_t len = bin_count(cfg);
        layout.push_back({cfg, offset, len});
        offset += len;
    }

    std::vector<FeatureSample> samples;
    std::size_t line_no = 3;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::vector<std::string_view> fields = split(line, ',');
        if (fields.size() != dims + 2)
            throw fail(line_no, "expected " + std::to_string(dims + 2) + " fields, got " +
                                    std::to_string(fields.size()));
        FeatureSample s;
        s.label = std::string(fields[0]);
        s.source = std::string(fields[1]);
        if (s.label.empty()) throw fail(line_no, "empty label");
        s.features.layout = layout;
        s.features.values.resize(dims);
        for (std::size_t i = 0; i < dims; ++i) {
            const std::string_view f = fields[i + 2];
            auto res = std::from_chars(f.data(), f.data() + f.size(), s.features.values[i]);
            if (res.ec != std::errc{} || res.ptr != f.data() + f.size())
                throw fail(line_no, "bad value in column v" + std::to_string(i) + ": '" +
                                        std::string(f) + "'");
        }
        samples.push_back(std::move(s));
    }
    return make_store(std::move(configs), std::move(samples));
}

}  // namespace texlbp
