#include "texlbp/image.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "texlbp/parallel.hpp"

namespace texlbp {

namespace fs = std::filesystem;

GrayImage::GrayImage(int w, int h, std::vector<std::uint8_t> px)
    : width(w), height(h), pixels(std::move(px)) {
    if (w < 1 || h < 1)
        throw std::invalid_argument("image dimensions must be positive");
    if (pixels.size() != static_cast<std::size_t>(w) * h)
        throw std::invalid_argument("pixel buffer size does not match dimensions");
}

GrayImage GrayImage::filled(int w, int h, std::uint8_t value) {
    return GrayImage(w, h, std::vector<std::uint8_t>(static_cast<std::size_t>(w) * h, value));
}

std::uint8_t to_grayscale(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    // exact decimal arithmetic: round half away from zero on q/1000
    const int q = 299 * r + 587 * g + 114 * b;
    const int v = (q + 500) / 1000;
    return static_cast<std::uint8_t>(std::min(v, 255));
}

namespace {

class PnmParser {
public:
    PnmParser(std::string data, std::string name)
        : data_(std::move(data)), name_(std::move(name)) {}

    GrayImage parse() {
        if (data_.size() < 2 || data_[0] != 'P' || !is_pnm_digit(data_[1]))
            fail("unrecognized magic number");
        const char kind = data_[1];
        pos_ = 2;
        const int width = next_int("width");
        const int height = next_int("height");
        if (width < 1 || height < 1) fail("non-positive dimensions");
        const int maxval = next_int("maxval");
        if (maxval != 255)
            fail("unsupported maxval " + std::to_string(maxval) + " (expected 255)");

        const std::size_t count = static_cast<std::size_t>(width) * height;
        std::vector<std::uint8_t> px(count);
        switch (kind) {
            case '5':
                read_binary(px.data(), count);
                break;
            case '2':
                for (std::size_t i = 0; i < count; ++i) px[i] = next_sample();
                break;
            case '6': {
                std::vector<std::uint8_t> rgb(count * 3);
                read_binary(rgb.data(), rgb.size());
                for (std::size_t i = 0; i < count; ++i)
                    px[i] = to_grayscale(rgb[3 * i], rgb[3 * i + 1], rgb[3 * i + 2]);
                break;
            }
            case '3':
                for (std::size_t i = 0; i < count; ++i) {
                    const std::uint8_t r = next_sample();
                    const std::uint8_t g = next_sample();
                    const std::uint8_t b = next_sample();
                    px[i] = to_grayscale(r, g, b);
                }
                break;
            default:
                fail("unrecognized magic number");
        }
        return GrayImage(width, height, std::move(px));
    }

private:
    static bool is_pnm_digit(char c) { return c >= '1' && c <= '6'; }

    [[noreturn]] void fail(const std::string& what) const {
        throw std::runtime_error(name_ + ": " + what);
    }

    void skip_space_and_comments() {
        while (pos_ < data_.size()) {
            const char c = data_[pos_];
            if (c == '#') {
                while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    int next_int(const char* field) {
        skip_space_and_comments();
        if (pos_ >= data_.size() || !std::isdigit(static_cast<unsigned char>(data_[pos_])))
            fail(std::string("malformed header: missing ") + field);
        long value = 0;
        while (pos_ < data_.size() && std::isdigit(static_cast<unsigned char>(data_[pos_]))) {
            value = value * 10 + (data_[pos_] - '0');
            if (value > 1'000'000'000L) fail(std::string("header value out of range: ") + field);
            ++pos_;
        }
        return static_cast<int>(value);
    }

    std::uint8_t next_sample() {
        skip_space_and_comments();
        if (pos_ >= data_.size() || !std::isdigit(static_cast<unsigned char>(data_[pos_])))
            fail("truncated pixel data");
        int value = 0;
        while (pos_ < data_.size() && std::isdigit(static_cast<unsigned char>(data_[pos_]))) {
            value = value * 10 + (data_[pos_] - '0');
            if (value > 255) fail("pixel value out of range");
            ++pos_;
        }
        return static_cast<std::uint8_t>(value);
    }

    void read_binary(std::uint8_t* out, std::size_t n) {
        // exactly one whitespace byte separates the maxval from the raster
        if (pos_ >= data_.size() || !std::isspace(static_cast<unsigned char>(data_[pos_])))
            fail("malformed header: missing raster separator");
        ++pos_;
        if (data_.size() - pos_ < n) fail("truncated pixel data");
        std::memcpy(out, data_.data() + pos_, n);
        pos_ += n;
    }

    std::string data_;
    std::string name_;
    std::size_t pos_ = 0;
};

}  // namespace

GrayImage load_image(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open image file: " + path.string());
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return PnmParser(std::move(data), path.string()).parse();
}

void write_pgm(const GrayImage& img, const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write image file: " + path.string());
    out << "P5\n" << img.width << ' ' << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
    out.flush();
    if (!out) throw std::runtime_error("failed writing image file: " + path.string());
}

std::vector<LabeledImage> load_dataset(const fs::path& root, int threads, const WarnFn& warn) {
    if (!fs::is_directory(root))
        throw std::runtime_error("dataset root is not a directory: " + root.string());

    std::vector<fs::path> class_dirs;
    for (const auto& entry : fs::directory_iterator(root))
        if (entry.is_directory()) class_dirs.push_back(entry.path());
    std::sort(class_dirs.begin(), class_dirs.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
    if (class_dirs.empty())
        throw std::runtime_error("dataset root has no class subdirectories: " + root.string());

    struct Entry {
        std::string label;
        fs::path path;
        std::string source;
    };
    std::vector<Entry> entries;
    for (const auto& dir : class_dirs) {
        const std::string label = dir.filename().string();
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(dir))
            if (entry.is_regular_file()) files.push_back(entry.path());
        std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
            return a.filename() < b.filename();
        });
        for (auto& f : files)
            entries.push_back({label, f, label + "/" + f.filename().string()});
    }

    std::vector<std::optional<GrayImage>> decoded(entries.size());
    std::vector<std::string> failures(entries.size());
    parallel_for(entries.size(), threads, [&](std::size_t i) {
        try {
            decoded[i] = load_image(entries[i].path);
        } catch (const std::exception& e) {
            failures[i] = e.what();
        }
    });

    const WarnFn& sink = warn ? warn : WarnFn([](const std::string& msg) {
        std::cerr << "texlbp: warning: " << msg << '\n';
    });

    std::vector<LabeledImage> out;
    out.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (decoded[i])
            out.push_back({std::move(*decoded[i]), entries[i].label, entries[i].source});
        else
            sink("skipping " + entries[i].source + ": " + failures[i]);
    }
    for (const auto& dir : class_dirs) {
        const std::string label = dir.filename().string();
        const bool seen = std::any_of(out.begin(), out.end(), [&](const LabeledImage& s) {
            return s.label == label;
        });
        if (!seen)
            throw std::runtime_error("class '" + label + "' contains no decodable images");
    }
    return out;
}

}  // namespace texlbp
