#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "texlbp/lbp.hpp"

namespace texlbp {

struct FeatureSegment {
    LbpConfig config;
    std::size_t offset = 0;
    std::size_t length = 0;

    bool operator==(const FeatureSegment&) const = default;
};

// Concatenation of per-neighborhood L1-normalized histograms.
struct FeatureVector {
    std::vector<double> values;
    std::vector<FeatureSegment> layout;
};

struct FeatureSample {
    std::string label;
    std::string source;
    FeatureVector features;
};

struct FeatureStore {
    std::vector<LbpConfig> configs;
    std::vector<FeatureSample> samples;
    std::vector<std::string> class_names;  // sorted unique labels
};

// Divides every bin by the total mass. Throws on an all-zero histogram.
Histogram normalize_l1(const Histogram& h);

// Concatenates normalize_l1(histogram) per configuration, in order.
FeatureVector extract_multi(const GrayImage& img, std::span<const LbpOperator> ops);
FeatureVector extract_multi(const GrayImage& img, const std::vector<LbpConfig>& configs);

// True when the vector's layout is exactly this config list.
bool layout_matches(const FeatureVector& v, const std::vector<LbpConfig>& configs);

// Validates layouts and derives the sorted class-name list.
FeatureStore make_store(std::vector<LbpConfig> configs, std::vector<FeatureSample> samples);

// "8:1:riu2;24:3:riu2" <-> config list
std::string format_configs(const std::vector<LbpConfig>& configs);
std::vector<LbpConfig> parse_configs(std::string_view text);

// Text store format, UTF-8:
//   texlbp-features v1
//   configs=<P>:<R>:<variant>[;...]
//   columns=label,source,v0..v{n-1}
//   <label>,<source>,<v0>,...   (one row per sample)
// Values are written with shortest round-trip formatting, so
// read_store(write_store(s)) reproduces every value exactly.
void write_store(const FeatureStore& store, const std::filesystem::path& path);
FeatureStore read_store(const std::filesystem::path& path);

}  // namespace texlbp
