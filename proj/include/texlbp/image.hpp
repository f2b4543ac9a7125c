#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace texlbp {

// 8-bit grayscale raster, row-major. Immutable by convention once built.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, std::vector<std::uint8_t> px);

    static GrayImage filled(int w, int h, std::uint8_t value);

    std::uint8_t at(int x, int y) const {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }
    std::uint8_t& at(int x, int y) {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }
    bool in_bounds(int x, int y) const {
        return x >= 0 && x < width && y >= 0 && y < height;
    }

    bool operator==(const GrayImage&) const = default;
};

struct LabeledImage {
    GrayImage image;
    std::string label;   // name of the class directory
    std::string source;  // path relative to the dataset root (label/filename)
};

// Rec. 601 luma, computed in integer arithmetic so the decimal
// round-half-away-from-zero semantics are exact: round((299r+587g+114b)/1000).
std::uint8_t to_grayscale(std::uint8_t r, std::uint8_t g, std::uint8_t b);

// Decodes PGM (P2/P5) and PPM (P3/P6), maxval 255, '#' header comments
// allowed. Color input is converted with to_grayscale.
GrayImage load_image(const std::filesystem::path& path);

// Binary PGM (P5), maxval 255.
void write_pgm(const GrayImage& img, const std::filesystem::path& path);

using WarnFn = std::function<void(const std::string&)>;

// Loads a class-per-directory tree: every decodable regular file in each
// immediate subdirectory of root becomes one sample labeled with the
// subdirectory name. Order is lexicographic by label, then filename,
// regardless of thread count. Non-decodable files are skipped through the
// warning sink (stderr by default); a class with no decodable image is an
// error, as is a root with no subdirectories.
std::vector<LabeledImage> load_dataset(const std::filesystem::path& root,
                                       int threads = 1,
                                       const WarnFn& warn = {});

}  // namespace texlbp
