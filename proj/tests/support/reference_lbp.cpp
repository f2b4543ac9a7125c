#include "reference_lbp.hpp"

#include <cmath>
#include <numbers>

namespace texref {

namespace {

double ref_quantize(double x) {
    double q = std::nearbyint(x * 1048576.0) / 1048576.0;
    const double nearest = std::nearbyint(q);
    if (std::abs(q - nearest) <= 1e-6) q = nearest;
    return q;
}

int ref_popcount(std::uint64_t code, int points) {
    int count = 0;
    for (int i = 0; i < points; ++i)
        if ((code >> i) & 1) ++count;
    return count;
}

std::uint64_t run_code(int ones, int shift, int points) {
    std::uint64_t code = 0;
    for (int i = 0; i < ones; ++i) code |= 1ull << ((shift + i) % points);
    return code;
}

}  // namespace

int ref_transitions(std::uint64_t code, int points) {
    int count = 0;
    for (int i = 0; i < points; ++i) {
        const int a = static_cast<int>((code >> i) & 1);
        const int b = static_cast<int>((code >> ((i + 1) % points)) & 1);
        if (a != b) ++count;
    }
    return count;
}

std::size_t ref_u2_bin(std::uint64_t code, int points) {
    const std::size_t uniform_total =
        static_cast<std::size_t>(points) * (points - 1) + 2;
    if (ref_transitions(code, points) > 2) return uniform_total;
    std::size_t rank = code > 0 ? 1 : 0;  // code 0 precedes every other code
    for (int ones = 1; ones < points; ++ones)
        for (int shift = 0; shift < points; ++shift)
            if (run_code(ones, shift, points) < code) ++rank;
    return rank;
}

std::vector<double> histogram(const texlbp::GrayImage& img, int points,
                              double radius, bool rotation_invariant) {
    const int margin = static_cast<int>(std::ceil(radius));
    const std::size_t bins =
        rotation_invariant ? static_cast<std::size_t>(points) + 2
                           : static_cast<std::size_t>(points) * (points - 1) + 3;
    std::vector<double> h(bins, 0.0);

    std::vector<double> dx(points), dy(points);
    for (int k = 0; k < points; ++k) {
        const double angle = 2.0 * std::numbers::pi * k / points;
        dx[k] = ref_quantize(radius * std::cos(angle));
        dy[k] = ref_quantize(-radius * std::sin(angle));
    }

    for (int cy = margin; cy < img.height - margin; ++cy) {
        for (int cx = margin; cx < img.width - margin; ++cx) {
            const int center = img.at(cx, cy);
            std::uint64_t code = 0;
            for (int k = 0; k < points; ++k) {
                const double bx = std::floor(dx[k]);
                const double by = std::floor(dy[k]);
                const double fx = dx[k] - bx;
                const double fy = dy[k] - by;
                const int x0 = cx + static_cast<int>(bx);
                const int y0 = cy + static_cast<int>(by);
                const double wx[2] = {1.0 - fx, fx};
                const double wy[2] = {1.0 - fy, fy};
                double indicator = 0.0;
                for (int j = 0; j < 2; ++j) {
                    for (int i = 0; i < 2; ++i) {
                        const double w = wx[i] * wy[j];
                        if (w == 0.0) continue;
                        if (img.at(x0 + i, y0 + j) >= center) indicator += w;
                    }
                }
                if (indicator >= 0.5) code |= 1ull << k;
            }
            std::size_t bin;
            if (rotation_invariant) {
                bin = ref_transitions(code, points) <= 2
                          ? static_cast<std::size_t>(ref_popcount(code, points))
                          : static_cast<std::size_t>(points) + 1;
            } else {
                bin = ref_u2_bin(code, points);
            }
            h[bin] += 1.0;
        }
    }
    return h;
}

}  // namespace texref
