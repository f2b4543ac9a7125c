#include "doctest.h"

#include <fstream>
#include <random>
#include <string>

#include "texlbp/image.hpp"

#include "../support/generators.hpp"
#include "../support/temp_dir.hpp"

using namespace texlbp;

namespace {

void write_file(const std::filesystem::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

TEST_CASE("to_grayscale endpoints and red weight") {
    CHECK(to_grayscale(0, 0, 0) == 0);
    CHECK(to_grayscale(255, 255, 255) == 255);
    CHECK(to_grayscale(255, 0, 0) == 76);  // 0.299*255 = 76.245
}

TEST_CASE("to_grayscale rounds half away from zero") {
    // 0.299*200 + 0.587*100 = 118.5 exactly in decimal
    CHECK(to_grayscale(200, 100, 0) == 119);
}

TEST_CASE("to_grayscale is monotone per channel") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        const auto r = static_cast<std::uint8_t>(rng() % 255);
        const auto g = static_cast<std::uint8_t>(rng() % 255);
        const auto b = static_cast<std::uint8_t>(rng() % 255);
        CHECK(to_grayscale(r + 1, g, b) >= to_grayscale(r, g, b));
        CHECK(to_grayscale(r, g + 1, b) >= to_grayscale(r, g, b));
        CHECK(to_grayscale(r, g, b + 1) >= to_grayscale(r, g, b));
    }
}

TEST_CASE("load_image decodes the four netpbm flavors") {
    texgen::ScopedTempDir tmp;

    SUBCASE("binary graymap") {
        write_file(tmp.path / "a.pgm", std::string("P5\n1 1\n255\n") + char(128));
        const GrayImage img = load_image(tmp.path / "a.pgm");
        CHECK(img.width == 1);
        CHECK(img.height == 1);
        CHECK(img.pixels == std::vector<std::uint8_t>{128});
    }
    SUBCASE("ascii graymap with comments") {
        write_file(tmp.path / "a.pgm", "P2\n# fixture\n2 1\n# dims above\n255\n12 255\n");
        const GrayImage img = load_image(tmp.path / "a.pgm");
        CHECK(img.pixels == std::vector<std::uint8_t>{12, 255});
    }
    SUBCASE("binary pixmap converts through to_grayscale") {
        write_file(tmp.path / "a.ppm", std::string("P6\n1 1\n255\n") + char(255) + char(0) + char(0));
        CHECK(load_image(tmp.path / "a.ppm").pixels == std::vector<std::uint8_t>{76});
    }
    SUBCASE("ascii pixmap") {
        write_file(tmp.path / "a.ppm", "P3\n1 2\n255\n255 0 0  0 0 0\n");
        CHECK(load_image(tmp.path / "a.ppm").pixels == std::vector<std::uint8_t>{76, 0});
    }
}

TEST_CASE("load_image rejects broken input") {
    texgen::ScopedTempDir tmp;

    CHECK_THROWS_WITH_AS(load_image(tmp.path / "missing.pgm"),
                         doctest::Contains("cannot open"), std::runtime_error);

    write_file(tmp.path / "magic.pgm", "P9\n1 1\n255\n x");
    CHECK_THROWS_WITH_AS(load_image(tmp.path / "magic.pgm"),
                         doctest::Contains("unrecognized magic"), std::runtime_error);

    write_file(tmp.path / "trunc.pgm", std::string("P5\n2 2\n255\n") + char(1) + char(2));
    CHECK_THROWS_WITH_AS(load_image(tmp.path / "trunc.pgm"),
                         doctest::Contains("truncated"), std::runtime_error);

    write_file(tmp.path / "maxval.pgm", std::string("P5\n1 1\n254\n") + char(1));
    CHECK_THROWS_WITH_AS(load_image(tmp.path / "maxval.pgm"),
                         doctest::Contains("maxval"), std::runtime_error);

    write_file(tmp.path / "dims.pgm", "P5\n0 1\n255\n");
    CHECK_THROWS_AS(load_image(tmp.path / "dims.pgm"), std::runtime_error);

    write_file(tmp.path / "range.pgm", "P2\n1 1\n255\n999\n");
    CHECK_THROWS_AS(load_image(tmp.path / "range.pgm"), std::runtime_error);
}

TEST_CASE("pgm round trip is lossless") {
    texgen::ScopedTempDir tmp;
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const GrayImage img = texgen::random_image(rng, 1, 24);
        const auto path = tmp.path / ("rt" + std::to_string(trial) + ".pgm");
        write_pgm(img, path);
        CHECK(load_image(path) == img);
    }
}

TEST_CASE("load_dataset walks a class-per-directory tree deterministically") {
    texgen::ScopedTempDir tmp;
    std::mt19937_64 rng(3);
    for (const std::string cls : {"b_class", "a_class"}) {
        std::filesystem::create_directories(tmp.path / cls);
        for (const std::string name : {"img2.pgm", "img1.pgm"})
            write_pgm(texgen::random_image(rng, 4, 8), tmp.path / cls / name);
    }

    const auto samples = load_dataset(tmp.path);
    REQUIRE(samples.size() == 4);
    CHECK(samples[0].label == "a_class");
    CHECK(samples[0].source == "a_class/img1.pgm");
    CHECK(samples[1].source == "a_class/img2.pgm");
    CHECK(samples[2].label == "b_class");
    CHECK(samples[3].source == "b_class/img2.pgm");

    SUBCASE("order and content are stable across runs and thread counts") {
        const auto again = load_dataset(tmp.path);
        const auto parallel = load_dataset(tmp.path, 4);
        REQUIRE(again.size() == 4);
        REQUIRE(parallel.size() == 4);
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(again[i].source == samples[i].source);
            CHECK(again[i].image == samples[i].image);
            CHECK(parallel[i].source == samples[i].source);
            CHECK(parallel[i].image == samples[i].image);
        }
    }
}

TEST_CASE("load_dataset skips junk files with a warning") {
    texgen::ScopedTempDir tmp;
    std::filesystem::create_directories(tmp.path / "only");
    std::mt19937_64 rng(5);
    write_pgm(texgen::random_image(rng, 4, 8), tmp.path / "only" / "ok.pgm");
    write_file(tmp.path / "only" / "notes.txt", "not an image\n");

    std::vector<std::string> warnings;
    const auto samples =
        load_dataset(tmp.path, 1, [&](const std::string& w) { warnings.push_back(w); });
    CHECK(samples.size() == 1);
    CHECK(samples[0].source == "only/ok.pgm");
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("notes.txt") != std::string::npos);
}

TEST_CASE("load_dataset error paths") {
    texgen::ScopedTempDir tmp;

    SUBCASE("missing root") {
        CHECK_THROWS_AS(load_dataset(tmp.path / "nope"), std::runtime_error);
    }
    SUBCASE("root without class directories") {
        CHECK_THROWS_WITH_AS(load_dataset(tmp.path),
                             doctest::Contains("no class subdirectories"), std::runtime_error);
    }
    SUBCASE("class with no decodable image") {
        std::filesystem::create_directories(tmp.path / "junkonly");
        write_file(tmp.path / "junkonly" / "readme.txt", "hello\n");
        std::vector<std::string> warnings;
        CHECK_THROWS_WITH_AS(
            load_dataset(tmp.path, 1, [&](const std::string& w) { warnings.push_back(w); }),
            doctest::Contains("no decodable images"), std::runtime_error);
    }
}
