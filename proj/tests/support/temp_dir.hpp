#pragma once

#include <atomic>
#include <filesystem>
#include <string>

#include <unistd.h>

namespace texgen {

struct ScopedTempDir {
    std::filesystem::path path;

    ScopedTempDir() {
        static std::atomic<int> counter{0};
        path = std::filesystem::temp_directory_path() /
               ("texlbp-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter.fetch_add(1)));
        std::filesystem::create_directories(path);
    }
    ~ScopedTempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    ScopedTempDir(const ScopedTempDir&) = delete;
    ScopedTempDir& operator=(const ScopedTempDir&) = delete;
};

}  // namespace texgen
