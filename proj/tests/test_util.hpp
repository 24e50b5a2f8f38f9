// Copyright 2026 The lfgc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LFGC_TESTS_TEST_UTIL_HPP
#define LFGC_TESTS_TEST_UTIL_HPP

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

namespace lfgc::testutil {

/// Fresh directory under the system temp root, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    std::uniform_int_distribution<uint64_t> dist;
    path_ = std::filesystem::temp_directory_path() /
            ("lfgc_test_" + std::to_string(dist(rd)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

}  // namespace lfgc::testutil

#endif
