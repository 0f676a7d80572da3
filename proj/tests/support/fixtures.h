// Copyright 2026 The codevec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CODEVEC_TESTS_SUPPORT_FIXTURES_H_
#define CODEVEC_TESTS_SUPPORT_FIXTURES_H_

#include <filesystem>
#include <string>

#include "codevec/java/ast.h"

namespace codevec::testing {

std::filesystem::path testdata_path(const std::string& relative);
std::string read_testdata(const std::string& relative);
java::SourceUnit parse_testdata(const std::string& relative);

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& child) const {
    return path_ / child;
  }

 private:
  std::filesystem::path path_;
};

void write_file(const std::filesystem::path& path, const std::string& text);
std::string read_file(const std::filesystem::path& path);

}  // namespace codevec::testing

#endif  // CODEVEC_TESTS_SUPPORT_FIXTURES_H_
