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


#ifndef CODEVEC_COMMON_FILES_H_
#define CODEVEC_COMMON_FILES_H_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace codevec {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_text_file(const std::filesystem::path& path);

// Writes atomically enough for our purposes: parent directories are created
// and the file is truncated first.
void write_text_file(const std::filesystem::path& path, const std::string& text);

// Regular files under root, sorted by their generic relative path so the
// order does not depend on directory iteration order.
std::vector<std::filesystem::path> list_files(const std::filesystem::path& root,
                                              const std::string& extension = "");

// Relative path with forward slashes.
std::string relative_key(const std::filesystem::path& path,
                         const std::filesystem::path& root);

std::string hex64(std::uint64_t value);

}  // namespace codevec

#endif  // CODEVEC_COMMON_FILES_H_
