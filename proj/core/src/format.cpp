// Copyright 2026 The thzlink Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "thzlink/format.hpp"

#include <fstream>
#include <system_error>

namespace thzlink::format {

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  namespace fs = std::filesystem;
  fs::path dir = path.parent_path();
  if (dir.empty()) dir = ".";
  const fs::path tmp = dir / (path.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(ErrorKind::IoError,
                  "cannot open for writing: " + tmp.string());
    }
    out << content;
    out.flush();
    if (!out) {
      throw Error(ErrorKind::IoError, "write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::IoError,
                "cannot move output into place: " + path.string());
  }
}

}  // namespace thzlink::format
