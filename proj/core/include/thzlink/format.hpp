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

#ifndef THZLINK_FORMAT_HPP
#define THZLINK_FORMAT_HPP

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "thzlink/errors.hpp"

namespace thzlink::format {

/// All text output uses 9 significant digits with a '.' decimal
/// separator, independent of locale.
inline std::string sig9(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

/// Rounds a double to its 9-significant-digit representation. JSON
/// documents carry snapped values so they print exactly like the CSVs.
inline double snap_sig9(double value) {
  return std::strtod(sig9(value).c_str(), nullptr);
}

/// Strict double parse of a full token. Throws Error{ParseError}.
inline double parse_double(const std::string& token,
                           const std::string& where) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw Error(ErrorKind::ParseError,
                where + ": not a number: '" + token + "'");
  }
  return value;
}

/// Writes content to path via a temp file in the same directory plus
/// rename, so readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

}  // namespace thzlink::format

#endif  // THZLINK_FORMAT_HPP
