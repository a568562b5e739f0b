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

#ifndef THZLINK_ERRORS_HPP
#define THZLINK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace thzlink {

enum class ErrorKind {
  InvalidParameter,        // violated type invariant or precondition
  ZeroDistance,            // coincident poses, angles undefined
  NonPositiveRange,        // footprint/ratio range must be > 0
  BelowReferenceDistance,  // link shorter than the path-loss reference
  DegenerateSamples,       // fit input constant or negative
  NoConvergence,           // iterative solver hit its cap
  InsufficientSpread,      // regression needs >= 2 distinct distances
  AxisMismatch,            // power maps with different axis specs
  EmptySamples,            // statistic of an empty sample set
  ZeroVariance,            // correlation of a constant series
  LengthMismatch,          // paired series of different lengths
  NoDrop,                  // 3-dB contour not bracketed (floor too shallow)
  ParseError,              // malformed config or CSV input
  NonMonotonicTime,        // flight log time column not increasing
  MissingColumn,           // flight log header lacks a required column
  IoError,                 // file could not be opened or written
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace thzlink

#endif  // THZLINK_ERRORS_HPP
