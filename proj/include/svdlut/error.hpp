// Copyright 2026 The svdlut Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace svdlut {

enum class ErrorCode {
  kDimensionMismatch,
  kNonFiniteValue,
  kBadHyperparameter,
  kBadVertexCount,
  kDegenerateImage,
  kBadGridCount,
  kNoConvergence,
  kBadRank,
  kBadParams,
  kBadMagic,
  kShapeMismatch,
  kTruncatedFile,
  kUnsupportedVersion,
  kBadMaxval,
  kBadResolution,
  kParseError,
  kIoError,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported as Error. The code is stable and is what
// tests and the CLI dispatch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace svdlut
