// Copyright 2026 The Trihom Authors.
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

#ifndef TRIHOM_ERROR_HPP_
#define TRIHOM_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace trihom {

enum class ErrorCode {
  kInvalidArgument,
  kEmptyGraph,
  kDegenerate,
  kDegenerateGraph,
  kNonConvergence,
  kNotApplicable,
  kParseError,
  kInconsistentSizes,
  kNonContiguousIds,
  kTooFewNodes,
  kMissingClass,
  kConstantInput,
  kIoError,
};

std::string_view error_code_name(ErrorCode code);

// Every failure raised by the library carries one of the codes above so the
// command layer can map it onto an exit status and a JSON reason string.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const char* message) {
  if (!condition) throw Error(code, message);
}

}  // namespace trihom

#endif  // TRIHOM_ERROR_HPP_
