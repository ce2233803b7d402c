// Copyright 2026 The sftrsv Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sftrsv {

enum class ErrorCode {
  MalformedHeader,
  MalformedEntry,
  NonSquare,
  IndexOutOfRange,
  ComplexFieldUnsupported,
  MissingDiagonal,
  ZeroDiagonal,
  InvalidMatrix,
  DimensionMismatch,
  InvalidSpec,
  InvalidPeCount,
  TooManyTasks,
  IndivisibleTaskTotal,
  InvalidConfig,
  Timeout,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Library-wide exception. `what()` is prefixed with the error code name so
/// diagnostics can be matched textually (e.g. "ZeroDiagonal: column 3").
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sftrsv
