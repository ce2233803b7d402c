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

#include "sftrsv/error.hpp"

namespace sftrsv {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::MalformedEntry: return "MalformedEntry";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ComplexFieldUnsupported: return "ComplexFieldUnsupported";
    case ErrorCode::MissingDiagonal: return "MissingDiagonal";
    case ErrorCode::ZeroDiagonal: return "ZeroDiagonal";
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::InvalidPeCount: return "InvalidPeCount";
    case ErrorCode::TooManyTasks: return "TooManyTasks";
    case ErrorCode::IndivisibleTaskTotal: return "IndivisibleTaskTotal";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Timeout: return "Timeout";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace sftrsv
