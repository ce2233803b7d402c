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

#include <filesystem>
#include <iosfwd>

#include "sftrsv/csc_matrix.hpp"

namespace sftrsv {

/// Reads a `matrix coordinate` Matrix Market stream (real, integer or pattern
/// field; general or symmetric storage). Every entry in the file is kept:
/// duplicates are summed, symmetric storage is mirrored, pattern entries
/// become 1.0. The result is not checked for triangularity.
///
/// Throws MalformedHeader, MalformedEntry, NonSquare, IndexOutOfRange or
/// ComplexFieldUnsupported.
CscMatrix read_matrix_market(std::istream& in);
CscMatrix read_matrix_market(const std::filesystem::path& path);

/// Writes `%%MatrixMarket matrix coordinate real general`, entries in
/// column-major storage order, values with round-trip precision.
void write_matrix_market(std::ostream& out, const CscMatrix& m);
void write_matrix_market(const std::filesystem::path& path, const CscMatrix& m);

}  // namespace sftrsv
