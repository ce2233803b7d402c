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

#include <string>
#include <vector>

#include "sftrsv/csc_matrix.hpp"

namespace sftrsv {

/// What extraction does with a column whose diagonal is not stored.
enum class DiagonalPolicy { RequireExplicit, InsertUnit };

/// Keeps entries with row >= col. Under InsertUnit a missing diagonal becomes
/// an explicit 1.0. Stored off-diagonal zeros are kept.
///
/// Throws MissingDiagonal (RequireExplicit) or ZeroDiagonal.
CscMatrix extract_lower_triangular(const CscMatrix& a, DiagonalPolicy policy);

enum class ViolationKind {
  BadDimension,
  BadColumnPointer,
  ArrayLengthMismatch,
  RowIndexOutOfRange,
  UnsortedColumn,
  UpperTriangularEntry,
  MissingDiagonal,
  ZeroDiagonal,
};

struct Violation {
  ViolationKind kind;
  Index col;  ///< -1 for whole-matrix violations

  friend bool operator==(const Violation&, const Violation&) = default;
};

std::string to_string(ViolationKind kind);
std::string describe(const Violation& v);

/// Every violated lower-triangular CSC invariant. Empty iff `l` is valid.
std::vector<Violation> validate_lower_triangular(const CscMatrix& l);

/// Throws on the first violation: ZeroDiagonal and MissingDiagonal keep their
/// own codes, everything else is InvalidMatrix.
void require_lower_triangular(const CscMatrix& l);

}  // namespace sftrsv
