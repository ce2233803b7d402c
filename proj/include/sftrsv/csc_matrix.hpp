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

#include <cstdint>
#include <span>
#include <vector>

namespace sftrsv {

/// Component / row / column index.
using Index = std::int32_t;
/// Offset into the stored-entry arrays.
using Offset = std::int64_t;

/// Square sparse matrix in compressed-sparse-column form.
///
/// A lower-triangular CscMatrix that passed validation stores the diagonal as
/// the first entry of every column, followed by strictly ascending rows, so
/// `values[col_ptr[j]]` is l_jj.
struct CscMatrix {
  Index n = 0;
  std::vector<Offset> col_ptr{0};
  std::vector<Index> row_idx;
  std::vector<double> values;

  Offset nnz() const noexcept { return static_cast<Offset>(row_idx.size()); }

  std::span<const Index> column_rows(Index j) const noexcept {
    return {row_idx.data() + col_ptr[j], row_idx.data() + col_ptr[j + 1]};
  }
  std::span<const double> column_values(Index j) const noexcept {
    return {values.data() + col_ptr[j], values.data() + col_ptr[j + 1]};
  }
  double diagonal(Index j) const noexcept { return values[col_ptr[j]]; }

  friend bool operator==(const CscMatrix&, const CscMatrix&) = default;
};

struct Triplet {
  Index row;
  Index col;
  double value;
};

/// Builds an n x n CSC matrix. Entries are sorted column-major with ascending
/// rows; duplicate coordinates are summed. Throws IndexOutOfRange.
CscMatrix csc_from_triplets(Index n, std::vector<Triplet> entries);

/// y = L x, accumulated column by column in storage order.
/// Throws DimensionMismatch.
std::vector<double> spmv_lower(const CscMatrix& l, std::span<const double> x);

}  // namespace sftrsv
