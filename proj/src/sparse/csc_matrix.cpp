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

#include "sftrsv/csc_matrix.hpp"

#include <algorithm>
#include <string>

#include "sftrsv/error.hpp"

namespace sftrsv {

CscMatrix csc_from_triplets(Index n, std::vector<Triplet> entries) {
  if (n < 0) throw Error(ErrorCode::InvalidSpec, "negative dimension");
  for (const auto& t : entries) {
    if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n) {
      throw Error(ErrorCode::IndexOutOfRange, "entry (" + std::to_string(t.row) + ", " +
                                                  std::to_string(t.col) + ") outside " +
                                                  std::to_string(n) + " x " + std::to_string(n));
    }
  }
  // Stable so that duplicates are summed in input order.
  std::stable_sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });

  CscMatrix m;
  m.n = n;
  m.col_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
  m.row_idx.reserve(entries.size());
  m.values.reserve(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& t = entries[k];
    if (k > 0 && entries[k - 1].row == t.row && entries[k - 1].col == t.col) {
      m.values.back() += t.value;
      continue;
    }
    m.row_idx.push_back(t.row);
    m.values.push_back(t.value);
    ++m.col_ptr[static_cast<std::size_t>(t.col) + 1];
  }
  for (Index j = 0; j < n; ++j) m.col_ptr[j + 1] += m.col_ptr[j];
  return m;
}

std::vector<double> spmv_lower(const CscMatrix& l, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(l.n)) {
    throw Error(ErrorCode::DimensionMismatch,
                "x has " + std::to_string(x.size()) + " entries, matrix has " + std::to_string(l.n));
  }
  std::vector<double> y(x.size(), 0.0);
  for (Index j = 0; j < l.n; ++j) {
    const double xj = x[j];
    for (Offset k = l.col_ptr[j]; k < l.col_ptr[j + 1]; ++k) y[l.row_idx[k]] += l.values[k] * xj;
  }
  return y;
}

}  // namespace sftrsv
