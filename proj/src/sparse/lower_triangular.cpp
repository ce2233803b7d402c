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

#include "sftrsv/lower_triangular.hpp"

#include <string>

#include "sftrsv/error.hpp"

namespace sftrsv {

CscMatrix extract_lower_triangular(const CscMatrix& a, DiagonalPolicy policy) {
  CscMatrix l;
  l.n = a.n;
  l.col_ptr.assign(static_cast<std::size_t>(a.n) + 1, 0);
  l.row_idx.reserve(a.row_idx.size());
  l.values.reserve(a.values.size());

  for (Index j = 0; j < a.n; ++j) {
    const auto rows = a.column_rows(j);
    const auto vals = a.column_values(j);
    // Columns from csc_from_triplets are sorted, so the diagonal (if any) is
    // the first entry with row >= j.
    std::size_t k = 0;
    while (k < rows.size() && rows[k] < j) ++k;
    if (k == rows.size() || rows[k] != j) {
      if (policy == DiagonalPolicy::RequireExplicit) {
        throw Error(ErrorCode::MissingDiagonal, "column " + std::to_string(j));
      }
      l.row_idx.push_back(j);
      l.values.push_back(1.0);
    } else if (vals[k] == 0.0) {
      throw Error(ErrorCode::ZeroDiagonal, "column " + std::to_string(j));
    }
    for (; k < rows.size(); ++k) {
      l.row_idx.push_back(rows[k]);
      l.values.push_back(vals[k]);
    }
    l.col_ptr[j + 1] = static_cast<Offset>(l.row_idx.size());
  }
  return l;
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::BadDimension: return "BadDimension";
    case ViolationKind::BadColumnPointer: return "BadColumnPointer";
    case ViolationKind::ArrayLengthMismatch: return "ArrayLengthMismatch";
    case ViolationKind::RowIndexOutOfRange: return "RowIndexOutOfRange";
    case ViolationKind::UnsortedColumn: return "UnsortedColumn";
    case ViolationKind::UpperTriangularEntry: return "UpperTriangularEntry";
    case ViolationKind::MissingDiagonal: return "MissingDiagonal";
    case ViolationKind::ZeroDiagonal: return "ZeroDiagonal";
  }
  return "Unknown";
}

std::string describe(const Violation& v) {
  if (v.col < 0) return to_string(v.kind);
  return to_string(v.kind) + "(col=" + std::to_string(v.col) + ")";
}

std::vector<Violation> validate_lower_triangular(const CscMatrix& l) {
  std::vector<Violation> report;
  if (l.n < 0) {
    report.push_back({ViolationKind::BadDimension, -1});
    return report;
  }
  if (l.col_ptr.size() != static_cast<std::size_t>(l.n) + 1 || l.row_idx.size() != l.values.size()) {
    report.push_back({ViolationKind::ArrayLengthMismatch, -1});
    return report;
  }
  if (l.col_ptr.front() != 0 || l.col_ptr.back() != l.nnz()) {
    report.push_back({ViolationKind::BadColumnPointer, -1});
  }
  for (Index j = 0; j < l.n; ++j) {
    if (l.col_ptr[j] > l.col_ptr[j + 1] || l.col_ptr[j] < 0 || l.col_ptr[j + 1] > l.nnz()) {
      report.push_back({ViolationKind::BadColumnPointer, j});
    }
  }
  if (!report.empty()) return report;

  for (Index j = 0; j < l.n; ++j) {
    const auto rows = l.column_rows(j);
    const auto vals = l.column_values(j);
    bool out_of_range = false, unsorted = false, upper = false;
    std::ptrdiff_t diag = -1;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (rows[k] < 0 || rows[k] >= l.n) out_of_range = true;
      if (k > 0 && rows[k] <= rows[k - 1]) unsorted = true;
      if (rows[k] < j) upper = true;
      if (rows[k] == j && diag < 0) diag = static_cast<std::ptrdiff_t>(k);
    }
    if (out_of_range) report.push_back({ViolationKind::RowIndexOutOfRange, j});
    if (unsorted) report.push_back({ViolationKind::UnsortedColumn, j});
    // Sorted rows with no upper entry put the diagonal first.
    if (upper) report.push_back({ViolationKind::UpperTriangularEntry, j});
    if (diag < 0) {
      report.push_back({ViolationKind::MissingDiagonal, j});
    } else if (vals[static_cast<std::size_t>(diag)] == 0.0) {
      report.push_back({ViolationKind::ZeroDiagonal, j});
    }
  }
  return report;
}

void require_lower_triangular(const CscMatrix& l) {
  const auto report = validate_lower_triangular(l);
  if (report.empty()) return;
  const auto& first = report.front();
  const auto code = first.kind == ViolationKind::ZeroDiagonal      ? ErrorCode::ZeroDiagonal
                    : first.kind == ViolationKind::MissingDiagonal ? ErrorCode::MissingDiagonal
                                                                   : ErrorCode::InvalidMatrix;
  throw Error(code, describe(first));
}

}  // namespace sftrsv
