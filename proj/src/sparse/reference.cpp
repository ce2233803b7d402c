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

#include "sftrsv/reference.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sftrsv/error.hpp"
#include "sftrsv/lower_triangular.hpp"
#include "sftrsv/vector_kernels.hpp"

namespace sftrsv {
namespace {

void check_length(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " has " + std::to_string(got) +
                                                  " entries, expected " + std::to_string(want));
  }
}

}  // namespace

std::vector<double> solve_serial(const CscMatrix& l, std::span<const double> b) {
  check_length(b.size(), static_cast<std::size_t>(l.n), "b");
  require_lower_triangular(l);

  std::vector<double> left_sum(b.size(), 0.0);
  std::vector<double> x(b.size());
  for (Index i = 0; i < l.n; ++i) {
    const Offset diag = l.col_ptr[i];
    x[i] = (b[i] - left_sum[i]) / l.values[diag];
    for (Offset k = diag + 1; k < l.col_ptr[i + 1]; ++k) left_sum[l.row_idx[k]] += l.values[k] * x[i];
  }
  return x;
}

Residual residual_norm(const CscMatrix& l, std::span<const double> x, std::span<const double> b) {
  check_length(b.size(), static_cast<std::size_t>(l.n), "b");
  const auto lx = spmv_lower(l, x);
  Residual r;
  r.abs = kernels::max_abs_diff(lx, b).value;
  r.rel = r.abs / std::fmax(kernels::max_abs(b).value, std::numeric_limits<double>::min());
  return r;
}

SolutionComparison compare_solutions(std::span<const double> x, std::span<const double> x_ref,
                                     double tol) {
  check_length(x.size(), x_ref.size(), "x");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidConfig, "tolerance must be positive");
  SolutionComparison c;
  c.max_abs_error = kernels::max_abs_diff(x, x_ref).value;
  const auto rel = kernels::max_rel_diff(x, x_ref);
  c.max_rel_error = rel.value;
  c.worst_component = rel.index;
  c.within_tol = rel.value <= tol;  // false for NaN
  return c;
}

}  // namespace sftrsv
