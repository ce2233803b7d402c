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

#include <cstddef>
#include <span>
#include <vector>

#include "sftrsv/csc_matrix.hpp"

namespace sftrsv {

/// Serial forward substitution over the stored entries of a lower-triangular
/// CSC matrix. Columns are processed in ascending order; each solved x_i is
/// pushed into the running left sums of the rows below it. Repeated calls are
/// bit-identical.
///
/// Throws DimensionMismatch, ZeroDiagonal, MissingDiagonal or InvalidMatrix.
std::vector<double> solve_serial(const CscMatrix& l, std::span<const double> b);

struct Residual {
  double abs = 0.0;  ///< ||Lx - b||_inf
  double rel = 0.0;  ///< abs / max(||b||_inf, DBL_MIN)
};

Residual residual_norm(const CscMatrix& l, std::span<const double> x, std::span<const double> b);

struct SolutionComparison {
  double max_abs_error = 0.0;
  double max_rel_error = 0.0;  ///< per component |x - ref| / max(|ref|, 1)
  std::size_t worst_component = 0;
  bool within_tol = true;
};

/// Throws DimensionMismatch, or InvalidConfig when tol <= 0.
SolutionComparison compare_solutions(std::span<const double> x, std::span<const double> x_ref,
                                     double tol);

}  // namespace sftrsv
