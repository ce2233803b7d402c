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
#include <string>
#include <vector>

#include "sftrsv/csc_matrix.hpp"

namespace sftrsv {

/// result[i] = number of stored off-diagonal entries in row i, i.e. the
/// number of components x_i waits for. Stored zeros count.
std::vector<std::int64_t> compute_in_degrees(const CscMatrix& l);

/// Earliest-level assignment: level 0 for components with no dependencies,
/// otherwise one more than the deepest dependency.
struct LevelSchedule {
  std::vector<Index> level_of;
  std::vector<std::vector<Index>> levels;  ///< each sorted ascending

  Index n_levels() const noexcept { return static_cast<Index>(levels.size()); }
};

LevelSchedule compute_level_schedule(const CscMatrix& l);

struct MatrixStats {
  std::int64_t n_rows = 0;
  std::int64_t nnz = 0;
  std::int64_t n_levels = 0;
  std::int64_t parallelism = 0;  ///< floor(n_rows / n_levels)
  double dependency = 0.0;       ///< nnz / n_rows
};

/// Derived metrics from raw counts.
MatrixStats make_stats(std::int64_t n_rows, std::int64_t nnz, std::int64_t n_levels);

MatrixStats compute_stats(const CscMatrix& l);

/// One-line JSON: {"name","n_rows","nnz","n_levels","parallelism","dependency"}.
std::string stats_to_json(const std::string& name, const MatrixStats& stats);

}  // namespace sftrsv
