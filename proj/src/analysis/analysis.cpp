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

#include "sftrsv/analysis.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>

#include "sftrsv/lower_triangular.hpp"

namespace sftrsv {

std::vector<std::int64_t> compute_in_degrees(const CscMatrix& l) {
  require_lower_triangular(l);
  std::vector<std::int64_t> deg(static_cast<std::size_t>(l.n), 0);
  for (Index j = 0; j < l.n; ++j) {
    // Skip the leading diagonal entry.
    for (Offset k = l.col_ptr[j] + 1; k < l.col_ptr[j + 1]; ++k) ++deg[l.row_idx[k]];
  }
  return deg;
}

LevelSchedule compute_level_schedule(const CscMatrix& l) {
  require_lower_triangular(l);
  LevelSchedule s;
  s.level_of.assign(static_cast<std::size_t>(l.n), 0);
  // Column j is final once every column before it has pushed its level down,
  // which ascending traversal guarantees.
  for (Index j = 0; j < l.n; ++j) {
    const Index lj = s.level_of[j];
    if (static_cast<std::size_t>(lj) >= s.levels.size()) s.levels.resize(lj + 1);
    s.levels[lj].push_back(j);
    for (Offset k = l.col_ptr[j] + 1; k < l.col_ptr[j + 1]; ++k) {
      Index& li = s.level_of[l.row_idx[k]];
      li = std::max(li, lj + 1);
    }
  }
  return s;
}

MatrixStats make_stats(std::int64_t n_rows, std::int64_t nnz, std::int64_t n_levels) {
  MatrixStats s;
  s.n_rows = n_rows;
  s.nnz = nnz;
  s.n_levels = n_levels;
  s.parallelism = n_levels > 0 ? n_rows / n_levels : 0;
  s.dependency = n_rows > 0 ? static_cast<double>(nnz) / static_cast<double>(n_rows) : 0.0;
  return s;
}

MatrixStats compute_stats(const CscMatrix& l) {
  return make_stats(l.n, l.nnz(), compute_level_schedule(l).n_levels());
}

std::string stats_to_json(const std::string& name, const MatrixStats& stats) {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["n_rows"] = stats.n_rows;
  j["nnz"] = stats.nnz;
  j["n_levels"] = stats.n_levels;
  j["parallelism"] = stats.parallelism;
  j["dependency"] = stats.dependency;
  return j.dump();
}

}  // namespace sftrsv
