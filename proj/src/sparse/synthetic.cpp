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

#include "sftrsv/synthetic.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "sftrsv/error.hpp"

namespace sftrsv {

std::string to_string(SyntheticKind kind) {
  switch (kind) {
    case SyntheticKind::Diagonal: return "diagonal";
    case SyntheticKind::Bidiagonal: return "bidiagonal";
    case SyntheticKind::RandomBanded: return "banded";
    case SyntheticKind::BlockDiagonal: return "block";
    case SyntheticKind::DenseLower: return "dense";
  }
  return "unknown";
}

void validate(const SyntheticSpec& spec) {
  auto fail = [](const std::string& why) { throw Error(ErrorCode::InvalidSpec, why); };
  if (spec.n < 1) fail("n must be >= 1");
  if (!(spec.diag_min > 0.0) || !(spec.diag_max >= spec.diag_min)) {
    fail("diagonal magnitude range must satisfy 0 < min <= max");
  }
  if (!(spec.offdiag_max >= 0.0)) fail("off-diagonal bound must be >= 0");
  switch (spec.kind) {
    case SyntheticKind::RandomBanded:
      if (spec.bandwidth < 0 || spec.bandwidth > spec.n - 1) {
        fail("bandwidth must lie in [0, n-1]");
      }
      if (!(spec.density >= 0.0 && spec.density <= 1.0)) fail("density must lie in [0, 1]");
      break;
    case SyntheticKind::BlockDiagonal:
      if (spec.block_size < 1 || spec.block_size > spec.n) fail("block size must lie in [1, n]");
      break;
    default:
      break;
  }
}

CscMatrix generate_synthetic(const SyntheticSpec& spec) {
  validate(spec);
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> diag_mag(spec.diag_min, spec.diag_max);
  std::uniform_real_distribution<double> offdiag(-spec.offdiag_max, spec.offdiag_max);
  std::bernoulli_distribution coin(0.5);
  std::bernoulli_distribution keep(spec.density);

  const Index n = spec.n;
  CscMatrix m;
  m.n = n;
  m.col_ptr.assign(static_cast<std::size_t>(n) + 1, 0);

  auto push = [&m](Index row, double v) {
    m.row_idx.push_back(row);
    m.values.push_back(v);
  };
  auto random_diag = [&] {
    const double mag = diag_mag(rng);
    return coin(rng) ? mag : -mag;
  };

  for (Index j = 0; j < n; ++j) {
    switch (spec.kind) {
      case SyntheticKind::Diagonal:
        push(j, random_diag());
        break;
      case SyntheticKind::Bidiagonal:
        push(j, 1.0);
        if (j + 1 < n) push(j + 1, -1.0);
        break;
      case SyntheticKind::RandomBanded: {
        push(j, random_diag());
        const Index last = std::min<Index>(n - 1, j + spec.bandwidth);
        for (Index i = j + 1; i <= last; ++i) {
          if (keep(rng)) push(i, offdiag(rng));
        }
        break;
      }
      case SyntheticKind::BlockDiagonal: {
        push(j, random_diag());
        const Index block_end = std::min<Index>(n, (j / spec.block_size + 1) * spec.block_size);
        for (Index i = j + 1; i < block_end; ++i) push(i, offdiag(rng));
        break;
      }
      case SyntheticKind::DenseLower:
        push(j, random_diag());
        for (Index i = j + 1; i < n; ++i) push(i, offdiag(rng));
        break;
    }
    m.col_ptr[j + 1] = static_cast<Offset>(m.row_idx.size());
  }
  return m;
}

}  // namespace sftrsv
