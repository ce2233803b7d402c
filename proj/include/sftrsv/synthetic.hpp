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

#include "sftrsv/csc_matrix.hpp"

namespace sftrsv {

enum class SyntheticKind { Diagonal, Bidiagonal, RandomBanded, BlockDiagonal, DenseLower };

/// Parameters for a generated lower-triangular test matrix.
///
/// Diagonal magnitudes are drawn from [diag_min, diag_max] with random sign;
/// off-diagonal values from [-offdiag_max, offdiag_max]. Bidiagonal ignores
/// both and uses 1 on the diagonal, -1 below it.
struct SyntheticSpec {
  SyntheticKind kind = SyntheticKind::Diagonal;
  Index n = 1;
  Index bandwidth = 1;     ///< RandomBanded: rows j+1..j+bandwidth are candidates
  double density = 1.0;    ///< RandomBanded: probability of keeping a candidate
  Index block_size = 1;    ///< BlockDiagonal
  double diag_min = 1.0;
  double diag_max = 2.0;
  double offdiag_max = 1.0;
  std::uint64_t seed = 0;
};

std::string to_string(SyntheticKind kind);

/// Throws InvalidSpec.
void validate(const SyntheticSpec& spec);

/// Deterministic in `spec` (including the seed). Throws InvalidSpec.
CscMatrix generate_synthetic(const SyntheticSpec& spec);

}  // namespace sftrsv
