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
#include <string_view>

/// Reductions over dense vectors used by residual and solution checks.
///
/// Each kernel has a portable scalar implementation and, on x86-64, an AVX2
/// implementation selected at runtime. All variants return bit-identical
/// results: the per-element metric is computed with the same IEEE operations
/// and the reduction is a max, which is order-independent.
namespace sftrsv::kernels {

enum class SimdLevel { Scalar, Avx2 };

std::string_view to_string(SimdLevel level) noexcept;

/// Whether this build and CPU can run `level`.
bool supported(SimdLevel level) noexcept;

/// Level used by the dispatched entry points. The best supported level,
/// unless the SFTRSV_SIMD environment variable is set to "scalar".
SimdLevel active_level() noexcept;

/// Largest per-element metric and the first index attaining it. A NaN metric
/// dominates: value is NaN and index is the first NaN position. Empty input
/// gives {0, 0}.
struct MaxEntry {
  double value = 0.0;
  std::size_t index = 0;
};

/// max_i |a_i|
MaxEntry max_abs(std::span<const double> a);
/// max_i |a_i - b_i|; spans must have equal length.
MaxEntry max_abs_diff(std::span<const double> a, std::span<const double> b);
/// max_i |x_i - ref_i| / max(|ref_i|, 1); spans must have equal length.
MaxEntry max_rel_diff(std::span<const double> x, std::span<const double> ref);

namespace scalar {
MaxEntry max_abs(std::span<const double> a);
MaxEntry max_abs_diff(std::span<const double> a, std::span<const double> b);
MaxEntry max_rel_diff(std::span<const double> x, std::span<const double> ref);
}  // namespace scalar

namespace avx2 {
// Only callable when supported(SimdLevel::Avx2).
MaxEntry max_abs(std::span<const double> a);
MaxEntry max_abs_diff(std::span<const double> a, std::span<const double> b);
MaxEntry max_rel_diff(std::span<const double> x, std::span<const double> ref);
}  // namespace avx2

}  // namespace sftrsv::kernels
