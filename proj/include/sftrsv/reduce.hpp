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

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <span>
#include <vector>

namespace sftrsv {

/// Number of halving steps reduce_contributions takes for `count` inputs.
constexpr int reduction_depth(std::size_t count) noexcept {
  return count <= 1 ? 0 : std::countr_zero(std::bit_ceil(count));
}

/// Sums one value per PE with a fixed shuffle-down tree: the input is
/// zero-padded to a power of two, then lane i absorbs lane i + offset for
/// offset = width/2, ..., 1. Integer sums are exact; floating sums are
/// deterministic for a given input. Destroys `lanes`.
template <class T>
T reduce_contributions_inplace(std::span<T> lanes) {
  if (lanes.empty()) return T{};
  const std::size_t width = std::bit_ceil(lanes.size());
  for (std::size_t offset = width / 2; offset > 0; offset /= 2) {
    for (std::size_t i = 0; i < offset && i + offset < lanes.size(); ++i) lanes[i] += lanes[i + offset];
  }
  return lanes[0];
}

template <class T>
T reduce_contributions(std::span<const T> values) {
  constexpr std::size_t kInline = 64;
  if (values.size() <= kInline) {
    std::array<T, kInline> lanes{};
    std::copy(values.begin(), values.end(), lanes.begin());
    return reduce_contributions_inplace(std::span<T>(lanes.data(), values.size()));
  }
  std::vector<T> lanes(values.begin(), values.end());
  return reduce_contributions_inplace(std::span<T>(lanes));
}

}  // namespace sftrsv
