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

#include <cmath>

#include "sftrsv/vector_kernels.hpp"

namespace sftrsv::kernels::scalar {
namespace {

template <class Metric>
MaxEntry reduce_max(std::size_t n, Metric metric) {
  MaxEntry best;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = metric(i);
    if (std::isnan(v)) return {v, i};
    if (v > best.value) best = {v, i};
  }
  return best;
}

}  // namespace

MaxEntry max_abs(std::span<const double> a) {
  return reduce_max(a.size(), [&](std::size_t i) { return std::abs(a[i]); });
}

MaxEntry max_abs_diff(std::span<const double> a, std::span<const double> b) {
  return reduce_max(a.size(), [&](std::size_t i) { return std::abs(a[i] - b[i]); });
}

MaxEntry max_rel_diff(std::span<const double> x, std::span<const double> ref) {
  return reduce_max(x.size(), [&](std::size_t i) {
    const double denom = std::fmax(std::abs(ref[i]), 1.0);
    return std::abs(x[i] - ref[i]) / denom;
  });
}

}  // namespace sftrsv::kernels::scalar
