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

#include <immintrin.h>

#include <bit>
#include <cmath>

#include "sftrsv/vector_kernels.hpp"

namespace sftrsv::kernels::avx2 {
namespace {

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

// Metric functors provide a vector form and a scalar tail form that perform
// the same IEEE operations, so both halves agree bit for bit.
struct AbsMetric {
  const double* a;
  __m256d vec(std::size_t i) const { return abs_pd(_mm256_loadu_pd(a + i)); }
  double one(std::size_t i) const { return std::abs(a[i]); }
};

struct AbsDiffMetric {
  const double* a;
  const double* b;
  __m256d vec(std::size_t i) const {
    return abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  double one(std::size_t i) const { return std::abs(a[i] - b[i]); }
};

struct RelDiffMetric {
  const double* x;
  const double* ref;
  __m256d vec(std::size_t i) const {
    const __m256d r = _mm256_loadu_pd(ref + i);
    // fmax semantics: a NaN |ref| yields 1.0; the numerator is NaN anyway.
    const __m256d denom = _mm256_max_pd(abs_pd(r), _mm256_set1_pd(1.0));
    return _mm256_div_pd(abs_pd(_mm256_sub_pd(_mm256_loadu_pd(x + i), r)), denom);
  }
  double one(std::size_t i) const {
    const double denom = std::fmax(std::abs(ref[i]), 1.0);
    return std::abs(x[i] - ref[i]) / denom;
  }
};

// First index in [0, n) whose metric satisfies `hit`, where `hit_vec`
// produces a lane mask for the same predicate.
template <class Metric, class VecPred, class Pred>
std::size_t first_match(const Metric& m, std::size_t n, VecPred hit_vec, Pred hit) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const int mask = _mm256_movemask_pd(hit_vec(m.vec(i)));
    if (mask != 0) return i + static_cast<std::size_t>(std::countr_zero(static_cast<unsigned>(mask)));
  }
  for (; i < n; ++i) {
    if (hit(m.one(i))) return i;
  }
  return n;
}

template <class Metric>
MaxEntry reduce_max(const Metric& m, std::size_t n) {
  __m256d vmax = _mm256_setzero_pd();
  __m256d nan_seen = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = m.vec(i);
    nan_seen = _mm256_or_pd(nan_seen, _mm256_cmp_pd(v, v, _CMP_UNORD_Q));
    vmax = _mm256_max_pd(v, vmax);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, vmax);
  double best = 0.0;
  for (double lane : lanes) best = lane > best ? lane : best;
  bool any_nan = _mm256_movemask_pd(nan_seen) != 0;
  for (; i < n; ++i) {
    const double v = m.one(i);
    if (std::isnan(v)) any_nan = true;
    else if (v > best) best = v;
  }

  if (any_nan) {
    const std::size_t at = first_match(
        m, n, [](__m256d v) { return _mm256_cmp_pd(v, v, _CMP_UNORD_Q); },
        [](double v) { return std::isnan(v); });
    return {m.one(at), at};
  }
  const __m256d target = _mm256_set1_pd(best);
  const std::size_t at = first_match(
      m, n, [&](__m256d v) { return _mm256_cmp_pd(v, target, _CMP_EQ_OQ); },
      [&](double v) { return v == best; });
  return {best, at == n ? 0 : at};
}

}  // namespace

MaxEntry max_abs(std::span<const double> a) { return reduce_max(AbsMetric{a.data()}, a.size()); }

MaxEntry max_abs_diff(std::span<const double> a, std::span<const double> b) {
  return reduce_max(AbsDiffMetric{a.data(), b.data()}, a.size());
}

MaxEntry max_rel_diff(std::span<const double> x, std::span<const double> ref) {
  return reduce_max(RelDiffMetric{x.data(), ref.data()}, x.size());
}

}  // namespace sftrsv::kernels::avx2
