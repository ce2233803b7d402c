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

#include <cstdlib>
#include <string_view>

#include "sftrsv/vector_kernels.hpp"

namespace sftrsv::kernels {
namespace {

struct Table {
  SimdLevel level;
  MaxEntry (*max_abs)(std::span<const double>);
  MaxEntry (*max_abs_diff)(std::span<const double>, std::span<const double>);
  MaxEntry (*max_rel_diff)(std::span<const double>, std::span<const double>);
};

bool cpu_has_avx2() noexcept {
#if defined(SFTRSV_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Table select() noexcept {
  const char* env = std::getenv("SFTRSV_SIMD");
  const bool force_scalar = env != nullptr && std::string_view(env) == "scalar";
#if defined(SFTRSV_HAVE_AVX2_KERNELS)
  if (!force_scalar && cpu_has_avx2()) {
    return {SimdLevel::Avx2, &avx2::max_abs, &avx2::max_abs_diff, &avx2::max_rel_diff};
  }
#endif
  (void)force_scalar;
  return {SimdLevel::Scalar, &scalar::max_abs, &scalar::max_abs_diff, &scalar::max_rel_diff};
}

const Table& table() noexcept {
  static const Table t = select();
  return t;
}

}  // namespace

std::string_view to_string(SimdLevel level) noexcept {
  return level == SimdLevel::Avx2 ? "avx2" : "scalar";
}

bool supported(SimdLevel level) noexcept {
  return level == SimdLevel::Scalar || cpu_has_avx2();
}

SimdLevel active_level() noexcept { return table().level; }

MaxEntry max_abs(std::span<const double> a) { return table().max_abs(a); }

MaxEntry max_abs_diff(std::span<const double> a, std::span<const double> b) {
  return table().max_abs_diff(a, b);
}

MaxEntry max_rel_diff(std::span<const double> x, std::span<const double> ref) {
  return table().max_rel_diff(x, ref);
}

}  // namespace sftrsv::kernels
