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

#include <doctest.h>

#include <nlohmann/json.hpp>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "sftrsv/analysis.hpp"
#include "sftrsv/synthetic.hpp"

using namespace sftrsv;

namespace {

// Sparsity pattern with the column-0 dependencies of the 8x8 illustration:
// rows 1, 3, 5 and 7 hold an entry in column 0; x7 also needs x3 and x4.
CscMatrix illustration() {
  std::vector<Triplet> t;
  for (Index i = 0; i < 8; ++i) t.push_back({i, i, 1.0});
  for (Index r : {1, 3, 5, 7}) t.push_back({r, 0, 0.5});
  t.push_back({7, 3, 0.5});
  t.push_back({7, 4, 0.5});
  t.push_back({4, 2, 0.5});
  t.push_back({6, 2, 0.5});
  return csc_from_triplets(8, t);
}

CscMatrix random_lower(std::mt19937_64& rng, Index n) {
  return generate_synthetic({.kind = SyntheticKind::RandomBanded,
                             .n = n,
                             .bandwidth = n - 1,
                             .density = static_cast<double>(rng() % 50) / 100.0,
                             .seed = rng()});
}

}  // namespace

TEST_CASE("compute_in_degrees") {
  CHECK(compute_in_degrees(generate_synthetic({.kind = SyntheticKind::Diagonal, .n = 6})) ==
        std::vector<std::int64_t>(6, 0));
  CHECK(compute_in_degrees(generate_synthetic({.kind = SyntheticKind::Bidiagonal, .n = 4})) ==
        std::vector<std::int64_t>{0, 1, 1, 1});

  const auto deg = compute_in_degrees(illustration());
  for (Index r : {1, 3, 5}) CHECK(deg[r] == 1);  // only x0
  CHECK(deg[7] == 3);                             // x0, x3, x4
}

TEST_CASE("in-degrees sum to nnz - n and match the edge-list count") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto l = random_lower(rng, 1 + static_cast<Index>(rng() % 150));
    const auto deg = compute_in_degrees(l);
    CHECK(std::accumulate(deg.begin(), deg.end(), std::int64_t{0}) == l.nnz() - l.n);
    CHECK(deg == testing::count_row_dependencies(l));
  }
}

TEST_CASE("compute_level_schedule") {
  SUBCASE("components depending only on x0 share level 1") {
    const auto s = compute_level_schedule(illustration());
    CHECK(s.level_of[0] == 0);
    CHECK(s.level_of[1] == 1);
    CHECK(s.level_of[3] == 1);
    CHECK(s.level_of[5] == 1);
    CHECK(s.levels[0] == std::vector<Index>{0, 2});
  }
  SUBCASE("diagonal") {
    const auto s = compute_level_schedule(generate_synthetic({.kind = SyntheticKind::Diagonal, .n = 6}));
    CHECK(s.n_levels() == 1);
    CHECK(s.levels[0] == std::vector<Index>{0, 1, 2, 3, 4, 5});
  }
  SUBCASE("bidiagonal chain") {
    const auto s = compute_level_schedule(generate_synthetic({.kind = SyntheticKind::Bidiagonal, .n = 5}));
    CHECK(s.n_levels() == 5);
    for (Index i = 0; i < 5; ++i) CHECK(s.levels[i] == std::vector<Index>{i});
  }
}

TEST_CASE("level schedule properties on random matrices") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const Index n = 1 + static_cast<Index>(rng() % 64);
    const auto l = random_lower(rng, n);
    const auto s = compute_level_schedule(l);
    CHECK(s.level_of == testing::longest_path_levels(l));

    std::size_t total = 0;
    for (const auto& level : s.levels) {
      total += level.size();
      CHECK(std::is_sorted(level.begin(), level.end()));
    }
    CHECK(total == static_cast<std::size_t>(n));
    for (const auto& e : testing::dependency_edges(l)) CHECK(s.level_of[e.from] < s.level_of[e.to]);

    const auto deg = compute_in_degrees(l);
    const bool no_deps = std::all_of(deg.begin(), deg.end(), [](auto d) { return d == 0; });
    CHECK((s.n_levels() == 1) == no_deps);
  }
}

TEST_CASE("compute_stats and metric arithmetic") {
  const auto nlpkkt = make_stats(8'345'600, 118'931'856, 2);
  CHECK(nlpkkt.parallelism == 4'172'800);
  const auto dc2 = make_stats(116'835, 441'781, 14);
  CHECK(dc2.parallelism == 8'345);
  const auto chip = make_stats(20'082, 150'616, 534);
  // 150616 = 7 * 20082 + 10042
  CHECK(chip.dependency == doctest::Approx(7.0 + 10042.0 / 20082.0).epsilon(1e-15));
  CHECK(chip.dependency == doctest::Approx(7.50005).epsilon(1e-6));

  const auto bidiag = compute_stats(generate_synthetic({.kind = SyntheticKind::Bidiagonal, .n = 100}));
  CHECK(bidiag.n_levels == 100);
  CHECK(bidiag.parallelism == 1);
  CHECK(bidiag.dependency == doctest::Approx(1.99));
}

TEST_CASE("stats JSON record") {
  const auto j = nlohmann::json::parse(
      stats_to_json("diag", compute_stats(generate_synthetic({.kind = SyntheticKind::Diagonal, .n = 100}))));
  CHECK(j["name"] == "diag");
  CHECK(j["n_rows"] == 100);
  CHECK(j["nnz"] == 100);
  CHECK(j["n_levels"] == 1);
  CHECK(j["parallelism"] == 100);
  CHECK(j["dependency"] == 1.0);
}
