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

#include <atomic>
#include <random>

#include "oracles.hpp"
#include "published_segment.hpp"
#include "sftrsv/engine.hpp"
#include "sftrsv/error.hpp"
#include "sftrsv/reduce.hpp"
#include "sftrsv/reference.hpp"
#include "sftrsv/synthetic.hpp"

using namespace sftrsv;

namespace {

constexpr EngineKind kEngines[] = {EngineKind::SharedAtomics, EngineKind::PartitionedReadOnly};

SolverConfig config(EngineKind engine, int pes, int workers = 1) {
  SolverConfig cfg;
  cfg.engine = engine;
  cfg.n_pes = pes;
  cfg.workers_per_pe = workers;
  cfg.timeout = std::chrono::seconds(60);
  return cfg;
}

CscMatrix three_by_three() {
  return csc_from_triplets(3, {{0, 0, 2}, {1, 0, 1}, {1, 1, 1}, {2, 1, 3}, {2, 2, 4}});
}

std::vector<double> random_rhs(std::mt19937_64& rng, Index n) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> b(static_cast<std::size_t>(n));
  for (auto& v : b) v = dist(rng);
  return b;
}

std::uint64_t total(const SolveReport& r, std::uint64_t PeStats::*field) {
  std::uint64_t sum = 0;
  for (const auto& s : r.per_pe) sum += s.*field;
  return sum;
}

// d_in_degree + 1 == sum_q s_in_degree and left-sum conservation.
void check_quiescent(const CscMatrix& l, const SolveResult& result) {
  REQUIRE(result.report.final_state.has_value());
  const auto& st = *result.report.final_state;
  const auto expected = testing::off_diagonal_products(l, result.x);
  for (Index i = 0; i < l.n; ++i) {
    std::int64_t published = 0;
    double sums = st.d_left_sum[i];
    for (std::size_t q = 0; q < st.s_in_degree.size(); ++q) {
      published += st.s_in_degree[q][i];
      sums += st.s_left_sum[q][i];
    }
    CHECK(st.d_in_degree[i] + 1 == published);
    CHECK(std::abs(sums - expected[i]) <= 1e-12 * (1.0 + std::abs(expected[i])));
  }
}

}  // namespace

TEST_CASE("reduce_contributions") {
  CHECK(reduce_contributions<std::int64_t>(std::vector<std::int64_t>{0, 0, 0, 0}) == 0);
  CHECK(reduce_contributions<std::int64_t>(std::vector<std::int64_t>{1, 2, 3, 4}) == 10);
  CHECK(reduce_contributions<double>(std::vector<double>(8, 1.0)) == 8.0);
  CHECK(reduction_depth(8) == 3);
  CHECK(reduction_depth(5) == 3);
  CHECK(reduction_depth(1) == 0);
  CHECK(reduce_contributions<int>(std::vector<int>{}) == 0);
  CHECK(reduce_contributions<int>(std::vector<int>{1, 2, 3, 4, 5, 6, 7}) == 28);
  std::vector<int> big(100, 2);
  CHECK(reduce_contributions<int>(big) == 200);

  // Fixed shuffle-down order: ((a0+a4)+(a2+a6)) + ((a1+a5)+(a3+a7)).
  const std::vector<double> v{1e16, 1.0, -1e16, 1.0, 1.0, 1.0, 1.0, -1.0};
  const double expected = ((v[0] + v[4]) + (v[2] + v[6])) + ((v[1] + v[5]) + (v[3] + v[7]));
  CHECK(reduce_contributions<double>(v) == expected);
}

TEST_CASE("identity: x equals b for every engine and plan") {
  const auto eye = csc_from_triplets(6, {{0, 0, 1}, {1, 1, 1}, {2, 2, 1}, {3, 3, 1}, {4, 4, 1}, {5, 5, 1}});
  const std::vector<double> b{1, -2, 3, -4, 5, -6};
  for (auto engine : kEngines) {
    for (int pes : {1, 2, 3}) {
      for (const auto& plan : {block_partition(6, pes), task_round_robin_partition(6, pes, 2)}) {
        const auto r = solve(eye, b, plan, config(engine, pes, 2));
        CHECK(r.x == b);
        CHECK(total(r.report, &PeStats::lock_wait_spins) == 0);
      }
    }
  }
  const auto r = solve_partitioned(eye, b, block_partition(6, 1), config(EngineKind::PartitionedReadOnly, 1));
  CHECK(total(r.report, &PeStats::remote_reads_issued) == 0);
}

TEST_CASE("3x3 example") {
  const auto l = three_by_three();
  const std::vector<double> b{2, 2, 7};
  const auto oracle = solve_serial(l, b);

  auto shared = config(EngineKind::SharedAtomics, 2);
  const auto rs = solve_shared_atomics(l, b, block_partition(3, 2), shared);
  CHECK(compare_solutions(rs.x, oracle, 1e-12).within_tol);

  auto part = config(EngineKind::PartitionedReadOnly, 3);
  part.capture_state = true;
  const auto rp = solve_partitioned(l, b, block_partition(3, 3), part);
  CHECK(rp.x == std::vector<double>{1, 1, 1});
  // Row 2's dependency on x1 lives in PE1's column; PE1 published it by
  // decrementing its own count for row 2 to zero.
  const auto& st = *rp.report.final_state;
  CHECK(st.s_in_degree[1][2] == 0);
  CHECK(st.s_left_sum[1][2] == 3.0);
  CHECK(st.s_in_degree[2][2] == 1);
  CHECK(rp.report.per_pe[2].remote_reads_issued > 0);
  check_quiescent(l, rp);
}

TEST_CASE("bidiagonal chain forces waiting") {
  const auto l = generate_synthetic({.kind = SyntheticKind::Bidiagonal, .n = 1000});
  std::mt19937_64 rng(1);
  const auto b = random_rhs(rng, 1000);
  const auto oracle = solve_serial(l, b);
  const auto plan = task_round_robin_partition(1000, 4, 4);
  for (auto engine : kEngines) {
    const auto r = solve(l, b, plan, config(engine, 4));
    CHECK(compare_solutions(r.x, oracle, 1e-9).within_tol);
    std::uint64_t later_spins = 0;
    for (std::size_t p = 1; p < r.report.per_pe.size(); ++p) later_spins += r.report.per_pe[p].lock_wait_spins;
    CHECK(later_spins > 0);
    CHECK(total(r.report, &PeStats::components_solved) == 1000);
  }
}

TEST_CASE("block diagonal: remote-read caching changes reads, not the answer") {
  const auto l = generate_synthetic({.kind = SyntheticKind::BlockDiagonal, .n = 4096, .block_size = 32, .seed = 4});
  std::mt19937_64 rng(2);
  const auto b = random_rhs(rng, 4096);
  const auto plan = task_round_robin_partition(4096, 4, 8);
  auto on = config(EngineKind::PartitionedReadOnly, 4, 4);
  auto off = on;
  off.remote_read_caching = false;
  const auto r_on = solve_partitioned(l, b, plan, on);
  const auto r_off = solve_partitioned(l, b, plan, off);
  CHECK(compare_solutions(r_on.x, r_off.x, 1e-12).within_tol);
  CHECK(compare_solutions(r_on.x, solve_serial(l, b), 1e-9).within_tol);
  CHECK(total(r_on.report, &PeStats::remote_reads_skipped) > 0);
  CHECK(total(r_off.report, &PeStats::remote_reads_skipped) == 0);
}

TEST_CASE("oracle equivalence and quiescence on random systems") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 8; ++trial) {
    const Index n = 16 + static_cast<Index>(rng() % 300);
    const auto l = generate_synthetic({.kind = SyntheticKind::RandomBanded,
                                       .n = n,
                                       .bandwidth = n - 1,
                                       .density = 0.002 + static_cast<double>(rng() % 100) / 1000.0,
                                       .seed = rng()});
    const auto b = random_rhs(rng, n);
    const auto oracle = solve_serial(l, b);
    for (auto engine : kEngines) {
      for (int pes : {1, 2, 4, 8}) {
        for (int workers : {1, 2, 8}) {
          for (const auto& plan : {block_partition(n, pes), task_round_robin_partition(n, pes, 2)}) {
            auto cfg = config(engine, pes, workers);
            cfg.capture_state = true;
            const auto r = solve(l, b, plan, cfg);
            CHECK(compare_solutions(r.x, oracle, 1e-9).within_tol);
            CHECK(r.report.write_locality_violations == 0);
            CHECK(r.report.monotonicity_violations == 0);
            CHECK(total(r.report, &PeStats::components_solved) == static_cast<std::uint64_t>(n));
            check_quiescent(l, r);
          }
        }
      }
    }
  }
}

TEST_CASE("more workers than components") {
  const auto l = three_by_three();
  for (auto engine : kEngines) {
    const auto r = solve(l, std::vector<double>{2, 2, 7}, block_partition(3, 3), config(engine, 3, 8));
    CHECK(r.x == std::vector<double>{1, 1, 1});
  }
}

TEST_CASE("error contract") {
  const auto l = three_by_three();
  const std::vector<double> b{2, 2, 7};
  const auto plan = block_partition(3, 1);
  for (auto engine : kEngines) {
    auto cfg = config(engine, 1);
    CHECK_THROWS_WITH_AS(solve(l, std::vector<double>{1, 2}, plan, cfg), doctest::Contains("DimensionMismatch"),
                         Error);
    CHECK_THROWS_WITH_AS(solve(l, b, block_partition(2, 1), cfg), doctest::Contains("DimensionMismatch"), Error);
    CHECK_THROWS_WITH_AS(solve(l, b, block_partition(3, 2), cfg), doctest::Contains("InvalidConfig"), Error);
    auto zero = l;
    zero.values[zero.col_ptr[1]] = 0.0;
    CHECK_THROWS_WITH_AS(solve(zero, b, plan, cfg), doctest::Contains("ZeroDiagonal"), Error);
    auto bad = cfg;
    bad.workers_per_pe = 0;
    CHECK_THROWS_WITH_AS(solve(l, b, plan, bad), doctest::Contains("InvalidConfig"), Error);
    bad = cfg;
    bad.timeout = std::chrono::milliseconds(0);
    CHECK_THROWS_AS(solve(l, b, plan, bad), Error);
  }
  auto shared = config(EngineKind::SharedAtomics, 1);
  CHECK_THROWS_WITH_AS(solve_partitioned(l, b, plan, shared), doctest::Contains("InvalidConfig"), Error);
}

TEST_CASE("timeout guard trips on an impossible deadline") {
  const Index n = 1 << 20;
  const auto l = generate_synthetic({.kind = SyntheticKind::Bidiagonal, .n = n});
  const std::vector<double> b(static_cast<std::size_t>(n), 1.0);
  for (auto engine : kEngines) {
    auto cfg = config(engine, 8, 2);
    cfg.timeout = std::chrono::milliseconds(1);
    CHECK_THROWS_WITH_AS(solve(l, b, task_round_robin_partition(n, 8, 64), cfg), doctest::Contains("Timeout"),
                         Error);
  }
}

TEST_CASE("segment writers flag foreign stores") {
  detail::PublishedSegment seg(2, 4);
  std::atomic<std::uint64_t> violations{0};
  {
    detail::SegmentWriter own(seg, 2, violations);
    own.count_entry(1);
    own.count_entry(1);
    own.publish(1, 0.5);
  }
  CHECK(violations.load() == 0);
  CHECK(seg.in_degree(1) == 1);
  CHECK(seg.left_sum(1) == 0.5);
  detail::SegmentWriter foreign(seg, 0, violations);
  CHECK(violations.load() == 1);
}
