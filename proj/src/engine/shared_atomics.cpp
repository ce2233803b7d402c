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

#include <atomic>
#include <vector>

#include "sftrsv/engine.hpp"
#include "worker_team.hpp"

namespace sftrsv {
namespace {

// Private per-PE counters for dependencies satisfied by the same PE.
struct PeLocal {
  explicit PeLocal(std::size_t size) : in_degree(size), left_sum(size) {}
  std::vector<std::atomic<std::int64_t>> in_degree;
  std::vector<std::atomic<double>> left_sum;
};

}  // namespace

SolveResult solve_shared_atomics(const CscMatrix& l, std::span<const double> b,
                                 const PartitionPlan& plan, const SolverConfig& cfg) {
  detail::check_inputs(l, b, plan, cfg, EngineKind::SharedAtomics);
  const auto layout = detail::make_layout(plan, cfg.workers_per_pe);
  const auto n = static_cast<std::size_t>(l.n);

  // s_in_degree[i] starts at the full stored-entry count of row i (diagonal
  // included) and drops by one per dependency satisfied from another PE;
  // d_in_degree counts dependencies satisfied on the owning PE. Component i
  // is ready exactly when d_in_degree + 1 == s_in_degree.
  std::vector<std::atomic<std::int64_t>> s_in_degree(n);
  std::vector<std::atomic<double>> s_left_sum(n);
  std::vector<PeLocal> local;
  local.reserve(static_cast<std::size_t>(layout.n_pes));
  for (const auto& owned : layout.owned) local.emplace_back(owned.size());

  std::vector<double> x(n, 0.0);
  std::vector<PeStats> worker_stats(static_cast<std::size_t>(layout.n_workers()));
  std::vector<std::uint64_t> worker_monotonicity(worker_stats.size(), 0);
  const auto owner = plan.owners();
  detail::Watchdog watchdog(cfg.timeout);

  auto setup = [&](int w) {
    for (Index j : layout.worker_items[w]) {
      for (Offset k = l.col_ptr[j]; k < l.col_ptr[j + 1]; ++k) {
        s_in_degree[l.row_idx[k]].fetch_add(1, std::memory_order_relaxed);
      }
    }
  };

  auto work = [&](int w) {
    const int pe = layout.pe_of_worker(w);
    auto& mine = local[pe];
    PeStats stats;
    std::uint64_t monotonicity = 0;
    for (Index i : layout.worker_items[w]) {
      const auto slot = static_cast<std::size_t>(layout.local_index[i]);
      detail::Backoff backoff(cfg.spin_backoff, watchdog);
      std::int64_t last_seen = -1;
      while (true) {
        const std::int64_t shared = s_in_degree[i].load(std::memory_order_acquire);
        const std::int64_t here = mine.in_degree[slot].load(std::memory_order_acquire);
        if (last_seen >= 0 && shared > last_seen) ++monotonicity;
        last_seen = shared;
        if (here + 1 == shared) break;
        ++stats.lock_wait_spins;
        if (!backoff.pause()) return;
      }

      const Offset diag = l.col_ptr[i];
      const double xi = (b[i] - mine.left_sum[slot].load(std::memory_order_relaxed) -
                         s_left_sum[i].load(std::memory_order_relaxed)) /
                        l.values[diag];
      x[i] = xi;

      for (Offset k = diag + 1; k < l.col_ptr[i + 1]; ++k) {
        const Index rid = l.row_idx[k];
        const double contribution = l.values[k] * xi;
        if (owner[rid] == pe) {
          const auto rslot = static_cast<std::size_t>(layout.local_index[rid]);
          mine.left_sum[rslot].fetch_add(contribution, std::memory_order_relaxed);
          mine.in_degree[rslot].fetch_add(1, std::memory_order_release);
          ++stats.local_updates;
        } else {
          s_left_sum[rid].fetch_add(contribution, std::memory_order_relaxed);
          s_in_degree[rid].fetch_sub(1, std::memory_order_release);
          ++stats.remote_updates;
        }
      }
      ++stats.components_solved;
    }
    worker_stats[w] = stats;
    worker_monotonicity[w] = monotonicity;
  };

  const auto times = detail::run_team(layout.n_workers(), watchdog, setup, work);

  SolveResult result;
  result.x = std::move(x);
  auto& report = result.report;
  report.setup_time = times.setup;
  report.wall_time = times.solve;
  report.per_pe.assign(static_cast<std::size_t>(layout.n_pes), {});
  for (int w = 0; w < layout.n_workers(); ++w) {
    report.per_pe[layout.pe_of_worker(w)] += worker_stats[w];
    report.monotonicity_violations += worker_monotonicity[w];
  }

  if (cfg.capture_state) {
    StateSnapshot snap;
    snap.d_in_degree.resize(n);
    snap.d_left_sum.resize(n);
    snap.s_in_degree.assign(1, std::vector<std::int64_t>(n));
    snap.s_left_sum.assign(1, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
      const auto& pe_local = local[owner[i]];
      const auto slot = static_cast<std::size_t>(layout.local_index[i]);
      snap.d_in_degree[i] = pe_local.in_degree[slot].load();
      snap.d_left_sum[i] = pe_local.left_sum[slot].load();
      snap.s_in_degree[0][i] = s_in_degree[i].load();
      snap.s_left_sum[0][i] = s_left_sum[i].load();
    }
    report.final_state = std::move(snap);
  }
  return result;
}

}  // namespace sftrsv
