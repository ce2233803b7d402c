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

#include <algorithm>
#include <atomic>
#include <span>
#include <vector>

#include "published_segment.hpp"
#include "sftrsv/engine.hpp"
#include "sftrsv/reduce.hpp"
#include "worker_team.hpp"

namespace sftrsv {
namespace {

struct PeLocal {
  explicit PeLocal(std::size_t size) : in_degree(size), left_sum(size) {}
  std::vector<std::atomic<std::int64_t>> in_degree;
  std::vector<std::atomic<double>> left_sum;
};

constexpr std::int64_t kUnread = -1;

}  // namespace

SolveResult solve_partitioned(const CscMatrix& l, std::span<const double> b,
                              const PartitionPlan& plan, const SolverConfig& cfg) {
  detail::check_inputs(l, b, plan, cfg, EngineKind::PartitionedReadOnly);
  const auto layout = detail::make_layout(plan, cfg.workers_per_pe);
  const auto n = static_cast<std::size_t>(l.n);
  const int n_pes = layout.n_pes;

  // Segment p holds, for every component i, the stored entries of row i that
  // live in p's columns and are still unfinished (the owner's count includes
  // the diagonal and never drops, since its own updates go to PeLocal). So
  // sum_q segment[q].in_degree(i) == 1 + local dependencies + unfinished
  // remote ones, and i is ready when that equals PeLocal::in_degree + 1.
  std::vector<detail::PublishedSegment> segments;
  segments.reserve(static_cast<std::size_t>(n_pes));
  std::vector<PeLocal> local;
  local.reserve(static_cast<std::size_t>(n_pes));
  for (int p = 0; p < n_pes; ++p) {
    segments.emplace_back(p, n);
    local.emplace_back(layout.owned[p].size());
  }

  std::vector<double> x(n, 0.0);
  std::vector<PeStats> worker_stats(static_cast<std::size_t>(layout.n_workers()));
  std::vector<std::uint64_t> worker_monotonicity(worker_stats.size(), 0);
  std::atomic<std::uint64_t> locality_violations{0};
  const auto owner = plan.owners();
  detail::Watchdog watchdog(cfg.timeout);

  auto setup = [&](int w) {
    const int pe = layout.pe_of_worker(w);
    detail::SegmentWriter publish(segments[pe], pe, locality_violations);
    for (Index j : layout.worker_items[w]) {
      for (Offset k = l.col_ptr[j]; k < l.col_ptr[j + 1]; ++k) publish.count_entry(l.row_idx[k]);
    }
  };

  auto work = [&](int w) {
    const int pe = layout.pe_of_worker(w);
    auto& mine = local[pe];
    detail::SegmentWriter publish(segments[pe], pe, locality_violations);
    PeStats stats;
    std::uint64_t monotonicity = 0;
    // r_in_degree caches the last value read from each PE; lanes is scratch
    // for the destructive tree reduction.
    std::vector<std::int64_t> r_in_degree(static_cast<std::size_t>(n_pes));
    std::vector<std::int64_t> degree_lanes(static_cast<std::size_t>(n_pes));
    std::vector<double> sum_lanes(static_cast<std::size_t>(n_pes));

    for (Index i : layout.worker_items[w]) {
      const auto slot = static_cast<std::size_t>(layout.local_index[i]);
      detail::Backoff backoff(cfg.spin_backoff, watchdog);
      std::fill(r_in_degree.begin(), r_in_degree.end(), kUnread);

      while (true) {
        for (int q = 0; q < n_pes; ++q) {
          if (cfg.remote_read_caching && r_in_degree[q] == 0) {
            ++stats.remote_reads_skipped;
            continue;
          }
          const std::int64_t seen = segments[q].in_degree(i);
          if (q != pe) ++stats.remote_reads_issued;
          if (r_in_degree[q] != kUnread && seen > r_in_degree[q]) ++monotonicity;
          r_in_degree[q] = seen;
        }
        std::copy(r_in_degree.begin(), r_in_degree.end(), degree_lanes.begin());
        const std::int64_t published =
            reduce_contributions_inplace(std::span<std::int64_t>(degree_lanes));
        const std::int64_t here = mine.in_degree[slot].load(std::memory_order_acquire);
        if (here + 1 == published) break;
        ++stats.lock_wait_spins;
        if (!backoff.pause()) return;
      }

      for (int q = 0; q < n_pes; ++q) {
        sum_lanes[q] = segments[q].left_sum(i);
        if (q != pe) ++stats.remote_reads_issued;
      }
      const double remote_sum = reduce_contributions_inplace(std::span<double>(sum_lanes));

      const Offset diag = l.col_ptr[i];
      const double xi =
          (b[i] - mine.left_sum[slot].load(std::memory_order_relaxed) - remote_sum) / l.values[diag];
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
          publish.publish(rid, contribution);
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
  report.write_locality_violations = locality_violations.load();
  report.per_pe.assign(static_cast<std::size_t>(n_pes), {});
  for (int w = 0; w < layout.n_workers(); ++w) {
    report.per_pe[layout.pe_of_worker(w)] += worker_stats[w];
    report.monotonicity_violations += worker_monotonicity[w];
  }

  if (cfg.capture_state) {
    StateSnapshot snap;
    snap.d_in_degree.resize(n);
    snap.d_left_sum.resize(n);
    snap.s_in_degree.assign(static_cast<std::size_t>(n_pes), std::vector<std::int64_t>(n));
    snap.s_left_sum.assign(static_cast<std::size_t>(n_pes), std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
      const auto slot = static_cast<std::size_t>(layout.local_index[i]);
      snap.d_in_degree[i] = local[owner[i]].in_degree[slot].load();
      snap.d_left_sum[i] = local[owner[i]].left_sum[slot].load();
      for (int q = 0; q < n_pes; ++q) {
        snap.s_in_degree[q][i] = segments[q].in_degree(static_cast<Index>(i));
        snap.s_left_sum[q][i] = segments[q].left_sum(static_cast<Index>(i));
      }
    }
    report.final_state = std::move(snap);
  }
  return result;
}

}  // namespace sftrsv
