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

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <vector>

#include "sftrsv/engine.hpp"

namespace sftrsv::detail {

/// Who solves what. Worker `w` of PE `p` has global id p * workers_per_pe + w
/// and takes every workers_per_pe-th component of p's task-order sequence, so
/// each worker's list is ascending. Because all dependencies point from lower
/// to higher index, the smallest unfinished component can always proceed.
struct TeamLayout {
  int n_pes = 1;
  int workers_per_pe = 1;
  std::vector<std::vector<Index>> owned;         // per PE
  std::vector<std::int32_t> local_index;         // global -> slot in owner's list
  std::vector<std::vector<Index>> worker_items;  // per worker

  int n_workers() const noexcept { return n_pes * workers_per_pe; }
  int pe_of_worker(int worker) const noexcept { return worker / workers_per_pe; }
};

TeamLayout make_layout(const PartitionPlan& plan, int workers_per_pe);

/// Checks shared by both engines. Throws DimensionMismatch / InvalidConfig /
/// diagonal and validity errors.
void check_inputs(const CscMatrix& l, std::span<const double> b, const PartitionPlan& plan,
                  const SolverConfig& cfg, EngineKind expected);

/// Abort flag plus deadline, shared by a team.
class Watchdog {
 public:
  explicit Watchdog(std::chrono::milliseconds timeout)
      : deadline_(std::chrono::steady_clock::now() + timeout) {}

  bool aborted() const noexcept { return aborted_.load(std::memory_order_relaxed); }
  bool timed_out() const noexcept { return timed_out_.load(std::memory_order_relaxed); }
  void abort() noexcept { aborted_.store(true, std::memory_order_relaxed); }

  /// Trips the abort flag once the deadline has passed.
  bool check_deadline() noexcept {
    if (std::chrono::steady_clock::now() < deadline_) return false;
    timed_out_.store(true, std::memory_order_relaxed);
    abort();
    return true;
  }

 private:
  std::chrono::steady_clock::time_point deadline_;
  std::atomic<bool> aborted_{false};
  std::atomic<bool> timed_out_{false};
};

/// Bounded exponential pause, then yield. One instance per waiting component.
class Backoff {
 public:
  Backoff(const SpinBackoff& cfg, Watchdog& watchdog) noexcept
      : pause_(cfg.initial_pause), max_pause_(cfg.max_pause), watchdog_(watchdog) {}

  /// Call after a failed dependency check. Returns false once the team is
  /// aborting.
  bool pause() noexcept;

 private:
  std::uint32_t pause_;
  std::uint32_t max_pause_;
  std::uint32_t rounds_ = 0;
  Watchdog& watchdog_;
};

struct PhaseTimes {
  std::chrono::duration<double> setup{};
  std::chrono::duration<double> solve{};
};

/// Runs `setup(worker)` on every worker, one rendezvous, then
/// `solve(worker)`. Rethrows the first worker exception; throws Timeout if the
/// watchdog tripped on its deadline.
PhaseTimes run_team(int n_workers, Watchdog& watchdog, const std::function<void(int)>& setup,
                    const std::function<void(int)>& solve);

}  // namespace sftrsv::detail
