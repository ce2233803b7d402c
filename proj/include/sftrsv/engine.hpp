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

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sftrsv/csc_matrix.hpp"
#include "sftrsv/partition.hpp"

namespace sftrsv {

enum class EngineKind {
  /// One set of published counters and sums shared by every PE; every
  /// cross-PE dependency is an atomic read-modify-write on shared memory.
  SharedAtomics,
  /// Every PE owns a published segment that only it writes; other PEs read
  /// it and reduce the per-PE contributions themselves.
  PartitionedReadOnly,
};

std::string_view to_string(EngineKind kind) noexcept;

struct SpinBackoff {
  std::uint32_t initial_pause = 1;  ///< pause instructions on the first failed check
  std::uint32_t max_pause = 64;     ///< beyond this the waiter yields its core
};

struct SolverConfig {
  EngineKind engine = EngineKind::PartitionedReadOnly;
  int n_pes = 1;
  int workers_per_pe = 1;
  SpinBackoff spin_backoff{};
  std::chrono::milliseconds timeout{60'000};
  /// Skip re-reading a PE's in-degree contribution once it was seen at 0.
  bool remote_read_caching = true;
  /// Copy the published arrays into SolveReport::final_state.
  bool capture_state = false;

  /// Throws InvalidConfig.
  void validate() const;
};

struct PeStats {
  std::uint64_t components_solved = 0;
  std::uint64_t lock_wait_spins = 0;  ///< failed dependency checks
  std::uint64_t remote_reads_issued = 0;
  std::uint64_t remote_reads_skipped = 0;
  std::uint64_t local_updates = 0;
  std::uint64_t remote_updates = 0;

  PeStats& operator+=(const PeStats& o) noexcept;
};

/// Published and private arrays as left by a finished solve, indexed by
/// global component. For SharedAtomics the `s_*` tables have a single row.
struct StateSnapshot {
  std::vector<std::int64_t> d_in_degree;
  std::vector<double> d_left_sum;
  std::vector<std::vector<std::int64_t>> s_in_degree;
  std::vector<std::vector<double>> s_left_sum;
};

struct SolveReport {
  std::chrono::duration<double> setup_time{};  ///< in-degree construction
  std::chrono::duration<double> wall_time{};   ///< solve phase
  std::vector<PeStats> per_pe;
  /// Writer handles created for a segment the writer does not own.
  std::uint64_t write_locality_violations = 0;
  /// Observed increases of a published in-degree after setup.
  std::uint64_t monotonicity_violations = 0;
  std::optional<StateSnapshot> final_state;

  std::chrono::duration<double> total_time() const noexcept { return setup_time + wall_time; }
};

struct SolveResult {
  std::vector<double> x;
  SolveReport report;
};

/// Synchronization-free solve where all PEs update one shared set of
/// dependency counters and partial sums with atomic read-modify-writes.
///
/// Throws DimensionMismatch, InvalidConfig, ZeroDiagonal, MissingDiagonal,
/// InvalidMatrix or Timeout.
SolveResult solve_shared_atomics(const CscMatrix& l, std::span<const double> b,
                                 const PartitionPlan& plan, const SolverConfig& cfg);

/// Synchronization-free solve over per-PE published segments: updates for
/// remote dependents go to the updater's own segment, and a waiting component
/// gathers and reduces every PE's contribution.
///
/// Throws as solve_shared_atomics.
SolveResult solve_partitioned(const CscMatrix& l, std::span<const double> b,
                              const PartitionPlan& plan, const SolverConfig& cfg);

/// Dispatches on cfg.engine.
SolveResult solve(const CscMatrix& l, std::span<const double> b, const PartitionPlan& plan,
                  const SolverConfig& cfg);

}  // namespace sftrsv
