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

#include <string>

#include "sftrsv/engine.hpp"
#include "sftrsv/error.hpp"

namespace sftrsv {

std::string_view to_string(EngineKind kind) noexcept {
  return kind == EngineKind::SharedAtomics ? "shared" : "partitioned";
}

void SolverConfig::validate() const {
  auto fail = [](const std::string& why) { throw Error(ErrorCode::InvalidConfig, why); };
  if (n_pes < 1) fail("n_pes must be >= 1");
  if (workers_per_pe < 1) fail("workers_per_pe must be >= 1");
  if (timeout.count() <= 0) fail("timeout must be positive");
  if (spin_backoff.initial_pause < 1 || spin_backoff.max_pause < spin_backoff.initial_pause) {
    fail("spin backoff needs 1 <= initial_pause <= max_pause");
  }
}

PeStats& PeStats::operator+=(const PeStats& o) noexcept {
  components_solved += o.components_solved;
  lock_wait_spins += o.lock_wait_spins;
  remote_reads_issued += o.remote_reads_issued;
  remote_reads_skipped += o.remote_reads_skipped;
  local_updates += o.local_updates;
  remote_updates += o.remote_updates;
  return *this;
}

SolveResult solve(const CscMatrix& l, std::span<const double> b, const PartitionPlan& plan,
                  const SolverConfig& cfg) {
  return cfg.engine == EngineKind::SharedAtomics ? solve_shared_atomics(l, b, plan, cfg)
                                                 : solve_partitioned(l, b, plan, cfg);
}

}  // namespace sftrsv
