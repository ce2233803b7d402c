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

#include "worker_team.hpp"

#include <barrier>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#endif

#include "sftrsv/error.hpp"
#include "sftrsv/lower_triangular.hpp"

namespace sftrsv::detail {
namespace {

inline void cpu_relax() noexcept {
#if defined(__x86_64__) || defined(__i386__)
  _mm_pause();
#elif defined(__aarch64__)
  asm volatile("yield" ::: "memory");
#endif
}

}  // namespace

TeamLayout make_layout(const PartitionPlan& plan, int workers_per_pe) {
  TeamLayout t;
  t.n_pes = plan.n_pes();
  t.workers_per_pe = workers_per_pe;
  t.owned.resize(static_cast<std::size_t>(t.n_pes));
  t.local_index.assign(static_cast<std::size_t>(plan.n()), -1);
  t.worker_items.resize(static_cast<std::size_t>(t.n_workers()));
  for (int p = 0; p < t.n_pes; ++p) {
    auto& owned = t.owned[p] = plan.components_of(p);
    for (std::size_t k = 0; k < owned.size(); ++k) {
      t.local_index[owned[k]] = static_cast<std::int32_t>(k);
      t.worker_items[p * workers_per_pe + static_cast<int>(k % workers_per_pe)].push_back(owned[k]);
    }
  }
  return t;
}

void check_inputs(const CscMatrix& l, std::span<const double> b, const PartitionPlan& plan,
                  const SolverConfig& cfg, EngineKind expected) {
  cfg.validate();
  if (cfg.engine != expected) {
    throw Error(ErrorCode::InvalidConfig,
                "config selects the " + std::string(to_string(cfg.engine)) + " engine");
  }
  if (b.size() != static_cast<std::size_t>(l.n)) {
    throw Error(ErrorCode::DimensionMismatch, "b has " + std::to_string(b.size()) +
                                                  " entries, matrix has " + std::to_string(l.n));
  }
  if (plan.n() != l.n) {
    throw Error(ErrorCode::DimensionMismatch, "plan covers " + std::to_string(plan.n()) +
                                                  " components, matrix has " + std::to_string(l.n));
  }
  if (plan.n_pes() != cfg.n_pes) {
    throw Error(ErrorCode::InvalidConfig, "plan has " + std::to_string(plan.n_pes()) +
                                              " PEs, config has " + std::to_string(cfg.n_pes));
  }
  require_lower_triangular(l);
}

bool Backoff::pause() noexcept {
  if (watchdog_.aborted()) return false;
  if (pause_ <= max_pause_) {
    for (std::uint32_t k = 0; k < pause_; ++k) cpu_relax();
    pause_ *= 2;
  } else {
    std::this_thread::yield();
  }
  if ((++rounds_ & 63u) == 0 && watchdog_.check_deadline()) return false;
  return true;
}

PhaseTimes run_team(int n_workers, Watchdog& watchdog, const std::function<void(int)>& setup,
                    const std::function<void(int)>& solve) {
  using clock = std::chrono::steady_clock;
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto record = [&](std::exception_ptr e) {
    std::lock_guard lock(failure_mu);
    if (!failure) failure = e;
    watchdog.abort();
  };

  const auto start = clock::now();
  clock::time_point setup_done{};
  std::barrier rendezvous(n_workers, [&]() noexcept { setup_done = clock::now(); });
  {
    std::vector<std::jthread> workers;
    workers.reserve(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w) {
      workers.emplace_back([&, w] {
        try {
          setup(w);
        } catch (...) {
          record(std::current_exception());
        }
        rendezvous.arrive_and_wait();
        if (watchdog.aborted()) return;
        try {
          solve(w);
        } catch (...) {
          record(std::current_exception());
        }
      });
    }
  }
  const auto end = clock::now();

  if (failure) std::rethrow_exception(failure);
  if (watchdog.timed_out()) throw Error(ErrorCode::Timeout, "solve exceeded its deadline");
  return {setup_done - start, end - setup_done};
}

}  // namespace sftrsv::detail
