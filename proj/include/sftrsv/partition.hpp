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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sftrsv/csc_matrix.hpp"

namespace sftrsv {

enum class PlanKind { Block, TaskRoundRobin };

std::string_view to_string(PlanKind kind) noexcept;

/// A contiguous run of components [first, last) scheduled as one unit.
struct TaskRange {
  Index task_id = 0;
  Index first = 0;
  Index last = 0;
  int owner_pe = 0;

  Index size() const noexcept { return last - first; }
  friend bool operator==(const TaskRange&, const TaskRange&) = default;
};

/// Assignment of components to processing elements (PEs). Immutable.
class PartitionPlan {
 public:
  /// Validates coverage, contiguity and owner ids. Throws InvalidSpec.
  static PartitionPlan from_tasks(PlanKind kind, Index n, int n_pes, int tasks_per_pe,
                                  std::vector<TaskRange> tasks);

  PlanKind kind() const noexcept { return kind_; }
  Index n() const noexcept { return n_; }
  int n_pes() const noexcept { return n_pes_; }
  int tasks_per_pe() const noexcept { return tasks_per_pe_; }
  std::span<const TaskRange> tasks() const noexcept { return tasks_; }
  std::span<const int> owners() const noexcept { return owner_; }

  /// Throws IndexOutOfRange.
  int owner_of(Index i) const;

  /// Components owned by `pe`, in task order (which is ascending).
  std::vector<Index> components_of(int pe) const;

  friend bool operator==(const PartitionPlan&, const PartitionPlan&) = default;

 private:
  PartitionPlan() = default;

  PlanKind kind_ = PlanKind::Block;
  Index n_ = 0;
  int n_pes_ = 1;
  int tasks_per_pe_ = 1;
  std::vector<TaskRange> tasks_;
  std::vector<int> owner_;
};

/// n_pes contiguous ranges, the first (n mod n_pes) one larger.
/// Throws InvalidPeCount unless 1 <= n_pes <= n.
PartitionPlan block_partition(Index n, int n_pes);

/// n_pes * tasks_per_pe contiguous tasks (the first n mod T one larger);
/// task t goes to PE t mod n_pes. Throws InvalidPeCount, InvalidSpec or
/// TooManyTasks.
PartitionPlan task_round_robin_partition(Index n, int n_pes, int tasks_per_pe);

/// Round-robin plan with tasks of at most `task_size` components.
PartitionPlan partition_by_task_size(Index n, int n_pes, Index task_size);

/// {"kind","n","n_pes","tasks_per_pe","tasks":[{"id","first","last","pe"}]}
std::string to_json(const PartitionPlan& plan);
PartitionPlan plan_from_json(std::string_view text);

}  // namespace sftrsv
