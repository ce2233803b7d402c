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

#include "sftrsv/partition.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <string>

#include "sftrsv/error.hpp"

namespace sftrsv {

std::string_view to_string(PlanKind kind) noexcept {
  return kind == PlanKind::Block ? "block" : "round_robin";
}

PartitionPlan PartitionPlan::from_tasks(PlanKind kind, Index n, int n_pes, int tasks_per_pe,
                                        std::vector<TaskRange> tasks) {
  auto fail = [](const std::string& why) { throw Error(ErrorCode::InvalidSpec, "plan: " + why); };
  if (n < 1 || n_pes < 1 || tasks_per_pe < 1) fail("n, n_pes and tasks_per_pe must be >= 1");

  PartitionPlan plan;
  plan.kind_ = kind;
  plan.n_ = n;
  plan.n_pes_ = n_pes;
  plan.tasks_per_pe_ = tasks_per_pe;
  plan.owner_.assign(static_cast<std::size_t>(n), -1);

  Index next = 0;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const auto& task = tasks[t];
    if (task.task_id != static_cast<Index>(t)) fail("task ids must be 0..T-1 in order");
    if (task.first != next || task.last <= task.first || task.last > n) {
      fail("task " + std::to_string(t) + " is not contiguous with its predecessor");
    }
    if (task.owner_pe < 0 || task.owner_pe >= n_pes) fail("task owner out of range");
    std::fill(plan.owner_.begin() + task.first, plan.owner_.begin() + task.last, task.owner_pe);
    next = task.last;
  }
  if (next != n) fail("tasks do not cover all components");
  plan.tasks_ = std::move(tasks);
  return plan;
}

int PartitionPlan::owner_of(Index i) const {
  if (i < 0 || i >= n_) {
    throw Error(ErrorCode::IndexOutOfRange,
                "component " + std::to_string(i) + " outside [0, " + std::to_string(n_) + ")");
  }
  return owner_[i];
}

std::vector<Index> PartitionPlan::components_of(int pe) const {
  std::vector<Index> out;
  for (const auto& task : tasks_) {
    if (task.owner_pe != pe) continue;
    for (Index i = task.first; i < task.last; ++i) out.push_back(i);
  }
  return out;
}

PartitionPlan block_partition(Index n, int n_pes) {
  if (n_pes < 1 || n_pes > n) {
    throw Error(ErrorCode::InvalidPeCount, "need 1 <= n_pes <= n, got n_pes=" +
                                               std::to_string(n_pes) + ", n=" + std::to_string(n));
  }
  const Index base = n / n_pes;
  const Index extra = n % n_pes;
  std::vector<TaskRange> tasks;
  tasks.reserve(static_cast<std::size_t>(n_pes));
  for (int p = 0; p < n_pes; ++p) {
    const Index first = p * base + std::min<Index>(p, extra);
    const Index size = base + (p < extra ? 1 : 0);
    tasks.push_back({p, first, first + size, p});
  }
  return PartitionPlan::from_tasks(PlanKind::Block, n, n_pes, 1, std::move(tasks));
}

PartitionPlan task_round_robin_partition(Index n, int n_pes, int tasks_per_pe) {
  if (n_pes < 1) throw Error(ErrorCode::InvalidPeCount, "n_pes must be >= 1");
  if (tasks_per_pe < 1) throw Error(ErrorCode::InvalidSpec, "tasks_per_pe must be >= 1");
  const std::int64_t total = static_cast<std::int64_t>(n_pes) * tasks_per_pe;
  if (total > n) {
    throw Error(ErrorCode::TooManyTasks, std::to_string(n_pes) + " PEs x " +
                                             std::to_string(tasks_per_pe) + " tasks exceeds n=" +
                                             std::to_string(n));
  }
  const auto t_count = static_cast<Index>(total);
  const Index base = n / t_count;
  const Index extra = n % t_count;
  std::vector<TaskRange> tasks;
  tasks.reserve(static_cast<std::size_t>(t_count));
  Index first = 0;
  for (Index t = 0; t < t_count; ++t) {
    const Index size = base + (t < extra ? 1 : 0);
    tasks.push_back({t, first, first + size, static_cast<int>(t % n_pes)});
    first += size;
  }
  return PartitionPlan::from_tasks(PlanKind::TaskRoundRobin, n, n_pes, tasks_per_pe,
                                   std::move(tasks));
}

PartitionPlan partition_by_task_size(Index n, int n_pes, Index task_size) {
  if (task_size < 1) throw Error(ErrorCode::InvalidSpec, "task size must be >= 1");
  if (n_pes < 1) throw Error(ErrorCode::InvalidPeCount, "n_pes must be >= 1");
  const std::int64_t tasks = (static_cast<std::int64_t>(n) + task_size - 1) / task_size;
  const std::int64_t per_pe = std::max<std::int64_t>(1, (tasks + n_pes - 1) / n_pes);
  return task_round_robin_partition(n, n_pes, static_cast<int>(per_pe));
}

std::string to_json(const PartitionPlan& plan) {
  nlohmann::ordered_json j;
  j["kind"] = std::string(to_string(plan.kind()));
  j["n"] = plan.n();
  j["n_pes"] = plan.n_pes();
  j["tasks_per_pe"] = plan.tasks_per_pe();
  auto& tasks = j["tasks"] = nlohmann::ordered_json::array();
  for (const auto& t : plan.tasks()) {
    tasks.push_back({{"id", t.task_id}, {"first", t.first}, {"last", t.last}, {"pe", t.owner_pe}});
  }
  return j.dump();
}

PartitionPlan plan_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    const auto kind_name = j.at("kind").get<std::string>();
    PlanKind kind{};
    if (kind_name == "block") kind = PlanKind::Block;
    else if (kind_name == "round_robin") kind = PlanKind::TaskRoundRobin;
    else throw Error(ErrorCode::InvalidSpec, "plan: unknown kind '" + kind_name + "'");
    std::vector<TaskRange> tasks;
    for (const auto& t : j.at("tasks")) {
      tasks.push_back({t.at("id").get<Index>(), t.at("first").get<Index>(),
                       t.at("last").get<Index>(), t.at("pe").get<int>()});
    }
    return PartitionPlan::from_tasks(kind, j.at("n").get<Index>(), j.at("n_pes").get<int>(),
                                     j.at("tasks_per_pe").get<int>(), std::move(tasks));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidSpec, std::string("plan json: ") + e.what());
  }
}

}  // namespace sftrsv
