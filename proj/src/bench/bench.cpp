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

#include "sftrsv/bench.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>

#include "sftrsv/error.hpp"
#include "sftrsv/matrix_market.hpp"
#include "sftrsv/reference.hpp"
#include "sftrsv/vector_kernels.hpp"

namespace sftrsv::bench {
namespace {

std::vector<std::string_view> split_on(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto at = text.find(sep, start);
    parts.push_back(text.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return parts;
}

template <class T>
T parse_field(std::string_view tok, std::string_view what) {
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw Error(ErrorCode::InvalidSpec,
                "bad " + std::string(what) + " '" + std::string(tok) + "' in synthetic spec");
  }
  return value;
}

nlohmann::ordered_json per_pe_array(const std::vector<PeStats>& per_pe,
                                    std::uint64_t PeStats::*field) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& s : per_pe) arr.push_back(s.*field);
  return arr;
}

constexpr std::array<std::pair<std::string_view, std::uint64_t PeStats::*>, 6> kPerPeFields{{
    {"per_pe_components_solved", &PeStats::components_solved},
    {"per_pe_lock_wait_spins", &PeStats::lock_wait_spins},
    {"per_pe_remote_reads_issued", &PeStats::remote_reads_issued},
    {"per_pe_remote_reads_skipped", &PeStats::remote_reads_skipped},
    {"per_pe_local_updates", &PeStats::local_updates},
    {"per_pe_remote_updates", &PeStats::remote_updates},
}};

constexpr std::array<std::string_view, 30> kFields{
    "matrix",          "n",
    "nnz",             "n_levels",
    "parallelism",     "dependency",
    "engine",          "plan",
    "n_pes",           "tasks_per_pe",
    "workers_per_pe",  "remote_read_caching",
    "repeats",         "engine_runs",
    "oracle_runs",     "timeouts",
    "mean_setup_time", "mean_wall_time",
    "min_wall_time",   "max_wall_time",
    "mean_total_time", "max_rel_error",
    "verified",        "per_pe_components_solved",
    "per_pe_lock_wait_spins", "per_pe_remote_reads_issued",
    "per_pe_remote_reads_skipped", "per_pe_local_updates",
    "per_pe_remote_updates", "simd",
};

nlohmann::ordered_json record_object(const BenchRecord& r) {
  nlohmann::ordered_json j;
  j["matrix"] = r.matrix;
  j["n"] = r.stats.n_rows;
  j["nnz"] = r.stats.nnz;
  j["n_levels"] = r.stats.n_levels;
  j["parallelism"] = r.stats.parallelism;
  j["dependency"] = r.stats.dependency;
  j["engine"] = r.engine;
  j["plan"] = r.plan;
  j["n_pes"] = r.n_pes;
  j["tasks_per_pe"] = r.tasks_per_pe;
  j["workers_per_pe"] = r.workers_per_pe;
  j["remote_read_caching"] = r.remote_read_caching;
  j["repeats"] = r.repeats;
  j["engine_runs"] = r.engine_runs;
  j["oracle_runs"] = r.oracle_runs;
  j["timeouts"] = r.timeouts;
  j["mean_setup_time"] = r.mean_setup_time;
  j["mean_wall_time"] = r.mean_wall_time;
  j["min_wall_time"] = r.min_wall_time;
  j["max_wall_time"] = r.max_wall_time;
  j["mean_total_time"] = r.mean_total_time;
  j["max_rel_error"] = r.max_rel_error ? nlohmann::ordered_json(*r.max_rel_error) : nlohmann::ordered_json();
  j["verified"] = r.verified ? nlohmann::ordered_json(*r.verified) : nlohmann::ordered_json();
  for (const auto& [name, field] : kPerPeFields) j[std::string(name)] = per_pe_array(r.per_pe, field);
  j["simd"] = std::string(kernels::to_string(kernels::active_level()));
  return j;
}

std::string csv_cell(const nlohmann::ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + "\"";
  }
  if (v.is_array()) {
    std::string joined;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (k) joined += ';';
      joined += v[k].dump();
    }
    return joined;
  }
  return v.dump();
}

}  // namespace

SyntheticSpec parse_synthetic(std::string_view text, std::uint64_t seed) {
  const auto parts = split_on(text, ':');
  if (parts.size() < 2) throw Error(ErrorCode::InvalidSpec, "expected KIND:n[:params], got '" + std::string(text) + "'");
  SyntheticSpec spec;
  spec.seed = seed;
  spec.n = parse_field<Index>(parts[1], "n");
  const auto kind = parts[0];
  auto expect_params = [&](std::size_t lo, std::size_t hi) {
    if (parts.size() < lo || parts.size() > hi) {
      throw Error(ErrorCode::InvalidSpec, "wrong parameter count for '" + std::string(kind) + "'");
    }
  };
  if (kind == "diagonal") {
    expect_params(2, 2);
    spec.kind = SyntheticKind::Diagonal;
  } else if (kind == "bidiagonal") {
    expect_params(2, 2);
    spec.kind = SyntheticKind::Bidiagonal;
  } else if (kind == "banded") {
    expect_params(3, 4);
    spec.kind = SyntheticKind::RandomBanded;
    spec.bandwidth = parse_field<Index>(parts[2], "bandwidth");
    spec.density = parts.size() == 4 ? parse_field<double>(parts[3], "density") : 1.0;
  } else if (kind == "block") {
    expect_params(3, 3);
    spec.kind = SyntheticKind::BlockDiagonal;
    spec.block_size = parse_field<Index>(parts[2], "block size");
  } else if (kind == "dense") {
    expect_params(2, 2);
    spec.kind = SyntheticKind::DenseLower;
  } else {
    throw Error(ErrorCode::InvalidSpec, "unknown synthetic kind '" + std::string(kind) + "'");
  }
  validate(spec);
  return spec;
}

LoadedMatrix load_matrix(const MatrixSource& source) {
  if (source.file.has_value() == source.synthetic.has_value()) {
    throw Error(ErrorCode::InvalidSpec, "exactly one of a matrix file or a synthetic spec is required");
  }
  if (source.file) {
    const auto raw = read_matrix_market(*source.file);
    return {source.file->stem().string(), extract_lower_triangular(raw, source.diagonal_policy)};
  }
  const auto spec = parse_synthetic(*source.synthetic, source.seed);
  return {*source.synthetic, generate_synthetic(spec)};
}

RhsSource parse_rhs(std::string_view text, std::uint64_t seed) {
  RhsSource rhs;
  rhs.seed = seed;
  if (text == "ones") {
    rhs.kind = RhsKind::Ones;
  } else if (text == "random") {
    rhs.kind = RhsKind::Random;
  } else {
    rhs.kind = RhsKind::File;
    rhs.path = std::string(text);
  }
  return rhs;
}

std::vector<double> make_rhs(const RhsSource& source, Index n) {
  const auto size = static_cast<std::size_t>(n);
  switch (source.kind) {
    case RhsKind::Ones:
      return std::vector<double>(size, 1.0);
    case RhsKind::Random: {
      // Separate stream from the matrix generator, which uses the raw seed.
      std::mt19937_64 rng(source.seed ^ 0x9e3779b97f4a7c15ULL);
      std::uniform_real_distribution<double> dist(-1.0, 1.0);
      std::vector<double> b(size);
      for (auto& v : b) v = dist(rng);
      return b;
    }
    case RhsKind::File: {
      std::ifstream in(source.path);
      if (!in) throw Error(ErrorCode::Io, "cannot open '" + source.path.string() + "'");
      std::vector<double> b;
      std::string line;
      while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '%' || line[first] == '#') continue;
        std::istringstream fields(line);
        double v = 0.0;
        if (!(fields >> v)) throw Error(ErrorCode::MalformedEntry, "bad rhs line '" + line + "'");
        b.push_back(v);
      }
      if (b.size() != size) {
        throw Error(ErrorCode::DimensionMismatch, "rhs file has " + std::to_string(b.size()) +
                                                      " values, matrix has " + std::to_string(n));
      }
      return b;
    }
  }
  return {};
}

PartitionPlan make_plan(Index n, const RunSpec& spec) {
  if (spec.tasks_per_pe <= 0) return block_partition(n, spec.solver.n_pes);
  return task_round_robin_partition(n, spec.solver.n_pes, spec.tasks_per_pe);
}

BenchRecord run_benchmark(const LoadedMatrix& matrix, const MatrixStats& stats,
                          std::span<const double> b, const RunSpec& spec) {
  if (spec.repeats < 1) throw Error(ErrorCode::InvalidConfig, "repeats must be >= 1");
  const auto plan = make_plan(matrix.l.n, spec);

  BenchRecord r;
  r.matrix = matrix.name;
  r.stats = stats;
  r.engine = std::string(to_string(spec.solver.engine));
  r.plan = std::string(to_string(plan.kind()));
  r.n_pes = spec.solver.n_pes;
  r.tasks_per_pe = plan.tasks_per_pe();
  r.workers_per_pe = spec.solver.workers_per_pe;
  r.remote_read_caching = spec.solver.remote_read_caching;
  r.repeats = spec.repeats;
  r.per_pe.assign(static_cast<std::size_t>(spec.solver.n_pes), {});

  std::vector<double> reference;
  if (spec.verify) {
    reference = solve_serial(matrix.l, b);
    ++r.oracle_runs;
  }

  double setup_sum = 0.0, wall_sum = 0.0;
  double wall_min = std::numeric_limits<double>::infinity(), wall_max = 0.0;
  double worst_rel = 0.0;
  bool all_ok = true;
  for (int run = 0; run < spec.repeats; ++run) {
    SolveResult result;
    try {
      ++r.engine_runs;
      result = solve(matrix.l, b, plan, spec.solver);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Timeout) throw;
      ++r.timeouts;
      r.failure = e.what();
      all_ok = false;
      break;
    }
    const double setup = result.report.setup_time.count();
    const double wall = result.report.wall_time.count();
    setup_sum += setup;
    wall_sum += wall;
    wall_min = std::min(wall_min, wall);
    wall_max = std::max(wall_max, wall);
    for (std::size_t p = 0; p < r.per_pe.size(); ++p) r.per_pe[p] += result.report.per_pe[p];
    if (spec.verify) {
      const auto cmp = compare_solutions(result.x, reference, spec.tolerance);
      if (!(cmp.max_rel_error <= worst_rel)) worst_rel = cmp.max_rel_error;
      all_ok = all_ok && cmp.within_tol;
    }
    r.last_solution = std::move(result.x);
  }

  const int completed = r.engine_runs - r.timeouts;
  if (completed > 0) {
    r.mean_setup_time = setup_sum / completed;
    r.mean_wall_time = wall_sum / completed;
    r.min_wall_time = wall_min;
    r.max_wall_time = wall_max;
    r.mean_total_time = r.mean_setup_time + r.mean_wall_time;
  }
  if (spec.verify) {
    r.max_rel_error = worst_rel;
    r.verified = all_ok;
  }
  return r;
}

std::vector<int> tasks_for_pe_sweep(std::span<const int> pes, std::optional<int> fixed_total,
                                    int tasks_per_pe) {
  std::vector<int> out;
  for (int p : pes) {
    if (p < 1) throw Error(ErrorCode::InvalidPeCount, "PE counts must be >= 1");
    if (!fixed_total) {
      out.push_back(tasks_per_pe);
      continue;
    }
    if (*fixed_total < 1 || *fixed_total % p != 0) {
      throw Error(ErrorCode::IndivisibleTaskTotal, std::to_string(*fixed_total) +
                                                       " tasks do not divide evenly over " +
                                                       std::to_string(p) + " PEs");
    }
    out.push_back(*fixed_total / p);
  }
  return out;
}

std::span<const std::string_view> record_fields() { return kFields; }

std::string record_to_json(const BenchRecord& r) { return record_object(r).dump(); }

std::string csv_header() {
  std::string line;
  for (std::size_t k = 0; k < kFields.size(); ++k) {
    if (k) line += ',';
    line += kFields[k];
  }
  return line;
}

std::string record_to_csv(const BenchRecord& r) {
  const auto j = record_object(r);
  std::string line;
  for (std::size_t k = 0; k < kFields.size(); ++k) {
    if (k) line += ',';
    line += csv_cell(j.at(std::string(kFields[k])));
  }
  return line;
}

}  // namespace sftrsv::bench
