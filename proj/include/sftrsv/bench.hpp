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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sftrsv/analysis.hpp"
#include "sftrsv/engine.hpp"
#include "sftrsv/lower_triangular.hpp"
#include "sftrsv/partition.hpp"
#include "sftrsv/synthetic.hpp"

/// Benchmark driver pieces behind the command-line tool.
namespace sftrsv::bench {

/// `KIND:n[:params]` with KIND one of
///   diagonal:N | bidiagonal:N | banded:N:BANDWIDTH[:DENSITY] | block:N:BLOCK | dense:N
/// Throws InvalidSpec.
SyntheticSpec parse_synthetic(std::string_view text, std::uint64_t seed);

struct MatrixSource {
  std::optional<std::filesystem::path> file;
  std::optional<std::string> synthetic;  ///< unparsed KIND:n[:params]
  std::uint64_t seed = 0;
  DiagonalPolicy diagonal_policy = DiagonalPolicy::RequireExplicit;
};

struct LoadedMatrix {
  std::string name;
  CscMatrix l;
};

/// Reads or generates the matrix and extracts its lower triangle. Throws
/// InvalidSpec unless exactly one source is set, plus any parse/extract error.
LoadedMatrix load_matrix(const MatrixSource& source);

enum class RhsKind { Ones, Random, File };

struct RhsSource {
  RhsKind kind = RhsKind::Ones;
  std::uint64_t seed = 0;
  std::filesystem::path path;
};

/// "ones", "random", or a path to a file with one value per line.
RhsSource parse_rhs(std::string_view text, std::uint64_t seed);

/// Throws DimensionMismatch when a file holds the wrong number of values.
std::vector<double> make_rhs(const RhsSource& source, Index n);

struct RunSpec {
  SolverConfig solver;
  int tasks_per_pe = 0;  ///< 0 selects the block partition
  int repeats = 10;
  bool verify = true;
  double tolerance = 1e-9;
};

PartitionPlan make_plan(Index n, const RunSpec& spec);

struct BenchRecord {
  std::string matrix;
  MatrixStats stats;
  std::string engine;
  std::string plan;
  int n_pes = 1;
  int tasks_per_pe = 1;
  int workers_per_pe = 1;
  bool remote_read_caching = true;
  int repeats = 0;
  int engine_runs = 0;
  int oracle_runs = 0;
  int timeouts = 0;
  double mean_setup_time = 0.0;
  double mean_wall_time = 0.0;
  double min_wall_time = 0.0;
  double max_wall_time = 0.0;
  double mean_total_time = 0.0;
  std::optional<double> max_rel_error;
  std::optional<bool> verified;
  std::vector<PeStats> per_pe;  ///< summed over runs

  std::vector<double> last_solution;  ///< not serialized
  std::string failure;                ///< diagnostic when a run timed out
};

/// Runs the engine `spec.repeats` times on (l, b) and the serial oracle once
/// when verifying. A timeout stops the repeats and is recorded, not thrown.
BenchRecord run_benchmark(const LoadedMatrix& matrix, const MatrixStats& stats,
                          std::span<const double> b, const RunSpec& spec);

/// Per-PE task counts for a PE sweep: `fixed_total / pes` for each entry when
/// fixed_total is set, otherwise `tasks_per_pe` everywhere.
/// Throws IndivisibleTaskTotal or InvalidPeCount.
std::vector<int> tasks_for_pe_sweep(std::span<const int> pes, std::optional<int> fixed_total,
                                    int tasks_per_pe);

/// Field names shared by the JSON and CSV encodings, in output order.
std::span<const std::string_view> record_fields();

/// Single-line JSON object.
std::string record_to_json(const BenchRecord& r);
std::string csv_header();
/// Per-PE lists are joined with ';'. Absent optionals are empty cells.
std::string record_to_csv(const BenchRecord& r);

enum class ExitStatus : int { Ok = 0, InvalidInput = 1, Timeout = 2, VerificationFailed = 3 };

}  // namespace sftrsv::bench
