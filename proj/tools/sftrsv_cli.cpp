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

// Command-line front end: matrix analysis, engine runs with verification, and
// the tasks-per-PE / PE-count sweeps. Records go to stdout or --out as
// line-delimited JSON or CSV.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sftrsv/bench.hpp"
#include "sftrsv/error.hpp"

namespace {

using namespace sftrsv;
using bench::ExitStatus;

struct Options {
  std::string matrix;
  std::string synthetic;
  std::uint64_t seed = 1;
  bool insert_unit_diagonal = false;

  std::string engine = "partitioned";
  int pes = 1;
  int tasks_per_pe = 0;
  int workers_per_pe = 1;
  int repeats = 10;
  std::string rhs = "ones";
  bool no_verify = false;
  bool no_caching = false;
  double tolerance = 1e-9;
  double timeout_secs = 60.0;
  std::string format = "json";
  std::string out;
  std::string solution_out;

  std::vector<int> tasks_list;
  std::vector<int> pes_list;
  std::optional<int> fixed_total_tasks;
};

void add_matrix_options(CLI::App* cmd, Options& o) {
  auto* file = cmd->add_option("--matrix", o.matrix, "Matrix Market file");
  auto* syn = cmd->add_option("--synthetic", o.synthetic,
                              "KIND:n[:params], KIND in diagonal|bidiagonal|banded|block|dense");
  file->excludes(syn);
  cmd->add_option("--seed", o.seed, "seed for synthetic matrices and random rhs");
  cmd->add_flag("--insert-unit-diagonal", o.insert_unit_diagonal,
                "give columns without a stored diagonal a 1.0 diagonal");
}

void add_run_options(CLI::App* cmd, Options& o) {
  add_matrix_options(cmd, o);
  cmd->add_option("--engine", o.engine, "shared | partitioned")
      ->check(CLI::IsMember({"shared", "partitioned"}));
  cmd->add_option("--workers-per-pe", o.workers_per_pe)->check(CLI::PositiveNumber);
  cmd->add_option("--repeats", o.repeats)->check(CLI::PositiveNumber);
  cmd->add_option("--rhs", o.rhs, "ones | random | FILE");
  cmd->add_flag("--no-verify", o.no_verify, "skip the serial reference check");
  cmd->add_flag("--no-remote-read-caching", o.no_caching);
  cmd->add_option("--tolerance", o.tolerance, "max relative error accepted by verification");
  cmd->add_option("--timeout-secs", o.timeout_secs)->check(CLI::PositiveNumber);
  cmd->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", o.out, "write records here instead of stdout");
}

bench::MatrixSource matrix_source(const Options& o) {
  bench::MatrixSource src;
  if (!o.matrix.empty()) src.file = o.matrix;
  if (!o.synthetic.empty()) src.synthetic = o.synthetic;
  src.seed = o.seed;
  src.diagonal_policy =
      o.insert_unit_diagonal ? DiagonalPolicy::InsertUnit : DiagonalPolicy::RequireExplicit;
  return src;
}

bench::RunSpec run_spec(const Options& o) {
  bench::RunSpec spec;
  spec.solver.engine = o.engine == "shared" ? EngineKind::SharedAtomics : EngineKind::PartitionedReadOnly;
  spec.solver.n_pes = o.pes;
  spec.solver.workers_per_pe = o.workers_per_pe;
  spec.solver.remote_read_caching = !o.no_caching;
  spec.solver.timeout = std::chrono::milliseconds(static_cast<long long>(o.timeout_secs * 1000.0));
  spec.tasks_per_pe = o.tasks_per_pe;
  spec.repeats = o.repeats;
  spec.verify = !o.no_verify;
  spec.tolerance = o.tolerance;
  return spec;
}

class Sink {
 public:
  Sink(const Options& o) : csv_(o.format == "csv") {
    if (!o.out.empty()) {
      file_.open(o.out);
      if (!file_) throw Error(ErrorCode::Io, "cannot write '" + o.out + "'");
    }
    if (csv_) stream() << bench::csv_header() << '\n';
  }
  void emit(const bench::BenchRecord& r) {
    stream() << (csv_ ? bench::record_to_csv(r) : bench::record_to_json(r)) << '\n';
    stream().flush();
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  bool csv_;
  std::ofstream file_;
};

int run_records(const Options& o, const std::vector<bench::RunSpec>& specs) {
  const auto matrix = bench::load_matrix(matrix_source(o));
  const auto stats = compute_stats(matrix.l);
  const auto b = bench::make_rhs(bench::parse_rhs(o.rhs, o.seed), matrix.l.n);
  // Fail fast on plans that cannot be built before spending time on runs.
  for (const auto& spec : specs) (void)bench::make_plan(matrix.l.n, spec);

  Sink sink(o);
  ExitStatus status = ExitStatus::Ok;
  for (const auto& spec : specs) {
    const auto record = bench::run_benchmark(matrix, stats, b, spec);
    sink.emit(record);
    if (!o.solution_out.empty() && !record.last_solution.empty()) {
      std::ofstream sol(o.solution_out);
      sol << std::setprecision(17);
      for (double v : record.last_solution) sol << v << '\n';
    }
    if (record.timeouts > 0) {
      std::cerr << "error: " << record.failure << " (" << record.engine << ", " << record.n_pes
                << " PEs)\n";
      status = ExitStatus::Timeout;
    } else if (record.verified == false && status == ExitStatus::Ok) {
      std::cerr << "error: VerificationFailed: max relative error " << *record.max_rel_error
                << " exceeds " << spec.tolerance << " (" << record.engine << ", " << record.n_pes
                << " PEs)\n";
      status = ExitStatus::VerificationFailed;
    }
  }
  return static_cast<int>(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synchronization-free sparse triangular solve on partitioned processing elements"};
  app.require_subcommand(1);
  Options o;

  auto* analyze = app.add_subcommand("analyze", "print dependency metrics of a matrix as JSON");
  add_matrix_options(analyze, o);
  analyze->add_option("--out", o.out);

  auto* solve_cmd = app.add_subcommand("solve", "run an engine and verify against the serial solve");
  add_run_options(solve_cmd, o);
  solve_cmd->add_option("--pes", o.pes)->check(CLI::PositiveNumber);
  solve_cmd->add_option("--tasks-per-pe", o.tasks_per_pe, "round-robin tasks per PE (0 = block)")
      ->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--solution-out", o.solution_out, "write x, one value per line");

  auto* sweep_tasks = app.add_subcommand("sweep-tasks", "one record per tasks-per-PE value");
  add_run_options(sweep_tasks, o);
  sweep_tasks->add_option("--pes", o.pes)->check(CLI::PositiveNumber);
  sweep_tasks->add_option("--tasks-list", o.tasks_list)->delimiter(',')->required()
      ->check(CLI::PositiveNumber);

  auto* sweep_pes = app.add_subcommand("sweep-pes", "one record per PE count");
  add_run_options(sweep_pes, o);
  sweep_pes->add_option("--pes-list", o.pes_list)->delimiter(',')->required();
  sweep_pes->add_option("--tasks-per-pe", o.tasks_per_pe)->check(CLI::NonNegativeNumber);
  sweep_pes->add_option("--fixed-total-tasks", o.fixed_total_tasks,
                        "split this many tasks evenly over each PE count");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) {
      const auto matrix = bench::load_matrix(matrix_source(o));
      const auto line = stats_to_json(matrix.name, compute_stats(matrix.l));
      if (o.out.empty()) {
        std::cout << line << '\n';
      } else {
        std::ofstream(o.out) << line << '\n';
      }
      return 0;
    }

    std::vector<bench::RunSpec> specs;
    if (solve_cmd->parsed()) {
      specs.push_back(run_spec(o));
    } else if (sweep_tasks->parsed()) {
      for (int t : o.tasks_list) {
        auto spec = run_spec(o);
        spec.tasks_per_pe = t;
        specs.push_back(spec);
      }
    } else {
      const auto tasks = bench::tasks_for_pe_sweep(o.pes_list, o.fixed_total_tasks, o.tasks_per_pe);
      for (std::size_t k = 0; k < o.pes_list.size(); ++k) {
        auto spec = run_spec(o);
        spec.solver.n_pes = o.pes_list[k];
        spec.tasks_per_pe = tasks[k];
        specs.push_back(spec);
      }
    }
    return run_records(o, specs);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.code() == ErrorCode::Timeout ? ExitStatus::Timeout
                                                           : ExitStatus::InvalidInput);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ExitStatus::InvalidInput);
  }
}
