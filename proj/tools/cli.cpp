// Copyright 2026 The wlra Authors. All Rights Reserved.
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

#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "bench.hpp"
#include "wlra/generator.hpp"
#include "wlra/grouped_als.hpp"
#include "wlra/instance_io.hpp"
#include "wlra/opt_bounds.hpp"

namespace wlra::tools {
namespace {

struct GenArgs {
  std::size_t n = 64;
  std::size_t r = 2;
  std::size_t p = 2;
  std::size_t k_true = 2;
  double noise = 0.0;
  std::string style = "block_random";
  uint64_t seed = 0;
  std::string out;
  bool no_sidecar = false;
};

struct SolveArgs {
  std::string in;
  std::size_t k = 1;
  double eps = 0.25;
  std::size_t sweeps = 100;
  std::size_t restarts = 1;
  uint64_t seed = 0;
  bool sketchless = false;
  bool fixed_sketch = false;
  double rel_tol = 1e-6;
  double c_s = kDefaultSketchConstant;
  double gamma = 0.5;
  int threads = 1;
  std::string out_report;
  std::string out_factors;
};

struct BenchArgs {
  BenchConfig config;
  std::string style = "block_random";
  std::string out;
};

struct VerifyArgs {
  std::string in;
  std::size_t k = 1;
  double eps = 0.25;
  double gamma = 0.5;
  double c_exp = 1.0;
  double c_poly = 1.0;
  std::optional<std::size_t> assume_r;
  std::optional<std::size_t> assume_p;
};

std::string format_log2_bound(double log2_value) {
  if (std::isinf(log2_value)) return "2^(-inf)";
  std::ostringstream s;
  s << "2^(" << std::setprecision(17) << log2_value << ")";
  return s.str();
}

// Reads the instance and detects its patterns; any failure here is a file
// problem.
StructuredInstance load_instance(const std::string& path, InstanceFile* raw = nullptr) {
  InstanceFile file = read_instance(path);
  StructuredInstance inst;
  try {
    inst = build_instance(file.a, file.weights());
  } catch (const InvalidInput& e) {
    throw IoError(path + ": " + e.what());
  }
  if (raw) *raw = std::move(file);
  return inst;
}

int cmd_gen(const GenArgs& args, std::ostream& out) {
  const auto style = parse_weight_style(args.style);
  if (!style) throw InvalidInput("unknown --style " + args.style);
  GenSpec spec;
  spec.n = args.n;
  spec.r = args.r;
  spec.p = args.p;
  spec.k_true = args.k_true;
  spec.noise_sigma = args.noise;
  spec.weight_style = *style;
  spec.seed = args.seed;
  const StructuredInstance inst = generate(spec);

  InstanceFile file;
  file.a = *inst.a;
  file.w = *inst.w;
  if (!args.no_sidecar) file.sidecar = sidecar_of(inst);
  write_instance(args.out, file);
  out << "wrote " << args.out << " n=" << inst.n << " r=" << inst.r << " p=" << inst.p
      << '\n';
  return kExitOk;
}

int cmd_solve(const SolveArgs& args, std::ostream& out) {
  const StructuredInstance inst = load_instance(args.in);
  SolveOptions opts;
  opts.k = args.k;
  opts.eps = args.eps;
  opts.max_sweeps = args.sweeps;
  opts.restarts = args.restarts;
  opts.seed = args.seed;
  opts.sketchless = args.sketchless;
  opts.fixed_sketch = args.fixed_sketch;
  opts.rel_tol = args.rel_tol;
  opts.sketch_constant = args.c_s;
  opts.gamma = args.gamma;
  opts.threads = args.threads;
  const auto [factors, report] = solve(inst, opts);

  if (!args.out_factors.empty()) write_factors(args.out_factors, factors.u, factors.v);
  if (!args.out_report.empty()) {
    std::ofstream csv(args.out_report, std::ios::trunc);
    if (!csv) throw IoError("cannot open " + args.out_report + " for writing");
    csv.precision(17);
    csv << kBenchCsvHeader << '\n';
    for (std::size_t h = 0; h < report.cost_per_sweep.size(); ++h) {
      csv << inst.n << ',' << inst.r << ',' << inst.p << ',' << opts.k << ',' << opts.eps
          << ',' << h << ',' << report.sweep_wall_times[h] << ','
          << report.cost_per_sweep[h] << ',' << report.regressions_per_half[h] << ','
          << opts.seed << '\n';
    }
    if (!csv) throw IoError("error writing " + args.out_report);
  }

  out << std::setprecision(17);
  out << "lambda=" << report.final_cost << '\n';
  out << "bracket=[" << format_log2_bound(report.bracket.lower_log2) << ", "
      << report.bracket.upper << "]\n";
  if (report.bracket.lower_overflow) out << "lower_bound_overflow=1\n";
  out << "iteration_budget=" << report.bracket.iteration_budget << '\n';
  out << "sweeps=" << report.sweeps << '\n';
  out << "regressions=" << report.regressions_solved << '\n';
  out << "r=" << inst.r << " p=" << inst.p << '\n';
  return kExitOk;
}

int cmd_bench(BenchArgs args, std::ostream& out) {
  const auto style = parse_weight_style(args.style);
  if (!style) throw InvalidInput("unknown --style " + args.style);
  args.config.style = *style;

  std::ostringstream csv;
  const BenchResult result = run_bench(args.config, args.out.empty() ? nullptr : &csv);
  if (!args.out.empty()) {
    std::ofstream file(args.out, std::ios::trunc);
    if (!file) throw IoError("cannot open " + args.out + " for writing");
    file << csv.str();
    if (!file) throw IoError("error writing " + args.out);
  }
  out << std::setprecision(6);
  for (const auto& pt : result.points) {
    out << "n=" << pt.n << " median_sweep_s=" << pt.median_sweep_seconds
        << " regressions_per_half=" << pt.max_regressions_per_half
        << " wa_groups=" << pt.wa_groups << '\n';
  }
  if (result.slope) {
    out << "slope=" << *result.slope << '\n';
  } else {
    out << "slope=n/a\n";
  }
  return kExitOk;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  InstanceFile raw;
  const StructuredInstance inst = load_instance(args.in, &raw);

  BoundParams params;
  params.n = inst.n;
  params.gamma = args.gamma;
  params.k = args.k;
  params.r = inst.r;
  params.eps = args.eps;
  params.c_exp = args.c_exp;
  params.c_poly = args.c_poly;
  const LowerBound lower = lower_bound_log2(params);

  out << std::setprecision(17);
  out << "n=" << inst.n << '\n';
  out << "r=" << inst.r << '\n';
  out << "p=" << inst.p << '\n';
  out << "w_row_groups=" << inst.w_rows().num_groups() << '\n';
  out << "w_col_groups=" << inst.w_cols().num_groups() << '\n';
  out << "wa_row_groups=" << inst.wa_rows().num_groups() << '\n';
  out << "wa_col_groups=" << inst.wa_cols().num_groups() << '\n';
  out << "upper_bound=" << upper_bound(inst) << '\n';
  out << "lower_bound_log2=" << lower.log2_value << '\n';
  out << "lower_bound_log2_magnitude=" << lower.log2_magnitude << '\n';
  out << "iteration_budget=" << iteration_budget(params) << '\n';

  int code = kExitOk;
  if (raw.sidecar) {
    const bool match = *raw.sidecar == sidecar_of(inst);
    out << "sidecar=" << (match ? "match" : "mismatch") << '\n';
    if (!match) {
      err << "error: side-car group ids disagree with the recomputed patterns\n";
      code = kExitMismatch;
    }
  } else {
    out << "sidecar=absent\n";
  }
  if ((args.assume_r && *args.assume_r != inst.r) ||
      (args.assume_p && *args.assume_p != inst.p)) {
    err << "error: instance has r=" << inst.r << " p=" << inst.p
        << ", not the assumed values\n";
    code = kExitMismatch;
  }
  return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted low-rank approximation with grouped sketched alternating "
               "minimization",
               "wlra"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a structured instance file");
  gen_cmd->add_option("--n", gen.n, "Matrix size")->required();
  gen_cmd->add_option("--r", gen.r, "Distinct W rows/columns")->required();
  gen_cmd->add_option("--p", gen.p, "W∘A groups per W group")->required();
  gen_cmd->add_option("--k-true", gen.k_true, "Rank of the planted factors");
  gen_cmd->add_option("--noise", gen.noise, "Noise standard deviation per cell");
  gen_cmd->add_option("--style", gen.style,
                      "block_random | block_mask01 | attention_block");
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--out", gen.out, "Output instance file")->required();
  gen_cmd->add_flag("--no-sidecar", gen.no_sidecar, "Omit the group-id side-car");

  SolveArgs sol;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance file");
  solve_cmd->add_option("--in", sol.in, "Instance file")->required();
  solve_cmd->add_option("--k", sol.k, "Target rank")->required();
  solve_cmd->add_option("--eps", sol.eps, "Accuracy parameter in (0, 0.5)");
  solve_cmd->add_option("--sweeps", sol.sweeps, "Maximum number of sweeps");
  solve_cmd->add_option("--restarts", sol.restarts, "Independent random restarts");
  solve_cmd->add_option("--seed", sol.seed, "Random seed");
  solve_cmd->add_flag("--sketchless", sol.sketchless, "Solve regressions exactly");
  solve_cmd->add_flag("--fixed-sketch", sol.fixed_sketch, "Reuse one sketch pair");
  solve_cmd->add_option("--rel-tol", sol.rel_tol, "Relative improvement threshold");
  solve_cmd->add_option("--c-s", sol.c_s, "Sketch size constant");
  solve_cmd->add_option("--gamma", sol.gamma, "Bits-per-entry exponent for the bracket");
  solve_cmd->add_option("--threads", sol.threads, "Worker threads");
  solve_cmd->add_option("--out-report", sol.out_report, "Per-half-sweep CSV report");
  solve_cmd->add_option("--out-factors", sol.out_factors, "Binary U then V output");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Per-sweep scaling benchmark");
  bench_cmd->add_option("--sizes", bench.config.sizes, "Ascending sizes, comma separated")
      ->required()
      ->delimiter(',');
  bench_cmd->add_option("--r", bench.config.r, "Distinct W rows/columns");
  bench_cmd->add_option("--p", bench.config.p, "W∘A groups per W group");
  bench_cmd->add_option("--k", bench.config.k, "Target rank");
  bench_cmd->add_option("--eps", bench.config.eps, "Accuracy parameter in (0, 0.5)");
  bench_cmd->add_option("--sweeps", bench.config.sweeps, "Sweeps per trial");
  bench_cmd->add_option("--trials", bench.config.trials, "Trials per size");
  bench_cmd->add_option("--seed", bench.config.seed, "Random seed");
  bench_cmd->add_option("--noise", bench.config.noise, "Instance noise level");
  bench_cmd->add_option("--style", bench.style, "Weight style");
  bench_cmd->add_flag("--dense-baseline", bench.config.dense_baseline,
                      "One regression per index instead of per group");
  bench_cmd->add_flag("--sketchless", bench.config.sketchless, "Exact regressions");
  bench_cmd->add_option("--threads", bench.config.threads, "Worker threads");
  bench_cmd->add_option("--out", bench.out, "CSV output");

  VerifyArgs ver;
  auto* verify_cmd = app.add_subcommand("verify", "Recompute and check instance structure");
  verify_cmd->add_option("--in", ver.in, "Instance file")->required();
  verify_cmd->add_option("--k", ver.k, "Rank used for the lower bound");
  verify_cmd->add_option("--eps", ver.eps, "Accuracy used for the lower bound");
  verify_cmd->add_option("--gamma", ver.gamma, "Bits-per-entry exponent");
  verify_cmd->add_option("--c-exp", ver.c_exp, "Exponent constant");
  verify_cmd->add_option("--c-poly", ver.c_poly, "poly(n) degree");
  verify_cmd->add_option("--assume-r", ver.assume_r, "Fail unless r matches");
  verify_cmd->add_option("--assume-p", ver.assume_p, "Fail unless p matches");

  std::vector<std::string> argv_storage{"wlra"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*solve_cmd) return cmd_solve(sol, out);
    if (*bench_cmd) return cmd_bench(bench, out);
    if (*verify_cmd) return cmd_verify(ver, out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const GenerationFailure& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace wlra::tools
