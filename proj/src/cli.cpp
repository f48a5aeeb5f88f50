#include "perron/cli.hpp"

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "perron/errors.hpp"
#include "perron/experiment.hpp"
#include "perron/report.hpp"
#include "perron/tensor_io.hpp"

namespace perron {

namespace {

struct SolveArgs {
  std::string input;
  std::string method = "homotopy";
  std::string report;
  SolverConfig solver;
  NqzConfig nqz;
  double shift = 1.0;
};

struct GenArgs {
  std::string example;
  int m = 3;
  int n = 3;
  double gamma = 0.0;
  std::uint64_t seed = 0;
  std::string output;
};

struct BenchArgs {
  std::string suite;
  std::string output;
  std::string format;
  bool full = false;
};

void print_row(std::ostream& out, const ReportRow& r) {
  out << "method       " << r.method << '\n'
      << "lambda       " << format_double(r.lambda) << '\n'
      << "residual     " << r.residual << '\n'
      << "iters        " << r.iters << '\n';
  if (r.newton_iters) out << "newton_iters " << *r.newton_iters << '\n';
  out << "time_ms      " << r.time_ms << '\n' << "termination  " << r.termination << '\n';
  if (!r.x.empty()) {
    out << "x           ";
    for (double v : r.x) out << ' ' << format_double(v);
    out << '\n';
  }
}

int run_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  DenseTensor t;
  try {
    t = parse_tensor_file(a.input);
  } catch (const ParseError& e) {
    err << "error: " << a.input << ": " << e.what() << '\n';
    return kExitUsage;
  }
  ExperimentSpec spec;
  spec.order = t.order();
  spec.dim = t.dim();
  spec.solver = a.solver;
  spec.nqz = a.nqz;
  spec.nqz_shift = a.shift;
  try {
    spec.solver.validate();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const ReportRow row = run_method(t, parse_method(a.method), spec);
  if (!row.diagnostic.empty()) err << "warning: " << row.diagnostic << '\n';
  if (row.termination == "error") return kExitUsage;
  print_row(out, row);
  if (!a.report.empty()) {
    const std::vector<ReportRow> rows{row};
    emit_report(rows, format_for_path(a.report), a.report);
  }
  return row.termination == "converged" ? kExitOk : kExitNotConverged;
}

int run_gen(const GenArgs& a, bool has_m, bool has_n, bool has_seed, std::ostream& out, std::ostream& err) {
  ExperimentSpec spec;
  spec.example = parse_example_id(a.example);
  if (spec.example == ExampleId::random && !(has_m && has_n && has_seed)) {
    err << "error: --example random needs --m, --n and --seed\n";
    return kExitUsage;
  }
  spec.order = a.m;
  spec.dim = a.n;
  spec.gamma = a.gamma;
  spec.seed = a.seed;
  DenseTensor t;
  try {
    t = gen_example(spec);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  std::ostringstream comment;
  comment << "example " << a.example << " m=" << a.m << " n=" << a.n << " gamma=" << format_double(a.gamma);
  if (spec.example == ExampleId::random) {
    comment << " seed=" << a.seed << "\ngenerator: std::mt19937_64, uniform [0,1) = (next() >> 11) * 2^-53, "
            << "entries drawn in lexicographic index order";
  }
  write_tensor_file(a.output, t, comment.str());
  out << "wrote " << a.output << " (m=" << t.order() << ", n=" << t.dim() << ")\n";
  return kExitOk;
}

int run_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<ExperimentSpec> specs;
  try {
    specs = bench_suite(a.suite, a.full);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const auto results = run_suite(specs);
  std::vector<ReportRow> rows;
  out << std::left << std::setw(40) << "case" << std::setw(10) << "method" << std::setw(24) << "lambda"
      << std::setw(8) << "itr" << std::setw(8) << "nwtitr" << std::setw(12) << "time_ms" << "termination\n";
  for (std::size_t i = 0; i < specs.size(); ++i) {
    for (const auto& r : results[i]) {
      out << std::setw(40) << specs[i].label << std::setw(10) << r.method << std::setw(24) << format_double(r.lambda)
          << std::setw(8) << r.iters << std::setw(8) << (r.newton_iters ? std::to_string(*r.newton_iters) : "")
          << std::setw(12) << r.time_ms << r.termination << '\n';
      if (!r.diagnostic.empty()) err << "note: " << specs[i].label << " " << r.method << ": " << r.diagnostic << '\n';
      rows.push_back(r);
    }
  }
  const ReportFormat fmt = a.format.empty() ? format_for_path(a.output) : parse_report_format(a.format);
  emit_report(rows, fmt, a.output);
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Perron pair of a nonnegative tensor by homotopy continuation"};
  app.name("perron");
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Compute the Perron pair of a tensor file");
  solve_cmd->add_option("--input", solve.input, "Tensor file")->required();
  solve_cmd->add_option("--method", solve.method, "homotopy | nqz | nqz-shift")
      ->check(CLI::IsMember({"homotopy", "nqz", "nqz-shift"}));
  solve_cmd->add_option("--dt0", solve.solver.dt0, "Initial step size");
  solve_cmd->add_option("--eps1", solve.solver.eps1, "Corrector tolerance at interior points");
  solve_cmd->add_option("--eps2", solve.solver.eps2, "Corrector tolerance at t = 1");
  solve_cmd->add_option("--max-steps", solve.solver.max_steps, "Maximum prediction-correction steps");
  solve_cmd->add_option("--tol", solve.nqz.tol, "NQZ residual tolerance");
  solve_cmd->add_option("--max-iters", solve.nqz.max_iters, "NQZ iteration cap");
  solve_cmd->add_option("--shift", solve.shift, "Shift for nqz-shift, in units of the scaled tensor");
  solve_cmd->add_option("--report", solve.report, "Also write a CSV (or .json) report");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write an example tensor");
  gen_cmd->add_option("--example", gen.example, "cpz | lgl | random")
      ->required()
      ->check(CLI::IsMember({"cpz", "lgl", "random"}));
  auto* m_opt = gen_cmd->add_option("--m", gen.m, "Order");
  auto* n_opt = gen_cmd->add_option("--n", gen.n, "Dimension");
  gen_cmd->add_option("--gamma", gen.gamma, "Identity shift added to the tensor");
  auto* seed_opt = gen_cmd->add_option("--seed", gen.seed, "Seed for --example random");
  gen_cmd->add_option("--output", gen.output, "Destination file")->required();

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run an experiment grid");
  bench_cmd->add_option("--suite", bench.suite, "table1 | table2-small")
      ->required()
      ->check(CLI::IsMember({"table1", "table2-small"}));
  bench_cmd->add_option("--output", bench.output, "Report destination")->required();
  bench_cmd->add_option("--format", bench.format, "csv | json (default from extension)")
      ->check(CLI::IsMember({"csv", "json"}));
  bench_cmd->add_flag("--full", bench.full, "Include the large table2 cases (slow, several GB for m=4 n=100)");

  std::vector<std::string> argv_store = args;
  std::vector<char*> argv;
  argv.reserve(argv_store.size() + 1);
  argv.push_back(const_cast<char*>("perron"));
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kExitOk;
    err << '\n' << app.help();
    return kExitUsage;
  }

  try {
    if (*solve_cmd) return run_solve(solve, out, err);
    if (*gen_cmd) return run_gen(gen, m_opt->count() > 0, n_opt->count() > 0, seed_opt->count() > 0, out, err);
    if (*bench_cmd) return run_bench(bench, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace perron
