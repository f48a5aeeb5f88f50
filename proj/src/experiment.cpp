#include "perron/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <thread>

#include "perron/errors.hpp"
#include "perron/tensor_io.hpp"
#include "perron/tensor_ops.hpp"

namespace perron {

const char* to_string(ExampleId e) {
  switch (e) {
    case ExampleId::cpz:
      return "cpz";
    case ExampleId::lgl:
      return "lgl";
    case ExampleId::random:
      return "random";
  }
  return "unknown";
}

const char* to_string(Method m) {
  switch (m) {
    case Method::homotopy:
      return "homotopy";
    case Method::nqz:
      return "nqz";
    case Method::nqz_shift:
      return "nqz-shift";
  }
  return "unknown";
}

ExampleId parse_example_id(const std::string& s) {
  if (s == "cpz") return ExampleId::cpz;
  if (s == "lgl") return ExampleId::lgl;
  if (s == "random") return ExampleId::random;
  throw ConfigError("unknown example '" + s + "'");
}

Method parse_method(const std::string& s) {
  if (s == "homotopy") return Method::homotopy;
  if (s == "nqz") return Method::nqz;
  if (s == "nqz-shift") return Method::nqz_shift;
  throw ConfigError("unknown method '" + s + "'");
}

void ExperimentSpec::validate() const {
  if ((example == ExampleId::cpz || example == ExampleId::lgl) && (order != 3 || dim != 3)) {
    throw ConfigError(std::string(to_string(example)) + " is a fixed 3x3x3 tensor");
  }
  if (order < 2 || dim < 1) throw ConfigError("need m >= 2 and n >= 1");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ConfigError("gamma must be finite and >= 0");
  if (methods.empty()) throw ConfigError("no methods requested");
  solver.validate();
}

UniformSource::UniformSource(std::uint64_t seed) : engine_(seed) {}

double UniformSource::next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

DenseTensor cpz_tensor() {
  DenseTensor a(3, 3);
  a.at({0, 1, 1}) = 1.0;
  a.at({0, 2, 2}) = 2.0;
  a.at({1, 0, 0}) = 3.0;
  a.at({2, 0, 0}) = 4.0;
  return a;
}

DenseTensor lgl_tensor() {
  // P(i,:,:) row by row.
  return DenseTensor(3, 3,
                     {0.9000, 0.6700, 0.6604, 0.3340, 0.1040, 0.0945, 0.3106, 0.0805, 0.0710,
                      0.0690, 0.2892, 0.0716, 0.6108, 0.8310, 0.6133, 0.0754, 0.2956, 0.0780,
                      0.0310, 0.0408, 0.2680, 0.0552, 0.0650, 0.2922, 0.6140, 0.6239, 0.8510});
}

DenseTensor random_tensor(int order, int dim, std::uint64_t seed) {
  DenseTensor a(order, dim);
  UniformSource rng(seed);
  for (double& v : a.entries()) v = rng.next();
  return a;
}

DenseTensor gen_example(const ExperimentSpec& spec) {
  if ((spec.example == ExampleId::cpz || spec.example == ExampleId::lgl) && (spec.order != 3 || spec.dim != 3)) {
    throw ConfigError(std::string(to_string(spec.example)) + " is a fixed 3x3x3 tensor");
  }
  if (spec.order < 2 || spec.dim < 1) throw ConfigError("need m >= 2 and n >= 1");
  if (!(spec.gamma >= 0.0)) throw ConfigError("gamma must be >= 0");
  DenseTensor a;
  switch (spec.example) {
    case ExampleId::cpz:
      a = cpz_tensor();
      break;
    case ExampleId::lgl:
      a = lgl_tensor();
      break;
    case ExampleId::random:
      a = random_tensor(spec.order, spec.dim, spec.seed);
      break;
  }
  if (spec.gamma != 0.0) a = add_scaled_identity(std::move(a), spec.gamma);
  return a;
}

ReportRow run_method(const DenseTensor& a, Method method, const ExperimentSpec& spec) {
  ReportRow row;
  row.method = to_string(method);
  try {
    if (method == Method::homotopy) {
      const SolveReport r = solve_perron(a, spec.solver);
      row.lambda = r.pair.lambda;
      row.residual = r.residual;
      row.iters = r.steps;
      row.newton_iters = r.newton_total;
      row.time_ms = r.wall_time.count() * 1e3;
      row.termination = to_string(r.termination);
      row.x = r.pair.x;
      for (const auto& w : r.warnings) row.diagnostic += (row.diagnostic.empty() ? "" : "; ") + w;
    } else {
      NqzConfig cfg = spec.nqz;
      cfg.shift = method == Method::nqz_shift ? spec.nqz_shift : 0.0;
      const auto t0 = std::chrono::steady_clock::now();
      const NqzReport r = nqz_solve(a, {}, cfg);
      row.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      row.lambda = r.pair.lambda;
      row.residual = r.residual;
      row.iters = r.iters;
      row.x = r.pair.x;
      row.diagnostic = r.diagnostic;
      row.termination = r.converged ? "converged" : (r.diagnostic.empty() ? "step_limit" : "path_failure");
    }
  } catch (const std::exception& e) {
    row.lambda = std::numeric_limits<double>::quiet_NaN();
    row.residual = std::numeric_limits<double>::quiet_NaN();
    row.termination = "error";
    row.diagnostic = e.what();
  }
  return row;
}

namespace {

// Runs fn(0..count-1) on up to `threads` workers.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn fn) {
  const auto workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

void cross_check(std::vector<ReportRow>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].termination != "converged") continue;
    for (std::size_t j = 0; j < i; ++j) {
      if (rows[j].termination != "converged") continue;
      const double scale = std::max(std::abs(rows[i].lambda), std::abs(rows[j].lambda));
      if (std::abs(rows[i].lambda - rows[j].lambda) > 1e-8 * scale) {
        auto& d = rows[i].diagnostic;
        d += (d.empty() ? "" : "; ") + std::string("lambda disagrees with ") + rows[j].method;
      }
    }
  }
}

std::vector<ReportRow> run_rows(const ExperimentSpec& spec, const DenseTensor& a, int threads) {
  spec.validate();
  std::vector<ReportRow> rows(spec.methods.size());
  parallel_for(rows.size(), threads, [&](std::size_t i) { rows[i] = run_method(a, spec.methods[i], spec); });
  cross_check(rows);
  return rows;
}

}  // namespace

std::vector<ReportRow> run_experiment(const ExperimentSpec& spec, const DenseTensor& a) {
  return run_rows(spec, a, harness_threads());
}

std::vector<ReportRow> run_experiment(const ExperimentSpec& spec) { return run_experiment(spec, gen_example(spec)); }

std::vector<std::vector<ReportRow>> run_suite(const std::vector<ExperimentSpec>& specs) {
  for (const auto& s : specs) s.validate();
  std::vector<std::vector<ReportRow>> out(specs.size());
  parallel_for(specs.size(), harness_threads(), [&](std::size_t i) { out[i] = run_rows(specs[i], gen_example(specs[i]), 1); });
  return out;
}

int harness_threads() {
  const char* env = std::getenv("PERRON_THREADS");
  if (env == nullptr) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1) return 1;
  return static_cast<int>(std::min(v, 256L));
}

std::vector<ExperimentSpec> bench_suite(const std::string& name, bool full) {
  std::vector<ExperimentSpec> out;
  auto add = [&](ExampleId ex, int m, int n, double gamma) {
    ExperimentSpec s;
    s.example = ex;
    s.order = m;
    s.dim = n;
    s.gamma = gamma;
    s.seed = kBenchSeed;
    s.methods = {Method::homotopy, Method::nqz};
    s.label = std::string(to_string(ex)) + " m=" + std::to_string(m) + " n=" + std::to_string(n) +
              " gamma=" + format_double(gamma);
    out.push_back(std::move(s));
  };
  if (name == "table1") {
    for (double g : {0.0, 1e1, 1e2, 1e3, 1e4}) add(ExampleId::lgl, 3, 3, g);
  } else if (name == "table2-small") {
    for (double g : {1e2, 1e4, 1e6}) add(ExampleId::random, 3, 20, g);
    for (double g : {1e2, 1e4, 1e6}) add(ExampleId::random, 4, 10, g);
    if (full) {
      for (double g : {1e2, 1e4, 1e6}) add(ExampleId::random, 3, 100, g);
      for (double g : {1e2, 1e4, 1e6, 1e7}) add(ExampleId::random, 3, 200, g);
      for (double g : {1e2, 1e4, 1e6, 1e7}) add(ExampleId::random, 4, 50, g);
      for (double g : {1e2, 1e4, 1e6, 1e8}) add(ExampleId::random, 4, 100, g);
    }
  } else {
    throw ConfigError("unknown bench suite '" + name + "'");
  }
  return out;
}

}  // namespace perron
