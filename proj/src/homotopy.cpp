#include "perron/homotopy.hpp"

#include <algorithm>
#include <cmath>

#include "perron/errors.hpp"
#include "perron/linalg.hpp"
#include "perron/tensor_ops.hpp"

namespace perron {

void SolverConfig::validate() const {
  if (!(0.0 < dt_min && dt_min <= dt0 && dt0 <= dt_max && dt_max <= 1.0)) {
    throw ConfigError("step sizes must satisfy 0 < dt_min <= dt0 <= dt_max <= 1");
  }
  if (!(eps2 > 0.0 && eps2 <= eps1)) throw ConfigError("tolerances must satisfy 0 < eps2 <= eps1");
  if (newton_budget_per_step < 1) throw ConfigError("newton budget must be >= 1");
  if (max_steps < 1) throw ConfigError("max_steps must be >= 1");
  if (cut_threshold_newton_iters < 0) throw ConfigError("cut threshold must be >= 0");
  if (min_newton_iters < 0 || min_newton_iters > newton_budget_per_step) {
    throw ConfigError("min_newton_iters must lie in [0, newton_budget_per_step]");
  }
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::converged:
      return "converged";
    case Termination::step_limit:
      return "step_limit";
    case Termination::path_failure:
      return "path_failure";
  }
  return "unknown";
}

HomotopyProblem::HomotopyProblem(DenseTensor target, Vector start_a, Vector start_b, double scale)
    : target_(std::move(target)),
      target_sym_(partial_symmetrize(target_)),
      start_a_(std::move(start_a)),
      start_b_(std::move(start_b)),
      start_tensor_(rank_one_start_tensor(start_a_, start_b_, target_.order())),
      scale_(scale) {
  if (start_a_.size() != static_cast<std::size_t>(target_.dim())) {
    throw DimensionError("start vectors do not match the tensor dimension");
  }
  if (target_.order() < 2) throw DimensionError("homotopy needs tensor order >= 2");
}

HomotopyProblem HomotopyProblem::preprocessed(const DenseTensor& a, Vector start_a, Vector start_b) {
  if (!a.is_nonnegative()) throw DomainError("tensor has a negative entry");
  const double tau = a.max_entry();
  if (!(tau > 0.0)) throw DomainError("tensor is identically zero");
  DenseTensor scaled = a;
  scaled *= 1.0 / tau;
  return HomotopyProblem(std::move(scaled), std::move(start_a), std::move(start_b), tau);
}

EigenPair start_pair(std::span<const double> a, std::span<const double> b, int order) {
  if (a.size() != b.size()) throw DimensionError("start vectors differ in length");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] > 0.0) || !(b[i] > 0.0)) throw DomainError("start vectors must be strictly positive");
  }
  return {std::pow(dot(a, b), order - 1), normalized(a)};
}

namespace {

void check_state(const HomotopyProblem& p, const EigenPair& v) {
  if (v.x.size() != static_cast<std::size_t>(p.dim())) throw DimensionError("state length != tensor dimension");
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double e) { return std::isfinite(e); });
}

bool in_positive_orthant(const EigenPair& v) {
  return v.lambda > 0.0 && std::all_of(v.x.begin(), v.x.end(), [](double e) { return e > 0.0; });
}

// u = (lambda, x) flattened, in the column order of the Jacobian.
Vector flatten(const EigenPair& v) {
  Vector u(v.x.size() + 1);
  u[0] = v.lambda;
  std::copy(v.x.begin(), v.x.end(), u.begin() + 1);
  return u;
}

EigenPair unflatten(std::span<const double> u) { return {u[0], Vector(u.begin() + 1, u.end())}; }

}  // namespace

Vector eval_homotopy(const HomotopyProblem& p, const EigenPair& v, double t) {
  check_state(p, v);
  const auto n = v.x.size();
  const Vector ax = apply_m1(p.target(), v.x);
  const Vector ex = apply_m1(p.start_tensor(), v.x);
  const Vector xp = elementwise_power(v.x, p.order() - 1);
  Vector h(n + 1);
  for (std::size_t i = 0; i < n; ++i) h[i] = (t * ax[i] + (1.0 - t) * ex[i]) - v.lambda * xp[i];
  h[n] = dot(v.x, v.x) - 1.0;
  return h;
}

Matrix jacobian_lambda_x(const HomotopyProblem& p, const EigenPair& v, double t) {
  check_state(p, v);
  const auto n = v.x.size();
  const int m = p.order();
  const Matrix abar = apply_m2(p.target_sym(), v.x);
  const Matrix ebar = apply_m2(p.start_tensor(), v.x);
  const Vector xp = elementwise_power(v.x, m - 1);
  const Vector c = elementwise_power(v.x, m - 2);
  const double factor = static_cast<double>(m - 1);

  Matrix j(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    j(i, 0) = -xp[i];
    for (std::size_t k = 0; k < n; ++k) {
      double b = t * abar(i, k) + (1.0 - t) * ebar(i, k);
      if (k == i) b -= v.lambda * c[i];
      j(i, k + 1) = factor * b;
    }
  }
  for (std::size_t k = 0; k < n; ++k) j(n, k + 1) = 2.0 * v.x[k];
  return j;
}

Vector dt_derivative(const HomotopyProblem& p, const EigenPair& v, double /*t*/) {
  check_state(p, v);
  const Vector ax = apply_m1(p.target(), v.x);
  const Vector ex = apply_m1(p.start_tensor(), v.x);
  Vector d(ax.size() + 1, 0.0);
  for (std::size_t i = 0; i < ax.size(); ++i) d[i] = ax[i] - ex[i];
  return d;
}

std::optional<EigenPair> euler_predict(const HomotopyProblem& p, const PathState& state, double dt) {
  Vector rhs = dt_derivative(p, state.pair, state.t);
  for (double& e : rhs) e = -e;
  Vector tangent;
  try {
    tangent = lu_solve(jacobian_lambda_x(p, state.pair, state.t), rhs);
  } catch (const SingularMatrixError&) {
    return std::nullopt;
  }
  Vector u = flatten(state.pair);
  for (std::size_t k = 0; k < u.size(); ++k) u[k] += dt * tangent[k];
  if (!all_finite(u)) return std::nullopt;
  return unflatten(u);
}

Correction newton_correct(const HomotopyProblem& p, EigenPair v0, double t, double tol, int budget,
                          int min_iters) {
  Correction c;
  c.pair = std::move(v0);
  for (;;) {
    const Vector h = eval_homotopy(p, c.pair, t);
    c.residual = norm2(h);
    if (!std::isfinite(c.residual)) {
      c.status = CorrectionStatus::left_positive_orthant;
      return c;
    }
    if (c.residual <= tol && c.iters >= min_iters) {
      c.status = in_positive_orthant(c.pair) ? CorrectionStatus::converged : CorrectionStatus::left_positive_orthant;
      return c;
    }
    if (c.iters >= budget) {
      c.status = CorrectionStatus::budget_exhausted;
      return c;
    }
    Vector step;
    try {
      step = lu_solve(jacobian_lambda_x(p, c.pair, t), h);
    } catch (const SingularMatrixError&) {
      c.status = CorrectionStatus::singular_jacobian;
      return c;
    }
    c.pair.lambda -= step[0];
    for (std::size_t k = 0; k < c.pair.x.size(); ++k) c.pair.x[k] -= step[k + 1];
    ++c.iters;
  }
}

StepUpdate adapt_step(const PathState& state, int newton_iters_used, bool was_cut, const SolverConfig& cfg) {
  if (newton_iters_used > cfg.cut_threshold_newton_iters) {
    return {std::max(0.5 * state.dt, cfg.dt_min), 0};
  }
  if (was_cut) return {state.dt, 0};
  const int uncut = state.consecutive_uncut + 1;
  if (uncut >= 2) return {std::min(2.0 * state.dt, cfg.dt_max), uncut};
  return {state.dt, uncut};
}

SolveReport follow_path(const HomotopyProblem& p, const SolverConfig& cfg) {
  cfg.validate();
  const auto started = std::chrono::steady_clock::now();

  SolveReport report;
  report.scale = p.scale();

  PathState state;
  state.pair = start_pair(p.start_a(), p.start_b(), p.order());
  state.dt = cfg.dt0;
  report.trace.push_back(state);

  auto finish = [&](Termination why) {
    report.termination = why;
    report.steps = state.step_index;
    report.newton_total = state.newton_total;
    report.internal_lambda = state.pair.lambda;
    report.pair = {state.pair.lambda * p.scale(), state.pair.x};
    report.residual = norm2(eval_homotopy(p, state.pair, state.t));
    report.wall_time = std::chrono::steady_clock::now() - started;
    return report;
  };

  while (true) {
    if (state.step_index >= cfg.max_steps) return finish(Termination::step_limit);

    double dt = state.dt;
    bool retried = false;
    for (;;) {
      double t_next = state.t + dt;
      bool last = false;
      if (t_next >= 1.0) {
        t_next = 1.0;
        last = true;
      }
      const double step = t_next - state.t;
      const double tol = last ? cfg.eps2 : cfg.eps1;

      std::optional<Correction> corr;
      if (auto guess = euler_predict(p, state, step)) {
        corr = newton_correct(p, std::move(*guess), t_next, tol, cfg.newton_budget_per_step, cfg.min_newton_iters);
        state.newton_total += corr->iters;
      }

      if (corr && corr->ok()) {
        state.t = t_next;
        state.pair = std::move(corr->pair);
        ++state.step_index;
        if (last) {
          report.trace.push_back(state);
          return finish(Termination::converged);
        }
        state.dt = step;
        const StepUpdate next = adapt_step(state, corr->iters, retried, cfg);
        state.dt = next.dt;
        state.consecutive_uncut = next.consecutive_uncut;
        report.trace.push_back(state);
        break;
      }

      if (dt <= cfg.dt_min) return finish(Termination::path_failure);
      dt = std::max(0.5 * dt, cfg.dt_min);
      retried = true;
    }
  }
}

SolveReport solve_perron(const DenseTensor& a, const SolverConfig& cfg, Vector start_a, Vector start_b) {
  const auto started = std::chrono::steady_clock::now();
  const auto n = static_cast<std::size_t>(a.dim());
  if (start_a.empty()) start_a.assign(n, 1.0);
  if (start_b.empty()) start_b.assign(n, 1.0);

  const HomotopyProblem problem = HomotopyProblem::preprocessed(a, std::move(start_a), std::move(start_b));
  const bool weakly_irreducible = weak_irreducibility_check(problem.target());
  SolveReport report = follow_path(problem, cfg);
  if (!weakly_irreducible) {
    report.warnings.push_back("tensor is reducible; the limit pair may not be the Perron pair");
  }
  report.wall_time = std::chrono::steady_clock::now() - started;
  return report;
}

}  // namespace perron
