#include "perron/nqz.hpp"

#include <algorithm>
#include <cmath>

#include "perron/errors.hpp"
#include "perron/linalg.hpp"
#include "perron/tensor_ops.hpp"

namespace perron {

namespace {

struct PowerStep {
  NqzStep step;
  double lambda = 0.0;    // midpoint of the bounds
  double residual = 0.0;  // of (lambda, x) before the update
};

PowerStep power_step(const DenseTensor& a, std::span<const double> x) {
  const int m = a.order();
  const Vector y = apply_m1(a, x);
  const Vector xp = elementwise_power(x, m - 1);

  PowerStep out;
  double lo = 0.0;
  double hi = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(y[i] > 0.0)) {
      throw DegenerateIterateError("component " + std::to_string(i + 1) + " of A x^{m-1} vanished");
    }
    const double ratio = y[i] / xp[i];
    lo = i == 0 ? ratio : std::min(lo, ratio);
    hi = i == 0 ? ratio : std::max(hi, ratio);
  }
  out.step.lambda_lo = lo;
  out.step.lambda_hi = hi;
  out.lambda = 0.5 * (lo + hi);

  Vector r(y.size() + 1);
  for (std::size_t i = 0; i < y.size(); ++i) r[i] = y[i] - out.lambda * xp[i];
  r.back() = dot(x, x) - 1.0;
  out.residual = norm2(r);

  out.step.x_next = normalized(elementwise_power(y, 1.0 / (m - 1)));
  return out;
}

}  // namespace

NqzStep nqz_iterate(const DenseTensor& a, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(a.dim())) throw DimensionError("vector length != tensor dimension");
  for (double e : x) {
    if (!(e > 0.0)) throw DomainError("power iterate must be strictly positive");
  }
  return power_step(a, x).step;
}

NqzReport nqz_solve(const DenseTensor& a, Vector x0, const NqzConfig& cfg) {
  if (!(cfg.tol > 0.0) || cfg.max_iters < 1 || cfg.shift < 0.0) throw ConfigError("invalid NQZ configuration");
  if (!a.is_nonnegative()) throw DomainError("tensor has a negative entry");
  const double tau = a.max_entry();
  if (!(tau > 0.0)) throw DomainError("tensor is identically zero");

  const auto n = static_cast<std::size_t>(a.dim());
  if (x0.empty()) x0.assign(n, 1.0 / std::sqrt(static_cast<double>(n)));
  if (x0.size() != n) throw DimensionError("start vector length != tensor dimension");
  for (double e : x0) {
    if (!(e > 0.0)) throw DomainError("start vector must be strictly positive");
  }

  DenseTensor scaled = a;
  scaled *= 1.0 / tau;
  if (cfg.shift > 0.0) scaled = add_scaled_identity(std::move(scaled), cfg.shift);

  NqzReport report;
  report.scale = tau;
  Vector x = std::move(x0);
  double lambda = 0.0;
  auto unscale = [&](double v) { return tau * (v - cfg.shift); };

  try {
    for (int k = 0;; ++k) {
      PowerStep ps = power_step(scaled, x);
      lambda = ps.lambda;
      report.residual = ps.residual;
      report.lambda_lo = unscale(ps.step.lambda_lo);
      report.lambda_hi = unscale(ps.step.lambda_hi);
      report.iters = k;
      if (ps.residual <= cfg.tol) {
        report.converged = true;
        break;
      }
      if (k >= cfg.max_iters) break;
      x = std::move(ps.step.x_next);
    }
  } catch (const DegenerateIterateError& e) {
    report.diagnostic = e.what();
  }

  report.pair = {unscale(lambda), std::move(x)};
  return report;
}

}  // namespace perron
