#pragma once

// Power-type baseline: x <- (A x^{m-1})^{[1/(m-1)]}, normalized, with the
// min/max ratio bounds bracketing the Perron value. The eigenvalue estimate
// at each iterate is the midpoint of those bounds; the stopping test is the
// stacked residual of that estimate.

#include <span>
#include <string>

#include "perron/tensor.hpp"

namespace perron {

struct NqzConfig {
  double tol = 1e-12;
  int max_iters = 10000;
  double shift = 0.0;  // added as shift * I to the scaled tensor
};

struct NqzStep {
  Vector x_next;
  double lambda_lo = 0.0;
  double lambda_hi = 0.0;
};

/// One power step. `x` must be strictly positive. Throws
/// DegenerateIterateError if A x^{m-1} has a zero component.
NqzStep nqz_iterate(const DenseTensor& a, std::span<const double> x);

struct NqzReport {
  EigenPair pair;  // unshifted, rescaled to the input tensor
  int iters = 0;
  bool converged = false;
  double residual = 0.0;  // on the scaled, shifted tensor
  double lambda_lo = 0.0;  // final bounds, same units as pair.lambda
  double lambda_hi = 0.0;
  double scale = 1.0;
  std::string diagnostic;
};

/// Empty x0 means ones(n)/sqrt(n).
NqzReport nqz_solve(const DenseTensor& a, Vector x0 = {}, const NqzConfig& cfg = {});

}  // namespace perron
