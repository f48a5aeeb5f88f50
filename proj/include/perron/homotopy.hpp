#pragma once

// Perron pair of a nonnegative tensor by following the curve
//   H(lambda, x, t) = [ (t A + (1-t) E) x^{m-1} - lambda x^{[m-1]} ; x'x - 1 ] = 0
// from the closed-form pair of the positive start tensor E at t = 0 to the
// target tensor A at t = 1, with an Euler predictor and a Newton corrector.

#include <chrono>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "perron/tensor.hpp"

namespace perron {

struct SolverConfig {
  double dt0 = 0.1;
  double eps1 = 1e-5;   // corrector tolerance at interior points
  double eps2 = 1e-12;  // corrector tolerance at t = 1
  double dt_min = 1e-6;
  double dt_max = 0.5;
  int newton_budget_per_step = 10;
  int max_steps = 10000;
  int cut_threshold_newton_iters = 3;
  int min_newton_iters = 1;  // corrector updates taken before the residual test can stop it

  /// Throws ConfigError when the ordering constraints are violated.
  void validate() const;
};

/// Immutable after construction; safe to share between threads.
class HomotopyProblem {
 public:
  /// `target` is used as given (no rescaling); `scale` is recorded so results
  /// can be mapped back to the unscaled tensor.
  HomotopyProblem(DenseTensor target, Vector start_a, Vector start_b, double scale = 1.0);

  /// Divides `a` by its largest entry first.
  static HomotopyProblem preprocessed(const DenseTensor& a, Vector start_a, Vector start_b);

  const DenseTensor& target() const noexcept { return target_; }
  const DenseTensor& target_sym() const noexcept { return target_sym_; }
  const DenseTensor& start_tensor() const noexcept { return start_tensor_; }
  const Vector& start_a() const noexcept { return start_a_; }
  const Vector& start_b() const noexcept { return start_b_; }
  double scale() const noexcept { return scale_; }
  int order() const noexcept { return target_.order(); }
  int dim() const noexcept { return target_.dim(); }

 private:
  DenseTensor target_;
  DenseTensor target_sym_;
  Vector start_a_;
  Vector start_b_;
  DenseTensor start_tensor_;
  double scale_;
};

struct PathState {
  double t = 0.0;
  EigenPair pair;
  double dt = 0.0;
  int step_index = 0;
  int newton_total = 0;
  int consecutive_uncut = 0;
};

enum class Termination { converged, step_limit, path_failure };

const char* to_string(Termination t);

struct SolveReport {
  EigenPair pair;              // lambda rescaled to the input tensor
  double internal_lambda = 0;  // lambda of the preprocessed tensor
  double scale = 1.0;
  double residual = 0.0;       // on the preprocessed tensor
  int steps = 0;
  int newton_total = 0;
  std::chrono::duration<double> wall_time{};
  Termination termination = Termination::path_failure;
  std::vector<PathState> trace;
  std::vector<std::string> warnings;
};

/// ((a'b)^{m-1}, a/||a||), the Perron pair of rank_one_start_tensor(a, b, m).
EigenPair start_pair(std::span<const double> a, std::span<const double> b, int order);

/// Stacked H(lambda, x, t), length n + 1. `x` need not be unit length.
Vector eval_homotopy(const HomotopyProblem& p, const EigenPair& v, double t);

/// D_(lambda,x) H, (n+1) x (n+1); column 0 is the lambda derivative.
Matrix jacobian_lambda_x(const HomotopyProblem& p, const EigenPair& v, double t);

/// D_t H = [ (A - E) x^{m-1} ; 0 ].
Vector dt_derivative(const HomotopyProblem& p, const EigenPair& v, double t);

/// u_k + dt * du/dt with du/dt from D_u H du/dt = -D_t H at (state.pair,
/// state.t). Empty when the Jacobian is singular.
std::optional<EigenPair> euler_predict(const HomotopyProblem& p, const PathState& state, double dt);

enum class CorrectionStatus { converged, budget_exhausted, singular_jacobian, left_positive_orthant };

struct Correction {
  EigenPair pair;
  int iters = 0;
  double residual = 0.0;
  CorrectionStatus status = CorrectionStatus::budget_exhausted;

  bool ok() const noexcept { return status == CorrectionStatus::converged; }
};

/// Newton iteration on H(., t) from v0 until ||H|| <= tol, at most `budget`
/// updates and at least `min_iters`. A converged iterate must have lambda > 0
/// and x > 0.
Correction newton_correct(const HomotopyProblem& p, EigenPair v0, double t, double tol, int budget,
                          int min_iters = 0);

struct StepUpdate {
  double dt = 0.0;
  int consecutive_uncut = 0;
};

/// Step-size rule applied after an accepted step.
///   more than cfg.cut_threshold_newton_iters iterations: halve, floor dt_min;
///   this and the previous step both uncut: double, cap dt_max;
///   otherwise hold.
/// `was_cut` marks a step that had to be retried with a smaller dt; it resets
/// the uncut counter like an iteration cut does.
StepUpdate adapt_step(const PathState& state, int newton_iters_used, bool was_cut, const SolverConfig& cfg);

SolveReport follow_path(const HomotopyProblem& p, const SolverConfig& cfg);

/// Scales A by its largest entry, follows the path from the start pair of
/// (a, b), and maps lambda back. Empty a/b default to all ones.
SolveReport solve_perron(const DenseTensor& a, const SolverConfig& cfg = {}, Vector start_a = {},
                         Vector start_b = {});

}  // namespace perron
