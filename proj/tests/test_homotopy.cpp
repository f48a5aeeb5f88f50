#include <cmath>

#include "doctest.h"
#include "perron/errors.hpp"
#include "perron/experiment.hpp"
#include "perron/homotopy.hpp"
#include "perron/linalg.hpp"
#include "perron/nqz.hpp"
#include "perron/tensor_ops.hpp"
#include "test_support.hpp"

using namespace perron;
using perron::testing::cpz_example;
using perron::testing::Rng;

namespace {

Vector ones(int n) { return Vector(static_cast<std::size_t>(n), 1.0); }

HomotopyProblem problem_for(const DenseTensor& a) { return HomotopyProblem::preprocessed(a, ones(a.dim()), ones(a.dim())); }

EigenPair random_positive_state(Rng& rng, int n) { return {rng.uniform(0.5, 3.0), rng.vector(static_cast<std::size_t>(n), 0.1, 1.0)}; }

bool positive(const EigenPair& p) {
  if (!(p.lambda > 0.0)) return false;
  for (double v : p.x)
    if (!(v > 0.0)) return false;
  return true;
}

}  // namespace

TEST_CASE("SolverConfig defaults and validation") {
  const SolverConfig cfg;
  CHECK(cfg.dt0 == 0.1);
  CHECK(cfg.eps1 == 1e-5);
  CHECK(cfg.eps2 == 1e-12);
  CHECK(cfg.dt_min == 1e-6);
  CHECK(cfg.dt_max == 0.5);
  CHECK(cfg.max_steps == 10000);
  CHECK_NOTHROW(cfg.validate());

  SolverConfig bad = cfg;
  bad.dt0 = 0.7;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.eps2 = 1e-3;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("start_pair") {
  const EigenPair p = start_pair(ones(3), ones(3), 3);
  CHECK(p.lambda == doctest::Approx(9.0));
  for (double v : p.x) CHECK(v == doctest::Approx(1.0 / std::sqrt(3.0)));

  const EigenPair q = start_pair(Vector{1, 2}, Vector{3, 1}, 3);
  CHECK(q.lambda == doctest::Approx(25.0));
  CHECK(q.x[0] == doctest::Approx(1.0 / std::sqrt(5.0)));
  CHECK(q.x[1] == doctest::Approx(2.0 / std::sqrt(5.0)));

  CHECK_THROWS_AS(start_pair(Vector{1, 0}, Vector{1, 1}, 3), DomainError);
  CHECK_THROWS_AS(start_pair(Vector{1, 1}, Vector{1, -1}, 3), DomainError);

  Rng rng(301);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector a = rng.vector(5, 0.1, 2.0);
    const Vector b = rng.vector(5, 0.1, 2.0);
    const EigenPair s = start_pair(a, b, 3);
    const DenseTensor e = rank_one_start_tensor(a, b, 3);
    CHECK(residual(e, s) <= 1e-13 * std::max(1.0, s.lambda));
  }
}

TEST_CASE("eval_homotopy endpoints and linearity") {
  Rng rng(302);
  const DenseTensor a = rng.tensor(3, 4);
  const HomotopyProblem p = problem_for(a);
  const EigenPair s = start_pair(p.start_a(), p.start_b(), 3);

  CHECK(perron::testing::max_abs(eval_homotopy(p, s, 0.0)) <= 1e-13);

  const EigenPair v = random_positive_state(rng, 4);
  const Vector h0 = eval_homotopy(p, v, 0.0);
  const Vector h1 = eval_homotopy(p, v, 1.0);
  const Vector hm = eval_homotopy(p, v, 0.5);

  const Vector pv = apply_m1(p.target(), v.x);
  const Vector qv = apply_m1(p.start_tensor(), v.x);
  const Vector xp = elementwise_power(v.x, 2);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(h1[i] == doctest::Approx(pv[i] - v.lambda * xp[i]).epsilon(1e-13));
    CHECK(h0[i] == doctest::Approx(qv[i] - v.lambda * xp[i]).epsilon(1e-13));
  }
  for (std::size_t i = 0; i < hm.size(); ++i) CHECK(std::abs(hm[i] - 0.5 * (h0[i] + h1[i])) <= 1e-13);
  CHECK(h1.back() == doctest::Approx(dot(v.x, v.x) - 1.0));

  CHECK_THROWS_AS(eval_homotopy(p, {1.0, {1, 1}}, 0.3), DimensionError);
}

TEST_CASE("jacobian_lambda_x") {
  Rng rng(303);
  SUBCASE("matches central differences of eval_homotopy") {
    for (int trial = 0; trial < 20; ++trial) {
      const int m = rng.integer(3, 4);
      const int n = rng.integer(1, 6);
      const HomotopyProblem p = problem_for(rng.tensor(m, n));
      const EigenPair v = random_positive_state(rng, n);
      const double t = rng.uniform(0, 1);
      const Matrix j = jacobian_lambda_x(p, v, t);
      Vector u{v.lambda};
      u.insert(u.end(), v.x.begin(), v.x.end());
      const Matrix fd = perron::testing::central_difference_jacobian(
          [&](const Vector& w) { return eval_homotopy(p, {w[0], Vector(w.begin() + 1, w.end())}, t); }, u);
      CHECK(perron::testing::rel_diff(j.data(), fd.data()) < 1e-6);
    }
  }
  SUBCASE("block structure at the normalized ones vector, m = 3") {
    const HomotopyProblem p = problem_for(rng.tensor(3, 3));
    const double s = 1.0 / std::sqrt(3.0);
    const double lambda = 2.5;
    const EigenPair v{lambda, {s, s, s}};
    const double t = 0.4;
    const Matrix j = jacobian_lambda_x(p, v, t);
    const Matrix abar = apply_m2(p.target_sym(), v.x);
    const Matrix ebar = apply_m2(p.start_tensor(), v.x);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(j(i, 0) == doctest::Approx(-s * s));
      for (std::size_t k = 0; k < 3; ++k) {
        // C = diag(x) = I / sqrt(3)
        const double expect = 2.0 * (t * abar(i, k) + (1 - t) * ebar(i, k) - (i == k ? lambda * s : 0.0));
        CHECK(j(i, k + 1) == doctest::Approx(expect));
      }
      CHECK(j(3, i + 1) == doctest::Approx(2.0 * s));
    }
    CHECK(j(3, 0) == 0.0);
  }
  SUBCASE("nonsingular at the start state") {
    for (int trial = 0; trial < 10; ++trial) {
      const int n = rng.integer(1, 8);
      const HomotopyProblem p = problem_for(rng.tensor(rng.integer(3, 4), n));
      const EigenPair s = start_pair(p.start_a(), p.start_b(), p.order());
      CHECK_NOTHROW(lu_solve(jacobian_lambda_x(p, s, 0.0), ones(n + 1)));
    }
  }
}

TEST_CASE("dt_derivative") {
  Rng rng(304);
  Vector o = ones(3);
  const HomotopyProblem same(rank_one_start_tensor(o, o, 3), o, o);
  const Vector z = dt_derivative(same, random_positive_state(rng, 3), 0.2);
  for (double v : z) CHECK(v == 0.0);

  for (int trial = 0; trial < 10; ++trial) {
    const int n = rng.integer(1, 6);
    const HomotopyProblem p = problem_for(rng.tensor(3, n));
    const EigenPair v = random_positive_state(rng, n);
    const double t = rng.uniform(0.1, 0.9);
    const Vector d = dt_derivative(p, v, t);
    CHECK(d.back() == 0.0);
    const double h = 1e-6;
    const Vector hp = eval_homotopy(p, v, t + h);
    const Vector hm = eval_homotopy(p, v, t - h);
    Vector fd(hp.size());
    for (std::size_t i = 0; i < fd.size(); ++i) fd[i] = (hp[i] - hm[i]) / (2 * h);
    CHECK(perron::testing::rel_diff(d, fd) < 1e-6);
  }
}

TEST_CASE("euler_predict") {
  Vector o = ones(3);
  const HomotopyProblem same(rank_one_start_tensor(o, o, 3), o, o);
  PathState st;
  st.pair = start_pair(o, o, 3);
  const auto u = euler_predict(same, st, 0.3);
  REQUIRE(u);
  CHECK(u->lambda == doctest::Approx(st.pair.lambda).epsilon(1e-15));
  CHECK(perron::testing::max_abs_diff(u->x, st.pair.x) <= 1e-15);

  const HomotopyProblem p = problem_for(lgl_tensor());
  PathState s0;
  s0.pair = start_pair(p.start_a(), p.start_b(), 3);
  const auto u0 = euler_predict(p, s0, 0.0);
  REQUIRE(u0);
  CHECK(u0->lambda == s0.pair.lambda);
  CHECK(u0->x == s0.pair.x);

  SUBCASE("first step of the lgl problem lands in the Newton basin") {
    const auto guess = euler_predict(p, s0, 0.1);
    REQUIRE(guess);
    for (double v : guess->x) CHECK(v > 0.0);
    const Correction c = newton_correct(p, *guess, 0.1, 1e-5, 10);
    CHECK(c.ok());
    CHECK(c.iters <= 3);
  }
}

TEST_CASE("newton_correct") {
  SUBCASE("already converged input is returned unchanged") {
    Vector o = ones(3);
    const HomotopyProblem same(rank_one_start_tensor(o, o, 3), o, o);
    const EigenPair s = start_pair(o, o, 3);
    const Correction c = newton_correct(same, s, 0.5, 1e-12, 10);
    CHECK(c.ok());
    CHECK(c.iters == 0);
    CHECK(c.pair.lambda == s.lambda);
    CHECK(c.pair.x == s.x);
  }

  SUBCASE("quadratic convergence on the cpz tensor at t = 1") {
    const HomotopyProblem p = problem_for(cpz_example());
    CHECK(p.scale() == 4.0);
    EigenPair v0{perron::testing::cpz_example_lambda() / 4.0 + 1e-3, perron::testing::cpz_example_vector()};
    for (auto& e : v0.x) e += 1e-3;

    // Replays the iteration one update at a time to record its residuals.
    std::vector<double> res;
    for (int k = 0; k <= 10; ++k) {
      const Correction c = newton_correct(p, v0, 1.0, 0.0, k);
      res.push_back(c.residual);
      if (c.residual <= 1e-15) break;
    }
    const Correction done = newton_correct(p, v0, 1.0, 1e-12, 10);
    REQUIRE(done.ok());
    CHECK(done.pair.lambda == doctest::Approx(perron::testing::cpz_example_lambda() / 4.0).epsilon(1e-12));
    REQUIRE(res.size() >= 3);
    // Last two updates whose input residual is above rounding level.
    int checked = 0;
    for (std::size_t k = res.size() - 1; k >= 1 && checked < 2; --k) {
      if (res[k - 1] < 1e-10) continue;
      CHECK(res[k] <= 10.0 * res[k - 1] * res[k - 1]);
      ++checked;
    }
    CHECK(checked == 2);
  }

  SUBCASE("singular Jacobian is reported") {
    const HomotopyProblem p(DenseTensor(3, 3), ones(3), ones(3));
    const Correction c = newton_correct(p, {1.0, {1, 0, 0}}, 1.0, 1e-12, 10);
    CHECK(c.status == CorrectionStatus::singular_jacobian);
    CHECK_FALSE(c.ok());
  }

  SUBCASE("budget exhaustion") {
    const HomotopyProblem p = problem_for(cpz_example());
    const Correction c = newton_correct(p, {0.3, {0.9, 0.3, 0.3}}, 1.0, 1e-12, 1);
    CHECK(c.status == CorrectionStatus::budget_exhausted);
  }

  SUBCASE("converged iterate outside the positive orthant is rejected") {
    // The sign-flipped Perron pair of the start tensor at t = 0.
    Vector o = ones(2);
    const HomotopyProblem p(rank_one_start_tensor(o, o, 3), o, o);
    const double s = 1.0 / std::sqrt(2.0);
    const Correction c = newton_correct(p, {4.0, {-s, -s}}, 0.0, 1e-12, 10);
    CHECK(c.residual <= 1e-12);
    CHECK(c.status == CorrectionStatus::left_positive_orthant);
  }

  SUBCASE("minimum update count") {
    Vector o = ones(3);
    const HomotopyProblem same(rank_one_start_tensor(o, o, 3), o, o);
    const Correction c = newton_correct(same, start_pair(o, o, 3), 0.5, 1e-12, 10, 1);
    CHECK(c.ok());
    CHECK(c.iters == 1);
  }
}

TEST_CASE("adapt_step") {
  const SolverConfig cfg;
  auto state = [](double dt, int uncut) {
    PathState s;
    s.dt = dt;
    s.consecutive_uncut = uncut;
    return s;
  };
  CHECK(adapt_step(state(0.2, 1), 5, false, cfg).dt == doctest::Approx(0.1));
  CHECK(adapt_step(state(0.3, 1), 2, false, cfg).dt == 0.5);
  CHECK(adapt_step(state(1.5e-6, 0), 6, false, cfg).dt == 1e-6);
  CHECK(adapt_step(state(0.1, 0), 2, false, cfg).dt == 0.1);
  CHECK(adapt_step(state(0.1, 0), 2, false, cfg).consecutive_uncut == 1);
  CHECK(adapt_step(state(0.1, 1), 3, false, cfg).dt == doctest::Approx(0.2));
  CHECK(adapt_step(state(0.1, 3), 4, false, cfg).consecutive_uncut == 0);
  CHECK(adapt_step(state(0.05, 4), 1, true, cfg).dt == 0.05);
  CHECK(adapt_step(state(0.05, 4), 1, true, cfg).consecutive_uncut == 0);
}

TEST_CASE("follow_path and solve_perron") {
  SUBCASE("the cpz tensor") {
    const SolveReport r = solve_perron(cpz_example());
    REQUIRE(r.termination == Termination::converged);
    CHECK(std::abs(r.pair.lambda - std::sqrt(11.0)) <= 1e-9);
    CHECK(r.scale == 4.0);
    CHECK(r.internal_lambda == doctest::Approx(std::sqrt(11.0) / 4.0).epsilon(1e-12));
    const Vector xs = perron::testing::cpz_example_vector();
    CHECK(perron::testing::max_abs_diff(r.pair.x, xs) <= 1e-5);
    CHECK(xs[0] == doctest::Approx(0.56699).epsilon(1e-4));
    CHECK(xs[1] == doctest::Approx(0.53924).epsilon(1e-4));
    CHECK(xs[2] == doctest::Approx(0.62268).epsilon(1e-4));
    CHECK(r.residual <= 1e-12);
    CHECK(r.warnings.empty());
  }

  SUBCASE("target equal to the start tensor stays on the start pair") {
    Vector o = ones(3);
    const HomotopyProblem p(rank_one_start_tensor(o, o, 3), o, o);
    const SolveReport r = follow_path(p, {});
    REQUIRE(r.termination == Termination::converged);
    CHECK(r.pair.lambda == doctest::Approx(9.0).epsilon(1e-14));
    // 0.1, 0.2, 0.4, 0.8, 1
    CHECK(r.steps == 5);
  }

  SUBCASE("lgl problem at gamma = 0 agrees with NQZ") {
    const SolveReport r = solve_perron(lgl_tensor());
    REQUIRE(r.termination == Termination::converged);
    const NqzReport q = nqz_solve(lgl_tensor());
    REQUIRE(q.converged);
    CHECK(std::abs(r.pair.lambda - q.pair.lambda) <= 1e-8);
    CHECK(perron::testing::max_abs_diff(r.pair.x, q.pair.x) <= 1e-8);
    CHECK(r.steps >= 2);
    CHECK(r.steps <= 8);
    CHECK(r.newton_total >= 8);
    CHECK(r.newton_total <= 20);
  }

  SUBCASE("random (3,20) with gamma = 100") {
    ExperimentSpec spec;
    spec.example = ExampleId::random;
    spec.order = 3;
    spec.dim = 20;
    spec.gamma = 1e2;
    spec.seed = kBenchSeed;
    const SolveReport r = solve_perron(gen_example(spec));
    CHECK(r.termination == Termination::converged);
    CHECK(r.residual <= 1e-12);
    CHECK(r.steps <= 10);
  }

  SUBCASE("reducible input gets a warning") {
    const SolveReport r = solve_perron(add_scaled_identity(DenseTensor(3, 3), 5.0));
    CHECK_FALSE(r.warnings.empty());
    if (r.termination == Termination::converged) {
      CHECK(residual(identity_tensor(3, 3), {r.internal_lambda, r.pair.x}) <= 1e-12);
    }
  }

  SUBCASE("step limit") {
    SolverConfig cfg;
    cfg.max_steps = 2;
    const SolveReport r = solve_perron(cpz_example(), cfg);
    CHECK(r.termination == Termination::step_limit);
    CHECK(r.steps == 2);
  }

  SUBCASE("path failure when every correction fails") {
    SolverConfig cfg;
    cfg.dt_min = 0.05;
    cfg.newton_budget_per_step = 1;
    cfg.eps1 = 1e-14;
    cfg.eps2 = 1e-14;
    const SolveReport r = solve_perron(lgl_tensor(), cfg);
    CHECK(r.termination == Termination::path_failure);
  }

  SUBCASE("input errors") {
    CHECK_THROWS_AS(solve_perron(DenseTensor(3, 3)), DomainError);
    DenseTensor neg = cpz_example();
    neg[1] = -0.5;
    CHECK_THROWS_AS(solve_perron(neg), DomainError);
    CHECK_THROWS_AS(solve_perron(cpz_example(), {}, Vector{1, 1, 0}), DomainError);
  }

  SUBCASE("non-default start vectors reach the same pair") {
    const SolveReport r = solve_perron(lgl_tensor(), {}, Vector{1, 2, 3}, Vector{0.5, 0.5, 2});
    const SolveReport d = solve_perron(lgl_tensor());
    REQUIRE(r.termination == Termination::converged);
    CHECK(r.pair.lambda == doctest::Approx(d.pair.lambda).epsilon(1e-10));
  }
}

TEST_CASE("solver invariants on random tensors") {
  Rng rng(305);
  for (int trial = 0; trial < 12; ++trial) {
    const int m = 3;
    const int n = trial % 2 == 0 ? 5 : 10;
    const DenseTensor a = rng.tensor(m, n);
    const SolveReport base = solve_perron(a);
    REQUIRE(base.termination == Termination::converged);

    for (const auto& s : base.trace) CHECK(positive(s.pair));

    DenseTensor scaled = a;
    scaled *= 1.0 / base.scale;
    CHECK(residual(scaled, {base.internal_lambda, base.pair.x}) <= 1e-12);

    const SpectralBounds b = spectral_bounds(a);
    CHECK(b.row_sum_lo <= base.pair.lambda * (1 + 1e-12));
    CHECK(base.pair.lambda <= b.row_sum_hi * (1 + 1e-12));

    for (double gamma : {10.0, 1e3}) {
      const SolveReport sh = solve_perron(add_scaled_identity(a, gamma));
      REQUIRE(sh.termination == Termination::converged);
      CHECK(std::abs(sh.pair.lambda - base.pair.lambda - gamma) <= 1e-7);
      CHECK(perron::testing::max_abs_diff(sh.pair.x, base.pair.x) <= 1e-7);
    }
    for (double c : {0.5, 7.0}) {
      DenseTensor ca = a;
      ca *= c;
      const SolveReport sc = solve_perron(ca);
      CHECK(std::abs(sc.pair.lambda - c * base.pair.lambda) <= 1e-9 * c * base.pair.lambda);
      CHECK(perron::testing::max_abs_diff(sc.pair.x, base.pair.x) <= 1e-9);
    }
    const NqzReport q = nqz_solve(a);
    if (q.converged) {
      CHECK(std::abs(q.pair.lambda - base.pair.lambda) <= 1e-9 * base.pair.lambda);
      CHECK(perron::testing::max_abs_diff(q.pair.x, base.pair.x) <= 1e-7);
    }
  }
}

TEST_CASE("order 2 reduces to the matrix eigenproblem") {
  // [[2,1],[1,2]] has Perron pair (3, (1,1)/sqrt(2)).
  const DenseTensor a(2, 2, {2, 1, 1, 2});
  const SolveReport r = solve_perron(a);
  REQUIRE(r.termination == Termination::converged);
  CHECK(r.pair.lambda == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r.pair.x[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
}
