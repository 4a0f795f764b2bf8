#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

#include "qdeco/decoherence.hpp"
#include "qdeco/density_matrix.hpp"
#include "qdeco/gaussian.hpp"
#include "qdeco/model.hpp"
#include "support/generators.hpp"
#include "support/quadrature.hpp"

using namespace qdeco;

namespace {

OscillatorParams p0() {
  OscillatorParams p;
  p.lambda = 0.2;
  p.mu = 0.1;
  return with_coth_epsilon(p, 2.0);
}

InitialStateSpec spec_p0() {
  InitialStateSpec s;
  s.delta = 2.0;
  s.sigma_q0 = 1.0;
  return s;
}

}  // namespace

TEST_CASE("rho_element: diagonal peak value and normalization") {
  const auto p = p0();
  const auto d = gibbs_coefficients(p);
  const auto traj = evolve(initial_state(spec_p0(), p), p, d, 3.0);
  for (double t : {0.0, 1.1, 3.0}) {
    const auto s = traj.state_at(t);
    const auto peak = rho_element(s, p.constants, s.sigma_q, s.sigma_q);
    CHECK(peak.imag() == 0.0);
    CHECK(peak.real() ==
          doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi * s.sigma_qq))
              .epsilon(1e-14));

    const double w = std::sqrt(s.sigma_qq);
    const double norm = testsupport::integrate(
        [&](double q) { return rho_element(s, p.constants, q, q).real(); },
        s.sigma_q - 10.0 * w, s.sigma_q + 10.0 * w, 1e-11);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("rho purity by 2-D quadrature equals hbar/(2 sqrt(sigma))") {
  const auto p = p0();
  const auto d = gibbs_coefficients(p);
  const auto traj = evolve(initial_state(spec_p0(), p), p, d, 2.0);
  for (double t : {0.0, 2.0}) {
    const auto s = traj.state_at(t);
    const double w = std::sqrt(s.sigma_qq);
    const double lo = s.sigma_q - 9.0 * w;
    const double hi = s.sigma_q + 9.0 * w;
    const double tr_rho2 = testsupport::integrate(
        [&](double q) {
          return testsupport::integrate(
              [&](double qp) {
                return std::norm(rho_element(s, p.constants, q, qp));
              },
              lo, hi, 1e-12);
        },
        lo, hi, 1e-10);
    CHECK(tr_rho2 ==
          doctest::Approx(1.0 / (2.0 * std::sqrt(s.sigma()))).epsilon(1e-6));
  }
}

TEST_CASE("rho_sigma_delta: change of variables and off-diagonal width") {
  const auto p = p0();
  const auto s0 = initial_state(spec_p0(), p);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const double sum_half = u(rng);
    const double diff = u(rng);
    const auto a = rho_sigma_delta(s0, p.constants, sum_half, diff);
    const auto b =
        rho_element(s0, p.constants, sum_half + 0.5 * diff, sum_half - 0.5 * diff);
    CHECK(std::abs(a - b) <= 1e-14 * std::abs(a));
  }

  // |rho(0, diff)| falls to e^{-1/2} of |rho(0,0)| at diff = 1/sqrt(2 gamma).
  InitialStateSpec centered;
  centered.delta = 2.0;
  const auto sc = initial_state(centered, p0());
  const auto co = coefficients(sc, p0().constants);
  const double width = 1.0 / std::sqrt(2.0 * co.gamma);
  const double ratio = std::abs(rho_sigma_delta(sc, p0().constants, 0.0, width)) /
                       std::abs(rho_sigma_delta(sc, p0().constants, 0.0, 0.0));
  CHECK(ratio == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
}

TEST_CASE("coefficients: hand-checked values") {
  const auto p = p0();
  InitialStateSpec spec;
  spec.delta = 2.0;
  const auto s0 = initial_state(spec, p);
  const auto c0 = coefficients(s0, p.constants);
  CHECK(c0.alpha == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(c0.gamma == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(c0.beta == 0.0);

  // gamma(0) = m w / (4 hbar delta) for r = 0
  std::mt19937_64 rng(6);
  for (int i = 0; i < 50; ++i) {
    auto sc = testsupport::draw_valid(rng);
    sc.spec.r = 0.0;
    const auto s = initial_state(sc.spec, sc.params);
    const auto c = coefficients(s, sc.params.constants);
    const double expected = sc.params.mass * sc.params.omega /
                            (4.0 * sc.params.constants.hbar * sc.spec.delta);
    CHECK(c.gamma == doctest::Approx(expected).epsilon(1e-12));
  }

  // asymptotic state at coth = 2: alpha = gamma = 0.5, delta_qd = 0.5
  const auto sinf = asymptotic_covariance(p);
  const auto cinf = coefficients(sinf, p.constants);
  CHECK(cinf.alpha == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(cinf.gamma == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(cinf.beta == 0.0);
  CHECK(0.5 * std::sqrt(cinf.alpha / cinf.gamma) ==
        doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("steady state: matches rho at the asymptotic covariance") {
  const auto p = p0();
  const auto sinf = asymptotic_covariance(p);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int i = 0; i < 200; ++i) {
    const double q = u(rng);
    const double qp = u(rng);
    const auto a = rho_element(sinf, p.constants, q, qp);
    const double b = steady_state_element(p, q, qp);
    CHECK(a.imag() == 0.0);
    CHECK(std::abs(a.real() - b) <= 1e-14 * std::abs(b));
    // real and symmetric
    CHECK(steady_state_element(p, qp, q) == doctest::Approx(b).epsilon(1e-14));
  }
}

TEST_CASE("steady state at T=0 is the ground-state projector") {
  OscillatorParams p;
  p.mass = 1.3;
  p.omega = 0.9;
  p.lambda = 0.25;
  p.mu = 0.0;
  p.temperature = 0.0;
  const double mw = p.mass * p.omega;
  auto psi0 = [&](double q) {
    return std::pow(mw / std::numbers::pi, 0.25) * std::exp(-0.5 * mw * q * q);
  };
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-2.5, 2.5);
  for (int i = 0; i < 100; ++i) {
    const double q = u(rng);
    const double qp = u(rng);
    const double v = steady_state_element(p, q, qp);
    CHECK(std::abs(v - psi0(q) * psi0(qp)) <= 1e-14 * std::abs(v) + 1e-300);
  }
}

TEST_CASE("steady state: diagonal variance by quadrature") {
  const auto p = p0();
  const double var_expected =
      p.constants.hbar / (2.0 * p.mass * p.omega) * p.coth_epsilon();
  const double w = std::sqrt(var_expected);
  const double second_moment = testsupport::integrate(
      [&](double q) { return q * q * steady_state_element(p, q, q); },
      -12.0 * w, 12.0 * w, 1e-11);
  CHECK(second_moment == doctest::Approx(var_expected).epsilon(1e-8));
}

TEST_CASE("hermiticity holds exactly at random points") {
  const auto p = p0();
  const auto d = gibbs_coefficients(p);
  const auto traj = evolve(initial_state(spec_p0(), p), p, d, 4.0);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  std::uniform_real_distribution<double> ut(0.0, 4.0);
  for (int i = 0; i < 200; ++i) {
    const auto s = traj.state_at(ut(rng));
    const double q = u(rng);
    const double qp = u(rng);
    const auto a = rho_element(s, p.constants, q, qp);
    const auto b = rho_element(s, p.constants, qp, q);
    CHECK(a == std::conj(b));
  }
}

TEST_CASE("delta_qd consistency and diagonal peaking inequality") {
  const auto p = p0();
  const auto d = gibbs_coefficients(p);
  const auto traj = evolve(initial_state(spec_p0(), p), p, d, 20.0);
  for (const auto& s : traj.samples()) {
    const auto c = coefficients(s, p.constants);
    const double from_coeffs = 0.5 * std::sqrt(c.alpha / c.gamma);
    const double from_sigma = delta_qd(s, p.constants);
    CHECK(from_coeffs == doctest::Approx(from_sigma).epsilon(1e-14));
    if (s.time >= 0.5) {
      // gamma > alpha/4 exactly when delta_qd < 1
      CHECK((c.gamma > 0.25 * c.alpha) == (from_sigma < 1.0));
      CHECK(c.gamma > 0.25 * c.alpha);  // T > 0: decohering
    }
  }
}

TEST_CASE("pde residual: small on the Gaussian solution") {
  const auto p = p0();
  const auto d = gibbs_coefficients(p);
  StepControl fine;
  fine.samples = 2001;
  const auto traj = evolve(initial_state(spec_p0(), p), p, d, 10.0, fine);
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = 0.25 + 9.5 * u01(rng);
    const auto s = traj.state_at(t);
    const double w = 3.0 * std::sqrt(s.sigma_qq);
    const double q = s.sigma_q + (2.0 * u01(rng) - 1.0) * w;
    const double qp = s.sigma_q + (2.0 * u01(rng) - 1.0) * w;
    worst = std::max(worst, pde_residual_normalized(traj, p, d, q, qp, t));
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("pde residual: closed system (unitary limit)") {
  OscillatorParams p;
  DiffusionCoefficients d;
  InitialStateSpec spec;
  spec.delta = 1.5;
  spec.r = 0.2;
  spec.sigma_q0 = 0.5;
  StepControl fine;
  fine.samples = 2001;
  const auto traj = evolve(initial_state(spec, p), p, d, 6.0, fine);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = 0.2 + 5.6 * u01(rng);
    const auto s = traj.state_at(t);
    const double w = 3.0 * std::sqrt(s.sigma_qq);
    const double q = s.sigma_q + (2.0 * u01(rng) - 1.0) * w;
    const double qp = s.sigma_q + (2.0 * u01(rng) - 1.0) * w;
    worst = std::max(worst, pde_residual_normalized(traj, p, d, q, qp, t));
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("pde residual: corrupted sigma_pp is detected") {
  const auto p = p0();
  const auto d = gibbs_coefficients(p);
  StepControl fine;
  fine.samples = 2001;
  const auto traj = evolve(initial_state(spec_p0(), p), p, d, 10.0, fine);
  auto corrupted_samples = traj.samples();
  for (auto& s : corrupted_samples) s.sigma_pp *= 1.1;
  const Trajectory corrupted(corrupted_samples);

  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<double> values;
  for (int i = 0; i < 100; ++i) {
    const double t = 0.25 + 9.5 * u01(rng);
    const auto s = corrupted.state_at(t);
    const double w = 3.0 * std::sqrt(s.sigma_qq);
    const double q = s.sigma_q + (2.0 * u01(rng) - 1.0) * w;
    const double qp = s.sigma_q + (2.0 * u01(rng) - 1.0) * w;
    values.push_back(pde_residual_normalized(corrupted, p, d, q, qp, t));
  }
  std::sort(values.begin(), values.end());
  CHECK(values[values.size() / 2] > 1e-2);  // median well above the pass bound
}

TEST_CASE("pde residual: hbar placement of the mixed-diffusion term") {
  // Distinguishable only away from hbar = 1.
  OscillatorParams p;
  p.lambda = 0.2;
  p.mu = 0.1;
  p.constants.hbar = 2.0;
  p = with_coth_epsilon(p, 2.0);
  auto d = gibbs_coefficients(p);
  const double slack =
      d.d_pp * d.d_qq - p.lambda * p.lambda * p.constants.hbar *
                            p.constants.hbar / 4.0;
  REQUIRE(slack > 0.0);
  d.d_pq = 0.5 * std::sqrt(slack);
  REQUIRE(fundamental_constraint_holds(d, p.lambda, p.constants.hbar));

  StepControl fine;
  fine.samples = 2001;
  const auto traj = evolve(initial_state(spec_p0(), p), p, d, 5.0, fine);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst_over = 0.0;
  double best_times = 1e300;
  for (int i = 0; i < 60; ++i) {
    const double t = 0.25 + 4.5 * u01(rng);
    const auto s = traj.state_at(t);
    const double w = 3.0 * std::sqrt(s.sigma_qq);
    const double q = s.sigma_q + (2.0 * u01(rng) - 1.0) * w;
    const double qp = s.sigma_q + (2.0 * u01(rng) - 1.0) * w;
    worst_over = std::max(
        worst_over, pde_residual_normalized(traj, p, d, q, qp, t,
                                            DpqTermScaling::over_hbar));
    best_times = std::min(
        best_times, pde_residual_normalized(traj, p, d, q, qp, t,
                                            DpqTermScaling::times_hbar));
  }
  CHECK(worst_over < 1e-4);   // the 1/hbar placement closes the equation
  CHECK(best_times > 1e-3);   // the printed hbar placement does not
}

TEST_CASE("pde residual: out-of-range time") {
  const auto p = p0();
  const auto d = gibbs_coefficients(p);
  StepControl ctl;
  ctl.samples = 101;
  const auto traj = evolve(initial_state(spec_p0(), p), p, d, 1.0, ctl);
  CHECK_THROWS_AS(pde_residual(traj, p, d, 0.0, 0.0, 7.0), ValidationError);
}

TEST_CASE("density grid csv: header and finite cells") {
  const auto p = p0();
  const auto s0 = initial_state(spec_p0(), p);
  std::ostringstream os;
  write_density_grid_csv(os, s0, p.constants, -2.0, 2.0, 5);
  const std::string text = os.str();
  CHECK(text.rfind("q,qprime,re,im,abs\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 26);

  std::ostringstream os2;
  write_steady_state_grid_csv(os2, p, -2.0, 2.0, 4);
  CHECK(os2.str().rfind("q,qprime,re,im,abs\n", 0) == 0);
}
