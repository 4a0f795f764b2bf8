#include "qdeco/density_matrix.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "qdeco/csv.hpp"
#include "qdeco/errors.hpp"

namespace qdeco {

namespace {

using cx = std::complex<double>;
constexpr cx kI{0.0, 1.0};

}  // namespace

SigmaDeltaCoefficients coefficients(const GaussianState& s,
                                    const Constants& consts) {
  const double hbar = consts.hbar;
  SigmaDeltaCoefficients c;
  c.alpha = 1.0 / (2.0 * s.sigma_qq);
  c.gamma = s.sigma() / (2.0 * hbar * hbar * s.sigma_qq);
  c.beta = s.sigma_pq / (hbar * s.sigma_qq);
  return c;
}

std::complex<double> rho_sigma_delta(const GaussianState& s,
                                     const Constants& consts, double sum_half,
                                     double diff) {
  const auto c = coefficients(s, consts);
  const double ds = sum_half - s.sigma_q;
  // Real part even in diff, imaginary part odd: Hermiticity is exact.
  const double re = -c.alpha * ds * ds - c.gamma * diff * diff;
  const double im = c.beta * ds * diff + s.sigma_p * diff / consts.hbar;
  const double pref = std::sqrt(c.alpha / std::numbers::pi);
  const double mag = pref * std::exp(re);
  return cx{mag * std::cos(im), mag * std::sin(im)};
}

std::complex<double> rho_element(const GaussianState& s,
                                 const Constants& consts, double q,
                                 double qp) {
  return rho_sigma_delta(s, consts, 0.5 * (q + qp), q - qp);
}

double steady_state_element(const OscillatorParams& p, double q, double qp) {
  validate(p);
  if (!check_gibbs_constraint(p))
    throw ValidationError("fundamental_constraint",
                          "no Gibbs steady state for these parameters");
  const double c = p.coth_epsilon();
  const double hbar = p.constants.hbar;
  const double mw = p.mass * p.omega;
  const double pref = std::sqrt(mw / (std::numbers::pi * hbar * c));
  const double sum = q + qp;
  const double diff = q - qp;
  return pref * std::exp(-mw / (4.0 * hbar) * (sum * sum / c + diff * diff * c));
}

namespace {

struct RhsTerms {
  cx terms[7];
  cx total() const {
    cx t{};
    for (const auto& v : terms) t += v;
    return t;
  }
  double abs_sum() const {
    double s = 0.0;
    for (const auto& v : terms) s += std::abs(v);
    return s;
  }
};

// Right-hand side of the coordinate-representation evolution equation at a
// single point, with all spatial derivatives of the Gaussian form taken in
// closed form. Only the time derivative of the residual is numerical.
RhsTerms rhs_terms(const GaussianState& s, const OscillatorParams& p,
                   const DiffusionCoefficients& d, double q, double qp,
                   DpqTermScaling scaling) {
  const Constants& consts = p.constants;
  const double hbar = consts.hbar;
  const auto co = coefficients(s, consts);
  const double sum_half = 0.5 * (q + qp);
  const double diff = q - qp;
  const double ds = sum_half - s.sigma_q;

  const cx rho = rho_sigma_delta(s, consts, sum_half, diff);

  // Exponent derivatives in (q, q') via the sum/difference chain rule.
  const cx e_sum = -2.0 * co.alpha * ds + kI * co.beta * diff;
  const cx e_diff = -2.0 * co.gamma * diff + kI * co.beta * ds +
                    kI * s.sigma_p / hbar;
  const cx e_q = 0.5 * e_sum + e_diff;
  const cx e_qp = 0.5 * e_sum - e_diff;
  const cx e_qq = cx{-0.5 * co.alpha - 2.0 * co.gamma, co.beta};
  const cx e_qpqp = cx{-0.5 * co.alpha - 2.0 * co.gamma, -co.beta};
  const cx e_qqp = cx{-0.5 * co.alpha + 2.0 * co.gamma, 0.0};

  const cx rho_q = rho * e_q;
  const cx rho_qp = rho * e_qp;
  const cx rho_qq = rho * (e_q * e_q + e_qq);
  const cx rho_qpqp = rho * (e_qp * e_qp + e_qpqp);
  const cx rho_qqp = rho * (e_q * e_qp + e_qqp);

  RhsTerms t;
  t.terms[0] = kI * hbar / (2.0 * p.mass) * (rho_qq - rho_qpqp);
  t.terms[1] = -kI * p.mass * p.omega * p.omega / (2.0 * hbar) *
               (q * q - qp * qp) * rho;
  t.terms[2] = -0.5 * (p.lambda + p.mu) * diff * (rho_q - rho_qp);
  t.terms[3] =
      0.5 * (p.lambda - p.mu) * ((q + qp) * (rho_q + rho_qp) + 2.0 * rho);
  t.terms[4] = -d.d_pp / (hbar * hbar) * diff * diff * rho;
  t.terms[5] = d.d_qq * (rho_qq + 2.0 * rho_qqp + rho_qpqp);
  const double dpq_coeff =
      scaling == DpqTermScaling::times_hbar ? d.d_pq * hbar : d.d_pq / hbar;
  t.terms[6] = -2.0 * kI * dpq_coeff * diff * (rho_q + rho_qp);
  return t;
}

size_t interior_index(const Trajectory& traj, double t) {
  const auto& samples = traj.samples();
  if (samples.size() < 3)
    throw ValidationError("t_in_trajectory_interior",
                          "trajectory too short for a central difference");
  size_t best = 1;
  double dist = std::abs(samples[1].time - t);
  for (size_t k = 2; k + 1 < samples.size(); ++k) {
    const double dd = std::abs(samples[k].time - t);
    if (dd < dist) {
      dist = dd;
      best = k;
    }
  }
  const double spacing = samples[1].time - samples[0].time;
  if (t < samples.front().time - 0.5 * spacing ||
      t > samples.back().time + 0.5 * spacing)
    throw ValidationError("t_in_trajectory_interior",
                          "t lies outside the trajectory");
  return best;
}

}  // namespace

std::complex<double> pde_residual(const Trajectory& traj,
                                  const OscillatorParams& p,
                                  const DiffusionCoefficients& d, double q,
                                  double qp, double t, DpqTermScaling scaling) {
  const auto& samples = traj.samples();
  const size_t k = interior_index(traj, t);
  const cx before = rho_element(samples[k - 1], p.constants, q, qp);
  const cx after = rho_element(samples[k + 1], p.constants, q, qp);
  const cx drho_dt =
      (after - before) / (samples[k + 1].time - samples[k - 1].time);
  return drho_dt - rhs_terms(samples[k], p, d, q, qp, scaling).total();
}

double pde_residual_normalized(const Trajectory& traj,
                               const OscillatorParams& p,
                               const DiffusionCoefficients& d, double q,
                               double qp, double t, DpqTermScaling scaling) {
  const auto& samples = traj.samples();
  const size_t k = interior_index(traj, t);
  const cx before = rho_element(samples[k - 1], p.constants, q, qp);
  const cx after = rho_element(samples[k + 1], p.constants, q, qp);
  const cx drho_dt =
      (after - before) / (samples[k + 1].time - samples[k - 1].time);
  const RhsTerms terms = rhs_terms(samples[k], p, d, q, qp, scaling);
  const double denom = std::abs(drho_dt) + terms.abs_sum() + 1e-300;
  return std::abs(drho_dt - terms.total()) / denom;
}

void write_density_grid_csv(std::ostream& os, const GaussianState& state,
                            const Constants& consts, double q_min,
                            double q_max, int points) {
  os << "q,qprime,re,im,abs\n";
  for (int i = 0; i < points; ++i) {
    const double q = q_min + (q_max - q_min) * i / (points - 1);
    for (int j = 0; j < points; ++j) {
      const double qp = q_min + (q_max - q_min) * j / (points - 1);
      const cx v = rho_element(state, consts, q, qp);
      os << csv_double(q) << ',' << csv_double(qp) << ','
         << csv_double(v.real()) << ',' << csv_double(v.imag()) << ','
         << csv_double(std::abs(v)) << '\n';
    }
  }
}

void write_steady_state_grid_csv(std::ostream& os,
                                 const OscillatorParams& params, double q_min,
                                 double q_max, int points) {
  os << "q,qprime,re,im,abs\n";
  for (int i = 0; i < points; ++i) {
    const double q = q_min + (q_max - q_min) * i / (points - 1);
    for (int j = 0; j < points; ++j) {
      const double qp = q_min + (q_max - q_min) * j / (points - 1);
      const double v = steady_state_element(params, q, qp);
      os << csv_double(q) << ',' << csv_double(qp) << ',' << csv_double(v)
         << ",0," << csv_double(std::abs(v)) << '\n';
    }
  }
}

}  // namespace qdeco
