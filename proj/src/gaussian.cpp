#include "qdeco/gaussian.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <ostream>
#include <string>

#include "qdeco/csv.hpp"
#include "qdeco/errors.hpp"

namespace qdeco {

void validate(const InitialStateSpec& spec) {
  if (!(spec.delta > 0.0) || !std::isfinite(spec.delta))
    throw ValidationError("delta_positive", "squeezing delta must be > 0");
  if (!(std::abs(spec.r) < 1.0))
    throw ValidationError("r_abs_lt_1", "correlation r must satisfy |r| < 1");
  if (!std::isfinite(spec.sigma_q0) || !std::isfinite(spec.sigma_p0))
    throw ValidationError("finite_parameters", "initial centroid must be finite");
}

GaussianState initial_state(const InitialStateSpec& spec,
                            const OscillatorParams& params) {
  validate(spec);
  const double hbar = params.constants.hbar;
  const double one_minus_r2 = 1.0 - spec.r * spec.r;
  GaussianState s;
  s.time = 0.0;
  s.sigma_q = spec.sigma_q0;
  s.sigma_p = spec.sigma_p0;
  s.sigma_qq = hbar * spec.delta / (2.0 * params.mass * params.omega);
  s.sigma_pp =
      hbar * params.mass * params.omega / (2.0 * spec.delta * one_minus_r2);
  s.sigma_pq = hbar * spec.r / (2.0 * std::sqrt(one_minus_r2));
  return s;
}

MomentRates moment_derivatives(const GaussianState& s,
                               const OscillatorParams& p,
                               const DiffusionCoefficients& d) {
  const double lm = p.lambda - p.mu;
  const double lp = p.lambda + p.mu;
  const double mw2 = p.mass * p.omega * p.omega;
  MomentRates r;
  r.sigma_q = s.sigma_p / p.mass - lm * s.sigma_q;
  r.sigma_p = -mw2 * s.sigma_q - lp * s.sigma_p;
  r.sigma_qq = 2.0 * s.sigma_pq / p.mass - 2.0 * lm * s.sigma_qq + 2.0 * d.d_qq;
  r.sigma_pp = -2.0 * mw2 * s.sigma_pq - 2.0 * lp * s.sigma_pp + 2.0 * d.d_pp;
  r.sigma_pq = s.sigma_pp / p.mass - mw2 * s.sigma_qq - 2.0 * p.lambda * s.sigma_pq +
               2.0 * d.d_pq;
  return r;
}

Trajectory::Trajectory(std::vector<GaussianState> samples)
    : samples_(std::move(samples)) {
  for (size_t i = 1; i < samples_.size(); ++i)
    if (!(samples_[i].time > samples_[i - 1].time))
      throw ValidationError("strictly_increasing_times",
                            "trajectory times must strictly increase");
}

GaussianState Trajectory::state_at(double t) const {
  if (samples_.empty()) throw NumericalError("empty trajectory");
  if (t <= samples_.front().time) return samples_.front();
  if (t >= samples_.back().time) return samples_.back();
  auto it = std::lower_bound(
      samples_.begin(), samples_.end(), t,
      [](const GaussianState& s, double tt) { return s.time < tt; });
  const GaussianState& b = *it;
  const GaussianState& a = *(it - 1);
  const double w = (t - a.time) / (b.time - a.time);
  GaussianState s;
  s.time = t;
  s.sigma_q = a.sigma_q + w * (b.sigma_q - a.sigma_q);
  s.sigma_p = a.sigma_p + w * (b.sigma_p - a.sigma_p);
  s.sigma_qq = a.sigma_qq + w * (b.sigma_qq - a.sigma_qq);
  s.sigma_pp = a.sigma_pp + w * (b.sigma_pp - a.sigma_pp);
  s.sigma_pq = a.sigma_pq + w * (b.sigma_pq - a.sigma_pq);
  return s;
}

namespace {

struct M5 {
  double q, p, qq, pp, pq;
};

M5 rates(const M5& s, const OscillatorParams& prm,
         const DiffusionCoefficients& d) {
  const double lm = prm.lambda - prm.mu;
  const double lp = prm.lambda + prm.mu;
  const double mw2 = prm.mass * prm.omega * prm.omega;
  return M5{s.p / prm.mass - lm * s.q,
            -mw2 * s.q - lp * s.p,
            2.0 * s.pq / prm.mass - 2.0 * lm * s.qq + 2.0 * d.d_qq,
            -2.0 * mw2 * s.pq - 2.0 * lp * s.pp + 2.0 * d.d_pp,
            s.pp / prm.mass - mw2 * s.qq - 2.0 * prm.lambda * s.pq + 2.0 * d.d_pq};
}

M5 axpy(const M5& a, double h, const M5& b) {
  return M5{a.q + h * b.q, a.p + h * b.p, a.qq + h * b.qq, a.pp + h * b.pp,
            a.pq + h * b.pq};
}

M5 rk4_step(const M5& s, double h, const OscillatorParams& prm,
            const DiffusionCoefficients& d) {
  const M5 k1 = rates(s, prm, d);
  const M5 k2 = rates(axpy(s, 0.5 * h, k1), prm, d);
  const M5 k3 = rates(axpy(s, 0.5 * h, k2), prm, d);
  const M5 k4 = rates(axpy(s, h, k3), prm, d);
  M5 out = s;
  out.q += h / 6.0 * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q);
  out.p += h / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p);
  out.qq += h / 6.0 * (k1.qq + 2.0 * k2.qq + 2.0 * k3.qq + k4.qq);
  out.pp += h / 6.0 * (k1.pp + 2.0 * k2.pp + 2.0 * k3.pp + k4.pp);
  out.pq += h / 6.0 * (k1.pq + 2.0 * k2.pq + 2.0 * k3.pq + k4.pq);
  return out;
}

double default_step(const OscillatorParams& prm) {
  double h = 0.01 / prm.omega;
  if (prm.lambda > 0.0) h = std::min(h, 0.01 / prm.lambda);
  return h;
}

std::vector<GaussianState> integrate_sampled(const GaussianState& s0,
                                             const OscillatorParams& prm,
                                             const DiffusionCoefficients& d,
                                             double t_final, int nsamples,
                                             double h) {
  std::vector<GaussianState> out;
  out.reserve(nsamples);
  out.push_back(s0);
  M5 cur{s0.sigma_q, s0.sigma_p, s0.sigma_qq, s0.sigma_pp, s0.sigma_pq};
  const double t0 = s0.time;
  double t_prev = t0;
  for (int i = 1; i < nsamples; ++i) {
    const double ti =
        t0 + (t_final - t0) * static_cast<double>(i) / (nsamples - 1);
    const double seg = ti - t_prev;
    const int n = std::max(1, static_cast<int>(std::ceil(seg / h - 1e-12)));
    const double hh = seg / n;
    for (int k = 0; k < n; ++k) cur = rk4_step(cur, hh, prm, d);
    GaussianState s;
    s.time = ti;
    s.sigma_q = cur.q;
    s.sigma_p = cur.p;
    s.sigma_qq = cur.qq;
    s.sigma_pp = cur.pp;
    s.sigma_pq = cur.pq;
    out.push_back(s);
    t_prev = ti;
  }
  return out;
}

double max_sample_difference(const std::vector<GaussianState>& a,
                             const std::vector<GaussianState>& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i].sigma_q - b[i].sigma_q));
    m = std::max(m, std::abs(a[i].sigma_p - b[i].sigma_p));
    m = std::max(m, std::abs(a[i].sigma_qq - b[i].sigma_qq));
    m = std::max(m, std::abs(a[i].sigma_pp - b[i].sigma_pp));
    m = std::max(m, std::abs(a[i].sigma_pq - b[i].sigma_pq));
  }
  return m;
}

}  // namespace

Trajectory evolve(const GaussianState& state, const OscillatorParams& params,
                  const DiffusionCoefficients& coeffs, double t_final,
                  const StepControl& control) {
  validate(params);
  if (!(t_final >= state.time))
    throw ValidationError("t_final_ge_start",
                          "t_final must not precede the state's time");
  if (t_final == state.time) return Trajectory({state});

  const int nsamples = std::max(2, control.samples);
  double h = control.step > 0.0 ? control.step : default_step(params);

  if (control.tolerance <= 0.0) {
    return Trajectory(
        integrate_sampled(state, params, coeffs, t_final, nsamples, h));
  }

  // Step-halving control: accept the half-step run once the two runs agree.
  // A fourth-order method gains ~16x per halving; once the estimate stops
  // shrinking it has hit the rounding floor and the control has stalled.
  auto coarse = integrate_sampled(state, params, coeffs, t_final, nsamples, h);
  double prev_est = std::numeric_limits<double>::infinity();
  for (int halvings = 0; halvings < 24; ++halvings) {
    const double h2 = 0.5 * h;
    if (h2 < (t_final - state.time) * 1e-15)
      throw NumericalError("step_underflow: step-halving control stalled");
    auto fine = integrate_sampled(state, params, coeffs, t_final, nsamples, h2);
    const double est = max_sample_difference(coarse, fine);
    if (est <= control.tolerance) {
      Trajectory traj(std::move(fine));
      traj.set_error_estimate(est);
      return traj;
    }
    if (est > 0.25 * prev_est)
      throw NumericalError("step_underflow: step-halving control stalled");
    prev_est = est;
    coarse = std::move(fine);
    h = h2;
  }
  throw NumericalError("step_underflow: step-halving control stalled");
}

double sigma_analytic(double t, const InitialStateSpec& spec,
                      const OscillatorParams& params) {
  validate(spec);
  const double om2 = params.omega_eff_sq();
  if (!(om2 > 0.0))
    throw ValidationError("omega_gt_mu",
                          "effective frequency requires omega > |mu|");
  const double c = params.coth_epsilon();
  const double hbar = params.constants.hbar;
  const double om = std::sqrt(om2);
  const double one_minus_r2 = 1.0 - spec.r * spec.r;
  const double a = spec.delta + 1.0 / (spec.delta * one_minus_r2);
  const double atil = spec.delta - 1.0 / (spec.delta * one_minus_r2);

  const double e2 = std::exp(-2.0 * params.lambda * t);
  const double e4 = e2 * e2;
  const double s = std::sin(om * t);
  const double one_minus_cos = 2.0 * s * s;  // 1 - cos(2 om t), no cancellation
  const double sin2 = std::sin(2.0 * om * t);

  const double k1 = 1.0 - a * c + c * c;
  const double k2 =
      (a - 2.0 * c) * (1.0 + params.mu * params.mu / om2 * one_minus_cos) +
      atil * params.mu * sin2 / om +
      2.0 * spec.r * params.mu * params.omega * one_minus_cos /
          (om2 * std::sqrt(one_minus_r2));

  return 0.25 * hbar * hbar * (e4 * k1 + e2 * c * k2 + c * c);
}

double sigma_short_time(double t, const InitialStateSpec& spec,
                        const OscillatorParams& params) {
  validate(spec);
  const double c = params.coth_epsilon();
  const double hbar = params.constants.hbar;
  const double one_minus_r2 = 1.0 - spec.r * spec.r;
  const double a = spec.delta + 1.0 / (spec.delta * one_minus_r2);
  const double atil = spec.delta - 1.0 / (spec.delta * one_minus_r2);
  const double rate =
      params.lambda * a * c + params.mu * atil * c - 2.0 * params.lambda;
  return 0.25 * hbar * hbar * (1.0 + 2.0 * rate * t);
}

void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory) {
  os << "t,sigma_q,sigma_p,sigma_qq,sigma_pp,sigma_pq,sigma\n";
  for (const auto& s : trajectory.samples()) {
    os << csv_double(s.time) << ',' << csv_double(s.sigma_q) << ','
       << csv_double(s.sigma_p) << ',' << csv_double(s.sigma_qq) << ','
       << csv_double(s.sigma_pp) << ',' << csv_double(s.sigma_pq) << ','
       << csv_double(s.sigma()) << '\n';
  }
}

}  // namespace qdeco
