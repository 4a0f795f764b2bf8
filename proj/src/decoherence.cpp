#include "qdeco/decoherence.hpp"

#include <cmath>

#include "json.hpp"

namespace qdeco {

double delta_qd(const GaussianState& state, const Constants& consts) {
  return consts.hbar / (2.0 * std::sqrt(state.sigma()));
}

double delta_qd_asymptotic(const OscillatorParams& params) {
  return params.tanh_epsilon();
}

double delta_qd_asymptotic_high_t(const OscillatorParams& params) {
  return params.constants.hbar * params.omega /
         (2.0 * params.constants.boltzmann * params.temperature);
}

double gamma_growth_rate(const InitialStateSpec& spec,
                         const OscillatorParams& p) {
  validate(spec);
  const double c = p.coth_epsilon();
  const double one_minus_r2 = 1.0 - spec.r * spec.r;
  const double a2 = spec.delta + spec.r * spec.r / (spec.delta * one_minus_r2);
  const double a2t = spec.delta - spec.r * spec.r / (spec.delta * one_minus_r2);
  return p.lambda * a2 * c + p.mu * a2t * c - p.lambda - p.mu -
         p.omega * spec.r / (spec.delta * std::sqrt(one_minus_r2));
}

double gamma_short_time(double t, const InitialStateSpec& spec,
                        const OscillatorParams& p) {
  const double b = gamma_growth_rate(spec, p);
  const double gamma0 = p.mass * p.omega / (4.0 * p.constants.hbar * spec.delta);
  return gamma0 * (1.0 + 2.0 * b * t);
}

namespace {

std::optional<double> inverse_double_rate(double b) {
  if (!(b > 0.0)) return std::nullopt;  // no exponential off-diagonal decay
  return 1.0 / (2.0 * b);
}

}  // namespace

std::optional<double> decoherence_time(const InitialStateSpec& spec,
                                       const OscillatorParams& p) {
  return inverse_double_rate(gamma_growth_rate(spec, p));
}

std::optional<double> decoherence_time_r0(const InitialStateSpec& spec,
                                          const OscillatorParams& p) {
  const double b =
      (p.lambda + p.mu) * (spec.delta * p.coth_epsilon() - 1.0);
  return inverse_double_rate(b);
}

std::optional<double> decoherence_time_t0(const InitialStateSpec& spec,
                                          const OscillatorParams& p) {
  const double b = p.lambda * (spec.delta - 1.0);
  return inverse_double_rate(b);
}

std::optional<double> decoherence_time_high_t(const InitialStateSpec& spec,
                                              const OscillatorParams& p) {
  const double tau = p.tau();
  if (tau <= 0.0) return std::nullopt;
  const double one_minus_r2 = 1.0 - spec.r * spec.r;
  const double a2 = spec.delta + spec.r * spec.r / (spec.delta * one_minus_r2);
  const double a2t = spec.delta - spec.r * spec.r / (spec.delta * one_minus_r2);
  return inverse_double_rate((p.lambda * a2 + p.mu * a2t) * tau);
}

std::optional<double> thermal_fluctuation_time(const InitialStateSpec& spec,
                                               const OscillatorParams& p) {
  const double tau = p.tau();
  if (tau <= 0.0) return std::nullopt;
  const double one_minus_r2 = 1.0 - spec.r * spec.r;
  const double a = spec.delta + 1.0 / (spec.delta * one_minus_r2);
  const double at = spec.delta - 1.0 / (spec.delta * one_minus_r2);
  return inverse_double_rate(tau * (p.lambda * a + p.mu * at));
}

std::optional<double> relaxation_time(const OscillatorParams& p) {
  if (!(p.lambda > 0.0)) return std::nullopt;
  return 1.0 / p.lambda;
}

DecoherenceReport timescale_report(const InitialStateSpec& spec,
                                   const OscillatorParams& p) {
  validate(spec);
  DecoherenceReport rep;
  rep.delta_qd_infinity = delta_qd_asymptotic(p);
  rep.t_deco = decoherence_time(spec, p);
  rep.t_deco_r0 = decoherence_time_r0(spec, p);
  rep.t_deco_t0 = decoherence_time_t0(spec, p);
  rep.t_deco_high_t = decoherence_time_high_t(spec, p);
  rep.t_d = thermal_fluctuation_time(spec, p);
  rep.t_rel = relaxation_time(p);

  if (rep.t_deco && rep.t_rel)
    rep.t_deco_over_t_rel = *rep.t_deco / *rep.t_rel;
  if (rep.t_deco && rep.t_d) rep.t_deco_over_t_d = *rep.t_deco / *rep.t_d;

  rep.flags.gibbs_bath = !p.closed_system();
  rep.flags.high_temperature = p.tau() > kHighTemperatureTau;
  rep.flags.r_zero = spec.r == 0.0;
  rep.flags.zero_temperature = p.zero_temperature() && p.mu == 0.0;
  rep.flags.no_decoherence = !rep.t_deco.has_value();
  rep.flags.t_deco_of_order_t_rel_or_larger =
      !rep.t_deco.has_value() || !rep.t_rel.has_value() ||
      (*rep.t_deco >= 0.1 * *rep.t_rel);
  return rep;
}

DecoherenceReport timescale_report(const InitialStateSpec& spec,
                                   const OscillatorParams& p,
                                   const Trajectory& trajectory) {
  DecoherenceReport rep = timescale_report(spec, p);
  rep.delta_qd_samples.reserve(trajectory.samples().size());
  for (const auto& s : trajectory.samples())
    rep.delta_qd_samples.emplace_back(s.time, delta_qd(s, p.constants));
  return rep;
}

namespace {

nlohmann::json time_or_infinite(const std::optional<double>& v) {
  if (v) return *v;
  return "infinite";
}

}  // namespace

std::string report_to_json(const DecoherenceReport& rep) {
  nlohmann::json j;
  j["delta_qd_infinity"] = rep.delta_qd_infinity;
  j["t_deco"] = time_or_infinite(rep.t_deco);
  j["t_deco_r0"] = time_or_infinite(rep.t_deco_r0);
  j["t_deco_T0"] = time_or_infinite(rep.t_deco_t0);
  j["t_deco_highT"] = time_or_infinite(rep.t_deco_high_t);
  j["t_d"] = time_or_infinite(rep.t_d);
  j["t_rel"] = time_or_infinite(rep.t_rel);
  j["ratios"] = {
      {"t_deco_over_t_rel", time_or_infinite(rep.t_deco_over_t_rel)},
      {"t_deco_over_t_d", time_or_infinite(rep.t_deco_over_t_d)},
  };
  j["regime_flags"] = {
      {"gibbs_bath", rep.flags.gibbs_bath},
      {"high_temperature", rep.flags.high_temperature},
      {"r_zero", rep.flags.r_zero},
      {"zero_temperature", rep.flags.zero_temperature},
      {"no_decoherence", rep.flags.no_decoherence},
      {"t_deco_of_order_t_rel_or_larger",
       rep.flags.t_deco_of_order_t_rel_or_larger},
  };
  return j.dump(2);
}

}  // namespace qdeco
