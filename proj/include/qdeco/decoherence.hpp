// Degree of quantum decoherence and the associated time scales: the
// decoherence time in its exact and regime-reduced forms, the thermal
// fluctuation time, and the relaxation time, aggregated into a report.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdeco/gaussian.hpp"
#include "qdeco/model.hpp"

namespace qdeco {

/// hbar / (2 sqrt(sigma)): 1 for pure minimum-uncertainty states, smaller
/// the more the off-diagonal widths have shrunk relative to the diagonal.
double delta_qd(const GaussianState& state, const Constants& consts);

/// Long-time value tanh(hbar*omega/2kT); 1 at T = 0.
double delta_qd_asymptotic(const OscillatorParams& params);

/// High-temperature approximation hbar*omega/2kT of the long-time value.
double delta_qd_asymptotic_high_t(const OscillatorParams& params);

/// Linear growth rate of the off-diagonal coefficient gamma at t = 0:
/// gamma(t) ~ gamma(0) * (1 + 2*B*t). Finite decoherence time iff B > 0.
double gamma_growth_rate(const InitialStateSpec& spec,
                         const OscillatorParams& params);

/// Short-time linearization of gamma(t). The overall prefactor is positive
/// (m*omega/4*hbar*delta), matching the t = 0 value of the quadratic-form
/// coefficient.
double gamma_short_time(double t, const InitialStateSpec& spec,
                        const OscillatorParams& params);

/// 1/(2B); std::nullopt means no exponential off-diagonal decay
/// ("infinite" decoherence time), a first-class result.
std::optional<double> decoherence_time(const InitialStateSpec& spec,
                                       const OscillatorParams& params);

/// Reduction of decoherence_time at r = 0.
std::optional<double> decoherence_time_r0(const InitialStateSpec& spec,
                                          const OscillatorParams& params);

/// Reduction at T = 0 (and mu = 0): 1/(2*lambda*(delta-1)).
std::optional<double> decoherence_time_t0(const InitialStateSpec& spec,
                                          const OscillatorParams& params);

/// High-temperature reduction (coth(eps) -> tau, subleading terms dropped).
std::optional<double> decoherence_time_high_t(const InitialStateSpec& spec,
                                              const OscillatorParams& params);

/// Time after which thermal fluctuations become comparable with quantum
/// fluctuations (high-temperature form); nullopt at T = 0.
std::optional<double> thermal_fluctuation_time(const InitialStateSpec& spec,
                                               const OscillatorParams& params);

/// 1/lambda; nullopt for the closed system.
std::optional<double> relaxation_time(const OscillatorParams& params);

/// tau above which the high-temperature formulas are considered
/// applicable in reports.
inline constexpr double kHighTemperatureTau = 5.0;

struct DecoherenceReport {
  double delta_qd_infinity = 1.0;
  std::optional<double> t_deco;        // exact-coth rate
  std::optional<double> t_deco_r0;     // r = 0 reduction
  std::optional<double> t_deco_t0;     // T = 0 reduction
  std::optional<double> t_deco_high_t; // high-temperature reduction
  std::optional<double> t_d;           // thermal fluctuation time
  std::optional<double> t_rel;         // relaxation time
  std::optional<double> t_deco_over_t_rel;
  std::optional<double> t_deco_over_t_d;

  struct RegimeFlags {
    bool gibbs_bath = false;
    bool high_temperature = false;      // tau > kHighTemperatureTau
    bool r_zero = false;
    bool zero_temperature = false;      // T == 0 and mu == 0
    bool no_decoherence = false;        // B <= 0
    bool t_deco_of_order_t_rel_or_larger = false;
  } flags;

  /// (t, delta_qd) samples when built from a trajectory; else empty.
  std::vector<std::pair<double, double>> delta_qd_samples;
};

DecoherenceReport timescale_report(const InitialStateSpec& spec,
                                   const OscillatorParams& params);

/// As above, with delta_qd sampled along the trajectory.
DecoherenceReport timescale_report(const InitialStateSpec& spec,
                                   const OscillatorParams& params,
                                   const Trajectory& trajectory);

/// JSON document; absent ("infinite") times serialize as the literal
/// string "infinite".
std::string report_to_json(const DecoherenceReport& report);

}  // namespace qdeco
