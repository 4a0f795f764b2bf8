// Gaussian moment dynamics: correlated coherent initial states, the moment
// equations of motion, fixed-step RK4 evolution, and the closed-form
// generalized uncertainty function with its short-time expansion.
#pragma once

#include <iosfwd>
#include <vector>

#include "qdeco/model.hpp"
#include "qdeco/state.hpp"

namespace qdeco {

/// Minimum-uncertainty Gaussian initial state family: squeezing delta,
/// position-momentum correlation r, and the initial centroid.
struct InitialStateSpec {
  double delta = 1.0;
  double r = 0.0;
  double sigma_q0 = 0.0;
  double sigma_p0 = 0.0;
};

/// Throws ValidationError ("delta_positive", "r_abs_lt_1") on bad values.
void validate(const InitialStateSpec& spec);

/// Moments of the correlated coherent state at t = 0. The result satisfies
/// sigma_qq*sigma_pp - sigma_pq^2 = hbar^2/4 up to rounding.
GaussianState initial_state(const InitialStateSpec& spec,
                            const OscillatorParams& params);

struct MomentRates {
  double sigma_q = 0.0;
  double sigma_p = 0.0;
  double sigma_qq = 0.0;
  double sigma_pp = 0.0;
  double sigma_pq = 0.0;
};

/// Drift of the five moments under the master equation.
MomentRates moment_derivatives(const GaussianState& state,
                               const OscillatorParams& params,
                               const DiffusionCoefficients& coeffs);

struct StepControl {
  double step = 0.0;       // 0 = default: min(0.01/lambda, 0.01/omega)
  int samples = 201;       // number of stored samples, >= 2
  double tolerance = 0.0;  // >0 enables step-halving error control
};

/// Time-ordered sequence of Gaussian states with strictly increasing
/// time stamps. Dense output between samples is linear interpolation
/// (first-order accurate between stored samples).
class Trajectory {
 public:
  Trajectory() = default;
  explicit Trajectory(std::vector<GaussianState> samples);

  const std::vector<GaussianState>& samples() const { return samples_; }
  const GaussianState& front() const { return samples_.front(); }
  const GaussianState& back() const { return samples_.back(); }
  bool empty() const { return samples_.empty(); }

  GaussianState state_at(double t) const;

  /// Step-halving estimate of the sampling error; 0 when control was off.
  double error_estimate() const { return error_estimate_; }
  void set_error_estimate(double e) { error_estimate_ = e; }

 private:
  std::vector<GaussianState> samples_;
  double error_estimate_ = 0.0;
};

/// Fixed-step classic RK4 integration of the moment equations from
/// `state` to t_final, sampled uniformly. Integration lands exactly on the
/// sample times. Throws NumericalError("step_underflow") if tolerance-driven
/// halving stalls.
Trajectory evolve(const GaussianState& state, const OscillatorParams& params,
                  const DiffusionCoefficients& coeffs, double t_final,
                  const StepControl& control = {});

/// Closed form of the generalized uncertainty function for a Gibbs bath,
/// starting from the minimum-uncertainty family. Throws if omega <= |mu|.
double sigma_analytic(double t, const InitialStateSpec& spec,
                      const OscillatorParams& params);

/// First-order short-time expansion of sigma_analytic (valid lambda*t << 1).
double sigma_short_time(double t, const InitialStateSpec& spec,
                        const OscillatorParams& params);

/// CSV export: header `t,sigma_q,sigma_p,sigma_qq,sigma_pp,sigma_pq,sigma`,
/// 17 significant digits per value.
void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory);

}  // namespace qdeco
