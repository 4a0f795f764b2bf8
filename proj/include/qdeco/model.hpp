// Physical model of the damped oscillator: parameters, fundamental
// constants, thermal-bath diffusion coefficients and their validity
// constraints. Every other component consumes validated parameter sets
// built here.
#pragma once

#include "qdeco/errors.hpp"
#include "qdeco/state.hpp"

namespace qdeco {

struct Constants {
  double hbar = 1.0;
  double boltzmann = 1.0;
};

/// Model parameters. Natural units (hbar = k = 1) by default; all formulas
/// keep the constants symbolic so SI runs work unchanged.
struct OscillatorParams {
  double mass = 1.0;
  double omega = 1.0;
  double lambda = 0.0;       // dissipation constant, >= 0
  double mu = 0.0;           // asymmetry of the friction couplings
  double temperature = 0.0;  // bath temperature; 0 is a distinguished value
  Constants constants{};

  bool zero_temperature() const { return temperature == 0.0; }

  /// lambda == 0 and mu == 0 selects the closed system (no bath at all);
  /// diffusion is then identically zero and the Gibbs-bath constraints
  /// do not apply.
  bool closed_system() const { return lambda == 0.0 && mu == 0.0; }

  /// hbar*omega / (2 k T); +infinity at T = 0.
  double epsilon() const;
  /// coth(epsilon); exactly 1 at T = 0.
  double coth_epsilon() const;
  /// tanh(epsilon); exactly 1 at T = 0.
  double tanh_epsilon() const;
  /// 2 k T / (hbar*omega); 0 at T = 0.
  double tau() const;
  /// omega^2 - mu^2, the squared effective oscillation frequency.
  double omega_eff_sq() const { return omega * omega - mu * mu; }
};

/// Returns a copy of `base` with the temperature chosen so that
/// coth(epsilon) equals `coth_eps` (>= 1; exactly 1 selects T = 0).
OscillatorParams with_coth_epsilon(OscillatorParams base, double coth_eps);

/// Structural validation: positive mass/frequency/constants, lambda >= 0,
/// T >= 0, omega > |mu|. Throws ValidationError naming the constraint.
void validate(const OscillatorParams& params);

/// Structural validation plus the Gibbs-bath requirements
/// ("lambda_gt_mu", "fundamental_constraint"). Closed systems pass.
void validate_for_bath(const OscillatorParams& params);

struct DiffusionCoefficients {
  double d_pp = 0.0;  // momentum diffusion
  double d_qq = 0.0;  // position diffusion
  double d_pq = 0.0;  // mixed diffusion
};

/// d_pp*d_qq - d_pq^2 >= (lambda*hbar/2)^2, with a relative slack of 1e-12
/// against boundary flapping.
bool fundamental_constraint_holds(const DiffusionCoefficients& coeffs,
                                  double lambda, double hbar);

/// Pure predicate for the Gibbs-bath validity condition:
/// (lambda^2 - mu^2) coth^2(eps) >= lambda^2 and lambda > mu.
bool check_gibbs_constraint(const OscillatorParams& params);

/// Diffusion coefficients that make the asymptotic state a Gibbs state.
/// Throws ValidationError ("lambda_gt_mu" / "fundamental_constraint").
DiffusionCoefficients gibbs_coefficients(const OscillatorParams& params);

/// gibbs_coefficients for a bath, or identically zero diffusion for the
/// closed system (lambda = mu = 0).
DiffusionCoefficients bath_coefficients(const OscillatorParams& params);

/// The stationary covariance of the Gibbs bath (zero centroid). It is a
/// fixed point of the moment equations. Throws on constraint violation.
GaussianState asymptotic_covariance(const OscillatorParams& params);

}  // namespace qdeco
