#include "qdeco/model.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace qdeco {

namespace {

constexpr double kRelTol = 1e-12;  // boundary slack for constraint checks

// lhs >= rhs with relative slack, rhs assumed >= 0.
bool ge_with_slack(double lhs, double rhs) { return lhs >= rhs * (1.0 - kRelTol); }

}  // namespace

double OscillatorParams::epsilon() const {
  if (zero_temperature()) return std::numeric_limits<double>::infinity();
  return constants.hbar * omega / (2.0 * constants.boltzmann * temperature);
}

double OscillatorParams::coth_epsilon() const {
  if (zero_temperature()) return 1.0;
  return 1.0 / std::tanh(epsilon());
}

double OscillatorParams::tanh_epsilon() const {
  if (zero_temperature()) return 1.0;
  return std::tanh(epsilon());
}

double OscillatorParams::tau() const {
  if (zero_temperature()) return 0.0;
  return 2.0 * constants.boltzmann * temperature / (constants.hbar * omega);
}

OscillatorParams with_coth_epsilon(OscillatorParams base, double coth_eps) {
  if (!(coth_eps >= 1.0))
    throw ValidationError("coth_epsilon_ge_1",
                          "coth_epsilon must be >= 1, got " +
                              std::to_string(coth_eps));
  if (coth_eps == 1.0) {
    base.temperature = 0.0;
    return base;
  }
  const double eps = std::atanh(1.0 / coth_eps);
  base.temperature =
      base.constants.hbar * base.omega / (2.0 * base.constants.boltzmann * eps);
  return base;
}

void validate(const OscillatorParams& p) {
  if (!(p.constants.hbar > 0.0))
    throw ValidationError("hbar_positive", "hbar must be > 0");
  if (!(p.constants.boltzmann > 0.0))
    throw ValidationError("boltzmann_positive", "boltzmann must be > 0");
  if (!(p.mass > 0.0)) throw ValidationError("mass_positive", "mass must be > 0");
  if (!(p.omega > 0.0))
    throw ValidationError("omega_positive", "omega must be > 0");
  if (!(p.lambda >= 0.0))
    throw ValidationError("lambda_nonnegative", "lambda must be >= 0");
  if (!(p.temperature >= 0.0))
    throw ValidationError("temperature_nonnegative",
                          "temperature must be >= 0");
  if (!std::isfinite(p.mass) || !std::isfinite(p.omega) ||
      !std::isfinite(p.lambda) || !std::isfinite(p.mu) ||
      !std::isfinite(p.temperature))
    throw ValidationError("finite_parameters", "parameters must be finite");
  if (!(p.omega > std::abs(p.mu)))
    throw ValidationError("omega_gt_mu",
                          "omega must exceed |mu| (omega=" +
                              std::to_string(p.omega) +
                              ", mu=" + std::to_string(p.mu) + ")");
}

void validate_for_bath(const OscillatorParams& p) {
  validate(p);
  if (p.closed_system()) return;
  if (!(p.lambda > std::abs(p.mu)))
    throw ValidationError("lambda_gt_mu",
                          "Gibbs bath requires lambda > |mu| (lambda=" +
                              std::to_string(p.lambda) +
                              ", mu=" + std::to_string(p.mu) + ")");
  const double c = p.coth_epsilon();
  const double lhs = (p.lambda * p.lambda - p.mu * p.mu) * c * c;
  if (!ge_with_slack(lhs, p.lambda * p.lambda))
    throw ValidationError(
        "fundamental_constraint",
        "(lambda^2 - mu^2) coth^2(eps) >= lambda^2 fails for this bath");
}

bool fundamental_constraint_holds(const DiffusionCoefficients& d,
                                  double lambda, double hbar) {
  if (!(d.d_pp > 0.0) || !(d.d_qq > 0.0)) return false;
  const double lhs = d.d_pp * d.d_qq - d.d_pq * d.d_pq;
  const double rhs = lambda * lambda * hbar * hbar / 4.0;
  return ge_with_slack(lhs, rhs);
}

bool check_gibbs_constraint(const OscillatorParams& p) {
  if (!(p.lambda > p.mu)) return false;
  const double c = p.coth_epsilon();
  const double lhs = (p.lambda * p.lambda - p.mu * p.mu) * c * c;
  return ge_with_slack(lhs, p.lambda * p.lambda);
}

DiffusionCoefficients gibbs_coefficients(const OscillatorParams& p) {
  validate(p);
  if (!(p.lambda > std::abs(p.mu)))
    throw ValidationError("lambda_gt_mu",
                          "Gibbs bath requires lambda > |mu|");
  const double c = p.coth_epsilon();
  const double hbar = p.constants.hbar;
  DiffusionCoefficients d;
  d.d_pp = 0.5 * (p.lambda + p.mu) * hbar * p.mass * p.omega * c;
  d.d_qq = 0.5 * (p.lambda - p.mu) * (hbar / (p.mass * p.omega)) * c;
  d.d_pq = 0.0;
  if (!fundamental_constraint_holds(d, p.lambda, hbar))
    throw ValidationError(
        "fundamental_constraint",
        "Gibbs coefficients violate d_pp*d_qq - d_pq^2 >= (lambda*hbar/2)^2");
  return d;
}

DiffusionCoefficients bath_coefficients(const OscillatorParams& p) {
  if (p.closed_system()) {
    validate(p);
    return DiffusionCoefficients{};
  }
  return gibbs_coefficients(p);
}

GaussianState asymptotic_covariance(const OscillatorParams& p) {
  validate(p);
  if (!check_gibbs_constraint(p))
    throw ValidationError("fundamental_constraint",
                          "no Gibbs asymptotic state for these parameters");
  const double c = p.coth_epsilon();
  const double hbar = p.constants.hbar;
  GaussianState s;
  s.time = 0.0;
  s.sigma_q = 0.0;
  s.sigma_p = 0.0;
  s.sigma_qq = hbar / (2.0 * p.mass * p.omega) * c;
  s.sigma_pp = hbar * p.mass * p.omega / 2.0 * c;
  s.sigma_pq = 0.0;
  return s;
}

}  // namespace qdeco
