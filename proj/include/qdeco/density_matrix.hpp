// Coordinate-representation density matrix of a Gaussian state: pointwise
// evaluation, the sum/difference-variable quadratic form, the steady-state
// matrix, and a pointwise residual check of the coordinate-representation
// evolution equation.
#pragma once

#include <complex>
#include <iosfwd>

#include "qdeco/gaussian.hpp"
#include "qdeco/model.hpp"

namespace qdeco {

/// Coefficients of the quadratic form in Sigma = (q+q')/2, Delta = q-q':
/// exp(-alpha*Sigma^2 - gamma*Delta^2 + i*beta*Sigma*Delta + ...).
/// alpha measures the diagonal peak width, gamma the off-diagonal decay.
struct SigmaDeltaCoefficients {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

SigmaDeltaCoefficients coefficients(const GaussianState& state,
                                    const Constants& consts);

/// <q|rho|q'> in the sum/difference variables.
std::complex<double> rho_sigma_delta(const GaussianState& state,
                                     const Constants& consts, double sum_half,
                                     double diff);

/// <q|rho|q'>. Hermiticity rho(q,q') = conj(rho(q',q)) holds exactly by
/// construction (evaluated through the sum/difference form).
std::complex<double> rho_element(const GaussianState& state,
                                 const Constants& consts, double q, double qp);

/// <q|rho(infinity)|q'> for the Gibbs bath; real and symmetric.
double steady_state_element(const OscillatorParams& params, double q,
                            double qp);

/// The mixed-diffusion drift term of the coordinate-representation
/// evolution equation admits two hbar placements; the residual check can
/// evaluate either to decide which one the Gaussian dynamics satisfies.
enum class DpqTermScaling {
  times_hbar,  // coefficient -2i * d_pq * hbar
  over_hbar,   // coefficient -2i * d_pq / hbar
};

/// Defect of the coordinate-representation evolution equation on the
/// trajectory: d(rho)/dt by central difference across neighbouring samples
/// minus the right-hand side with all spatial derivatives taken in closed
/// form. Near zero exactly when the moment dynamics solve the equation.
std::complex<double> pde_residual(
    const Trajectory& trajectory, const OscillatorParams& params,
    const DiffusionCoefficients& coeffs, double q, double qp, double t,
    DpqTermScaling scaling = DpqTermScaling::over_hbar);

/// |pde_residual| normalized by the summed magnitudes of the equation's
/// individual contributions at the same point (a local relative defect).
double pde_residual_normalized(
    const Trajectory& trajectory, const OscillatorParams& params,
    const DiffusionCoefficients& coeffs, double q, double qp, double t,
    DpqTermScaling scaling = DpqTermScaling::over_hbar);

/// CSV dump of rho on a uniform (q,q') grid: `q,qprime,re,im,abs`.
void write_density_grid_csv(std::ostream& os, const GaussianState& state,
                            const Constants& consts, double q_min,
                            double q_max, int points);

/// Same grid schema for the steady state (im column identically 0).
void write_steady_state_grid_csv(std::ostream& os,
                                 const OscillatorParams& params, double q_min,
                                 double q_max, int points);

}  // namespace qdeco
