// Independent ground truth: the full master equation integrated as a matrix
// differential equation in a truncated number-state basis. Never touches the
// moment equations or the closed-form uncertainty function; moments, purity
// and matrix elements come straight from the density operator.
//
// Thermal occupation sets the basis size; coth(eps) <= 3 is the supported
// regime at the default dimensions (hotter baths need much larger bases).
#pragma once

#include <iosfwd>
#include <vector>

#include "qdeco/gaussian.hpp"
#include "qdeco/linalg.hpp"
#include "qdeco/model.hpp"

namespace qdeco {

/// Truncated matrix representations built from the ladder operators.
/// q and p are tridiagonal; the quadratic combinations have half-bandwidth 2.
struct FockOperators {
  int dimension = 0;
  CMatrix q;       // position
  CMatrix p;       // momentum
  CMatrix h0;      // p^2/2m + m w^2 q^2 / 2, from the truncated products
  CMatrix h;       // h0 + (mu/2)(qp + pq)
  CMatrix qq;      // q*q
  CMatrix pp;      // p*p
  CMatrix qp_sym;  // (qp + pq)/2
};

/// Builds the operator set; dimension must be at least 4.
FockOperators build_operators(const OscillatorParams& params, int dimension);

/// Right-hand side of the master equation. Requires Hermitian rho (the
/// physical case); exploits bandedness and Hermitian pairing, parallel.
CMatrix liouvillian_rhs(const CMatrix& rho, const FockOperators& ops,
                        const OscillatorParams& params,
                        const DiffusionCoefficients& coeffs);

/// Literal term-by-term translation using plain dense products, serial,
/// valid for arbitrary rho. Reference implementation for tests/benchmarks.
CMatrix liouvillian_rhs_reference(const CMatrix& rho, const FockOperators& ops,
                                  const OscillatorParams& params,
                                  const DiffusionCoefficients& coeffs);

/// Pure correlated-coherent-state density operator, built by projecting the
/// coordinate wave function onto the number basis by quadrature.
/// Throws LeakageError when the top-level occupation exceeds the budget.
CMatrix correlated_coherent_density(const InitialStateSpec& spec,
                                    const FockOperators& ops,
                                    const OscillatorParams& params,
                                    double leakage_budget = 1e-8);

/// Truncated thermal (Gibbs) state of the free oscillator Hamiltonian.
CMatrix thermal_state(const OscillatorParams& params, int dimension);

struct MomentSample {
  double t = 0.0;
  double sigma_q = 0.0;
  double sigma_p = 0.0;
  double sigma_qq = 0.0;
  double sigma_pp = 0.0;
  double sigma_pq = 0.0;
  double leakage = 0.0;  // population of the top two levels

  double sigma() const { return sigma_qq * sigma_pp - sigma_pq * sigma_pq; }
};

/// Centroid and central second moments (plus leakage) of a density operator.
MomentSample moments_of(const CMatrix& rho, const FockOperators& ops);

/// Purity tr(rho^2).
double purity(const CMatrix& rho);

struct OracleOptions {
  double step = 0.0;                 // 0 = default 1e-3 * min(1/omega, 1/lambda)
  int samples = 101;                 // stored moment samples, >= 2
  double leakage_budget = 1e-8;      // throw above this
  double trace_drift_budget = 1e-8;  // throw above this
  bool keep_snapshots = false;       // retain rho at the sample times
};

struct OracleRun {
  int dimension = 0;
  double step = 0.0;
  std::vector<MomentSample> moments;
  double max_leakage = 0.0;
  double max_trace_drift = 0.0;
  double max_hermiticity_defect = 0.0;
  bool converged = true;  // set by the dimension-doubling helper
  std::vector<std::pair<double, CMatrix>> snapshots;
};

/// Fixed-step RK4 on the matrix equation from t = 0 to t_final, sampling
/// moments uniformly. Throws LeakageError / NumericalError("trace_drift")
/// when the respective budget is exceeded.
OracleRun integrate(CMatrix rho0, const FockOperators& ops,
                    const OscillatorParams& params,
                    const DiffusionCoefficients& coeffs, double t_final,
                    const OracleOptions& options = {});

/// Repeats the run with doubled dimension until the largest change in the
/// sampled second moments drops below drift_tol (or max_dimension is hit,
/// in which case the result is marked unconverged).
OracleRun integrate_with_doubling(const InitialStateSpec& spec,
                                  const OscillatorParams& params,
                                  const DiffusionCoefficients& coeffs,
                                  double t_final, int start_dimension = 60,
                                  double drift_tol = 1e-6,
                                  int max_dimension = 480,
                                  const OracleOptions& options = {});

/// CSV export, same schema as the Gaussian trajectory plus `leakage`:
/// `t,sigma_q,sigma_p,sigma_qq,sigma_pp,sigma_pq,sigma,leakage`.
void write_oracle_csv(std::ostream& os, const OracleRun& run);

}  // namespace qdeco
