#include "qdeco/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>
#include <utility>

#include "qdeco/csv.hpp"
#include "qdeco/errors.hpp"

namespace qdeco {

namespace {

// out += s * (m^H - m), s purely imaginary. Keeps out exactly Hermitian.
void add_antihermitian_pair(CMatrix& out, cxd s, const CMatrix& m) {
  const int n = out.dim();
#pragma omp parallel for schedule(static) if (n >= 32)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out(i, j) += s * (std::conj(m(j, i)) - m(i, j));
}

// out += s * (m + m^H), s real. Keeps out exactly Hermitian.
void add_hermitian_pair(CMatrix& out, double s, const CMatrix& m) {
  const int n = out.dim();
#pragma omp parallel for schedule(static) if (n >= 32)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) += s * (m(i, j) + std::conj(m(j, i)));
}

}  // namespace

FockOperators build_operators(const OscillatorParams& params, int dimension) {
  validate(params);
  if (dimension < 4)
    throw ValidationError("oracle_dimension",
                          "number-basis dimension must be at least 4");
  const double hbar = params.constants.hbar;
  const double sq = std::sqrt(hbar / (2.0 * params.mass * params.omega));
  const double sp = std::sqrt(hbar * params.mass * params.omega / 2.0);

  FockOperators ops;
  ops.dimension = dimension;
  ops.q = CMatrix(dimension);
  ops.p = CMatrix(dimension);
  for (int i = 0; i + 1 < dimension; ++i) {
    const double v = std::sqrt(static_cast<double>(i + 1));
    ops.q(i, i + 1) = sq * v;
    ops.q(i + 1, i) = sq * v;
    ops.p(i, i + 1) = cxd{0.0, -sp * v};
    ops.p(i + 1, i) = cxd{0.0, sp * v};
  }

  ops.qq = band_mul_left(ops.q, 1, ops.q);
  ops.pp = band_mul_left(ops.p, 1, ops.p);
  const CMatrix qp = band_mul_left(ops.q, 1, ops.p);
  const CMatrix pq = band_mul_left(ops.p, 1, ops.q);
  ops.qp_sym = add(qp, pq);
  scale_inplace(ops.qp_sym, cxd{0.5, 0.0});

  ops.h0 = ops.pp;
  scale_inplace(ops.h0, cxd{1.0 / (2.0 * params.mass), 0.0});
  add_scaled(ops.h0, cxd{0.5 * params.mass * params.omega * params.omega, 0.0},
             ops.qq);
  ops.h = ops.h0;
  add_scaled(ops.h, cxd{params.mu, 0.0}, ops.qp_sym);
  return ops;
}

CMatrix liouvillian_rhs(const CMatrix& rho, const FockOperators& ops,
                        const OscillatorParams& params,
                        const DiffusionCoefficients& coeffs) {
  const double hbar = params.constants.hbar;
  const int n = ops.dimension;
  CMatrix out(n);

  // Free evolution: -(i/hbar)[h0, rho]; [h0, rho] = (rho h0)^H - rho h0.
  {
    const CMatrix m = band_mul_right(rho, ops.h0, 2);
    add_antihermitian_pair(out, cxd{0.0, -1.0 / hbar}, m);
  }

  // Momentum-side products: rho p, with p rho = (rho p)^H.
  {
    const CMatrix a = band_mul_right(rho, ops.p, 1);
    // -(i/2hbar)(lambda+mu) [q, rho p + p rho]
    const CMatrix x = plus_adjoint(a);
    const CMatrix y = band_mul_right(x, ops.q, 1);
    add_antihermitian_pair(
        out, cxd{0.0, -(params.lambda + params.mu) / (2.0 * hbar)}, y);
    // -(d_qq/hbar^2) [p, [p, rho]]
    const CMatrix cp = minus_adjoint(a);  // [p, rho], anti-Hermitian
    const CMatrix zp = band_mul_left(ops.p, 1, cp);
    add_hermitian_pair(out, -coeffs.d_qq / (hbar * hbar), zp);
    if (coeffs.d_pq != 0.0) {
      const CMatrix zqp = band_mul_left(ops.q, 1, cp);
      add_hermitian_pair(out, coeffs.d_pq / (hbar * hbar), zqp);
    }
  }

  // Position-side products: rho q, with q rho = (rho q)^H.
  {
    const CMatrix b = band_mul_right(rho, ops.q, 1);
    // +(i/2hbar)(lambda-mu) [p, rho q + q rho]
    const CMatrix x = plus_adjoint(b);
    const CMatrix y = band_mul_right(x, ops.p, 1);
    add_antihermitian_pair(
        out, cxd{0.0, (params.lambda - params.mu) / (2.0 * hbar)}, y);
    // -(d_pp/hbar^2) [q, [q, rho]]
    const CMatrix cq = minus_adjoint(b);  // [q, rho], anti-Hermitian
    const CMatrix zq = band_mul_left(ops.q, 1, cq);
    add_hermitian_pair(out, -coeffs.d_pp / (hbar * hbar), zq);
    if (coeffs.d_pq != 0.0) {
      const CMatrix zpq = band_mul_left(ops.p, 1, cq);
      add_hermitian_pair(out, coeffs.d_pq / (hbar * hbar), zpq);
    }
  }

  return out;
}

CMatrix liouvillian_rhs_reference(const CMatrix& rho, const FockOperators& ops,
                                  const OscillatorParams& params,
                                  const DiffusionCoefficients& coeffs) {
  const double hbar = params.constants.hbar;
  const int n = ops.dimension;

  // Strictly serial combination helpers.
  auto axpy = [n](CMatrix& y, cxd s, const CMatrix& x) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) y(i, j) += s * x(i, j);
  };
  auto lincomb = [n, &axpy](const CMatrix& a, cxd sb, const CMatrix& b) {
    CMatrix y = a;
    axpy(y, sb, b);
    return y;
  };
  auto comm = [&lincomb](const CMatrix& x, const CMatrix& y) {
    return lincomb(ref::mul(x, y), cxd{-1.0, 0.0}, ref::mul(y, x));
  };

  CMatrix out(n);
  axpy(out, cxd{0.0, -1.0 / hbar}, comm(ops.h0, rho));
  const CMatrix xp =
      lincomb(ref::mul(rho, ops.p), cxd{1.0, 0.0}, ref::mul(ops.p, rho));
  axpy(out, cxd{0.0, -(params.lambda + params.mu) / (2.0 * hbar)},
       comm(ops.q, xp));
  const CMatrix xq =
      lincomb(ref::mul(rho, ops.q), cxd{1.0, 0.0}, ref::mul(ops.q, rho));
  axpy(out, cxd{0.0, (params.lambda - params.mu) / (2.0 * hbar)},
       comm(ops.p, xq));
  axpy(out, cxd{-coeffs.d_pp / (hbar * hbar), 0.0},
       comm(ops.q, comm(ops.q, rho)));
  axpy(out, cxd{-coeffs.d_qq / (hbar * hbar), 0.0},
       comm(ops.p, comm(ops.p, rho)));
  if (coeffs.d_pq != 0.0) {
    axpy(out, cxd{coeffs.d_pq / (hbar * hbar), 0.0},
         comm(ops.q, comm(ops.p, rho)));
    axpy(out, cxd{coeffs.d_pq / (hbar * hbar), 0.0},
         comm(ops.p, comm(ops.q, rho)));
  }
  return out;
}

CMatrix correlated_coherent_density(const InitialStateSpec& spec,
                                    const FockOperators& ops,
                                    const OscillatorParams& params,
                                    double leakage_budget) {
  validate(spec);
  validate(params);
  const int n = ops.dimension;
  const double hbar = params.constants.hbar;
  const GaussianState s0 = initial_state(spec, params);

  // Integration window covering both the number-state support and the
  // packet; trapezoid on a smooth, rapidly decaying integrand.
  const double l = std::sqrt(hbar / (params.mass * params.omega));
  const double packet_w = std::sqrt(s0.sigma_qq);
  const double q_lo = std::min(-l * (std::sqrt(2.0 * n + 1.0) + 6.0),
                               s0.sigma_q - 12.0 * packet_w);
  const double q_hi = std::max(l * (std::sqrt(2.0 * n + 1.0) + 6.0),
                               s0.sigma_q + 12.0 * packet_w);
  const int grid = 6001;
  const double hq = (q_hi - q_lo) / (grid - 1);

  const double norm0 = std::pow(2.0 * std::numbers::pi * s0.sigma_qq, -0.25);
  const cxd quad_coeff =
      cxd{1.0, -2.0 * s0.sigma_pq / hbar} / (4.0 * s0.sigma_qq);

  std::vector<cxd> coeffs_vec(n);
  std::vector<double> phi(n);
  const double phi0_norm =
      std::pow(params.mass * params.omega / (std::numbers::pi * hbar), 0.25);

  for (int g = 0; g < grid; ++g) {
    const double q = q_lo + g * hq;
    const double xi = q / l;
    // Number-basis wave functions by stable upward recurrence.
    phi[0] = phi0_norm * std::exp(-0.5 * xi * xi);
    if (n > 1) phi[1] = std::sqrt(2.0) * xi * phi[0];
    for (int k = 2; k < n; ++k)
      phi[k] = std::sqrt(2.0 / k) * xi * phi[k - 1] -
               std::sqrt((k - 1.0) / k) * phi[k - 2];

    const double dq = q - s0.sigma_q;
    const cxd expo = -quad_coeff * dq * dq + cxd{0.0, s0.sigma_p * q / hbar};
    const cxd psi = norm0 * std::exp(expo);
    const double w = (g == 0 || g == grid - 1) ? 0.5 * hq : hq;
    const cxd wpsi = w * psi;
    for (int k = 0; k < n; ++k) coeffs_vec[k] += phi[k] * wpsi;
  }

  double total = 0.0;
  for (const auto& c : coeffs_vec) total += std::norm(c);
  const double leak =
      (std::norm(coeffs_vec[n - 1]) + std::norm(coeffs_vec[n - 2])) / total;
  if (leak > leakage_budget)
    throw LeakageError("initial-state leakage " + std::to_string(leak) +
                           " exceeds budget; suggest dimension >= " +
                           std::to_string(2 * n),
                       2 * n);
  const double inv = 1.0 / std::sqrt(total);
  for (auto& c : coeffs_vec) c *= inv;

  CMatrix rho(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rho(i, j) = coeffs_vec[i] * std::conj(coeffs_vec[j]);
  return rho;
}

CMatrix thermal_state(const OscillatorParams& params, int dimension) {
  validate(params);
  const double x =
      params.zero_temperature() ? 0.0 : std::exp(-2.0 * params.epsilon());
  CMatrix rho(dimension);
  double total = 0.0;
  double w = 1.0;
  for (int i = 0; i < dimension; ++i) {
    rho(i, i) = w;
    total += w;
    w *= x;
  }
  scale_inplace(rho, cxd{1.0 / total, 0.0});
  return rho;
}

MomentSample moments_of(const CMatrix& rho, const FockOperators& ops) {
  const int n = ops.dimension;
  MomentSample m;
  const double mq = trace_product_banded(rho, ops.q, 1).real();
  const double mp = trace_product_banded(rho, ops.p, 1).real();
  const double mqq = trace_product_banded(rho, ops.qq, 2).real();
  const double mpp = trace_product_banded(rho, ops.pp, 2).real();
  const double mqp = trace_product_banded(rho, ops.qp_sym, 2).real();
  m.sigma_q = mq;
  m.sigma_p = mp;
  m.sigma_qq = mqq - mq * mq;
  m.sigma_pp = mpp - mp * mp;
  m.sigma_pq = mqp - mq * mp;
  m.leakage = rho(n - 1, n - 1).real() + rho(n - 2, n - 2).real();
  return m;
}

double purity(const CMatrix& rho) {
  double s = 0.0;
  const cxd* d = rho.data();
  for (size_t k = 0; k < rho.size(); ++k) s += std::norm(d[k]);
  return s;
}

namespace {

double default_oracle_step(const OscillatorParams& p) {
  double h = 1e-3 / p.omega;
  if (p.lambda > 0.0) h = std::min(h, 1e-3 / p.lambda);
  return h;
}

}  // namespace

OracleRun integrate(CMatrix rho0, const FockOperators& ops,
                    const OscillatorParams& params,
                    const DiffusionCoefficients& coeffs, double t_final,
                    const OracleOptions& options) {
  validate(params);
  const int n = ops.dimension;
  const double h =
      options.step > 0.0 ? options.step : default_oracle_step(params);
  const int nsamples = std::max(2, options.samples);

  OracleRun run;
  run.dimension = n;
  run.step = h;

  auto record = [&](double t, const CMatrix& rho) {
    MomentSample m = moments_of(rho, ops);
    m.t = t;
    run.moments.push_back(m);
    run.max_leakage = std::max(run.max_leakage, m.leakage);
    const double drift = std::abs(trace(rho).real() - 1.0) +
                         std::abs(trace(rho).imag());
    run.max_trace_drift = std::max(run.max_trace_drift, drift);
    run.max_hermiticity_defect =
        std::max(run.max_hermiticity_defect, hermiticity_defect(rho));
    if (options.keep_snapshots) run.snapshots.emplace_back(t, rho);
    if (m.leakage > options.leakage_budget)
      throw LeakageError(
          "top-level occupation " + std::to_string(m.leakage) +
              " exceeds the leakage budget at t=" + std::to_string(t) +
              "; suggest dimension >= " + std::to_string(2 * n),
          2 * n);
    if (drift > options.trace_drift_budget)
      throw NumericalError("trace_drift: |tr(rho)-1| = " +
                           std::to_string(drift) + " at t=" +
                           std::to_string(t) + "; reduce the step");
  };

  record(0.0, rho0);
  CMatrix rho = std::move(rho0);
  CMatrix tmp(n);
  double t_prev = 0.0;
  for (int i = 1; i < nsamples; ++i) {
    const double ti = t_final * static_cast<double>(i) / (nsamples - 1);
    const double seg = ti - t_prev;
    const int nst = std::max(1, static_cast<int>(std::ceil(seg / h - 1e-12)));
    const double hh = seg / nst;
    for (int k = 0; k < nst; ++k) {
      const CMatrix k1 = liouvillian_rhs(rho, ops, params, coeffs);
      tmp = rho;
      add_scaled(tmp, cxd{0.5 * hh, 0.0}, k1);
      const CMatrix k2 = liouvillian_rhs(tmp, ops, params, coeffs);
      tmp = rho;
      add_scaled(tmp, cxd{0.5 * hh, 0.0}, k2);
      const CMatrix k3 = liouvillian_rhs(tmp, ops, params, coeffs);
      tmp = rho;
      add_scaled(tmp, cxd{hh, 0.0}, k3);
      const CMatrix k4 = liouvillian_rhs(tmp, ops, params, coeffs);
      add_scaled(rho, cxd{hh / 6.0, 0.0}, k1);
      add_scaled(rho, cxd{hh / 3.0, 0.0}, k2);
      add_scaled(rho, cxd{hh / 3.0, 0.0}, k3);
      add_scaled(rho, cxd{hh / 6.0, 0.0}, k4);
    }
    record(ti, rho);
    t_prev = ti;
  }
  return run;
}

OracleRun integrate_with_doubling(const InitialStateSpec& spec,
                                  const OscillatorParams& params,
                                  const DiffusionCoefficients& coeffs,
                                  double t_final, int start_dimension,
                                  double drift_tol, int max_dimension,
                                  const OracleOptions& options) {
  int n = start_dimension;
  FockOperators ops = build_operators(params, n);
  OracleRun prev =
      integrate(correlated_coherent_density(spec, ops, params,
                                            options.leakage_budget),
                ops, params, coeffs, t_final, options);
  while (2 * n <= max_dimension) {
    n *= 2;
    ops = build_operators(params, n);
    OracleRun next =
        integrate(correlated_coherent_density(spec, ops, params,
                                              options.leakage_budget),
                  ops, params, coeffs, t_final, options);
    double drift = 0.0;
    for (size_t i = 0; i < next.moments.size(); ++i) {
      drift = std::max(
          drift, std::abs(next.moments[i].sigma_qq - prev.moments[i].sigma_qq));
      drift = std::max(
          drift, std::abs(next.moments[i].sigma_pp - prev.moments[i].sigma_pp));
      drift = std::max(
          drift, std::abs(next.moments[i].sigma_pq - prev.moments[i].sigma_pq));
    }
    if (drift < drift_tol) {
      next.converged = true;
      return next;
    }
    prev = std::move(next);
  }
  prev.converged = false;
  return prev;
}

void write_oracle_csv(std::ostream& os, const OracleRun& run) {
  os << "t,sigma_q,sigma_p,sigma_qq,sigma_pp,sigma_pq,sigma,leakage\n";
  for (const auto& m : run.moments) {
    os << csv_double(m.t) << ',' << csv_double(m.sigma_q) << ','
       << csv_double(m.sigma_p) << ',' << csv_double(m.sigma_qq) << ','
       << csv_double(m.sigma_pp) << ',' << csv_double(m.sigma_pq) << ','
       << csv_double(m.sigma()) << ',' << csv_double(m.leakage) << '\n';
  }
}

}  // namespace qdeco
