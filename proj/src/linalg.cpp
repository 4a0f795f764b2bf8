#include "qdeco/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdeco {

namespace {
// Below this dimension the parallel-for overhead is not worth paying.
constexpr int kParallelCutoff = 32;
}  // namespace

CMatrix band_mul_left(const CMatrix& op, int bw, const CMatrix& x) {
  const int n = op.dim();
  CMatrix y(n);
  const cxd* o = op.data();
  const cxd* xd = x.data();
  cxd* yd = y.data();
#pragma omp parallel for schedule(static) if (n >= kParallelCutoff)
  for (int i = 0; i < n; ++i) {
    cxd* yrow = yd + static_cast<size_t>(i) * n;
    const int l0 = std::max(0, i - bw);
    const int l1 = std::min(n - 1, i + bw);
    for (int l = l0; l <= l1; ++l) {
      const cxd a = o[static_cast<size_t>(i) * n + l];
      if (a == cxd{}) continue;
      const cxd* xrow = xd + static_cast<size_t>(l) * n;
      for (int j = 0; j < n; ++j) yrow[j] += a * xrow[j];
    }
  }
  return y;
}

CMatrix band_mul_right(const CMatrix& x, const CMatrix& op, int bw) {
  const int n = op.dim();
  CMatrix y(n);
  // Work off the operator's diagonals so every inner loop is contiguous:
  // y(i, j) = sum_d x(i, j+d) * op(j+d, j). All-zero diagonals (common for
  // ladder-built operators) are skipped outright.
  std::vector<std::vector<cxd>> diags(2 * bw + 1, std::vector<cxd>(n));
  std::vector<bool> nonzero(2 * bw + 1, false);
  for (int d = -bw; d <= bw; ++d)
    for (int j = std::max(0, -d); j < n && j + d < n; ++j) {
      const cxd v = op(j + d, j);
      diags[d + bw][j] = v;
      if (v != cxd{}) nonzero[d + bw] = true;
    }
  const cxd* xd = x.data();
  cxd* yd = y.data();
#pragma omp parallel for schedule(static) if (n >= kParallelCutoff)
  for (int i = 0; i < n; ++i) {
    const cxd* xrow = xd + static_cast<size_t>(i) * n;
    cxd* yrow = yd + static_cast<size_t>(i) * n;
    for (int d = -bw; d <= bw; ++d) {
      if (!nonzero[d + bw]) continue;
      const cxd* dg = diags[d + bw].data();
      const int j0 = std::max(0, -d);
      const int j1 = std::min(n, n - d);
      for (int j = j0; j < j1; ++j) yrow[j] += xrow[j + d] * dg[j];
    }
  }
  return y;
}

CMatrix plus_adjoint(const CMatrix& a) {
  const int n = a.dim();
  CMatrix y(n);
#pragma omp parallel for schedule(static) if (n >= kParallelCutoff)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) y(i, j) = a(i, j) + std::conj(a(j, i));
  return y;
}

CMatrix minus_adjoint(const CMatrix& a) {
  const int n = a.dim();
  CMatrix y(n);
#pragma omp parallel for schedule(static) if (n >= kParallelCutoff)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) y(i, j) = std::conj(a(j, i)) - a(i, j);
  return y;
}

CMatrix adjoint(const CMatrix& a) {
  const int n = a.dim();
  CMatrix y(n);
#pragma omp parallel for schedule(static) if (n >= kParallelCutoff)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) y(i, j) = std::conj(a(j, i));
  return y;
}

void add_scaled(CMatrix& y, cxd s, const CMatrix& x) {
  const size_t m = y.size();
  cxd* yd = y.data();
  const cxd* xd = x.data();
#pragma omp parallel for schedule(static) if (m >= 4096)
  for (long long k = 0; k < static_cast<long long>(m); ++k) yd[k] += s * xd[k];
}

CMatrix add(const CMatrix& a, const CMatrix& b) {
  CMatrix y = a;
  add_scaled(y, cxd{1.0, 0.0}, b);
  return y;
}

CMatrix sub(const CMatrix& a, const CMatrix& b) {
  CMatrix y = a;
  add_scaled(y, cxd{-1.0, 0.0}, b);
  return y;
}

void scale_inplace(CMatrix& a, cxd s) {
  cxd* d = a.data();
  const size_t m = a.size();
  for (size_t k = 0; k < m; ++k) d[k] *= s;
}

cxd trace(const CMatrix& a) {
  cxd t{};
  for (int i = 0; i < a.dim(); ++i) t += a(i, i);
  return t;
}

cxd trace_product_banded(const CMatrix& a, const CMatrix& b, int bw) {
  const int n = a.dim();
  cxd t{};
  for (int i = 0; i < n; ++i) {
    const int l0 = std::max(0, i - bw);
    const int l1 = std::min(n - 1, i + bw);
    for (int l = l0; l <= l1; ++l) t += a(i, l) * b(l, i);
  }
  return t;
}

double frobenius_norm(const CMatrix& a) {
  double s = 0.0;
  const cxd* d = a.data();
  for (size_t k = 0; k < a.size(); ++k) s += std::norm(d[k]);
  return std::sqrt(s);
}

double max_abs(const CMatrix& a) {
  double m = 0.0;
  const cxd* d = a.data();
  for (size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(d[k]));
  return m;
}

double hermiticity_defect(const CMatrix& a) {
  double m = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i; j < a.dim(); ++j)
      m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
  return m;
}

std::vector<double> hermitian_eigenvalues(CMatrix a) {
  const int n = a.dim();
  if (n == 0) return {};
  // Cyclic Jacobi: rotate away the largest-magnitude off-diagonal entries
  // until the off-diagonal mass is negligible against the diagonal scale.
  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
  if (scale == 0.0) return std::vector<double>(n, 0.0);
  const double tol = 1e-15 * scale;

  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off <= tol) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cxd apq = a(p, q);
        const double r = std::abs(apq);
        if (r <= tol) continue;
        const cxd u = apq / r;  // unit phase
        const double alpha = a(p, p).real();
        const double beta = a(q, q).real();
        // Small-angle root of t^2 - 2*tau*t - 1 = 0, tau = (alpha-beta)/2r.
        const double tau2 = (alpha - beta) / (2.0 * r);
        double t;
        if (tau2 >= 0.0)
          t = -1.0 / (tau2 + std::sqrt(1.0 + tau2 * tau2));
        else
          t = 1.0 / (-tau2 + std::sqrt(1.0 + tau2 * tau2));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cxd su = s * u;

        // A <- G^H A G with G acting in the (p,q) plane:
        // G[p][p]=c, G[p][q]=s*u, G[q][p]=-s*conj(u), G[q][q]=c.
        for (int k = 0; k < n; ++k) {
          const cxd akp = a(k, p);
          const cxd akq = a(k, q);
          a(k, p) = c * akp - std::conj(su) * akq;
          a(k, q) = su * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const cxd apk = a(p, k);
          const cxd aqk = a(q, k);
          a(p, k) = c * apk - su * aqk;
          a(q, k) = std::conj(su) * apk + c * aqk;
        }
        a(p, q) = cxd{};
        a(q, p) = cxd{};
        a(p, p) = cxd{a(p, p).real(), 0.0};
        a(q, q) = cxd{a(q, q).real(), 0.0};
      }
    }
  }

  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = a(i, i).real();
  std::sort(ev.begin(), ev.end());
  return ev;
}

namespace ref {

CMatrix mul(const CMatrix& a, const CMatrix& b) {
  const int n = a.dim();
  if (b.dim() != n) throw std::invalid_argument("dimension mismatch");
  CMatrix y(n);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) {
      const cxd v = a(i, l);
      if (v == cxd{}) continue;
      for (int j = 0; j < n; ++j) y(i, j) += v * b(l, j);
    }
  return y;
}

}  // namespace ref

}  // namespace qdeco
