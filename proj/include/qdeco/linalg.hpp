// Dense complex matrices and the banded multiply kernels used by the
// number-basis integrator. The hot kernels are OpenMP-parallel over rows;
// qdeco::ref holds plain serial implementations kept as the reference for
// testing and benchmarking.
#pragma once

#include <complex>
#include <vector>

namespace qdeco {

using cxd = std::complex<double>;

/// Square, row-major, heap-backed complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {}

  int dim() const { return n_; }
  cxd& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  const cxd& operator()(int i, int j) const {
    return a_[static_cast<size_t>(i) * n_ + j];
  }
  cxd* data() { return a_.data(); }
  const cxd* data() const { return a_.data(); }
  size_t size() const { return a_.size(); }

 private:
  int n_ = 0;
  std::vector<cxd> a_;
};

// ---- parallel kernels -----------------------------------------------------

/// y = op * x where op has half-bandwidth bw (entries beyond |i-j| > bw
/// are ignored).
CMatrix band_mul_left(const CMatrix& op, int bw, const CMatrix& x);

/// y = x * op where op has half-bandwidth bw.
CMatrix band_mul_right(const CMatrix& x, const CMatrix& op, int bw);

/// Conjugate transpose.
CMatrix adjoint(const CMatrix& a);

/// a + a^H (Hermitian part doubled), single pass.
CMatrix plus_adjoint(const CMatrix& a);

/// a^H - a, single pass.
CMatrix minus_adjoint(const CMatrix& a);

/// y += s * x (elementwise).
void add_scaled(CMatrix& y, cxd s, const CMatrix& x);

/// y = a + b.
CMatrix add(const CMatrix& a, const CMatrix& b);

/// y = a - b.
CMatrix sub(const CMatrix& a, const CMatrix& b);

void scale_inplace(CMatrix& a, cxd s);

// ---- scalar reductions ----------------------------------------------------

cxd trace(const CMatrix& a);

/// tr(a*b) restricted to the band of b (half-bandwidth bw).
cxd trace_product_banded(const CMatrix& a, const CMatrix& b, int bw);

double frobenius_norm(const CMatrix& a);
double max_abs(const CMatrix& a);

/// max_ij |a(i,j) - conj(a(j,i))|.
double hermiticity_defect(const CMatrix& a);

/// Eigenvalues of a Hermitian matrix, ascending (cyclic Jacobi sweeps).
std::vector<double> hermitian_eigenvalues(CMatrix a);

// ---- serial reference -----------------------------------------------------

namespace ref {

/// Plain O(n^3) triple loop, single threaded. Testing/benchmark reference.
CMatrix mul(const CMatrix& a, const CMatrix& b);

}  // namespace ref

}  // namespace qdeco
