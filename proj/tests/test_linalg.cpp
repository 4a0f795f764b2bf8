#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "qdeco/linalg.hpp"

using namespace qdeco;

namespace {

CMatrix random_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cxd{g(rng), g(rng)};
  return a;
}

CMatrix random_banded(int n, int bw, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = std::max(0, i - bw); j <= std::min(n - 1, i + bw); ++j)
      a(i, j) = cxd{g(rng), g(rng)};
  return a;
}

CMatrix random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix a(n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = cxd{g(rng), 0.0};
    for (int j = i + 1; j < n; ++j) {
      const cxd v{g(rng), g(rng)};
      a(i, j) = v;
      a(j, i) = std::conj(v);
    }
  }
  return a;
}

}  // namespace

TEST_CASE("banded kernels match the serial dense reference") {
  std::mt19937_64 rng(42);
  for (int n : {5, 17, 48, 64}) {
    for (int bw : {1, 2}) {
      const CMatrix op = random_banded(n, bw, rng);
      const CMatrix x = random_matrix(n, rng);
      const CMatrix left = band_mul_left(op, bw, x);
      const CMatrix right = band_mul_right(x, op, bw);
      const CMatrix left_ref = ref::mul(op, x);
      const CMatrix right_ref = ref::mul(x, op);
      CHECK(max_abs(sub(left, left_ref)) < 1e-12);
      CHECK(max_abs(sub(right, right_ref)) < 1e-12);
    }
  }
}

TEST_CASE("adjoint and hermiticity defect") {
  std::mt19937_64 rng(1);
  const CMatrix a = random_matrix(20, rng);
  const CMatrix ad = adjoint(a);
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) CHECK(ad(i, j) == std::conj(a(j, i)));
  const CMatrix h = random_hermitian(20, rng);
  CHECK(hermiticity_defect(h) == 0.0);
  CHECK(hermiticity_defect(a) > 0.0);
}

TEST_CASE("trace identities") {
  std::mt19937_64 rng(2);
  const int n = 24;
  const CMatrix a = random_matrix(n, rng);
  const CMatrix b = random_banded(n, 2, rng);
  const cxd t1 = trace(ref::mul(a, b));
  const cxd t2 = trace_product_banded(a, b, 2);
  CHECK(std::abs(t1 - t2) < 1e-12);
}

TEST_CASE("jacobi eigenvalues: known spectra") {
  // Symmetric tridiagonal Toeplitz: eigenvalues d + 2 cos(k pi / (n+1)).
  const int n = 12;
  CMatrix a(n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = 3.0;
    if (i + 1 < n) {
      a(i, i + 1) = 1.0;
      a(i + 1, i) = 1.0;
    }
  }
  const auto ev = hermitian_eigenvalues(a);
  std::vector<double> expected;
  for (int k = 1; k <= n; ++k)
    expected.push_back(3.0 + 2.0 * std::cos(k * std::numbers::pi / (n + 1)));
  std::sort(expected.begin(), expected.end());
  for (int i = 0; i < n; ++i) CHECK(ev[i] == doctest::Approx(expected[i]).epsilon(1e-12));
}

TEST_CASE("jacobi eigenvalues: trace and frobenius invariants") {
  std::mt19937_64 rng(3);
  const int n = 30;
  const CMatrix h = random_hermitian(n, rng);
  const auto ev = hermitian_eigenvalues(h);
  double sum = 0.0, sum2 = 0.0;
  for (double v : ev) {
    sum += v;
    sum2 += v * v;
  }
  const double fro = frobenius_norm(h);
  CHECK(sum == doctest::Approx(trace(h).real()).epsilon(1e-11));
  CHECK(sum2 == doctest::Approx(fro * fro).epsilon(1e-11));
}

TEST_CASE("add_scaled and scale_inplace") {
  std::mt19937_64 rng(4);
  const int n = 10;
  const CMatrix a = random_matrix(n, rng);
  CMatrix y = a;
  add_scaled(y, cxd{2.0, 0.0}, a);
  scale_inplace(y, cxd{1.0 / 3.0, 0.0});
  CHECK(max_abs(sub(y, a)) < 1e-14);
}
