// Times the banded, Hermitian-paired master-equation kernel against the
// serial dense reference and reports agreement.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qdeco/fock.hpp"
#include "qdeco/linalg.hpp"
#include "qdeco/model.hpp"

using namespace qdeco;

namespace {

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

template <typename Fn>
double seconds_per_call(Fn&& fn, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> dims = {40, 60, 120};
  if (argc > 1) {
    dims.clear();
    for (int i = 1; i < argc; ++i) dims.push_back(std::atoi(argv[i]));
  }

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (no OpenMP)\n");
#endif

  OscillatorParams params;
  params.lambda = 0.2;
  params.mu = 0.1;
  params = with_coth_epsilon(params, 2.0);
  const auto coeffs = gibbs_coefficients(params);

  std::printf("%6s %14s %14s %9s %12s\n", "N", "banded (ms)", "serial (ms)",
              "speedup", "max |diff|");
  std::mt19937_64 rng(7);
  for (int n : dims) {
    const auto ops = build_operators(params, n);
    const CMatrix rho = random_hermitian(n, rng);

    const CMatrix fast = liouvillian_rhs(rho, ops, params, coeffs);
    const CMatrix ref = liouvillian_rhs_reference(rho, ops, params, coeffs);
    const double diff = max_abs(sub(fast, ref));

    const int reps_fast = std::max(4, 40000 / n);
    const int reps_ref = std::max(2, 2000000 / (n * n));
    double sink = 0.0;
    const double tf = seconds_per_call(
        [&] { sink += max_abs(liouvillian_rhs(rho, ops, params, coeffs)); },
        reps_fast);
    const double tr = seconds_per_call(
        [&] {
          sink += max_abs(liouvillian_rhs_reference(rho, ops, params, coeffs));
        },
        reps_ref);
    if (sink < 0.0) std::printf("unreachable\n");
    std::printf("%6d %14.3f %14.3f %9.1f %12.3e\n", n, tf * 1e3, tr * 1e3,
                tr / tf, diff);
  }
  return 0;
}
