// Gaussian state of the oscillator: centroid plus second central moments.
#pragma once

namespace qdeco {

struct GaussianState {
  double time = 0.0;
  double sigma_q = 0.0;   // mean position
  double sigma_p = 0.0;   // mean momentum
  double sigma_qq = 0.0;  // position variance
  double sigma_pp = 0.0;  // momentum variance
  double sigma_pq = 0.0;  // symmetrized position-momentum covariance

  /// Determinant of the covariance matrix (generalized uncertainty).
  double sigma() const { return sigma_qq * sigma_pp - sigma_pq * sigma_pq; }
};

}  // namespace qdeco
