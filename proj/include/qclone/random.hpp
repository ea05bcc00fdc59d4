// Seeded random states and unitaries for property checks.

#pragma once

#include "qclone/linalg.hpp"

#include <random>

namespace qclone {

template <typename Real = double>
class StateSampler {
 public:
  explicit StateSampler(std::uint64_t seed) : rng_(seed) {}

  CMatrix<Real> ginibre(Index rows, Index cols) {
    CMatrix<Real> g(rows, cols);
    for (Index j = 0; j < cols; ++j) {
      for (Index i = 0; i < rows; ++i) g(i, j) = {normal_(rng_), normal_(rng_)};
    }
    return g;
  }

  PureState<Real> pure(Dims dims) {
    CVector<Real> v = ginibre(total_dim(dims), 1);
    v.normalize();
    return PureState<Real>(std::move(dims), std::move(v));
  }

  /// Full-rank mixed state, G G^dagger / Tr.
  DensityMatrix<Real> mixed(Dims dims) {
    const Index n = total_dim(dims);
    const CMatrix<Real> g = ginibre(n, n);
    CMatrix<Real> rho = g * g.adjoint();
    rho /= rho.trace();
    return DensityMatrix<Real>(std::move(dims), hermitian_part(rho));
  }

  DensityMatrix<Real> three_qubit_mixed() { return mixed({2, 2, 2}); }

  DensityMatrix<Real> three_qubit_product() {
    const auto a = mixed({2});
    const auto b = mixed({2});
    const auto c = mixed({2});
    return kron(kron(a, b), c);
  }

  /// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
  CMatrix<Real> unitary(Index n) {
    const CMatrix<Real> g = ginibre(n, n);
    Eigen::HouseholderQR<CMatrix<Real>> qr(g);
    CMatrix<Real> q = qr.householderQ();
    const CMatrix<Real> r = qr.matrixQR().template triangularView<Eigen::Upper>();
    for (Index k = 0; k < n; ++k) {
      const auto d = r(k, k);
      q.col(k) *= d / std::abs(d);
    }
    return q;
  }

  Real uniform(Real lo, Real hi) { return std::uniform_real_distribution<Real>(lo, hi)(rng_); }

 private:
  static CMatrix<Real> hermitian_part(const CMatrix<Real>& m) {
    return (m + m.adjoint()) / Complex<Real>(2);
  }

  std::mt19937_64 rng_;
  std::normal_distribution<Real> normal_{0, 1};
};

}  // namespace qclone
