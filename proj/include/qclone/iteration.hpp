// Repeated cloning: each step feeds the previous output back into the
// cloner. For the non-local machine the mixed input is split into its
// eigenvectors, each eigenvector is cloned as a pure state and the results
// are recombined with the eigenvalues as weights.

#pragma once

#include "qclone/cloners.hpp"
#include "qclone/entanglement.hpp"

#include <vector>

namespace qclone {

enum class CloningMode { NonLocal, Local };

inline constexpr int kMaxIterationSteps = 12;

/// Eigenvalues at or below this are dropped from the spectral mixture.
inline constexpr double kEigenCutoff = 1e-12;

template <typename Real>
struct IterationStep {
  int step = 0;
  Real e3 = 0;
  Real e2 = 0;  // pair (0,1); the states here are symmetric under qubit exchange
  DensityMatrix<Real> rho;
};

template <typename Real>
struct IterationTrace {
  Real alpha = 0;
  CloningMode mode = CloningMode::NonLocal;
  std::vector<IterationStep<Real>> steps;
};

template <typename Real>
DensityMatrix<Real> clone_mixed_nonlocal(const DensityMatrix<Real>& rho) {
  detail::require_valid_three_qubit(rho);
  const auto eig = eig_hermitian(rho.matrix());
  CMatrix<Real> mixed = CMatrix<Real>::Zero(8, 8);
  for (Index j = 0; j < eig.values.size(); ++j) {
    const Real weight = eig.values(j);
    if (weight <= Real(kEigenCutoff)) continue;
    CVector<Real> phi = eig.vectors.col(j);
    phi.normalize();
    const auto pure = DensityMatrix<Real>::from_pure(PureState<Real>({2, 2, 2}, std::move(phi)));
    mixed += Complex<Real>(weight) * apply_nonlocal_cloning(pure).state().matrix();
  }
  return DensityMatrix<Real>({2, 2, 2}, std::move(mixed));
}

template <typename Real = double>
IterationTrace<Real> iterate(Real alpha, int n_steps, CloningMode mode = CloningMode::NonLocal) {
  if (n_steps < 0 || n_steps > kMaxIterationSteps) {
    throw DomainError("iterate: step count must be in [0, 12]");
  }
  IterationTrace<Real> trace;
  trace.alpha = alpha;
  trace.mode = mode;
  auto record = [&trace](int step, DensityMatrix<Real> rho) {
    const auto r = measures(rho);
    trace.steps.push_back({step, r.e3, r.e2[0], std::move(rho)});
  };

  record(0, DensityMatrix<Real>::from_pure(input_state(alpha)));
  for (int k = 1; k <= n_steps; ++k) {
    const auto& prev = trace.steps.back().rho;
    record(k, mode == CloningMode::NonLocal ? clone_mixed_nonlocal(prev)
                                            : apply_local_cloning(prev).state());
  }
  return trace;
}

}  // namespace qclone
