// Dense complex linear algebra over small tensor-product spaces.
//
// Everything here is templated on the real scalar type and works on plain
// Eigen matrices. Subsystems are ordered big-endian: subsystem 0 is the most
// significant factor of a basis index, so for three qubits |011> is index 3.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qclone {

/// Thrown when an argument violates an operation's precondition.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <typename Real>
using Complex = std::complex<Real>;
template <typename Real>
using CMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using Index = Eigen::Index;
using Dims = std::vector<Index>;

// Tolerance ladder shared by the whole library.
namespace tol {
inline constexpr double algebraic = 1e-14;  // identities on tiny matrices
inline constexpr double state = 1e-12;      // state and channel identities
inline constexpr double spectral = 1e-10;   // eigendecomposition residuals
inline constexpr double table = 5e-5;       // 4-decimal printed tables
}  // namespace tol

inline constexpr Index kMaxDim = 512;

inline Index total_dim(std::span<const Index> dims) {
  return std::accumulate(dims.begin(), dims.end(), Index{1}, std::multiplies<>{});
}

/// Kronecker product, first factor most significant.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  static_assert(std::is_same_v<Scalar, typename DerivedB::Scalar>,
                "kron requires matching scalar types");
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                            a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      const auto v = m(i, j);
      if (!std::isfinite(std::real(v)) || !std::isfinite(std::imag(v))) return false;
    }
  }
  return true;
}

/// max_ij |m - m^dagger|
template <typename Derived>
auto hermiticity_residual(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

namespace detail {

// Strides of a big-endian multi-index.
inline Dims strides_of(std::span<const Index> dims) {
  Dims strides(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) strides[k - 1] = strides[k] * dims[k];
  return strides;
}

// Offsets of every multi-index over `subset`, enumerated big-endian within
// the subset, expressed as flat offsets into the full space.
inline std::vector<Index> subset_offsets(std::span<const Index> dims,
                                         std::span<const Index> subset) {
  const Dims strides = strides_of(dims);
  std::vector<Index> offsets{0};
  for (Index s : subset) {
    std::vector<Index> next;
    next.reserve(offsets.size() * static_cast<std::size_t>(dims[s]));
    for (Index base : offsets) {
      for (Index d = 0; d < dims[s]; ++d) next.push_back(base + d * strides[s]);
    }
    offsets = std::move(next);
  }
  return offsets;
}

inline void check_dims(std::span<const Index> dims, Index side) {
  if (dims.empty()) throw DomainError("subsystem list is empty");
  for (Index d : dims) {
    if (d < 1) throw DomainError("subsystem dimension must be positive");
  }
  if (total_dim(dims) != side) {
    throw DomainError("subsystem dimensions do not multiply to the matrix side");
  }
}

}  // namespace detail

namespace detail {

// Validates `keep` and splits the subsystems into (kept, traced), each sorted.
inline std::pair<Dims, Dims> split_subsystems(std::span<const Index> dims,
                                              std::span<const Index> keep) {
  if (keep.empty()) throw DomainError("partial trace: keep set is empty");
  Dims kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw DomainError("partial trace: duplicate subsystem index");
  }
  for (Index k : kept) {
    if (k < 0 || k >= static_cast<Index>(dims.size())) {
      throw DomainError("partial trace: subsystem index out of range");
    }
  }
  Dims traced;
  for (Index k = 0; k < static_cast<Index>(dims.size()); ++k) {
    if (!std::binary_search(kept.begin(), kept.end(), k)) traced.push_back(k);
  }
  return {std::move(kept), std::move(traced)};
}

}  // namespace detail

/// Reduced operator on the subsystems in `keep` (kept in their original
/// relative order; duplicates are rejected).
template <typename Derived>
auto partial_trace(const Eigen::MatrixBase<Derived>& m, std::span<const Index> dims,
                   std::span<const Index> keep) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) throw DomainError("partial_trace needs a square matrix");
  detail::check_dims(dims, m.rows());
  const auto [kept, traced] = detail::split_subsystems(dims, keep);

  const auto keep_off = detail::subset_offsets(dims, kept);
  const auto trace_off = detail::subset_offsets(dims, traced);
  const auto n = static_cast<Index>(keep_off.size());
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(n, n);
  for (Index c = 0; c < n; ++c) {
    for (Index r = 0; r < n; ++r) {
      Scalar acc{0};
      for (Index t : trace_off) acc += m(keep_off[r] + t, keep_off[c] + t);
      out(r, c) = acc;
    }
  }
  return out;
}

/// Same as partial_trace(v * rho * v^dagger, dims, keep), evaluated as
/// sum_t V_t rho V_t^dagger over traced basis states t, where V_t holds the
/// rows of v belonging to t. The full image operator is never formed.
template <typename Real>
CMatrix<Real> partial_trace_of_image(const CMatrix<Real>& v, std::span<const Index> dims,
                                     const CMatrix<Real>& rho, std::span<const Index> keep) {
  if (rho.rows() != rho.cols() || v.cols() != rho.rows()) {
    throw DomainError("partial_trace_of_image: shape mismatch");
  }
  detail::check_dims(dims, v.rows());
  const auto [kept, traced] = detail::split_subsystems(dims, keep);
  const auto keep_off = detail::subset_offsets(dims, kept);
  const auto trace_off = detail::subset_offsets(dims, traced);
  const auto n = static_cast<Index>(keep_off.size());

  const CMatrix<Real> vr = v * rho;
  CMatrix<Real> out = CMatrix<Real>::Zero(n, n);
  CMatrix<Real> block_v(n, v.cols());
  CMatrix<Real> block_vr(n, v.cols());
  for (Index t : trace_off) {
    for (Index r = 0; r < n; ++r) {
      block_v.row(r) = v.row(keep_off[r] + t);
      block_vr.row(r) = vr.row(keep_off[r] + t);
    }
    out.noalias() += block_vr * block_v.adjoint();
  }
  return out;
}

/// Reorders subsystems: subsystem k of the result is subsystem order[k] of
/// the input. Returns the permuted operator and its dimension list.
template <typename Derived>
auto permute_subsystems(const Eigen::MatrixBase<Derived>& m, std::span<const Index> dims,
                        std::span<const Index> order) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) throw DomainError("permute_subsystems needs a square matrix");
  detail::check_dims(dims, m.rows());
  if (order.size() != dims.size()) throw DomainError("permutation has the wrong length");
  Dims sorted(order.begin(), order.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (sorted[k] != static_cast<Index>(k)) throw DomainError("not a permutation");
  }

  Dims new_dims(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) new_dims[k] = dims[order[k]];
  // old_index[new_flat] for every basis state.
  const auto old_index = detail::subset_offsets(dims, order);

  const Index n = m.rows();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(n, n);
  for (Index c = 0; c < n; ++c) {
    for (Index r = 0; r < n; ++r) out(r, c) = m(old_index[r], old_index[c]);
  }
  return std::pair{std::move(out), std::move(new_dims)};
}

template <typename Real>
struct HermitianEigen {
  RVector<Real> values;    // descending
  CMatrix<Real> vectors;   // orthonormal columns, matching `values`
};

template <typename Real>
HermitianEigen<Real> eig_hermitian(const CMatrix<Real>& h) {
  if (h.rows() != h.cols()) throw DomainError("eig_hermitian needs a square matrix");
  if (h.rows() > kMaxDim) throw DomainError("eig_hermitian: dimension above 512");
  if (!all_finite(h)) throw DomainError("eig_hermitian: non-finite entry");
  if (hermiticity_residual(h) > Real(tol::state)) {
    throw DomainError("eig_hermitian: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(h);
  if (solver.info() != Eigen::Success) throw DomainError("eig_hermitian: solver failed");
  // Eigen sorts ascending.
  return {solver.eigenvalues().reverse(), solver.eigenvectors().rowwise().reverse()};
}

/// Unit vector over a tensor-product space.
template <typename Real>
class PureState {
 public:
  PureState(Dims dims, CVector<Real> amplitudes)
      : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
    detail::check_dims(dims_, amplitudes_.size());
    if (!all_finite(amplitudes_)) throw DomainError("PureState: non-finite amplitude");
    if (std::abs(amplitudes_.squaredNorm() - Real(1)) > Real(tol::state)) {
      throw DomainError("PureState: amplitudes are not normalized");
    }
  }

  const Dims& dims() const { return dims_; }
  const CVector<Real>& amplitudes() const { return amplitudes_; }
  Index dim() const { return amplitudes_.size(); }

 private:
  Dims dims_;
  CVector<Real> amplitudes_;
};

/// Hermitian, positive semidefinite, unit-trace operator.
template <typename Real>
class DensityMatrix {
 public:
  DensityMatrix(Dims dims, CMatrix<Real> matrix)
      : dims_(std::move(dims)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols()) throw DomainError("DensityMatrix: not square");
    detail::check_dims(dims_, matrix_.rows());
    if (!all_finite(matrix_)) throw DomainError("DensityMatrix: non-finite entry");
    if (hermiticity_residual(matrix_) > Real(tol::state)) {
      throw DomainError("DensityMatrix: not Hermitian");
    }
    if (std::abs(matrix_.trace() - Complex<Real>(1)) > Real(tol::state)) {
      throw DomainError("DensityMatrix: trace is not 1");
    }
    if (matrix_.rows() <= kMaxDim) {
      Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(matrix_, Eigen::EigenvaluesOnly);
      if (solver.eigenvalues().minCoeff() < -Real(tol::spectral)) {
        throw DomainError("DensityMatrix: negative eigenvalue");
      }
    }
  }

  static DensityMatrix from_pure(const PureState<Real>& psi) {
    const auto& v = psi.amplitudes();
    return DensityMatrix(psi.dims(), v * v.adjoint());
  }

  static DensityMatrix maximally_mixed(Dims dims) {
    const Index n = total_dim(dims);
    return DensityMatrix(std::move(dims),
                         CMatrix<Real>::Identity(n, n) / Complex<Real>(Real(n)));
  }

  const Dims& dims() const { return dims_; }
  const CMatrix<Real>& matrix() const { return matrix_; }
  Index dim() const { return matrix_.rows(); }

 private:
  Dims dims_;
  CMatrix<Real> matrix_;
};

template <typename Real>
DensityMatrix<Real> partial_trace(const DensityMatrix<Real>& rho, std::span<const Index> keep) {
  Dims kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  CMatrix<Real> reduced = partial_trace(rho.matrix(), rho.dims(), keep);
  Dims dims;
  for (Index k : kept) dims.push_back(rho.dims()[k]);
  return DensityMatrix<Real>(std::move(dims), std::move(reduced));
}

template <typename Real>
DensityMatrix<Real> partial_trace(const DensityMatrix<Real>& rho,
                                  std::initializer_list<Index> keep) {
  return partial_trace(rho, std::span<const Index>(keep.begin(), keep.size()));
}

template <typename Real>
DensityMatrix<Real> kron(const DensityMatrix<Real>& a, const DensityMatrix<Real>& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityMatrix<Real>(std::move(dims), kron(a.matrix(), b.matrix()));
}

/// <psi|rho|psi>, clamped onto [0, 1] only when within tolerance of the edge.
template <typename Real>
Real fidelity_pure(const PureState<Real>& psi, const DensityMatrix<Real>& rho) {
  if (psi.dims() != rho.dims()) throw DomainError("fidelity_pure: dimension mismatch");
  const auto& v = psi.amplitudes();
  const Real f = std::real(v.dot(rho.matrix() * v));
  if (f < Real(0) && f > -Real(tol::state)) return Real(0);
  if (f > Real(1) && f < Real(1) + Real(tol::state)) return Real(1);
  return f;
}

}  // namespace qclone
