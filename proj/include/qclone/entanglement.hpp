// Coherence vectors, correlation tensors and the E3 / E2 entanglement
// measures of a three-qubit density matrix.
//
// Pauli expectations use sigma_z = diag(-1, +1) in the (|0>, |1>) basis, so
// a qubit in |0> has coherence vector (0, 0, -1). Qubit, pair and Pauli
// indices are all 0-based.

#pragma once

#include "qclone/linalg.hpp"

#include <array>
#include <numbers>

namespace qclone {

inline constexpr int kQubits = 3;

/// Qubit pairs in report order: (0,1), (1,2), (0,2).
inline constexpr std::array<std::array<int, 2>, 3> kPairs{{{0, 1}, {1, 2}, {0, 2}}};

template <typename Real>
using Vector3 = Eigen::Matrix<Real, 3, 1>;
template <typename Real>
using Matrix3 = Eigen::Matrix<Real, 3, 3>;

/// Real rank-3 tensor over three Pauli axes.
template <typename Real>
class Tensor3 {
 public:
  Real& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
  Real operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }

  Real squared_norm() const {
    Real s{0};
    for (Real v : data_) s += v * v;
    return s;
  }
  Real max_abs() const {
    Real m{0};
    for (Real v : data_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  static constexpr std::size_t index(int i, int j, int k) {
    return static_cast<std::size_t>(9 * i + 3 * j + k);
  }
  std::array<Real, 27> data_{};
};

template <typename Real>
struct CoherenceVector {
  int qubit = 0;
  Vector3<Real> lambda = Vector3<Real>::Zero();
};

template <typename Real>
struct PairCorrelation {
  std::array<int, 2> pair{0, 1};
  Matrix3<Real> k = Matrix3<Real>::Zero();
};

template <typename Real>
struct TripleCorrelation {
  Tensor3<Real> k;
};

/// M tensors: m2[p] belongs to kPairs[p].
template <typename Real>
struct EntanglementTensors {
  std::array<Matrix3<Real>, 3> m2;
  Tensor3<Real> m3;
};

template <typename Real>
struct EntanglementReport {
  Real e3 = 0;
  std::array<Real, 3> e2{};  // indexed like kPairs
  EntanglementTensors<Real> tensors;
  std::array<CoherenceVector<Real>, 3> lambdas;
  std::array<PairCorrelation<Real>, 3> k2;
  TripleCorrelation<Real> k3;
};

/// sigma_x, sigma_y, sigma_z for axis 0, 1, 2.
template <typename Real = double>
CMatrix<Real> pauli_operator(int axis) {
  using C = Complex<Real>;
  CMatrix<Real> s(2, 2);
  switch (axis) {
    case 0:
      s << C(0), C(1), C(1), C(0);
      break;
    case 1:
      s << C(0), C(0, -1), C(0, 1), C(0);
      break;
    case 2:
      s << C(-1), C(0), C(0), C(1);
      break;
    default:
      throw DomainError("pauli_operator: axis must be 0, 1 or 2");
  }
  return s;
}

/// Tr(rho * (f0 (x) f1 (x) f2)), taken as a real number.
template <typename Real>
Real expectation(const DensityMatrix<Real>& rho, const CMatrix<Real>& f0,
                 const CMatrix<Real>& f1, const CMatrix<Real>& f2) {
  const CMatrix<Real> op = kron(kron(f0, f1), f2);
  return std::real((rho.matrix() * op).trace());
}

namespace detail {

template <typename Real>
void require_three_qubits(const DensityMatrix<Real>& rho) {
  if (rho.dims() != Dims{2, 2, 2}) throw DomainError("expected a three-qubit state");
}

template <typename Real>
std::array<CMatrix<Real>, 3> pauli_triple() {
  return {pauli_operator<Real>(0), pauli_operator<Real>(1), pauli_operator<Real>(2)};
}

}  // namespace detail

template <typename Real>
CoherenceVector<Real> coherence_vector(const DensityMatrix<Real>& rho, int qubit) {
  detail::require_three_qubits(rho);
  if (qubit < 0 || qubit >= kQubits) throw DomainError("coherence_vector: bad qubit index");
  const CMatrix<Real> id = CMatrix<Real>::Identity(2, 2);
  const auto sigma = detail::pauli_triple<Real>();
  CoherenceVector<Real> out;
  out.qubit = qubit;
  for (int i = 0; i < 3; ++i) {
    std::array<CMatrix<Real>, 3> f{id, id, id};
    f[qubit] = sigma[i];
    out.lambda(i) = expectation(rho, f[0], f[1], f[2]);
  }
  return out;
}

template <typename Real>
PairCorrelation<Real> correlation2(const DensityMatrix<Real>& rho, int m, int n) {
  detail::require_three_qubits(rho);
  if (m < 0 || n >= kQubits || m >= n) throw DomainError("correlation2: need 0 <= m < n <= 2");
  const CMatrix<Real> id = CMatrix<Real>::Identity(2, 2);
  const auto sigma = detail::pauli_triple<Real>();
  PairCorrelation<Real> out;
  out.pair = {m, n};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      std::array<CMatrix<Real>, 3> f{id, id, id};
      f[m] = sigma[i];
      f[n] = sigma[j];
      out.k(i, j) = expectation(rho, f[0], f[1], f[2]);
    }
  }
  return out;
}

template <typename Real>
TripleCorrelation<Real> correlation3(const DensityMatrix<Real>& rho) {
  detail::require_three_qubits(rho);
  const auto sigma = detail::pauli_triple<Real>();
  TripleCorrelation<Real> out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) out.k(i, j, k) = expectation(rho, sigma[i], sigma[j], sigma[k]);
    }
  }
  return out;
}

/// M2 and M3 from precomputed coherence vectors and correlations.
template <typename Real>
EntanglementTensors<Real> entanglement_tensors(
    const std::array<CoherenceVector<Real>, 3>& lambdas,
    const std::array<PairCorrelation<Real>, 3>& k2, const TripleCorrelation<Real>& k3) {
  EntanglementTensors<Real> t;
  for (std::size_t p = 0; p < kPairs.size(); ++p) {
    const auto [m, n] = kPairs[p];
    t.m2[p] = k2[p].k - lambdas[m].lambda * lambdas[n].lambda.transpose();
  }
  const auto& l1 = lambdas[0].lambda;
  const auto& l2 = lambdas[1].lambda;
  const auto& l3 = lambdas[2].lambda;
  const auto& m12 = t.m2[0];
  const auto& m23 = t.m2[1];
  const auto& m13 = t.m2[2];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        t.m3(i, j, k) = k3.k(i, j, k) - l1(i) * m23(j, k) - l2(j) * m13(i, k) -
                        l3(k) * m12(i, j) - l1(i) * l2(j) * l3(k);
      }
    }
  }
  return t;
}

template <typename Real>
EntanglementTensors<Real> entanglement_tensors(const DensityMatrix<Real>& rho) {
  detail::require_three_qubits(rho);
  std::array<CoherenceVector<Real>, 3> lambdas;
  for (int q = 0; q < kQubits; ++q) lambdas[q] = coherence_vector(rho, q);
  std::array<PairCorrelation<Real>, 3> k2;
  for (std::size_t p = 0; p < kPairs.size(); ++p) k2[p] = correlation2(rho, kPairs[p][0], kPairs[p][1]);
  return entanglement_tensors(lambdas, k2, correlation3(rho));
}

/// E3 = (1/4) sum M3^2 and E2(m,n) = (1/3) sum M2(m,n)^2, with every
/// intermediate tensor kept in the report.
template <typename Real>
EntanglementReport<Real> measures(const DensityMatrix<Real>& rho) {
  detail::require_three_qubits(rho);
  EntanglementReport<Real> r;
  for (int q = 0; q < kQubits; ++q) r.lambdas[q] = coherence_vector(rho, q);
  for (std::size_t p = 0; p < kPairs.size(); ++p) {
    r.k2[p] = correlation2(rho, kPairs[p][0], kPairs[p][1]);
  }
  r.k3 = correlation3(rho);
  r.tensors = entanglement_tensors(r.lambdas, r.k2, r.k3);
  r.e3 = r.tensors.m3.squared_norm() / Real(4);
  for (std::size_t p = 0; p < kPairs.size(); ++p) {
    r.e2[p] = r.tensors.m2[p].squaredNorm() / Real(3);
  }
  return r;
}

/// cos(alpha)|000> + sin(alpha)|111>
template <typename Real = double>
PureState<Real> input_state(Real alpha) {
  CVector<Real> v = CVector<Real>::Zero(8);
  v(0) = std::cos(alpha);
  v(7) = std::sin(alpha);
  return PureState<Real>({2, 2, 2}, std::move(v));
}

template <typename Real>
struct MeasurePair {
  Real e3;
  Real e2;
};

/// Closed-form E3 and E2 of input_state(alpha).
template <typename Real = double>
MeasurePair<Real> closed_form_input_measures(Real alpha) {
  const Real s2 = std::pow(std::sin(2 * alpha), 2);
  const Real c2 = std::pow(std::cos(2 * alpha), 2);
  return {s2 * (1 + s2 * c2), s2 * s2 / 3};
}

}  // namespace qclone
