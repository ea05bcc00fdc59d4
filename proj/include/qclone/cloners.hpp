// Universal quantum cloning machines as isometries into
// original (x) copy (x) machine, applied to three-qubit states either qubit by
// qubit (local) or to the whole 8-dimensional state at once (non-local).

#pragma once

#include "qclone/entanglement.hpp"
#include "qclone/linalg.hpp"

#include <functional>
#include <stdexcept>
#include <utility>

namespace qclone {

template <typename Real>
struct CloningIsometry {
  Index in_dim = 0;
  std::array<Index, 3> out_dims{};  // original, copy, machine
  CMatrix<Real> matrix;             // (original*copy*machine) x in_dim

  Dims out_dim_list() const { return {out_dims[0], out_dims[1], out_dims[2]}; }

  /// max |V^dagger V - I|
  Real isometry_residual() const {
    return (matrix.adjoint() * matrix - CMatrix<Real>::Identity(in_dim, in_dim))
        .cwiseAbs()
        .maxCoeff();
  }
};

/// Reduced states on the original and copy sides of a cloning run.
template <typename Real>
struct CloneOutput {
  DensityMatrix<Real> originals;
  DensityMatrix<Real> copies;
  Index joint_dim = 0;

  /// The copies side is the canonical output.
  const DensityMatrix<Real>& state() const { return copies; }
};

/// Single-qubit symmetric cloner. Machine basis: index 0 = up, 1 = down.
///   |0> -> sqrt(2/3)|00>|up>   + sqrt(1/3)|+>|down>
///   |1> -> sqrt(2/3)|11>|down> + sqrt(1/3)|+>|up>
/// with |+> = (|10> + |01>)/sqrt(2).
template <typename Real = double>
CloningIsometry<Real> local_isometry() {
  const Real a = std::sqrt(Real(2) / 3);
  const Real b = std::sqrt(Real(1) / 6);
  auto at = [](Index orig, Index copy, Index mach) { return 4 * orig + 2 * copy + mach; };
  constexpr Index up = 0, down = 1;

  CloningIsometry<Real> v;
  v.in_dim = 2;
  v.out_dims = {2, 2, 2};
  v.matrix = CMatrix<Real>::Zero(8, 2);
  v.matrix(at(0, 0, up), 0) = a;
  v.matrix(at(1, 0, down), 0) = b;
  v.matrix(at(0, 1, down), 0) = b;
  v.matrix(at(1, 1, down), 1) = a;
  v.matrix(at(1, 0, up), 1) = b;
  v.matrix(at(0, 1, up), 1) = b;
  return v;
}

/// Symmetric cloner for an n-level system with an n-level machine:
///   |i> -> c|i>|i>|X_i> + d sum_{j != i} (|i>|j> + |j>|i>)|X_j>
/// c^2 = 2/(n+1), d^2 = 1/(2(n+1)).
template <typename Real = double>
CloningIsometry<Real> nonlocal_isometry(Index n) {
  if (n < 2) throw DomainError("nonlocal_isometry: dimension must be at least 2");
  const Real c = std::sqrt(Real(2) / Real(n + 1));
  const Real d = std::sqrt(Real(1) / Real(2 * (n + 1)));
  auto at = [n](Index orig, Index copy, Index mach) { return (orig * n + copy) * n + mach; };

  CloningIsometry<Real> v;
  v.in_dim = n;
  v.out_dims = {n, n, n};
  v.matrix = CMatrix<Real>::Zero(n * n * n, n);
  for (Index i = 0; i < n; ++i) {
    v.matrix(at(i, i, i), i) = c;
    for (Index j = 0; j < n; ++j) {
      if (j == i) continue;
      v.matrix(at(i, j, j), i) += d;
      v.matrix(at(j, i, j), i) += d;
    }
  }
  return v;
}

namespace detail {

template <typename Real>
void require_valid_three_qubit(const DensityMatrix<Real>& rho) {
  if (rho.dims() != Dims{2, 2, 2}) throw DomainError("cloning expects a three-qubit state");
}

}  // namespace detail

template <typename Real>
CloneOutput<Real> apply_local_cloning(const DensityMatrix<Real>& rho_in) {
  detail::require_valid_three_qubit(rho_in);
  const auto v = local_isometry<Real>();
  // Wiring (orig1, copy1, mach1, orig2, copy2, mach2, orig3, copy3, mach3).
  const CMatrix<Real> total = kron(kron(v.matrix, v.matrix), v.matrix);
  const Dims wired(9, 2);
  const Dims orig{0, 3, 6};
  const Dims copy{1, 4, 7};
  return {DensityMatrix<Real>({2, 2, 2}, partial_trace_of_image(total, wired, rho_in.matrix(), orig)),
          DensityMatrix<Real>({2, 2, 2}, partial_trace_of_image(total, wired, rho_in.matrix(), copy)),
          total.rows()};
}

template <typename Real>
CloneOutput<Real> apply_nonlocal_cloning(const DensityMatrix<Real>& rho_in) {
  detail::require_valid_three_qubit(rho_in);
  const auto v = nonlocal_isometry<Real>(8);
  const Dims dims = v.out_dim_list();
  const Dims orig{0};
  const Dims copy{1};
  return {DensityMatrix<Real>({2, 2, 2}, partial_trace_of_image(v.matrix, dims, rho_in.matrix(), orig)),
          DensityMatrix<Real>({2, 2, 2}, partial_trace_of_image(v.matrix, dims, rho_in.matrix(), copy)),
          v.matrix.rows()};
}

namespace detail {

// Builds the shared "two corners + six single-excitation diagonals" pattern.
template <typename Real>
DensityMatrix<Real> corner_pattern(Real p000, Real p111, Real coherence,
                                   Real one_excitation, Real two_excitations) {
  CMatrix<Real> m = CMatrix<Real>::Zero(8, 8);
  m(0, 0) = p000;
  m(7, 7) = p111;
  m(0, 7) = m(7, 0) = coherence;
  for (Index k : {1, 2, 4}) m(k, k) = one_excitation;     // |001>, |010>, |100>
  for (Index k : {3, 5, 6}) m(k, k) = two_excitations;    // |011>, |101>, |110>
  return DensityMatrix<Real>({2, 2, 2}, std::move(m));
}

}  // namespace detail

/// Local-cloner output for input_state(alpha), written out entry by entry.
template <typename Real = double>
DensityMatrix<Real> closed_form_local_output(Real alpha) {
  const Real c2 = std::pow(std::cos(alpha), 2);
  const Real s2 = std::pow(std::sin(alpha), 2);
  const Real sc = std::sin(alpha) * std::cos(alpha);
  return detail::corner_pattern<Real>((1 + 124 * c2) / 216, (1 + 124 * s2) / 216,
                                      8 * sc / 27, (5 + 20 * c2) / 216, (5 + 20 * s2) / 216);
}

/// Non-local-cloner output for input_state(alpha).
template <typename Real = double>
DensityMatrix<Real> closed_form_nonlocal_output(Real alpha) {
  const Real c2 = std::pow(std::cos(alpha), 2);
  const Real s2 = std::pow(std::sin(alpha), 2);
  const Real sc = std::sin(alpha) * std::cos(alpha);
  return detail::corner_pattern<Real>((1 + 10 * c2) / 18, (1 + 10 * s2) / 18, 5 * sc / 9,
                                      Real(1) / 18, Real(1) / 18);
}

/// E3 and E2 of the local-cloner output as functions of alpha.
template <typename Real = double>
MeasurePair<Real> closed_form_local_measures(Real alpha) {
  const Real s2 = std::pow(std::sin(2 * alpha), 2);
  const Real c2 = std::pow(std::cos(2 * alpha), 2);
  return {Real(64) / 729 * s2 * (1 + s2 * c2), Real(16) / 243 * s2 * s2};
}

/// E3 and E2 of the non-local-cloner output as functions of alpha.
template <typename Real = double>
MeasurePair<Real> closed_form_nonlocal_measures(Real alpha) {
  const Real s2 = std::pow(std::sin(2 * alpha), 2);
  const Real c2 = std::pow(std::cos(2 * alpha), 2);
  const Real shrink = 1 - Real(25) / 27 * c2;
  const Real e2_base = 1 - Real(5) / 9 * c2;
  return {Real(25) / 81 * s2 + Real(25) / 729 * shrink * shrink * c2,
          Real(25) / 243 * e2_base * e2_base};
}

template <typename Real = double>
Real fidelity_local(Real alpha) {
  const Real sc = std::sin(alpha) * std::cos(alpha);
  return Real(125) / 216 - Real(15) / 27 * sc * sc;
}

template <typename Real = double>
Real fidelity_nonlocal() {
  return Real(11) / 18;
}

/// Sign changes of `f` on (lo, hi), located on a uniform scan and refined by
/// bisection until the bracket is narrower than `width`.
template <typename Real>
std::vector<Real> bisect_roots(const std::function<Real(Real)>& f, Real lo, Real hi,
                               int scan_intervals, Real width) {
  std::vector<Real> roots;
  Real x0 = lo;
  Real f0 = f(x0);
  for (int k = 1; k <= scan_intervals; ++k) {
    const Real x1 = lo + (hi - lo) * Real(k) / Real(scan_intervals);
    const Real f1 = f(x1);
    if ((f0 < 0) != (f1 < 0)) {
      Real a = x0, b = x1, fa = f0;
      while (b - a > width) {
        const Real mid = (a + b) / 2;
        const Real fm = f(mid);
        if ((fm < 0) == (fa < 0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      roots.push_back((a + b) / 2);
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

/// E2 of the non-local output minus E2 of the input, against cos(alpha).
template <typename Real = double>
Real e2_gain_nonlocal(Real cos_alpha) {
  const Real alpha = std::acos(cos_alpha);
  return closed_form_nonlocal_measures(alpha).e2 - closed_form_input_measures(alpha).e2;
}

/// The two values of cos(alpha) in (0, 1) where non-local cloning stops
/// amplifying E2, ascending.
template <typename Real = double>
std::pair<Real, Real> find_e2_crossings(
    const std::function<Real(Real)>& gain = [](Real x) { return e2_gain_nonlocal(x); }) {
  const auto roots = bisect_roots<Real>(gain, Real(0), Real(1), 1000, Real(1e-10));
  if (roots.size() != 2) {
    throw std::logic_error("find_e2_crossings: expected exactly two bracketed roots");
  }
  return {roots[0], roots[1]};
}

}  // namespace qclone
