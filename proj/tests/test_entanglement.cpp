#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qclone/cloners.hpp"
#include "qclone/entanglement.hpp"
#include "qclone/random.hpp"

#include <numbers>

using namespace qclone;
using C = std::complex<double>;
using Mat = CMatrix<double>;
using Rho = DensityMatrix<double>;

namespace {

constexpr double kPi = std::numbers::pi;

// Tr(rho * P0 (x) P1 (x) P2) by summing matrix elements bit by bit; shares
// nothing with the kron-based path. axis -1 means identity.
double brute_expectation(const Rho& rho, std::array<int, 3> axes) {
  auto element = [](int axis, int row, int col) -> C {
    switch (axis) {
      case -1: return row == col ? 1.0 : 0.0;
      case 0: return row != col ? 1.0 : 0.0;
      case 1: return row == col ? C(0) : (row == 0 ? C(0, -1) : C(0, 1));
      default: return row == col ? (row == 0 ? -1.0 : 1.0) : 0.0;
    }
  };
  C acc = 0;
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      C op = 1;
      for (int q = 0; q < 3; ++q) {
        const int shift = 2 - q;
        op *= element(axes[q], (b >> shift) & 1, (a >> shift) & 1);
      }
      acc += rho.matrix()(a, b) * op;
    }
  }
  return acc.real();
}

Rho input_rho(double alpha) { return Rho::from_pure(input_state(alpha)); }

Rho conjugate(const Rho& rho, const Mat& u) {
  const Mat m = u * rho.matrix() * u.adjoint();
  return Rho({2, 2, 2}, (m + m.adjoint()) / C(2));
}

// Checks every entry of m3 against `expected`, which lists the non-zero ones.
void check_m3(const Tensor3<double>& m3, const std::vector<std::pair<std::array<int, 3>, double>>& expected) {
  Tensor3<double> want;
  for (const auto& [idx, v] : expected) want(idx[0], idx[1], idx[2]) = v;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) CHECK(std::abs(m3(i, j, k) - want(i, j, k)) <= tol::state);
}

}  // namespace

TEST_CASE("pauli_operator") {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const C t = (pauli_operator(i) * pauli_operator(j)).trace();
      CHECK(std::abs(t - C(i == j ? 2.0 : 0.0)) <= tol::algebraic);
    }
  }
  // <0|sigma_z|0> = -1 is what makes lambda_3 = -cos(2 alpha) for the input state.
  CHECK(pauli_operator(2)(0, 0) == C(-1));
  Mat zero = Mat::Zero(2, 1);
  zero(0, 0) = 1;
  const Mat flipped = pauli_operator(0) * zero;
  CHECK(flipped(1, 0) == C(1));
  CHECK(flipped(0, 0) == C(0));
  CHECK_THROWS_AS(pauli_operator(3), DomainError);
  CHECK_THROWS_AS(pauli_operator(-1), DomainError);
}

TEST_CASE("kron-based expectations agree with the brute-force oracle") {
  StateSampler<double> s(101);
  for (int n = 0; n < 10; ++n) {
    const auto rho = s.three_qubit_mixed();
    for (int q = 0; q < 3; ++q) {
      const auto l = coherence_vector(rho, q);
      for (int i = 0; i < 3; ++i) {
        std::array<int, 3> axes{-1, -1, -1};
        axes[q] = i;
        CHECK(std::abs(l.lambda(i) - brute_expectation(rho, axes)) <= tol::state);
      }
    }
    const auto k2 = correlation2(rho, 0, 2);
    const auto k3 = correlation3(rho);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        CHECK(std::abs(k2.k(i, j) - brute_expectation(rho, {i, -1, j})) <= tol::state);
        for (int k = 0; k < 3; ++k) {
          CHECK(std::abs(k3.k(i, j, k) - brute_expectation(rho, {i, j, k})) <= tol::state);
        }
      }
    }
  }
}

TEST_CASE("input state") {
  CHECK(input_state(0.0).amplitudes()(0) == C(1));
  const auto ghz = input_state(kPi / 4);
  CHECK(std::abs(ghz.amplitudes()(0) - ghz.amplitudes()(7)) <= tol::algebraic);
  for (double a = -3; a < 3; a += 0.37) {
    CHECK(std::abs(input_state(a).amplitudes().norm() - 1.0) <= tol::state);
  }
}

TEST_CASE("input-state tensor components") {
  for (double a : {0.1, 0.4, kPi / 4, 1.2}) {
    const double s = std::sin(2 * a), c = std::cos(2 * a);
    const auto r = measures(input_rho(a));
    for (int q = 0; q < 3; ++q) {
      CHECK(std::abs(r.lambdas[q].lambda(0)) <= tol::state);
      CHECK(std::abs(r.lambdas[q].lambda(1)) <= tol::state);
      CHECK(std::abs(r.lambdas[q].lambda(2) + c) <= tol::state);
    }
    for (int p = 0; p < 3; ++p) {
      CHECK(std::abs(r.k2[p].k(2, 2) - 1.0) <= tol::state);
      Matrix3<double> m2 = Matrix3<double>::Zero();
      m2(2, 2) = s * s;
      CHECK((r.tensors.m2[p] - m2).cwiseAbs().maxCoeff() <= tol::state);
    }
    CHECK(std::abs(r.k3.k(0, 0, 0) - s) <= tol::state);
    CHECK(std::abs(r.k3.k(2, 2, 2) + c) <= tol::state);
    CHECK(std::abs(r.k3.k(0, 1, 1) + s) <= tol::state);
    check_m3(r.tensors.m3, {{{0, 0, 0}, s},
                            {{2, 2, 2}, 2 * s * s * c},
                            {{0, 1, 1}, -s},
                            {{1, 0, 1}, -s},
                            {{1, 1, 0}, -s}});
  }
}

TEST_CASE("a flipped sigma_z sign is visible in lambda_3") {
  const double a = 0.3;
  const auto rho = input_rho(a);
  const Mat id = Mat::Identity(2, 2);
  const Mat wrong_z = -pauli_operator(2);
  const double residual = std::abs(expectation(rho, wrong_z, id, id) - (-std::cos(2 * a)));
  CHECK(residual == doctest::Approx(2 * std::abs(std::cos(2 * a))).epsilon(1e-12));
}

TEST_CASE("closed-form input measures") {
  const auto ghz = closed_form_input_measures(kPi / 4);
  CHECK(ghz.e3 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ghz.e2 == doctest::Approx(1.0 / 3).epsilon(1e-14));
  const auto zero = closed_form_input_measures(0.0);
  CHECK(zero.e3 == 0.0);
  CHECK(zero.e2 == 0.0);

  // sin^2(2a) = cos^2(2a) = 1/2 at a = pi/8: E3 = (1/2)(1 + 1/4), E2 = (1/4)/3.
  const auto eighth = closed_form_input_measures(kPi / 8);
  CHECK(std::abs(eighth.e3 - 0.625) <= tol::state);
  CHECK(std::abs(eighth.e2 - 1.0 / 12) <= tol::state);
  const auto traced = measures(input_rho(kPi / 8));
  CHECK(std::abs(traced.e3 - 0.625) <= tol::state);
  CHECK(std::abs(traced.e2[0] - 1.0 / 12) <= tol::state);
}

TEST_CASE("trace-based measures match the closed forms on 201 angles") {
  for (int k = 0; k <= 200; ++k) {
    const double a = (kPi / 2) * k / 200;
    const auto r = measures(input_rho(a));
    const auto cf = closed_form_input_measures(a);
    CHECK(std::abs(r.e3 - cf.e3) <= tol::state);
    for (double e2 : r.e2) CHECK(std::abs(e2 - cf.e2) <= tol::state);
    // The input family is symmetric under qubit exchange.
    CHECK(std::abs(r.e2[0] - r.e2[1]) <= tol::state);
    CHECK(std::abs(r.e2[0] - r.e2[2]) <= tol::state);
  }
}

TEST_CASE("measures of simple states") {
  CVector<double> v = CVector<double>::Zero(8);
  v(0) = 1;
  const auto r = measures(Rho::from_pure(PureState<double>({2, 2, 2}, v)));
  CHECK(std::abs(r.e3) <= tol::state);
  for (double e2 : r.e2) CHECK(std::abs(e2) <= tol::state);

  const auto mixed = measures(Rho::maximally_mixed({2, 2, 2}));
  CHECK(mixed.lambdas[0].lambda.norm() <= tol::state);
  CHECK(mixed.k3.k.max_abs() <= tol::state);
  CHECK(std::abs(mixed.e3) <= tol::state);

  CHECK_THROWS_AS(measures(Rho::maximally_mixed({2, 4})), DomainError);
  CHECK_THROWS_AS(correlation2(input_rho(0.1), 1, 1), DomainError);
  CHECK_THROWS_AS(correlation2(input_rho(0.1), 2, 1), DomainError);
  CHECK_THROWS_AS(coherence_vector(input_rho(0.1), 3), DomainError);
}

TEST_CASE("M tensors are exactly the K - lambda combinations") {
  StateSampler<double> s(103);
  const auto rho = s.three_qubit_mixed();
  const auto r = measures(rho);
  const auto& l = r.lambdas;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(std::abs(r.tensors.m2[0](i, j) - (r.k2[0].k(i, j) - l[0].lambda(i) * l[1].lambda(j))) <= tol::state);
      for (int k = 0; k < 3; ++k) {
        const double expect = r.k3.k(i, j, k) - l[0].lambda(i) * r.tensors.m2[1](j, k) -
                              l[1].lambda(j) * r.tensors.m2[2](i, k) -
                              l[2].lambda(k) * r.tensors.m2[0](i, j) -
                              l[0].lambda(i) * l[1].lambda(j) * l[2].lambda(k);
        CHECK(std::abs(r.tensors.m3(i, j, k) - expect) <= tol::state);
      }
    }
}

TEST_CASE("property: local-unitary invariance") {
  StateSampler<double> s(107);
  for (int n = 0; n < 50; ++n) {
    const auto rho = n % 2 == 0 ? s.three_qubit_mixed() : Rho::from_pure(s.pure({2, 2, 2}));
    const Mat u = kron(kron(s.unitary(2), s.unitary(2)), s.unitary(2));
    const auto before = measures(rho);
    const auto after = measures(conjugate(rho, u));
    CHECK(std::abs(before.e3 - after.e3) <= tol::spectral);
    for (int p = 0; p < 3; ++p) CHECK(std::abs(before.e2[p] - after.e2[p]) <= tol::spectral);
  }
}

TEST_CASE("property: product states carry no entanglement") {
  StateSampler<double> s(109);
  for (int n = 0; n < 100; ++n) {
    const auto r = measures(s.three_qubit_product());
    CHECK(r.tensors.m3.max_abs() <= tol::state);
    CHECK(std::abs(r.e3) <= tol::state);
    for (double e2 : r.e2) CHECK(std::abs(e2) <= tol::state);
  }
}

TEST_CASE("property: measures stay in [0, 1]") {
  StateSampler<double> s(113);
  for (int n = 0; n < 1000; ++n) {
    const auto rho = n % 2 == 0 ? s.three_qubit_mixed() : Rho::from_pure(s.pure({2, 2, 2}));
    const auto r = measures(rho);
    CHECK(r.e3 >= 0.0);
    CHECK(r.e3 <= 1.0 + tol::spectral);
    for (double e2 : r.e2) {
      CHECK(e2 >= 0.0);
      CHECK(e2 <= 1.0 + tol::spectral);
    }
    for (const auto& l : r.lambdas) CHECK(l.lambda.norm() <= 1.0 + tol::state);
  }
}
