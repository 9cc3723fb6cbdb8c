#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "cmvweyl/cmv_matrix.hpp"
#include "cmvweyl/errors.hpp"
#include "cmvweyl/spectral.hpp"

using namespace cmv;

namespace {

// Interior five-diagonal pattern of the CMV matrix in terms of the
// coefficients: odd rows reach two columns right, even rows two left, and
// the diagonal at site k is -conj(alpha_k) alpha_{k+1}.
Complex expected_entry(const VerblunskySequence& s, int j, int k) {
  auto rho = [&](int i) { return derive_coefficients(s.at(i)).rho; };
  const bool j_odd = ((j % 2) + 2) % 2 == 1;
  if (j_odd) {
    if (k == j - 1) return -s.at(j + 1) * rho(j);
    if (k == j) return -std::conj(s.at(j)) * s.at(j + 1);
    if (k == j + 1) return -s.at(j + 2) * rho(j + 1);
    if (k == j + 2) return rho(j + 1) * rho(j + 2);
  } else {
    if (k == j - 2) return rho(j - 1) * rho(j);
    if (k == j - 1) return std::conj(s.at(j - 1)) * rho(j);
    if (k == j) return -std::conj(s.at(j)) * s.at(j + 1);
    if (k == j + 1) return std::conj(s.at(j)) * rho(j + 1);
  }
  return {0.0, 0.0};
}

}  // namespace

TEST_CASE("free finite CMV matrix is unitary and five-diagonal") {
  const auto s = VerblunskySequence::constant(Complex(0.0), -1, 11);
  const auto u = build_finite_cmv(s, 0, 9, 0.0, 0.0);
  CHECK(u.size() == 10);
  CHECK(u.unitarity_residual() < 1e-13);
  CHECK(u.band_violation() == 0.0);
}

TEST_CASE("interior entries match the five-diagonal coefficient pattern") {
  const auto s = VerblunskySequence::random(3, 0.85, -20, 20);
  const auto u = build_finite_cmv(s, -12, 12, 0.3, 1.1);
  for (int j = -9; j <= 9; ++j)
    for (int k = -9; k <= 9; ++k)
      CHECK(std::abs(u.mat(u.row_of(j), u.row_of(k)) -
                     expected_entry(s, j, k)) < 1e-14);
}

TEST_CASE("factorization and transpose identity") {
  const auto s = VerblunskySequence::random(5, 0.9, -16, 16);
  for (int k_lo : {-7, -6}) {
    const auto u = build_finite_cmv(s, k_lo, k_lo + 13, 0.2, 2.5);
    CHECK((u.mat - u.v_factor * u.w_factor).cwiseAbs().maxCoeff() < 1e-14);
    // theta blocks are symmetric, so (VW)^T = WV
    const Eigen::MatrixXcd wv = u.w_factor * u.v_factor;
    CHECK((u.mat.transpose() - wv).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(u.unitarity_residual() < 1e-12);
  }
}

TEST_CASE("eigenvalues of built operators lie on the unit circle") {
  const auto s = VerblunskySequence::random(9, 0.95, -2, 34);
  const auto u = build_finite_cmv(s, 0, 31, 0.0, 1.0);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(u.mat);
  for (int j = 0; j < u.size(); ++j)
    CHECK(std::abs(std::abs(eig.eigenvalues()(j)) - 1.0) < 1e-12);
}

TEST_CASE("unit-modulus interior coefficient splits the operator") {
  auto s = VerblunskySequence::random(11, 0.8, -10, 14);
  const int split = 3;
  s.set_boundary(split, 0.9);
  const auto u = build_finite_cmv(s, -6, 9, 0.0, 0.0);
  for (int j = -6; j <= 9; ++j) {
    for (int k = -6; k <= 9; ++k) {
      const bool crosses =
          (j < split && k >= split) || (k < split && j >= split);
      if (crosses)
        CHECK(std::abs(u.mat(u.row_of(j), u.row_of(k))) < 1e-14);
    }
  }
}

TEST_CASE("half lattice truncations for both sides") {
  const auto s = VerblunskySequence::random(2, 0.7, -30, 30);
  const auto up = build_half_lattice(s, 0, 0.0, 4, Side::plus);
  CHECK(up.offset == 0);
  CHECK(up.size() == 4);
  CHECK(up.unitarity_residual() < 1e-13);
  CHECK(up.band_violation() == 0.0);

  const auto um = build_half_lattice(s, 0, 0.0, 6, Side::minus);
  CHECK(um.offset == -5);
  CHECK(um.site(um.size() - 1) == 0);
  CHECK(um.unitarity_residual() < 1e-13);

  CHECK_THROWS_AS(build_half_lattice(s, 0, 0.0, 1, Side::plus), SizeError);
}

TEST_CASE("far-end phase does not disturb near-end moments") {
  // weak convergence proxy: moments of the spectral measure at the
  // reference site agree across truncation sizes and far phases
  const auto s = VerblunskySequence::random(21, 0.8, -5, 260);
  const auto u50 = build_half_lattice(s, 0, 0.0, 50, Side::plus, 0.4);
  const auto u200 = build_half_lattice(s, 0, 0.0, 200, Side::plus, 2.9);
  const auto mu50 = measure_from_operator(u50, 0);
  const auto mu200 = measure_from_operator(u200, 0);
  for (int j = 1; j <= 5; ++j)
    CHECK(std::abs(mu50.moment(j) - mu200.moment(j)) < 1e-2);
}

TEST_CASE("interval and coefficient validation") {
  const auto s = VerblunskySequence::random(1, 0.5, -4, 4);
  CHECK_THROWS_AS(build_finite_cmv(s, 2, 2, 0.0, 0.0), SizeError);
  CHECK_THROWS_AS(build_finite_cmv(s, -20, 20, 0.0, 0.0), DomainError);
}
