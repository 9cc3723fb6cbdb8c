#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cmvweyl/errors.hpp"
#include "cmvweyl/weyl.hpp"
#include "test_util.hpp"

using namespace cmv;

namespace {

MFunctionContext make_ctx(std::uint64_t seed, double cap, int k0, int n) {
  const auto seq =
      VerblunskySequence::random(seed, cap, k0 - n - 2, k0 + n + 2);
  return MFunctionContext(seq, k0, n);
}

}  // namespace

TEST_CASE("m functions are +-1 at the origin") {
  for (int k0 : {0, 1, -4}) {
    const auto ctx = make_ctx(31, 0.9, k0, 48);
    CHECK(std::abs(m_function(ctx, Complex(0.0), Side::plus) - 1.0) < 1e-13);
    CHECK(std::abs(m_function(ctx, Complex(0.0), Side::minus) + 1.0) < 1e-13);
    CHECK(std::abs(big_M(ctx, Complex(0.0), Side::plus) - 1.0) < 1e-13);
  }
  const auto ctx = make_ctx(31, 0.9, 0, 16);
  CHECK_THROWS_AS(m_function(ctx, std::polar(1.0, 0.3), Side::plus),
                  DomainError);
}

TEST_CASE("lebesgue discretization gives m close to one") {
  const auto mu = CircleMeasure::lebesgue_atoms(256);
  for (const Complex& z : cmvtest::sample_disk(5, 20, 0.9))
    CHECK(std::abs(mu.herglotz(z) - 1.0) < 1e-2);
}

TEST_CASE("free coefficients give constant Weyl functions") {
  const auto seq = VerblunskySequence::constant(Complex(0.0), -80, 80);
  for (int k0 : {0, 1}) {
    const MFunctionContext ctx(seq, k0, 64);
    for (const Complex& z : cmvtest::sample_disk(9, 12, 0.6)) {
      CHECK(std::abs(big_M(ctx, z, Side::plus) - 1.0) < 1e-12);
      CHECK(std::abs(big_M(ctx, z, Side::minus) + 1.0) < 1e-12);
    }
  }
}

TEST_CASE("M_minus at the origin is the Moebius image of alpha") {
  const auto seq = VerblunskySequence::constant(Complex(0.5), -80, 80);
  const MFunctionContext ctx(seq, 0, 64);
  CHECK(std::abs(big_M(ctx, Complex(0.0), Side::minus) - Complex(-3.0)) <
        1e-12);

  const auto seq2 = VerblunskySequence::random(13, 0.8, -80, 80);
  for (int k0 : {0, 3}) {
    const MFunctionContext c2(seq2, k0, 64);
    const Complex a = seq2.at(k0);
    CHECK(std::abs(big_M(c2, Complex(0.0), Side::minus) -
                   (a + 1.0) / (a - 1.0)) < 1e-12);
  }
}

TEST_CASE("herglotz symmetry across the unit circle") {
  const auto ctx = make_ctx(17, 0.85, 0, 64);
  for (const Complex& z : cmvtest::sample_disk(21, 15, 0.9)) {
    for (Side side : {Side::plus, Side::minus}) {
      const Complex inner = m_function(ctx, z, side);
      const Complex outer = m_function(ctx, 1.0 / std::conj(z), side);
      CHECK(std::abs(inner + std::conj(outer)) < 1e-12);
    }
  }
}

TEST_CASE("caratheodory sign conditions on the disk") {
  const auto ctx = make_ctx(23, 0.9, 1, 64);
  for (const Complex& z : cmvtest::sample_disk(100, 100, 0.95)) {
    CHECK(m_function(ctx, z, Side::plus).real() > 0.0);
    CHECK(m_function(ctx, z, Side::minus).real() < 0.0);
    CHECK(big_M(ctx, z, Side::plus).real() > 0.0);
    CHECK(big_M(ctx, z, Side::minus).real() < 0.0);
  }
}

TEST_CASE("hat M consistency through the Moebius step") {
  for (std::uint64_t seed : {13u, 29u}) {
    const auto ctx = make_ctx(seed, 0.85, 0, 64);
    const DerivedCoefficients& d = ctx.derived_at_k0();
    for (const Complex& z : cmvtest::sample_disk(40 + seed, 20, 0.9)) {
      for (Side side : {Side::plus, Side::minus}) {
        const Complex hatm = hat_M(ctx, z, side);
        const Complex recomposed =
            (d.a.real() + Complex(0.0, 1.0) * d.b.imag() * hatm) /
            (Complex(0.0, 1.0) * d.a.imag() + d.b.real() * hatm);
        CHECK(std::abs(big_M(ctx, z, side) - recomposed) < 1e-10);
      }
    }
  }
  // free case: the hat function collapses to the constant 1
  const auto free = VerblunskySequence::constant(Complex(0.0), -60, 60);
  const MFunctionContext fctx(free, 0, 48);
  CHECK(std::abs(hat_M(fctx, Complex(0.3, 0.2), Side::plus) - 1.0) < 1e-12);
}

TEST_CASE("riccati residuals along site sweeps") {
  const auto seq = VerblunskySequence::random(5, 0.85, -120, 120);
  const std::vector<Complex> zs = {Complex(0.3, -0.2), Complex(0.1, 0.45),
                                   Complex(-0.4, 0.1), Complex(2.2, 0.4),
                                   Complex(-0.8, 2.1)};
  for (const Complex& z : zs) {
    for (int k = -5; k <= 5; ++k) {
      const MFunctionContext prev(seq, k - 1, 96);
      const MFunctionContext cur(seq, k, 96);
      for (Side side : {Side::plus, Side::minus}) {
        const Complex m1 = big_M(prev, z, side);
        const Complex m2 = big_M(cur, z, side);
        CHECK(riccati_residual(seq, k, z, RiccatiMode::M, m1, m2) < 1e-9);
      }
      const Complex f1 = phi_transform(big_M(prev, z, Side::plus));
      const Complex f2 = phi_transform(big_M(cur, z, Side::plus));
      CHECK(riccati_residual(seq, k, z, RiccatiMode::Phi, f1, f2) < 1e-9);

      const Complex mm1 = big_M(prev, z, Side::minus);
      const Complex mm2 = big_M(cur, z, Side::minus);
      const Complex g1 = (mm1 + 1.0) / (mm1 - 1.0);  // 1 / Phi_-
      const Complex g2 = (mm2 + 1.0) / (mm2 - 1.0);
      CHECK(riccati_residual(seq, k, z, RiccatiMode::InvPhi, g1, g2) < 1e-9);
    }
  }
  // free case: zero residual exactly
  const auto free = VerblunskySequence::constant(Complex(0.0), -4, 4);
  CHECK(riccati_residual(free, 0, Complex(0.4, 0.1), RiccatiMode::M,
                         Complex(1.0), Complex(1.0)) == 0.0);
}

TEST_CASE("phi transform pair") {
  CHECK(phi_transform(Complex(1.0)) == Complex(0.0));
  CHECK(std::abs(phi_transform(Complex(-3.0)) - Complex(2.0)) < 1e-15);
  for (const Complex& m : cmvtest::sample_annulus(3, 20, 0.2, 4.0)) {
    if (std::abs(m + 1.0) < 0.1) continue;
    CHECK(std::abs(phi_inverse(phi_transform(m)) - m) < 1e-13);
  }
  CHECK_THROWS_AS(phi_transform(Complex(-1.0)), SingularError);
  CHECK_THROWS_AS(phi_inverse(Complex(1.0)), SingularError);

  const auto ctx = make_ctx(41, 0.9, 0, 64);
  for (const Complex& z : cmvtest::sample_disk(50, 50, 0.95))
    CHECK(std::abs(phi_transform(big_M(ctx, z, Side::plus))) < 1.0);
}

TEST_CASE("schur series leading coefficients and free case") {
  const auto seq = VerblunskySequence::random(9, 0.8, -30, 30);
  const auto coeffs = schur_series(seq, 0, 8);
  REQUIRE(coeffs.size() == 8);
  CHECK(std::abs(coeffs[0] + std::conj(seq.at(1))) < 1e-15);
  const double rho1 = derive_coefficients(seq.at(1)).rho;
  CHECK(std::abs(coeffs[1] + rho1 * rho1 * std::conj(seq.at(2))) < 1e-15);

  const auto free = VerblunskySequence::constant(Complex(0.0), -12, 12);
  for (const Complex& c : schur_series(free, 0, 8))
    CHECK(std::abs(c) == 0.0);
  CHECK_THROWS_AS(schur_series(seq, 0, 0), SizeError);
}

TEST_CASE("schur series matches the measure route on a small circle") {
  const auto seq = VerblunskySequence::random(9, 0.8, -140, 140);
  const int k = 0, J = 8, nodes = 64;
  const auto coeffs = schur_series(seq, k, J);
  const MFunctionContext ctx(seq, k, 96);
  const double r = 0.3;
  std::vector<Complex> samples(nodes);
  for (int i = 0; i < nodes; ++i) {
    const Complex z = std::polar(r, kTwoPi * i / nodes);
    samples[static_cast<std::size_t>(i)] =
        phi_transform(big_M(ctx, z, Side::plus));
  }
  for (int j = 1; j <= J; ++j) {
    Complex hat(0.0);
    for (int i = 0; i < nodes; ++i)
      hat += samples[static_cast<std::size_t>(i)] *
             std::polar(1.0, -j * kTwoPi * i / nodes);
    hat /= static_cast<double>(nodes) * std::pow(r, j);
    CHECK(std::abs(hat - coeffs[static_cast<std::size_t>(j - 1)]) < 1e-5);
  }
}

TEST_CASE("inverse phi minus series matches its measure route") {
  const auto seq = VerblunskySequence::random(25, 0.8, -140, 140);
  const int k = 0, J = 8, nodes = 64;
  const auto coeffs = inv_phi_minus_series(seq, k, J);
  REQUIRE(coeffs.size() == static_cast<std::size_t>(J) + 1);
  CHECK(std::abs(coeffs[0] - seq.at(k)) < 1e-15);
  const double rho = derive_coefficients(seq.at(k)).rho;
  CHECK(std::abs(coeffs[1] - rho * rho * seq.at(k - 1)) < 1e-15);

  const MFunctionContext ctx(seq, k, 96);
  const double r = 0.3;
  for (int j = 0; j <= J; ++j) {
    Complex hat(0.0);
    for (int i = 0; i < nodes; ++i) {
      const Complex z = std::polar(r, kTwoPi * i / nodes);
      const Complex mm = big_M(ctx, z, Side::minus);
      hat += (mm + 1.0) / (mm - 1.0) * std::polar(1.0, -j * kTwoPi * i / nodes);
    }
    hat /= static_cast<double>(nodes) * std::pow(r, j);
    CHECK(std::abs(hat - coeffs[static_cast<std::size_t>(j)]) < 1e-5);
  }
}

TEST_CASE("weyl solutions decay and satisfy the phi ratio") {
  const auto seq = VerblunskySequence::random(3, 0.6, -140, 140);
  const Complex z(0.5, 0.0);
  const auto samples = weyl_solutions(seq, 0, z, 0, 40, Side::plus, 96);
  REQUIRE(samples.size() == 41);
  const double head = std::hypot(std::abs(samples[0].u), std::abs(samples[0].v));
  const double tail =
      std::hypot(std::abs(samples[40].u), std::abs(samples[40].v));
  CHECK(tail < 1e-3 * head);

  const MFunctionContext ctx(seq, 0, 96);
  for (int k = 1; k <= 10; ++k) {
    const MFunctionContext ck(seq, k, 96);
    const Complex phi = phi_transform(big_M(ck, z, Side::plus));
    const auto& smp = samples[static_cast<std::size_t>(k)];
    const bool odd = k % 2 != 0;
    const Complex ratio = odd ? z * smp.v / smp.u : smp.u / smp.v;
    CHECK(std::abs(phi - ratio) < 1e-9);
  }
}

TEST_CASE("free weyl solutions alternate between components") {
  const auto seq = VerblunskySequence::constant(Complex(0.0), -80, 80);
  const Complex z(0.4, 0.2);
  const auto samples = weyl_solutions(seq, 0, z, 0, 12, Side::plus, 64);
  for (const auto& smp : samples) {
    if (smp.k == 0) continue;
    if (smp.k % 2 == 0) {
      CHECK(std::abs(smp.u) < 1e-12);
      CHECK(std::abs(smp.v - 2.0 * std::pow(z, smp.k / 2)) < 1e-12);
    } else {
      CHECK(std::abs(smp.v) < 1e-12);
      CHECK(std::abs(smp.u - 2.0 * std::pow(z, (smp.k + 1) / 2)) < 1e-12);
    }
  }
}

TEST_CASE("matrix M at the origin and on the free sequence") {
  const auto seq = VerblunskySequence::random(33, 0.8, -120, 120);
  const auto u = build_finite_cmv(seq, -48, 47, 0.0, 0.0);
  for (int k : {0, 1}) {
    const MFunctionContext ctx(seq, k, 80);
    const auto mv = matrix_M(ctx, u, Complex(0.0));
    CHECK((mv.m - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <
          1e-12);
  }

  const auto free = VerblunskySequence::constant(Complex(0.0), -80, 80);
  const auto uf = build_finite_cmv(free, -40, 39, 0.0, 0.0);
  const MFunctionContext fctx(free, 0, 64);
  for (const Complex& z : cmvtest::sample_disk(61, 8, 0.6)) {
    const auto mv = matrix_M(fctx, uf, z);
    CHECK(std::abs(mv.m(1, 1) - Complex(1.0)) < 1e-11);
  }
}

TEST_CASE("matrix M route A equals the finite-matrix route B") {
  const auto seq = VerblunskySequence::random(37, 0.85, -140, 140);
  const auto u = build_finite_cmv(seq, -48, 47, 0.0, 0.0);
  for (int k : {-1, 0, 1, 2}) {
    const MFunctionContext ctx(seq, k, 96);
    for (int i = 0; i < 12; ++i) {
      const Complex z = std::polar(0.5, kTwoPi * (i + 0.3) / 12);
      const auto mv = matrix_M(ctx, u, z);
      CHECK(mv.route_b_residual < 1e-7);
      // Re M is PSD on the disk
      const Eigen::Matrix2cd re = 0.5 * (mv.m + mv.m.adjoint());
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(re);
      CHECK(es.eigenvalues().minCoeff() > -1e-10);
      // congruence route to the tilde variant
      const Eigen::Matrix2cd b =
          m_tilde_congruence_factor(seq.at(k), k % 2 != 0);
      const Eigen::Matrix2cd via_congruence =
          0.25 * b.adjoint() * mv.m * b;
      CHECK((via_congruence - mv.m_tilde).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("phi_11 routes agree and stay in the disk") {
  const auto seq = VerblunskySequence::random(21, 0.85, -120, 120);
  const MFunctionContext ctx(seq, 0, 96);
  for (const Complex& z : cmvtest::sample_disk(21, 30, 0.9)) {
    const auto v = phi_11(ctx, z);
    CHECK(std::abs(v.from_m11 - v.from_ratio) < 1e-9);
    CHECK(std::abs(v.from_m11) < 1.0);
  }
  // free case collapses to zero
  const auto free = VerblunskySequence::constant(Complex(0.0), -60, 60);
  const MFunctionContext fctx(free, 0, 48);
  CHECK(std::abs(phi_11(fctx, Complex(0.3, -0.1)).from_ratio) < 1e-12);
  CHECK(std::abs(phi_11(fctx, Complex(0.3, -0.1)).from_m11) < 1e-12);
}

TEST_CASE("omega tilde bins recover the congruence-transformed atoms") {
  const auto seq = VerblunskySequence::random(45, 0.8, -140, 140);
  const int k = 0, bins = 8;
  const MFunctionContext ctx(seq, k, 128);
  const auto reconstructed = omega_tilde_bins(ctx, bins, 0.95, 96);

  // direct route: congruence-transform the finite matrix measure, then bin
  const auto u = build_finite_cmv(seq, -64, 63, 0.0, 0.0);
  const auto mm = matrix_measure(u, k);
  const Eigen::Matrix2cd b = m_tilde_congruence_factor(seq.at(k), k % 2 != 0);
  std::vector<Eigen::Matrix2cd> direct(static_cast<std::size_t>(bins),
                                       Eigen::Matrix2cd::Zero());
  for (std::size_t i = 0; i < mm.angles.size(); ++i) {
    const int bin = std::min(bins - 1, static_cast<int>(mm.angles[i] /
                                                        (kTwoPi / bins)));
    direct[static_cast<std::size_t>(bin)] +=
        0.25 * b.adjoint() * mm.weights[i] * b;
  }
  Eigen::Matrix2cd total_rec = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2cd total_dir = Eigen::Matrix2cd::Zero();
  for (int i = 0; i < bins; ++i) {
    total_rec += reconstructed[static_cast<std::size_t>(i)];
    total_dir += direct[static_cast<std::size_t>(i)];
    CHECK((reconstructed[static_cast<std::size_t>(i)] -
           direct[static_cast<std::size_t>(i)])
              .cwiseAbs()
              .maxCoeff() < 0.08);
  }
  CHECK((total_rec - total_dir).cwiseAbs().maxCoeff() < 1e-6);
}
