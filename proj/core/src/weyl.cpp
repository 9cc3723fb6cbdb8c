#include "cmvweyl/weyl.hpp"

#include <cmath>

#include "cmvweyl/errors.hpp"

namespace cmv {

namespace {

bool site_odd(int k) { return ((k % 2) + 2) % 2 == 1; }

void require_off_circle(Complex z) {
  if (std::abs(std::abs(z) - 1.0) < 1e-12)
    throw DomainError("evaluation point in the pole region |z| = 1");
}

void require_nonsingular(Complex den, const char* what) {
  if (std::abs(den) < 1e-13)
    throw SingularError(std::string("singular evaluation in ") + what);
}

}  // namespace

MFunctionContext::MFunctionContext(const VerblunskySequence& seq, int k0,
                                   int n)
    : seq_(seq), k0_(k0), n_(n), d_(derive_coefficients(seq.at(k0))) {
  const BandedUnitary up = build_half_lattice(seq, k0, 0.0, n, Side::plus);
  mu_plus_ = measure_from_operator(up, k0);
  const BandedUnitary um =
      build_half_lattice(seq, k0 - 1, 0.0, n, Side::minus);
  mu_minus_ = measure_from_operator(um, k0 - 1);
}

Complex m_function(const MFunctionContext& ctx, Complex z, Side side) {
  require_off_circle(z);
  if (side == Side::plus) return ctx.plus_measure().herglotz(z);
  return -ctx.minus_measure().herglotz(z);
}

Complex big_M(const MFunctionContext& ctx, Complex z, Side side) {
  if (side == Side::plus) return m_function(ctx, z, Side::plus);
  const Complex m = m_function(ctx, z, Side::minus);
  const DerivedCoefficients& d = ctx.derived_at_k0();
  const Complex num = d.a.real() + Complex(0.0, 1.0) * d.b.imag() * m;
  const Complex den = Complex(0.0, 1.0) * d.a.imag() + d.b.real() * m;
  require_nonsingular(den, "M_-");
  return num / den;
}

Complex hat_M(const MFunctionContext& ctx, Complex z, Side side) {
  if (side == Side::minus) return m_function(ctx, z, Side::minus);
  const Complex m = m_function(ctx, z, Side::plus);
  const DerivedCoefficients& d = ctx.derived_at_k0();
  const Complex num = d.a.real() - Complex(0.0, 1.0) * d.a.imag() * m;
  const Complex den = -Complex(0.0, 1.0) * d.b.imag() + d.b.real() * m;
  require_nonsingular(den, "hat M_+");
  return num / den;
}

Complex phi_transform(Complex big_m) {
  require_nonsingular(big_m + 1.0, "phi transform");
  return (big_m - 1.0) / (big_m + 1.0);
}

Complex phi_inverse(Complex phi) {
  require_nonsingular(1.0 - phi, "phi inverse");
  return (1.0 + phi) / (1.0 - phi);
}

double riccati_residual(const VerblunskySequence& seq, int k, Complex z,
                        RiccatiMode mode, Complex v1, Complex v2) {
  const Complex alpha = seq.at(k);
  switch (mode) {
    case RiccatiMode::M: {
      const DerivedCoefficients d = derive_coefficients(alpha);
      const Complex lhs = (z * std::conj(d.b) - d.b) * v1 * v2 +
                          (z * std::conj(d.b) + d.b) * v2 -
                          (z * std::conj(d.a) + d.a) * v1;
      return std::abs(lhs - (z * std::conj(d.a) - d.a));
    }
    case RiccatiMode::Phi:
      return std::abs(alpha * v1 * v2 - v1 + z * v2 - std::conj(alpha) * z);
    case RiccatiMode::InvPhi:
      return std::abs(std::conj(alpha) * z * v1 * v2 + v2 - z * v1 - alpha);
  }
  throw DomainError("unknown Riccati mode");
}

std::vector<Complex> schur_series(const VerblunskySequence& seq, int k,
                                  int J) {
  if (J < 1) throw SizeError("schur_series needs J >= 1");
  // table[s][j-1] = phi_{+,j}(k+s); site k+s needs orders up to J-s.
  std::vector<std::vector<Complex>> table(static_cast<std::size_t>(J));
  for (int s = J - 1; s >= 0; --s) {
    auto& col = table[static_cast<std::size_t>(s)];
    const int orders = J - s;
    col.resize(static_cast<std::size_t>(orders));
    const Complex a1 = seq.at(k + s + 1);
    col[0] = -std::conj(a1);
    for (int j = 2; j <= orders; ++j) {
      const auto& next = table[static_cast<std::size_t>(s + 1)];
      Complex conv(0.0);
      for (int l = 1; l <= j - 1; ++l)
        conv += next[static_cast<std::size_t>(j - l - 1)] *
                col[static_cast<std::size_t>(l - 1)];
      col[static_cast<std::size_t>(j - 1)] =
          a1 * conv + next[static_cast<std::size_t>(j - 2)];
    }
  }
  return table[0];
}

std::vector<Complex> inv_phi_minus_series(const VerblunskySequence& seq,
                                          int k, int J) {
  if (J < 0) throw SizeError("inv_phi_minus_series needs J >= 0");
  // table[s][j] = coefficient j of 1/Phi_-(., k-s); site k-s needs orders
  // up to J-s.
  std::vector<std::vector<Complex>> table(static_cast<std::size_t>(J + 1));
  for (int s = J; s >= 0; --s) {
    auto& col = table[static_cast<std::size_t>(s)];
    const int orders = J - s;
    col.resize(static_cast<std::size_t>(orders) + 1);
    const Complex ak = seq.at(k - s);
    col[0] = ak;
    for (int j = 1; j <= orders; ++j) {
      const auto& prev = table[static_cast<std::size_t>(s + 1)];
      Complex conv(0.0);
      for (int l = 0; l <= j - 1; ++l)
        conv += prev[static_cast<std::size_t>(j - 1 - l)] *
                col[static_cast<std::size_t>(l)];
      col[static_cast<std::size_t>(j)] =
          -std::conj(ak) * conv + prev[static_cast<std::size_t>(j - 1)];
    }
  }
  return table[0];
}

WeylPairSamples weyl_pair_samples(const VerblunskySequence& seq,
                                  const SolutionFamily& fam, Complex z,
                                  Complex m_value, Side decay_toward, int lo,
                                  int hi, int buffer) {
  if (lo > hi) throw DomainError("empty sample window");
  const int k0 = fam.k0();
  WeylPairSamples out;
  out.lo = lo;
  const std::size_t n = static_cast<std::size_t>(hi - lo + 1);
  out.u.resize(n);
  out.v.resize(n);
  std::vector<double> direct_err(n, 0.0);

  for (int k = lo; k <= hi; ++k) {
    const std::size_t i = static_cast<std::size_t>(k - lo);
    const Complex q = fam.q(k).eval(z);
    const Complex p = fam.p(k).eval(z);
    const Complex s = fam.s(k).eval(z);
    const Complex r = fam.r(k).eval(z);
    out.u[i] = q + m_value * p;
    out.v[i] = s + m_value * r;
    direct_err[i] = 1e-15 * std::max(std::abs(q) + std::abs(m_value * p),
                                     std::abs(s) + std::abs(m_value * r));
  }

  // Rebuild the decaying tail by recursing from `buffer` sites beyond the
  // window toward k0; contamination by the dominant solution shrinks by
  // min(|z|, 1/|z|) per site.
  const double ratio = std::min(std::abs(z), 1.0 / std::abs(z));
  const bool tail_above = decay_toward == Side::plus;
  const int tail_lo = tail_above ? std::max(lo, k0 + 1) : lo;
  const int tail_hi = tail_above ? hi : std::min(hi, k0 - 1);
  if (tail_lo > tail_hi) return out;

  const int seed_site = tail_above ? hi + buffer : lo - buffer;
  const int steps = std::abs(seed_site - k0);
  std::vector<Eigen::Vector2cd> iter(static_cast<std::size_t>(steps) + 1);
  Eigen::Vector2cd x(Complex(1.0), Complex(0.5, 0.25));
  iter[static_cast<std::size_t>(steps)] = x;
  if (tail_above) {
    for (int k = seed_site; k > k0; --k) {
      x = transfer_matrix_inverse(k, seq.at(k)).eval(z) * x;
      iter[static_cast<std::size_t>(k - 1 - k0)] = x;
    }
  } else {
    for (int k = seed_site + 1; k <= k0; ++k) {
      x = transfer_matrix(k, seq.at(k)).eval(z) * x;
      iter[static_cast<std::size_t>(k0 - k)] = x;
    }
  }

  // anchor the recursed ray to the exact combination at k0
  const Complex u0 = fam.q(k0).eval(z) + m_value * fam.p(k0).eval(z);
  const Complex v0 = fam.s(k0).eval(z) + m_value * fam.r(k0).eval(z);
  const Eigen::Vector2cd& raw0 = iter[0];
  const Complex denom = raw0.squaredNorm();
  if (std::abs(denom) < 1e-300)
    throw SingularError("degenerate recursion seed in weyl_pair_samples");
  const Complex scale =
      (std::conj(raw0(0)) * u0 + std::conj(raw0(1)) * v0) / denom;

  for (int k = tail_lo; k <= tail_hi; ++k) {
    const std::size_t i = static_cast<std::size_t>(k - lo);
    const std::size_t j = static_cast<std::size_t>(std::abs(k - k0));
    const Eigen::Vector2cd cand = scale * iter[j];
    const double miller_err =
        cand.cwiseAbs().maxCoeff() *
        std::pow(ratio, static_cast<double>(std::abs(seed_site - k)));
    if (miller_err < direct_err[i]) {
      out.u[i] = cand(0);
      out.v[i] = cand(1);
    }
  }
  return out;
}

std::vector<WeylSample> weyl_solutions(const VerblunskySequence& seq, int k0,
                                       Complex z, int win_lo, int win_hi,
                                       Side side, int n_ctx) {
  if (z == Complex(0.0)) throw DomainError("weyl_solutions needs z != 0");
  require_off_circle(z);
  const MFunctionContext ctx(seq, k0, n_ctx);
  const Complex m = big_M(ctx, z, side);
  const SolutionFamily fam(seq, k0, std::min(win_lo, k0),
                           std::max(win_hi, k0), Side::plus);
  const WeylPairSamples samples =
      weyl_pair_samples(seq, fam, z, m, side, win_lo, win_hi);
  std::vector<WeylSample> out;
  out.reserve(static_cast<std::size_t>(win_hi - win_lo + 1));
  for (int k = win_lo; k <= win_hi; ++k)
    out.push_back({k, samples.at_u(k), samples.at_v(k)});
  return out;
}

Eigen::Matrix2cd m_tilde_congruence_factor(Complex alpha_k, bool k_odd) {
  const DerivedCoefficients d = derive_coefficients(alpha_k);
  Eigen::Matrix2cd b;
  if (k_odd)
    b << Complex(d.rho), Complex(d.rho), -d.b, d.a;
  else
    b << Complex(-d.rho), Complex(d.rho), std::conj(d.b), std::conj(d.a);
  return b;
}

Eigen::Matrix2cd matrix_m_tilde_closed(Complex m_plus, Complex m_minus,
                                       Complex alpha_k) {
  const Complex diff = m_plus - m_minus;
  require_nonsingular(diff, "matrix m tilde");
  const Complex half_re(0.5 * alpha_k.real());
  const Complex half_im(0.0, 0.5 * alpha_k.imag());
  Eigen::Matrix2cd mt;
  mt(0, 0) = 1.0 / diff + half_im;
  mt(0, 1) = 0.5 * (m_plus + m_minus) / diff + half_re;
  mt(1, 0) = -0.5 * (m_plus + m_minus) / diff - half_re;
  mt(1, 1) = -m_plus * m_minus / diff - half_im;
  return mt;
}

MatrixMValue matrix_M(const MFunctionContext& ctx, const BandedUnitary& u,
                      Complex z) {
  require_off_circle(z);
  const int k = ctx.k0();
  const Complex mp = big_M(ctx, z, Side::plus);
  const Complex mm = big_M(ctx, z, Side::minus);
  const Complex diff = mp - mm;
  require_nonsingular(diff, "matrix M");
  const DerivedCoefficients& d = ctx.derived_at_k0();
  const double rho = d.rho;

  MatrixMValue out;
  out.m(0, 0) = 1.0 + (std::conj(d.a) - std::conj(d.b) * mp) *
                          (d.a + d.b * mm) / (rho * rho * diff);
  out.m(1, 1) = (1.0 - mp * mm) / diff;
  const Complex odd_branch = (1.0 - mp) * (std::conj(d.a) - std::conj(d.b) * mm);
  const Complex even_branch = (1.0 + mp) * (d.a + d.b * mm);
  if (site_odd(k)) {
    out.m(0, 1) = -odd_branch / (rho * diff);
    out.m(1, 0) = -even_branch / (rho * diff);
  } else {
    out.m(0, 1) = -even_branch / (rho * diff);
    out.m(1, 0) = -odd_branch / (rho * diff);
  }

  out.m_tilde = matrix_m_tilde_closed(mp, mm, ctx.sequence().at(k));

  // Route B: quadratic form of the finite resolvent.
  if (!u.contains_site(k - 1) || !u.contains_site(k))
    throw DomainError("matrix_M oracle needs sites k-1, k inside window");
  const int n = u.size();
  Eigen::MatrixXcd a = u.mat - z * Eigen::MatrixXcd::Identity(n, n);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(n, 2);
  rhs(u.row_of(k - 1), 0) = 1.0;
  rhs(u.row_of(k), 1) = 1.0;
  const Eigen::MatrixXcd x = lu.solve(rhs);
  Eigen::Matrix2cd route_b;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      route_b(i, j) = (i == j ? 1.0 : 0.0) +
                      2.0 * z * x(u.row_of(k - 1 + i), j);
  out.route_b_residual = (route_b - out.m).cwiseAbs().maxCoeff();
  return out;
}

Phi11Value phi_11(const MFunctionContext& ctx, Complex z) {
  require_off_circle(z);
  const Complex mp = big_M(ctx, z, Side::plus);
  const Complex mm = big_M(ctx, z, Side::minus);
  const Complex diff = mp - mm;
  require_nonsingular(diff, "phi_11");
  const Complex m11 = (1.0 - mp * mm) / diff;
  Phi11Value out;
  out.from_m11 = phi_transform(m11);
  // Phi_+/Phi_- written as a single product to stay finite when M_- = -1.
  const Complex den = (mp + 1.0) * (mm - 1.0);
  require_nonsingular(den, "phi_11 ratio");
  out.from_ratio = (mp - 1.0) * (mm + 1.0) / den;
  return out;
}

std::vector<Eigen::Matrix2cd> omega_tilde_bins(const MFunctionContext& ctx,
                                               int bins, double r,
                                               int nodes_per_bin) {
  if (r >= 1.0) throw DomainError("omega_tilde_bins needs r < 1");
  const Complex alpha = ctx.sequence().at(ctx.k0());
  std::vector<Eigen::Matrix2cd> out(static_cast<std::size_t>(bins),
                                    Eigen::Matrix2cd::Zero());
  const int n = bins * nodes_per_bin;
  const double h = kTwoPi / n;
  for (int i = 0; i < n; ++i) {
    const double theta = (i + 0.5) * h;
    const Complex z = std::polar(r, theta);
    const Complex mp = big_M(ctx, z, Side::plus);
    const Complex mm = big_M(ctx, z, Side::minus);
    const Eigen::Matrix2cd mt = matrix_m_tilde_closed(mp, mm, alpha);
    const Eigen::Matrix2cd re = 0.5 * (mt + mt.adjoint());
    out[static_cast<std::size_t>(i / nodes_per_bin)] += re * (h / kTwoPi);
  }
  return out;
}

}  // namespace cmv
