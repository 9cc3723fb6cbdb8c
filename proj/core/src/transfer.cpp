#include "cmvweyl/transfer.hpp"

#include <cmath>

#include "cmvweyl/errors.hpp"

namespace cmv {

Eigen::Matrix2cd TransferMatrix::eval(Complex z) const {
  Eigen::Matrix2cd m;
  m << a00.eval(z), a01.eval(z), a10.eval(z), a11.eval(z);
  return m;
}

namespace {

bool odd(int k) { return ((k % 2) + 2) % 2 == 1; }

void require_interior(Complex alpha, int k) {
  if (std::abs(alpha) >= 1.0)
    throw DomainError("transfer matrix needs |alpha| < 1 at site " +
                      std::to_string(k));
}

}  // namespace

TransferMatrix transfer_matrix(int k, Complex alpha_k) {
  require_interior(alpha_k, k);
  const double inv_rho = 1.0 / derive_coefficients(alpha_k).rho;
  TransferMatrix t;
  if (odd(k)) {
    t.a00 = LaurentPolynomial::monomial(alpha_k * inv_rho, 0);
    t.a01 = LaurentPolynomial::monomial(inv_rho, 1);
    t.a10 = LaurentPolynomial::monomial(inv_rho, -1);
    t.a11 = LaurentPolynomial::monomial(std::conj(alpha_k) * inv_rho, 0);
  } else {
    t.a00 = LaurentPolynomial::monomial(std::conj(alpha_k) * inv_rho, 0);
    t.a01 = LaurentPolynomial::monomial(inv_rho, 0);
    t.a10 = LaurentPolynomial::monomial(inv_rho, 0);
    t.a11 = LaurentPolynomial::monomial(alpha_k * inv_rho, 0);
  }
  return t;
}

TransferMatrix transfer_matrix_inverse(int k, Complex alpha_k) {
  // det T = -1, so inv T = [[-a11, a01], [a10, -a00]].
  TransferMatrix t = transfer_matrix(k, alpha_k);
  TransferMatrix inv;
  inv.a00 = Complex(-1.0) * t.a11;
  inv.a01 = t.a01;
  inv.a10 = t.a10;
  inv.a11 = Complex(-1.0) * t.a00;
  return inv;
}

TransferMatrix szego_transfer(Complex alpha_k) {
  require_interior(alpha_k, 0);
  TransferMatrix t;
  t.a00 = LaurentPolynomial::monomial(1.0, 1);
  t.a01 = LaurentPolynomial::monomial(alpha_k, 0);
  t.a10 = LaurentPolynomial::monomial(std::conj(alpha_k), 1);
  t.a11 = LaurentPolynomial::monomial(1.0, 0);
  return t;
}

LaurentPolynomial wronskian(const LaurentPair& x1, const LaurentPair& x2) {
  return x1.first * x2.second - x2.first * x1.second;
}

namespace {

LaurentPair apply(const TransferMatrix& t, const LaurentPair& x) {
  LaurentPair y;
  y.first = t.a00 * x.first + t.a01 * x.second;
  y.second = t.a10 * x.first + t.a11 * x.second;
  y.first.prune();
  y.second.prune();
  return y;
}

}  // namespace

SolutionFamily::SolutionFamily(const VerblunskySequence& seq, int k0,
                               int k_min, int k_max, Side side)
    : k0_(k0), k_min_(k_min), k_max_(k_max), side_(side) {
  if (!(k_min <= k0 && k0 <= k_max))
    throw DomainError("solution family needs k_min <= k0 <= k_max");
  const int n = k_max - k_min + 1;
  pr_.resize(static_cast<std::size_t>(n));
  qs_.resize(static_cast<std::size_t>(n));

  LaurentPair pr0, qs0;
  const bool anchor_odd = odd(k0);
  if (side == Side::plus) {
    if (anchor_odd) {
      pr0 = {LaurentPolynomial::monomial(1.0, 1), LaurentPolynomial::constant(1.0)};
      qs0 = {LaurentPolynomial::monomial(1.0, 1), LaurentPolynomial::constant(-1.0)};
    } else {
      pr0 = {LaurentPolynomial::constant(1.0), LaurentPolynomial::constant(1.0)};
      qs0 = {LaurentPolynomial::constant(-1.0), LaurentPolynomial::constant(1.0)};
    }
  } else {
    if (anchor_odd) {
      pr0 = {LaurentPolynomial::constant(1.0), LaurentPolynomial::constant(-1.0)};
      qs0 = {LaurentPolynomial::constant(1.0), LaurentPolynomial::constant(1.0)};
    } else {
      pr0 = {LaurentPolynomial::monomial(-1.0, 1), LaurentPolynomial::constant(1.0)};
      qs0 = {LaurentPolynomial::monomial(1.0, 1), LaurentPolynomial::constant(1.0)};
    }
  }
  pr_[idx(k0)] = pr0;
  qs_[idx(k0)] = qs0;

  for (int k = k0 + 1; k <= k_max; ++k) {
    const TransferMatrix t = transfer_matrix(k, seq.at(k));
    pr_[idx(k)] = apply(t, pr_[idx(k - 1)]);
    qs_[idx(k)] = apply(t, qs_[idx(k - 1)]);
  }
  for (int k = k0; k > k_min; --k) {
    const TransferMatrix ti = transfer_matrix_inverse(k, seq.at(k));
    pr_[idx(k - 1)] = apply(ti, pr_[idx(k)]);
    qs_[idx(k - 1)] = apply(ti, qs_[idx(k)]);
  }
}

std::size_t SolutionFamily::idx(int k) const {
  if (k < k_min_ || k > k_max_)
    throw DomainError("site outside solution family range: " +
                      std::to_string(k));
  return static_cast<std::size_t>(k - k_min_);
}

LaurentPolynomial SolutionFamily::p_tilde(int k) const {
  return tilde_divided() ? p(k).shifted(-1) : p(k);
}

LaurentPolynomial SolutionFamily::q_tilde(int k) const {
  return tilde_divided() ? q(k).shifted(-1) : q(k);
}

SolutionFamily solution_family(const VerblunskySequence& seq, int k0,
                               int k_min, int k_max, Side side) {
  return SolutionFamily(seq, k0, k_min, k_max, side);
}

double conjugation_check(const SolutionFamily& family, Complex z) {
  if (z == Complex(0.0)) throw DomainError("conjugation check needs z != 0");
  const Complex zr = 1.0 / std::conj(z);
  const double r_sign = family.side() == Side::plus ? 1.0 : -1.0;
  double worst = 0.0;
  for (int k = family.k_min(); k <= family.k_max(); ++k) {
    const Complex lhs_r = family.r(k).eval(z);
    const Complex rhs_r = r_sign * std::conj(family.p_tilde(k).eval(zr));
    const Complex lhs_s = family.s(k).eval(z);
    const Complex rhs_s = -r_sign * std::conj(family.q_tilde(k).eval(zr));
    // scaled per site: the raw values grow like |z|^{|k-k0|} away from the
    // circle, which would drown the identity in evaluation rounding
    const double scale_r = std::max(1.0, std::abs(lhs_r));
    const double scale_s = std::max(1.0, std::abs(lhs_s));
    worst = std::max(worst, std::abs(lhs_r - rhs_r) / scale_r);
    worst = std::max(worst, std::abs(lhs_s - rhs_s) / scale_s);
  }
  return worst;
}

SzegoSystem szego_polynomials(const VerblunskySequence& seq, int n) {
  if (n < 1) throw SizeError("szego_polynomials needs n >= 1");
  SzegoSystem sys;
  sys.phi.reserve(static_cast<std::size_t>(n + 1));
  sys.phi_star.reserve(static_cast<std::size_t>(n + 1));
  sys.gamma.reserve(static_cast<std::size_t>(n + 1));
  sys.phi.push_back(LaurentPolynomial::constant(1.0));
  sys.phi_star.push_back(LaurentPolynomial::constant(1.0));
  sys.gamma.push_back(1.0);
  for (int k = 1; k <= n; ++k) {
    const Complex alpha = seq.at(k);
    const TransferMatrix s = szego_transfer(alpha);
    LaurentPolynomial phi = s.a00 * sys.phi.back() + s.a01 * sys.phi_star.back();
    LaurentPolynomial phi_star =
        s.a10 * sys.phi[static_cast<std::size_t>(k - 1)] +
        s.a11 * sys.phi_star.back();
    phi.prune();
    phi_star.prune();
    sys.phi.push_back(std::move(phi));
    sys.phi_star.push_back(std::move(phi_star));
    sys.gamma.push_back(sys.gamma.back() / derive_coefficients(alpha).rho);
  }
  return sys;
}

LaurentPolynomial szego_to_p_plus(const SzegoSystem& sys, int k) {
  const std::size_t uk = static_cast<std::size_t>(k);
  if (odd(k))
    return sys.gamma[uk] * sys.phi[uk].shifted(-(k - 1) / 2);
  return sys.gamma[uk] * sys.phi_star[uk].shifted(-k / 2);
}

LaurentPolynomial szego_to_r_plus(const SzegoSystem& sys, int k) {
  const std::size_t uk = static_cast<std::size_t>(k);
  if (odd(k))
    return sys.gamma[uk] * sys.phi_star[uk].shifted(-(k + 1) / 2);
  return sys.gamma[uk] * sys.phi[uk].shifted(-k / 2);
}

}  // namespace cmv
