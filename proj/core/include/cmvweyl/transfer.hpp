#ifndef CMVWEYL_TRANSFER_HPP
#define CMVWEYL_TRANSFER_HPP

#include <Eigen/Dense>
#include <vector>

#include "cmvweyl/laurent.hpp"
#include "cmvweyl/types.hpp"
#include "cmvweyl/verblunsky.hpp"

namespace cmv {

// 2x2 matrix with Laurent polynomial entries.
struct TransferMatrix {
  LaurentPolynomial a00, a01, a10, a11;

  LaurentPolynomial det() const { return a00 * a11 - a01 * a10; }
  Eigen::Matrix2cd eval(Complex z) const;
};

// One-step transfer matrix of the CMV recursion at site k; its determinant
// is identically -1.
TransferMatrix transfer_matrix(int k, Complex alpha_k);
// Closed-form inverse (a det = -1 swap-and-negate, no numeric inversion).
TransferMatrix transfer_matrix_inverse(int k, Complex alpha_k);

// Szegoe one-step matrix [[z, alpha], [conj(alpha) z, 1]] driving the monic
// orthogonal polynomials; det = z (1 - |alpha|^2).
TransferMatrix szego_transfer(Complex alpha_k);

struct LaurentPair {
  LaurentPolynomial first, second;
};

// Wronskian u1 v2 - u2 v1 of two solution pairs at a common site.
LaurentPolynomial wronskian(const LaurentPair& x1, const LaurentPair& x2);

// The two solution families (p, r) and (q, s) of the transfer recursion,
// seeded at the reference site k0 and extended over [k_min, k_max] (forward
// with T, backward with its closed-form inverse), together with the
// z-power-normalized tilde variants.
class SolutionFamily {
 public:
  SolutionFamily(const VerblunskySequence& seq, int k0, int k_min, int k_max,
                 Side side);

  int k0() const { return k0_; }
  int k_min() const { return k_min_; }
  int k_max() const { return k_max_; }
  Side side() const { return side_; }
  bool k0_odd() const { return ((k0_ % 2) + 2) % 2 == 1; }

  const LaurentPair& pr(int k) const { return pr_[idx(k)]; }
  const LaurentPair& qs(int k) const { return qs_[idx(k)]; }
  const LaurentPolynomial& p(int k) const { return pr(k).first; }
  const LaurentPolynomial& r(int k) const { return pr(k).second; }
  const LaurentPolynomial& q(int k) const { return qs(k).first; }
  const LaurentPolynomial& s(int k) const { return qs(k).second; }

  // Tilde normalization: the plus-side p, q are divided by z when k0 is odd,
  // the minus-side ones when k0 is even.
  bool tilde_divided() const {
    return side_ == Side::plus ? k0_odd() : !k0_odd();
  }
  LaurentPolynomial p_tilde(int k) const;
  LaurentPolynomial q_tilde(int k) const;

 private:
  std::size_t idx(int k) const;
  int k0_, k_min_, k_max_;
  Side side_;
  std::vector<LaurentPair> pr_, qs_;
};

SolutionFamily solution_family(const VerblunskySequence& seq, int k0,
                               int k_min, int k_max, Side side);

// Max residual of the conjugation symmetries linking (r, s) at z to the
// tilde polynomials at 1/conj(z), taken over all sites of the family and
// scaled per site by the magnitude of the compared values.
double conjugation_check(const SolutionFamily& family, Complex z);

struct SzegoSystem {
  std::vector<LaurentPolynomial> phi;       // monic, degree k
  std::vector<LaurentPolynomial> phi_star;  // reversed *-polynomials
  std::vector<double> gamma;                // gamma_k = prod rho_j^{-1}
};

// Monic Szegoe polynomials phi(., k), k = 0..n, from coefficients at sites
// 1..n, plus the gamma normalizers.
SzegoSystem szego_polynomials(const VerblunskySequence& seq, int n);

// CMV correspondence: the orthonormal Laurent polynomials p_+(., k, 0) and
// r_+(., k, 0) expressed through phi and phi_star.
LaurentPolynomial szego_to_p_plus(const SzegoSystem& sys, int k);
LaurentPolynomial szego_to_r_plus(const SzegoSystem& sys, int k);

}  // namespace cmv

#endif
