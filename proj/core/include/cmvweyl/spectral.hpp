#ifndef CMVWEYL_SPECTRAL_HPP
#define CMVWEYL_SPECTRAL_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "cmvweyl/cmv_matrix.hpp"
#include "cmvweyl/laurent.hpp"
#include "cmvweyl/types.hpp"
#include "cmvweyl/verblunsky.hpp"

namespace cmv {

// Finite nonnegative measure on the unit circle: atoms plus an optional
// density sampled on a uniform angle grid (density is taken relative to the
// normalized Lebesgue measure dtheta / 2 pi).
struct CircleMeasure {
  std::vector<double> angles;   // strictly increasing, in [0, 2 pi)
  std::vector<double> weights;  // strictly positive
  std::vector<double> density;  // empty when purely atomic

  std::size_t atom_count() const { return angles.size(); }
  double total_mass() const;
  Complex moment(int j) const;
  // ∮ (zeta + z) / (zeta - z) dmu
  Complex herglotz(Complex z) const;

  static CircleMeasure single_atom(double theta, double weight);
  // n equal atoms at the n-th roots of unity (a Lebesgue discretization).
  static CircleMeasure lebesgue_atoms(int n);

  void save_json(const std::string& path) const;
  static CircleMeasure load_json(const std::string& path);
};

// Spectral measure of a unitary finite section at the basis vector of the
// given site: atoms (arg lambda_j, |<delta_site, v_j>|^2), normalized to
// total mass one; near-zero weights are dropped.
CircleMeasure measure_from_operator(const BandedUnitary& u, int k0);

// ∮ conj(f) g dmu  (conjugate-linear in the first slot).
Complex inner_product(const LaurentPolynomial& f, const LaurentPolynomial& g,
                      const CircleMeasure& mu);

Eigen::MatrixXcd gram_matrix(const std::vector<LaurentPolynomial>& polys,
                             const CircleMeasure& mu);

enum class PolyFamily { p_plus, r_plus, p_minus, r_minus };

// First n orthonormal Laurent polynomials of the family in L^2(dmu),
// obtained by modified Gram-Schmidt (with one reorthogonalization pass) on
// the family's signed monomial order.
std::vector<LaurentPolynomial> gram_schmidt_opuc(const CircleMeasure& mu,
                                                 int k0, int n,
                                                 PolyFamily family);

struct ReconstructionResult {
  // alpha_hat on sites k0+1 .. k0+n (plus) or k0-n+1 .. k0 (minus).
  VerblunskySequence coefficients;
  std::vector<int> sites;
  std::vector<double> rho;  // read off the recursion normalization
};

// Inverse problem: recover Verblunsky coefficients from a probability
// measure via the orthonormal Laurent polynomials.
ReconstructionResult reconstruct_verblunsky(const CircleMeasure& mu, int k0,
                                            int n, Side side);

// 2x2 matrix-valued spectral measure at the pair (delta_{k-1}, delta_k):
// rank-one PSD atom weights.
struct MatrixMeasure2 {
  std::vector<double> angles;
  std::vector<Eigen::Matrix2cd> weights;

  Eigen::Matrix2cd total() const;
  Eigen::Matrix2cd herglotz(Complex z) const;
  MatrixMeasure2 transposed() const;
};

MatrixMeasure2 matrix_measure(const BandedUnitary& u, int k);

// Orthonormality of the two-dimensional Laurent systems built from the
// plus-side solution family against the 2x2 matrix measure (R system by
// default, P system against the transposed measure).  Returns the largest
// deviation of ∮ X(.,k)* dOmega X(.,k') from the identity pairing over
// |k - k0| <= range.
double full_lattice_basis_check(const BandedUnitary& u,
                                const VerblunskySequence& seq, int k0,
                                int range, bool p_system = false);

}  // namespace cmv

#endif
