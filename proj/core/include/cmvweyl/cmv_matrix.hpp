#ifndef CMVWEYL_CMV_MATRIX_HPP
#define CMVWEYL_CMV_MATRIX_HPP

#include <Eigen/Dense>

#include "cmvweyl/types.hpp"
#include "cmvweyl/verblunsky.hpp"

namespace cmv {

// Finite section of a CMV operator together with its V and W factors.
// Row/column i of mat corresponds to lattice site offset + i, and theta
// blocks are aligned by the absolute parity of the site index.
struct BandedUnitary {
  int offset = 0;
  Eigen::MatrixXcd mat;
  Eigen::MatrixXcd v_factor;
  Eigen::MatrixXcd w_factor;

  int size() const { return static_cast<int>(mat.rows()); }
  int site(int row) const { return offset + row; }
  int row_of(int site) const { return site - offset; }
  bool contains_site(int site) const {
    return site >= offset && site < offset + size();
  }
  bool offset_is_even() const { return ((offset % 2) + 2) % 2 == 0; }

  double unitarity_residual() const;
  // Largest |entry| strictly outside the five-diagonal band.
  double band_violation() const;
};

// The finite-interval operator on sites [k_lo, k_hi] obtained by forcing
// unit-modulus coefficients e^{i s0} at site k_lo and e^{i s1} at site
// k_hi + 1.  Built as V * W from theta blocks; the block owning a boundary
// site degenerates to a diagonal, which is what makes the section unitary.
BandedUnitary build_finite_cmv(const VerblunskySequence& seq, int k_lo,
                               int k_hi, double s0, double s1);

// n-site truncation of the half-lattice operator with boundary phase s at
// the reference site (plus side: sites [k0, k0+n-1]; minus side: sites
// [k0-n+1, k0], whose splitting phase sits at site k0+1).  The far end is
// closed with far_phase.
BandedUnitary build_half_lattice(const VerblunskySequence& seq, int k0,
                                 double s, int n, Side side,
                                 double far_phase = 0.0);

}  // namespace cmv

#endif
