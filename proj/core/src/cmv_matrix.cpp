#include "cmvweyl/cmv_matrix.hpp"

#include <cmath>

#include "cmvweyl/errors.hpp"

namespace cmv {

double BandedUnitary::unitarity_residual() const {
  const Eigen::MatrixXcd r =
      mat.adjoint() * mat -
      Eigen::MatrixXcd::Identity(mat.rows(), mat.cols());
  return r.cwiseAbs().maxCoeff();
}

double BandedUnitary::band_violation() const {
  double worst = 0.0;
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j)
      if (std::abs(i - j) > 2) worst = std::max(worst, std::abs(mat(i, j)));
  return worst;
}

namespace {

// Accumulate the direct sum of theta blocks of one parity into a factor
// matrix over sites [k_lo, k_hi].  Block j couples sites (j-1, j); blocks
// sticking out of the interval contribute only their inside diagonal entry.
void place_blocks(Eigen::MatrixXcd& f, const VerblunskySequence& seq, int k_lo,
                  int k_hi, double s0, double s1, int parity) {
  for (int j = k_lo; j <= k_hi + 1; ++j) {
    if ((((j % 2) + 2) % 2) != parity) continue;
    Complex alpha;
    if (j == k_lo)
      alpha = std::polar(1.0, s0);
    else if (j == k_hi + 1)
      alpha = std::polar(1.0, s1);
    else
      alpha = seq.at(j);
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
      throw DomainError("non-finite coefficient at site " + std::to_string(j));
    const Eigen::Matrix2cd th = theta_block(alpha);
    const int r = j - 1 - k_lo;  // local row of the block's first site
    if (j == k_lo) {
      f(0, 0) = th(1, 1);  // conj(alpha) on the inside site
    } else if (j == k_hi + 1) {
      f(r, r) = th(0, 0);  // -alpha on the inside site
    } else {
      f.block<2, 2>(r, r) = th;
    }
  }
}

}  // namespace

BandedUnitary build_finite_cmv(const VerblunskySequence& seq, int k_lo,
                               int k_hi, double s0, double s1) {
  if (k_hi <= k_lo)
    throw SizeError("finite CMV interval must span at least 2 sites");
  const int n = k_hi - k_lo + 1;
  BandedUnitary u;
  u.offset = k_lo;
  u.v_factor = Eigen::MatrixXcd::Zero(n, n);
  u.w_factor = Eigen::MatrixXcd::Zero(n, n);
  place_blocks(u.v_factor, seq, k_lo, k_hi, s0, s1, 0);
  place_blocks(u.w_factor, seq, k_lo, k_hi, s0, s1, 1);
  u.mat = u.v_factor * u.w_factor;
  return u;
}

BandedUnitary build_half_lattice(const VerblunskySequence& seq, int k0,
                                 double s, int n, Side side,
                                 double far_phase) {
  if (n < 2) throw SizeError("half-lattice truncation needs n >= 2");
  if (side == Side::plus) return build_finite_cmv(seq, k0, k0 + n - 1, s, far_phase);
  return build_finite_cmv(seq, k0 - n + 1, k0, far_phase, s);
}

}  // namespace cmv
