#ifndef CMVWEYL_WEYL_HPP
#define CMVWEYL_WEYL_HPP

#include <Eigen/Dense>
#include <vector>

#include "cmvweyl/spectral.hpp"
#include "cmvweyl/transfer.hpp"
#include "cmvweyl/types.hpp"
#include "cmvweyl/verblunsky.hpp"

namespace cmv {

// Measures and derived scalars backing the Weyl-Titchmarsh functions at a
// reference site.  The plus measure is referenced at k0; the minus measure
// is referenced at k0 - 1 (the Moebius step from m_- to M_- consumes the
// shifted reference, so the shift is part of the context, never implicit).
class MFunctionContext {
 public:
  MFunctionContext(const VerblunskySequence& seq, int k0, int n);

  int k0() const { return k0_; }
  int minus_reference_site() const { return k0_ - 1; }
  int truncation_size() const { return n_; }
  const VerblunskySequence& sequence() const { return seq_; }
  const CircleMeasure& plus_measure() const { return mu_plus_; }
  const CircleMeasure& minus_measure() const { return mu_minus_; }
  const DerivedCoefficients& derived_at_k0() const { return d_; }

 private:
  VerblunskySequence seq_;
  int k0_;
  int n_;
  DerivedCoefficients d_;
  CircleMeasure mu_plus_;   // spectral measure at delta_{k0}
  CircleMeasure mu_minus_;  // spectral measure at delta_{k0-1}
};

// m_+(z, k0) / m_-(z, k0-1): signed Herglotz transforms of the half-lattice
// spectral measures; m_{+-}(0) = +-1.
Complex m_function(const MFunctionContext& ctx, Complex z, Side side);

// Full-line Weyl functions at k0: M_+ = m_+, M_- is the Moebius image of
// m_-(., k0-1); M_+(0) = 1 and M_-(0) = (alpha_{k0}+1)/(alpha_{k0}-1).
Complex big_M(const MFunctionContext& ctx, Complex z, Side side);

// Companion functions referenced at k0 - 1: hat M_+ is the inverse Moebius
// image of m_+(., k0), hat M_- = m_-(., k0-1).
Complex hat_M(const MFunctionContext& ctx, Complex z, Side side);

Complex phi_transform(Complex big_m);  // (M-1)/(M+1)
Complex phi_inverse(Complex phi);      // (1+Phi)/(1-Phi)

enum class RiccatiMode { M, Phi, InvPhi };

// Absolute residual of the one-step Riccati identity at site k linking
// values at sites k-1 and k.
double riccati_residual(const VerblunskySequence& seq, int k, Complex z,
                        RiccatiMode mode, Complex value_km1, Complex value_k);

// Taylor coefficients phi_{+,j}(k), j = 1..J, of the Schur function
// Phi_+(., k) from the coefficient recursion.
std::vector<Complex> schur_series(const VerblunskySequence& seq, int k, int J);
// Taylor coefficients of 1/Phi_-(., k), j = 0..J.
std::vector<Complex> inv_phi_minus_series(const VerblunskySequence& seq, int k,
                                          int J);

struct WeylSample {
  int k;
  Complex u, v;
};

struct WeylPairSamples {
  int lo = 0;
  std::vector<Complex> u, v;
  Complex at_u(int k) const { return u[static_cast<std::size_t>(k - lo)]; }
  Complex at_v(int k) const { return v[static_cast<std::size_t>(k - lo)]; }
};

// Samples of the Weyl combination (q + M p, s + M r) of a solution family
// over [lo, hi].  The direct sum cancels catastrophically in the decaying
// tail, so the tail is rebuilt by backward recursion seeded `buffer` sites
// beyond the window and anchored at the family reference site; direct and
// recursed values are chosen per site by error estimate.
WeylPairSamples weyl_pair_samples(const VerblunskySequence& seq,
                                  const SolutionFamily& fam, Complex z,
                                  Complex m_value, Side decay_toward, int lo,
                                  int hi, int buffer = 48);

// Weyl solutions u = q_+ + M p_+, v = s_+ + M r_+ evaluated on a window.
std::vector<WeylSample> weyl_solutions(const VerblunskySequence& seq, int k0,
                                       Complex z, int win_lo, int win_hi,
                                       Side side, int n_ctx);

struct MatrixMValue {
  Eigen::Matrix2cd m;        // route A (closed forms in M_+ / M_-)
  Eigen::Matrix2cd m_tilde;  // congruence-transformed variant
  double route_b_residual;   // max entry deviation from the finite-matrix route
};

// 2x2 matrix Weyl function at site k, evaluated through the half-lattice
// M functions (route A) and cross-checked against the quadratic form of the
// finite resolvent (route B).
MatrixMValue matrix_M(const MFunctionContext& ctx, const BandedUnitary& u,
                      Complex z);

// Closed form of the tilde variant from M_+ / M_- and alpha_k.
Eigen::Matrix2cd matrix_m_tilde_closed(Complex m_plus, Complex m_minus,
                                       Complex alpha_k);
// Congruence factor B with m_tilde = B^* M B / 4.
Eigen::Matrix2cd m_tilde_congruence_factor(Complex alpha_k, bool k_odd);

struct Phi11Value {
  Complex from_m11;   // (M_{1,1}-1)/(M_{1,1}+1)
  Complex from_ratio; // Phi_+ / Phi_-
};

Phi11Value phi_11(const MFunctionContext& ctx, Complex z);

// Bin masses of the tilde matrix measure over a uniform angle partition,
// reconstructed from boundary values of Re(m_tilde) at radius r.
std::vector<Eigen::Matrix2cd> omega_tilde_bins(const MFunctionContext& ctx,
                                               int bins, double r,
                                               int nodes_per_bin = 64);

}  // namespace cmv

#endif
