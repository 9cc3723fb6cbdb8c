#ifndef CMVWEYL_GREENS_HPP
#define CMVWEYL_GREENS_HPP

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "cmvweyl/cmv_matrix.hpp"
#include "cmvweyl/types.hpp"
#include "cmvweyl/verblunsky.hpp"
#include "cmvweyl/weyl.hpp"

namespace cmv {

// Closed-form entry of the half-lattice resolvent (U_{side,k0} - z)^{-1} at
// (k, k'), assembled from the solution family and the measure-side m
// function of an n_ctx-site truncation.
Complex half_lattice_resolvent(const VerblunskySequence& seq, int k0,
                               Complex z, int k, int kp, Side side,
                               int n_ctx);

// Whole block over [lo, hi]^2; one family build, one m evaluation.
Eigen::MatrixXcd half_lattice_resolvent_block(const VerblunskySequence& seq,
                                              int k0, Complex z, int lo,
                                              int hi, Side side, int n_ctx);

// Closed-form entry of the full-lattice Green's function (U - z)^{-1}(k,k')
// through the Weyl solutions at reference site k0.
Complex full_lattice_green(const VerblunskySequence& seq, int k0, Complex z,
                           int k, int kp, int n_ctx);

Eigen::MatrixXcd full_lattice_green_block(const VerblunskySequence& seq,
                                          int k0, Complex z, int lo, int hi,
                                          int n_ctx);

// Wronskian of the two Weyl solution pairs at site k1; equals
// 2 (-1)^{k1} [M_+(z,k0) - M_-(z,k0)] independently of k1.
Complex weyl_wronskian(const VerblunskySequence& seq, int k0, Complex z,
                       int k1, int n_ctx);

struct StoneSchedulePoint {
  double r;
  double delta;
  Complex quadrature;  // schedule-evaluated right-hand side
  double residual;     // |quadrature - spectral projection value|
};

struct StoneReport {
  Complex projection;  // <f, F(U) E(arc) g> from the eigendecomposition
  std::vector<StoneSchedulePoint> points;
  double final_residual = 0.0;
};

// Finite-matrix Stone check: the spectral projection onto the half-open arc
// (theta1, theta2] paired with F, versus the boundary integral of the
// Cayley-type resolvent form evaluated on the (r, delta) schedule.  The
// theta quadrature refines the base panels adaptively near the Poisson
// spikes of the integrand.
StoneReport stone_projection_check(
    const BandedUnitary& u, const Eigen::VectorXcd& f,
    const Eigen::VectorXcd& g, double theta1, double theta2,
    const std::function<Complex(double)>& big_f,
    const std::vector<double>& r_schedule,
    const std::vector<double>& delta_schedule, int base_panels = 4096);

}  // namespace cmv

#endif
