#ifndef CMVWEYL_WEYL_DISKS_HPP
#define CMVWEYL_WEYL_DISKS_HPP

#include <vector>

#include "cmvweyl/transfer.hpp"
#include "cmvweyl/types.hpp"
#include "cmvweyl/verblunsky.hpp"

namespace cmv {

// Boundary m-function of the finite interval [k0, k1] with far-end phase
// s1 (reference phase s0 = 0).
Complex boundary_m(const VerblunskySequence& seq, int k0, int k1, Complex z,
                   double s1);
Complex boundary_m(const SolutionFamily& fam, int k1, Complex z, double s1);

struct WeylDisk {
  Complex center;
  double radius = 0.0;
  Complex z;
  int k0 = 0, k1 = 0;
  // independent 3-point circumcircle fit through boundary samples
  Complex fit_center;
  double fit_radius = 0.0;
};

// Center and radius of the circle traced by the boundary m-function as the
// far-end phase varies.  The |p|^2 - |r|^2 denominators are evaluated
// through the energy identity (a one-signed sum), not by subtraction.
WeylDisk weyl_disk(const VerblunskySequence& seq, int k0, int k1, Complex z);

// Max over sampled phases of ||m(s1) - C| - R| / (1 + R).
double on_circle_residual(const VerblunskySequence& seq, const WeylDisk& disk,
                          int phases = 12);

// | (1 - |z|^-2) sum |p|^2  -  parity-split boundary combination |.
double energy_identity_residual(const VerblunskySequence& seq, int k0, int k1,
                                Complex z);

// Radii R(z, k1, k0) along increasing k1.
std::vector<double> limit_point_sweep(const VerblunskySequence& seq, int k0,
                                      Complex z,
                                      const std::vector<int>& k1_list);

}  // namespace cmv

#endif
