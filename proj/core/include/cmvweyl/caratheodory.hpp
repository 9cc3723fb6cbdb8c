#ifndef CMVWEYL_CARATHEODORY_HPP
#define CMVWEYL_CARATHEODORY_HPP

#include <functional>
#include <string>
#include <vector>

#include "cmvweyl/spectral.hpp"
#include "cmvweyl/types.hpp"
#include "cmvweyl/verblunsky.hpp"

namespace cmv {

struct ArcSpec {
  double theta0 = 0.0;
  double theta1 = 0.0;
  enum class Flavor { open, closed, half_open } flavor = Flavor::half_open;

  double width() const { return theta1 - theta0; }
};

// ic + ∮ (zeta + z)/(zeta - z) dmu.
Complex herglotz_eval(const CircleMeasure& mu, double c, Complex z);

// Grid masses of the measure behind a Caratheodory function from its real
// part on the circle of radius r: bin-by-bin quadrature of Re f(r e^{i t}),
// returned as atoms at the bin centers.
CircleMeasure reconstruct_measure(const std::function<Complex(Complex)>& f,
                                  int bins, double r);

// Re f(r e^{i theta}) per grid point (the radial a.c.-density diagnostic).
std::vector<double> radial_ac_density(const std::function<Complex(Complex)>& f,
                                      const std::vector<double>& thetas,
                                      double r);

struct ExpHerglotzResult {
  double d = 0.0;                // -Re log f(0)
  std::vector<double> upsilon;   // pi/2 + Im log f(r zeta), branch-tracked
};

// Exponential representation data, with the logarithm branch followed
// continuously along each radial ray from the origin.
ExpHerglotzResult exp_herglotz(const std::function<Complex(Complex)>& f,
                               const std::vector<double>& thetas, double r,
                               int ray_steps = 64);

// max over k in k_list and theta on the arc-interior grid of
// |M_+(r zeta, k) + conj(M_-(r zeta, k))|.
double reflectionless_residual(const VerblunskySequence& seq,
                               const ArcSpec& arc,
                               const std::vector<int>& k_list, double r,
                               int grid_n, int n_ctx);

struct BorgReport {
  double theta0 = 0.0;
  double theta1 = 0.0;
  int n = 0;
  double containment_fraction = 0.0;
  double max_interior_gap = 0.0;
  double reflectionless_residual = 0.0;
  std::string warning;
};

// Spectral check of the geometric coefficient family attached to the arc
// [theta0, theta1]: eigenangle containment in the slightly fattened arc,
// coverage of the arc interior, and the reflectionless residual.
BorgReport borg_verify(double theta0, double theta1, int n,
                       double residual_r = 0.98);

}  // namespace cmv

#endif
