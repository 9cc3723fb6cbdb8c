#include "cmvweyl/caratheodory.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "cmvweyl/cmv_matrix.hpp"
#include "cmvweyl/errors.hpp"
#include "cmvweyl/weyl.hpp"

namespace cmv {

Complex herglotz_eval(const CircleMeasure& mu, double c, Complex z) {
  return Complex(0.0, c) + mu.herglotz(z);
}

CircleMeasure reconstruct_measure(const std::function<Complex(Complex)>& f,
                                  int bins, double r) {
  if (r >= 1.0) throw DomainError("reconstruct_measure needs r < 1");
  if (bins < 1) throw SizeError("reconstruct_measure needs bins >= 1");
  // Node count tied to the Poisson smoothing scale so that the full-circle
  // mean (= Re f(0)) is exact to the target accuracy.
  const double needed = 30.0 / std::max(1e-7, 1.0 - r);
  int per_bin = static_cast<int>(std::ceil(needed / bins));
  per_bin = std::clamp(per_bin, 64, 1 << 17);
  const long n = static_cast<long>(bins) * per_bin;
  const double h = kTwoPi / static_cast<double>(n);

  std::vector<double> mass(static_cast<std::size_t>(bins), 0.0);
  for (long i = 0; i < n; ++i) {
    const double theta = (static_cast<double>(i) + 0.5) * h;
    const double re = f(std::polar(r, theta)).real();
    mass[static_cast<std::size_t>(i / per_bin)] += re * h / kTwoPi;
  }

  CircleMeasure mu;
  const double bin_width = kTwoPi / bins;
  for (int b = 0; b < bins; ++b) {
    const double w = mass[static_cast<std::size_t>(b)];
    if (w <= 1e-15) continue;  // rounding of empty bins
    mu.angles.push_back((b + 0.5) * bin_width);
    mu.weights.push_back(w);
  }
  return mu;
}

std::vector<double> radial_ac_density(const std::function<Complex(Complex)>& f,
                                      const std::vector<double>& thetas,
                                      double r) {
  if (r >= 1.0) throw DomainError("radial_ac_density needs r < 1");
  std::vector<double> out;
  out.reserve(thetas.size());
  for (double t : thetas) out.push_back(f(std::polar(r, t)).real());
  return out;
}

ExpHerglotzResult exp_herglotz(const std::function<Complex(Complex)>& f,
                               const std::vector<double>& thetas, double r,
                               int ray_steps) {
  if (r >= 1.0) throw DomainError("exp_herglotz needs r < 1");
  const Complex f0 = f(Complex(0.0));
  if (std::abs(f0) < 1e-12)
    throw BranchError("f(0) too small to anchor the logarithm branch");
  ExpHerglotzResult out;
  out.d = -std::log(std::abs(f0));
  out.upsilon.reserve(thetas.size());
  for (double t : thetas) {
    // continuous arg along the ray 0 -> r e^{it}
    double arg = std::arg(f0);
    Complex prev = f0;
    for (int s = 1; s <= ray_steps; ++s) {
      const double rr = r * static_cast<double>(s) / ray_steps;
      const Complex cur = f(std::polar(rr, t));
      if (std::abs(cur) < 1e-12)
        throw BranchError("|f| vanishes along the ray; branch ambiguous");
      arg += std::arg(cur / prev);
      prev = cur;
    }
    out.upsilon.push_back(kPi / 2.0 + arg);  // pi/2 + Im log f(r zeta)
  }
  return out;
}

double reflectionless_residual(const VerblunskySequence& seq,
                               const ArcSpec& arc,
                               const std::vector<int>& k_list, double r,
                               int grid_n, int n_ctx) {
  if (r >= 1.0) throw DomainError("reflectionless residual needs r < 1");
  double worst = 0.0;
  for (int k : k_list) {
    const MFunctionContext ctx(seq, k, n_ctx);
    for (int i = 0; i < grid_n; ++i) {
      const double theta =
          arc.theta0 + (i + 0.5) * arc.width() / grid_n;
      const Complex z = std::polar(r, theta);
      const Complex mp = big_M(ctx, z, Side::plus);
      const Complex mm = big_M(ctx, z, Side::minus);
      worst = std::max(worst, std::abs(mp + std::conj(mm)));
    }
  }
  return worst;
}

BorgReport borg_verify(double theta0, double theta1, int n,
                       double residual_r) {
  if (!(theta0 >= 0.0 && theta0 < theta1 && theta1 <= theta0 + kTwoPi))
    throw DomainError("borg_verify needs 0 <= theta0 < theta1 <= theta0+2pi");
  if (n < 64) throw SizeError("borg_verify needs n >= 64");

  BorgReport rep;
  rep.theta0 = theta0;
  rep.theta1 = theta1;
  rep.n = n;
  if (theta1 - theta0 < 0.1)
    rep.warning = "arc width below resolution (0.1 rad)";

  const int half = n / 2;
  const int pad = n + 4;
  const VerblunskySequence seq =
      VerblunskySequence::geometric(theta0, theta1, -pad, pad);
  const BandedUnitary u =
      build_finite_cmv(seq, -half, -half + n - 1, 0.0, 0.0);

  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(u.mat);
  std::vector<double> inside;
  int contained = 0;
  const double eta = 10.0 / n;
  const double lo = theta0 - eta;
  const double fat_width = (theta1 + eta) - lo;
  for (int j = 0; j < n; ++j) {
    const double phi = std::arg(schur.matrixT().diagonal()(j));
    const double rel = wrap_angle(phi - lo);
    if (fat_width >= kTwoPi || rel <= fat_width) {
      ++contained;
      inside.push_back(rel + lo);
    }
  }
  rep.containment_fraction = static_cast<double>(contained) / n;

  std::sort(inside.begin(), inside.end());
  double max_gap = 0.0;
  for (std::size_t i = 1; i < inside.size(); ++i)
    max_gap = std::max(max_gap, inside[i] - inside[i - 1]);
  rep.max_interior_gap = max_gap;

  const ArcSpec arc{theta0, theta1, ArcSpec::Flavor::open};
  rep.reflectionless_residual =
      reflectionless_residual(seq, arc, {0, 1}, residual_r, 24, half);
  return rep;
}

}  // namespace cmv
