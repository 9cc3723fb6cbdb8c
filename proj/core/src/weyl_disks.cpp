#include "cmvweyl/weyl_disks.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "cmvweyl/errors.hpp"

namespace cmv {

namespace {

bool site_odd(int k) { return ((k % 2) + 2) % 2 == 1; }

void require_disk_point(Complex z) {
  if (z == Complex(0.0)) throw DomainError("weyl disk needs z != 0");
  if (std::abs(std::abs(z) - 1.0) < 1e-12)
    throw DomainError("weyl disk degenerates on |z| = 1");
}

struct BoundaryValues {
  Complex p, r, q, s;
};

BoundaryValues eval_at(const SolutionFamily& fam, int k1, Complex z) {
  return {fam.p(k1).eval(z), fam.r(k1).eval(z), fam.q(k1).eval(z),
          fam.s(k1).eval(z)};
}

Complex circumcenter(Complex z1, Complex z2, Complex z3) {
  const Complex w1 = z1 - z3, w2 = z2 - z3;
  Eigen::Matrix2d a;
  a << w1.real(), w1.imag(), w2.real(), w2.imag();
  Eigen::Vector2d rhs(0.5 * std::norm(w1), 0.5 * std::norm(w2));
  if (std::abs(a.determinant()) < 1e-30)
    throw SingularError("collinear points in circle fit");
  const Eigen::Vector2d c = a.colPivHouseholderQr().solve(rhs);
  return z3 + Complex(c(0), c(1));
}

}  // namespace

Complex boundary_m(const SolutionFamily& fam, int k1, Complex z, double s1) {
  require_disk_point(z);
  const BoundaryValues bv = eval_at(fam, k1, z);
  Complex num, den;
  if (site_odd(k1)) {
    const Complex e = std::polar(1.0, s1);
    num = bv.q + bv.s * e;
    den = bv.p + bv.r * e;
  } else {
    const Complex e = std::polar(1.0, -s1);
    num = bv.q / z + bv.s * e;
    den = bv.p / z + bv.r * e;
  }
  const double scale = std::max({std::abs(bv.p), std::abs(bv.r), 1.0});
  if (std::abs(den) < 1e-12 * scale)
    throw DomainError("tangential boundary phase excluded");
  return -num / den;
}

Complex boundary_m(const VerblunskySequence& seq, int k0, int k1, Complex z,
                   double s1) {
  if (k1 <= k0) throw SizeError("boundary_m needs k1 > k0");
  const SolutionFamily fam(seq, k0, k0, k1, Side::plus);
  return boundary_m(fam, k1, z, s1);
}

WeylDisk weyl_disk(const VerblunskySequence& seq, int k0, int k1, Complex z) {
  if (k1 <= k0) throw SizeError("weyl_disk needs k1 > k0");
  require_disk_point(z);
  const SolutionFamily fam(seq, k0, k0, k1, Side::plus);

  const double inv2 = 1.0 / std::norm(z);
  double psum = 0.0;
  for (int k = k0; k <= k1; ++k) psum += std::norm(fam.p(k).eval(z));
  const double energy = (1.0 - inv2) * psum;  // signed |p|^2 - |r|^2 proxy

  const bool odd0 = site_odd(k0);
  const bool odd1 = site_odd(k1);
  const double az = std::abs(z);
  double factor;
  if (odd0 && odd1)
    factor = 2.0 * az;
  else if (!odd0 && odd1)
    factor = 2.0;
  else if (odd0 && !odd1)
    factor = 2.0;
  else
    factor = 2.0 / az;

  WeylDisk disk;
  disk.z = z;
  disk.k0 = k0;
  disk.k1 = k1;
  disk.radius = factor / (std::abs(1.0 - inv2) * psum);

  const BoundaryValues bv = eval_at(fam, k1, z);
  if (odd1) {
    // |p|^2 - |r|^2 = energy
    const Complex wron = odd0 ? 2.0 * z : Complex(2.0);
    disk.center = -bv.s / bv.r - (std::conj(bv.p) / bv.r) * wron / energy;
  } else {
    // |p/z|^2 - |r|^2 = -energy
    const Complex wron = odd0 ? Complex(-2.0) : -1.0 / z * 2.0;
    disk.center =
        -bv.s / bv.r - (std::conj(bv.p / z) / bv.r) * wron / (-energy);
  }

  const Complex m1 = boundary_m(fam, k1, z, 0.0);
  const Complex m2 = boundary_m(fam, k1, z, kTwoPi / 3.0);
  const Complex m3 = boundary_m(fam, k1, z, 2.0 * kTwoPi / 3.0);
  disk.fit_center = circumcenter(m1, m2, m3);
  disk.fit_radius = std::abs(m1 - disk.fit_center);
  return disk;
}

double on_circle_residual(const VerblunskySequence& seq, const WeylDisk& disk,
                          int phases) {
  const SolutionFamily fam(seq, disk.k0, disk.k0, disk.k1, Side::plus);
  double worst = 0.0;
  for (int i = 0; i < phases; ++i) {
    const double s1 = kTwoPi * i / phases;
    const Complex m = boundary_m(fam, disk.k1, disk.z, s1);
    worst = std::max(
        worst, std::abs(std::abs(m - disk.center) - disk.radius) /
                   (1.0 + disk.radius));
  }
  return worst;
}

double energy_identity_residual(const VerblunskySequence& seq, int k0, int k1,
                                Complex z) {
  if (k1 <= k0) throw SizeError("energy identity needs k1 > k0");
  require_disk_point(z);
  const SolutionFamily fam(seq, k0, k0, k1, Side::plus);
  const double inv2 = 1.0 / std::norm(z);
  double psum = 0.0;
  for (int k = k0; k <= k1; ++k) psum += std::norm(fam.p(k).eval(z));
  const double lhs = (1.0 - inv2) * psum;
  const double p1 = std::norm(fam.p(k1).eval(z));
  const double r1 = std::norm(fam.r(k1).eval(z));
  const double rhs = site_odd(k1) ? p1 - r1 : r1 - inv2 * p1;
  return std::abs(lhs - rhs);
}

std::vector<double> limit_point_sweep(const VerblunskySequence& seq, int k0,
                                      Complex z,
                                      const std::vector<int>& k1_list) {
  std::vector<double> radii;
  radii.reserve(k1_list.size());
  for (int k1 : k1_list) radii.push_back(weyl_disk(seq, k0, k1, z).radius);
  return radii;
}

}  // namespace cmv
