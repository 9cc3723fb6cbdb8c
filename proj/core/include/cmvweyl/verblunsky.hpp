#ifndef CMVWEYL_VERBLUNSKY_HPP
#define CMVWEYL_VERBLUNSKY_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "cmvweyl/errors.hpp"
#include "cmvweyl/types.hpp"

namespace cmv {

// rho = sqrt(1-|alpha|^2), a = 1+alpha, b = 1-alpha.
struct DerivedCoefficients {
  double rho;
  Complex a;
  Complex b;
};

DerivedCoefficients derive_coefficients(Complex alpha);

// The symmetric unitary 2x2 block [[-alpha, rho], [rho, conj(alpha)]].
Eigen::Matrix2cd theta_block(Complex alpha);

// A doubly indexed family of Verblunsky coefficients on a finite window of
// lattice sites.  Interior sites satisfy |alpha_k| < 1; sites registered as
// boundary sites carry unit-modulus values and split the lattice.
class VerblunskySequence {
 public:
  VerblunskySequence() = default;

  static VerblunskySequence constant(Complex c, int lo, int hi);
  static VerblunskySequence random(std::uint64_t seed, double radius_cap,
                                   int lo, int hi);
  // alpha_k = alpha0 * g^k with g = -exp(i(theta0+theta1)/2) and
  // |alpha0| = cos((theta1-theta0)/4); alpha0 phase configurable.
  static VerblunskySequence geometric(double theta0, double theta1, int lo,
                                      int hi, double alpha0_phase = 0.0);
  static VerblunskySequence from_file(const std::string& path);

  Complex at(int k) const;
  bool has(int k) const { return entries_.count(k) != 0; }
  void set(int k, Complex v);
  void set_boundary(int k, double phase);
  bool is_boundary(int k) const { return boundary_sites_.count(k) != 0; }

  int min_site() const;
  int max_site() const;
  bool empty() const { return entries_.empty(); }

  const std::string& generator_tag() const { return tag_; }
  void set_generator_tag(std::string tag) { tag_ = std::move(tag); }

  void save(const std::string& path) const;

 private:
  std::map<int, Complex> entries_;
  std::set<int> boundary_sites_;
  std::string tag_ = "manual";
};

// Deterministic per-site value in the open disk of the given radius; the same
// (seed, k) pair always yields the same coefficient regardless of window.
Complex random_coefficient(std::uint64_t seed, int k, double radius_cap);

}  // namespace cmv

#endif
