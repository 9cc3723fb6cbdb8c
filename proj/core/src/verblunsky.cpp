#include "cmvweyl/verblunsky.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace cmv {

DerivedCoefficients derive_coefficients(Complex alpha) {
  const double m = std::abs(alpha);
  if (m > 1.0 + kStructTol)
    throw DomainError("derive_coefficients: |alpha| > 1");
  const double rho = std::sqrt(std::max(0.0, 1.0 - m * m));
  return {rho, 1.0 + alpha, 1.0 - alpha};
}

Eigen::Matrix2cd theta_block(Complex alpha) {
  const DerivedCoefficients d = derive_coefficients(alpha);
  Eigen::Matrix2cd t;
  t << -alpha, Complex(d.rho), Complex(d.rho), std::conj(alpha);
  return t;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double to_unit_double(std::uint64_t x) {
  return static_cast<double>(x >> 11) * (1.0 / 9007199254740992.0);
}

}  // namespace

Complex random_coefficient(std::uint64_t seed, int k, double radius_cap) {
  std::uint64_t s = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(
                                   static_cast<std::int64_t>(k))));
  const double u1 = to_unit_double(splitmix64(s));
  const double u2 = to_unit_double(splitmix64(s ^ 0x5851f42d4c957f2dull));
  const double r = radius_cap * std::sqrt(u1);
  return std::polar(r, kTwoPi * u2);
}

VerblunskySequence VerblunskySequence::constant(Complex c, int lo, int hi) {
  if (std::abs(c) >= 1.0)
    throw DomainError("constant generator: |c| >= 1");
  VerblunskySequence s;
  for (int k = lo; k <= hi; ++k) s.entries_[k] = c;
  std::ostringstream tag;
  tag << "constant(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag()
      << "i)";
  s.tag_ = tag.str();
  return s;
}

VerblunskySequence VerblunskySequence::random(std::uint64_t seed,
                                              double radius_cap, int lo,
                                              int hi) {
  if (radius_cap >= 1.0)
    throw DomainError("random generator: radius cap >= 1");
  VerblunskySequence s;
  for (int k = lo; k <= hi; ++k)
    s.entries_[k] = random_coefficient(seed, k, radius_cap);
  std::ostringstream tag;
  tag << "random(seed=" << seed << ",cap=" << radius_cap << ")";
  s.tag_ = tag.str();
  return s;
}

VerblunskySequence VerblunskySequence::geometric(double theta0, double theta1,
                                                 int lo, int hi,
                                                 double alpha0_phase) {
  const Complex g = -std::exp(Complex(0.0, 0.5 * (theta0 + theta1)));
  const double mod0 = std::cos(0.25 * (theta1 - theta0));
  const Complex alpha0 = std::polar(mod0, alpha0_phase);
  VerblunskySequence s;
  for (int k = lo; k <= hi; ++k)
    s.entries_[k] = alpha0 * std::pow(g, static_cast<double>(k));
  std::ostringstream tag;
  tag << "geometric(theta0=" << theta0 << ",theta1=" << theta1 << ")";
  s.tag_ = tag.str();
  return s;
}

VerblunskySequence VerblunskySequence::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open coefficient file: " + path);
  VerblunskySequence s;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    int k;
    double re, im;
    if (!(ls >> k >> re >> im))
      throw ParseError("malformed coefficient line " + std::to_string(lineno) +
                       " in " + path);
    s.set(k, Complex(re, im));
  }
  s.tag_ = "file(" + path + ")";
  return s;
}

Complex VerblunskySequence::at(int k) const {
  auto it = entries_.find(k);
  if (it == entries_.end())
    throw DomainError("coefficient missing at site " + std::to_string(k));
  return it->second;
}

void VerblunskySequence::set(int k, Complex v) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw DomainError("non-finite coefficient at site " + std::to_string(k));
  if (std::abs(v) >= 1.0)
    throw DomainError("interior coefficient with |alpha| >= 1 at site " +
                      std::to_string(k));
  boundary_sites_.erase(k);
  entries_[k] = v;
}

void VerblunskySequence::set_boundary(int k, double phase) {
  entries_[k] = std::polar(1.0, phase);
  boundary_sites_.insert(k);
}

int VerblunskySequence::min_site() const {
  if (entries_.empty()) throw DomainError("empty coefficient sequence");
  return entries_.begin()->first;
}

int VerblunskySequence::max_site() const {
  if (entries_.empty()) throw DomainError("empty coefficient sequence");
  return entries_.rbegin()->first;
}

void VerblunskySequence::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write coefficient file: " + path);
  out << "# k re im\n";
  out.precision(17);
  for (const auto& [k, v] : entries_)
    out << k << " " << v.real() << " " << v.imag() << "\n";
}

}  // namespace cmv
