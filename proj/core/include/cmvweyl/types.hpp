#ifndef CMVWEYL_TYPES_HPP
#define CMVWEYL_TYPES_HPP

#include <complex>

namespace cmv {

using Complex = std::complex<double>;

enum class Side { plus, minus };

// Tolerances shared across the library: structural identities are checked
// at kStructTol, accumulated unitarity at kUnitaryTol.
inline constexpr double kStructTol = 1e-14;
inline constexpr double kUnitaryTol = 1e-12;
inline constexpr double kCoeffDropTol = 1e-15;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Wrap an angle into [0, 2*pi).
inline double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

}  // namespace cmv

#endif
