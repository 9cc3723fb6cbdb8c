#ifndef CMVWEYL_LAURENT_HPP
#define CMVWEYL_LAURENT_HPP

#include <vector>

#include "cmvweyl/errors.hpp"
#include "cmvweyl/types.hpp"

namespace cmv {

// Finite linear combination of integer powers z^k, negative exponents
// allowed.  Coefficients are stored densely over the support window.
class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;

  static LaurentPolynomial constant(Complex c);
  static LaurentPolynomial monomial(Complex c, int exp);

  bool is_zero() const { return coeff_.empty(); }
  int min_exponent() const;
  int max_exponent() const;

  Complex coeff(int exp) const;
  void set_coeff(int exp, Complex c);

  // Exact finite sum of c_j z^j; z = 0 is rejected when negative exponents
  // are present.
  Complex eval(Complex z) const;

  LaurentPolynomial shifted(int exp) const;  // multiply by z^exp
  // Coefficientwise image of f under z -> 1/conj(z) followed by complex
  // conjugation: conj(f(1/conj(z))).
  LaurentPolynomial conj_reflected() const;

  LaurentPolynomial& operator+=(const LaurentPolynomial& o);
  LaurentPolynomial& operator-=(const LaurentPolynomial& o);
  LaurentPolynomial& operator*=(Complex c);

  friend LaurentPolynomial operator+(LaurentPolynomial a,
                                     const LaurentPolynomial& b) {
    a += b;
    return a;
  }
  friend LaurentPolynomial operator-(LaurentPolynomial a,
                                     const LaurentPolynomial& b) {
    a -= b;
    return a;
  }
  friend LaurentPolynomial operator*(Complex c, LaurentPolynomial a) {
    a *= c;
    return a;
  }
  friend LaurentPolynomial operator*(const LaurentPolynomial& a,
                                     const LaurentPolynomial& b);

  double max_abs_coeff() const;
  // Drop coefficients below rel_tol times the largest magnitude and trim the
  // support window.
  void prune(double rel_tol = kCoeffDropTol);

  // Max-norm distance between coefficient maps.
  static double distance(const LaurentPolynomial& a,
                         const LaurentPolynomial& b);

 private:
  void normalize();
  int min_exp_ = 0;
  std::vector<Complex> coeff_;  // coeff_[i] multiplies z^(min_exp_ + i)
};

}  // namespace cmv

#endif
