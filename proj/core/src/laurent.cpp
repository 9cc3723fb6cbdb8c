#include "cmvweyl/laurent.hpp"

#include <algorithm>
#include <cmath>

namespace cmv {

LaurentPolynomial LaurentPolynomial::constant(Complex c) {
  return monomial(c, 0);
}

LaurentPolynomial LaurentPolynomial::monomial(Complex c, int exp) {
  LaurentPolynomial p;
  if (c != Complex(0.0)) {
    p.min_exp_ = exp;
    p.coeff_ = {c};
  }
  return p;
}

int LaurentPolynomial::min_exponent() const {
  if (is_zero()) throw DomainError("min_exponent of zero polynomial");
  return min_exp_;
}

int LaurentPolynomial::max_exponent() const {
  if (is_zero()) throw DomainError("max_exponent of zero polynomial");
  return min_exp_ + static_cast<int>(coeff_.size()) - 1;
}

Complex LaurentPolynomial::coeff(int exp) const {
  const int i = exp - min_exp_;
  if (i < 0 || i >= static_cast<int>(coeff_.size())) return {0.0, 0.0};
  return coeff_[static_cast<std::size_t>(i)];
}

void LaurentPolynomial::set_coeff(int exp, Complex c) {
  if (coeff_.empty()) {
    if (c == Complex(0.0)) return;
    min_exp_ = exp;
    coeff_ = {c};
    return;
  }
  if (exp < min_exp_) {
    coeff_.insert(coeff_.begin(), static_cast<std::size_t>(min_exp_ - exp),
                  Complex(0.0));
    min_exp_ = exp;
  } else if (exp > max_exponent()) {
    coeff_.resize(static_cast<std::size_t>(exp - min_exp_ + 1), Complex(0.0));
  }
  coeff_[static_cast<std::size_t>(exp - min_exp_)] = c;
  normalize();
}

Complex LaurentPolynomial::eval(Complex z) const {
  if (is_zero()) return {0.0, 0.0};
  if (z == Complex(0.0)) {
    if (min_exp_ < 0) throw DomainError("Laurent evaluation at z = 0");
    return coeff(0);
  }
  // Horner over the support, then one power of z for the offset.
  Complex acc(0.0);
  for (auto it = coeff_.rbegin(); it != coeff_.rend(); ++it)
    acc = acc * z + *it;
  return acc * std::pow(z, Complex(static_cast<double>(min_exp_)));
}

LaurentPolynomial LaurentPolynomial::shifted(int exp) const {
  LaurentPolynomial p(*this);
  if (!p.is_zero()) p.min_exp_ += exp;
  return p;
}

LaurentPolynomial LaurentPolynomial::conj_reflected() const {
  LaurentPolynomial p;
  if (is_zero()) return p;
  p.coeff_.resize(coeff_.size());
  p.min_exp_ = -max_exponent();
  for (std::size_t i = 0; i < coeff_.size(); ++i)
    p.coeff_[coeff_.size() - 1 - i] = std::conj(coeff_[i]);
  return p;
}

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) {
    *this = o;
    return *this;
  }
  const int lo = std::min(min_exp_, o.min_exp_);
  const int hi = std::max(max_exponent(), o.max_exponent());
  std::vector<Complex> out(static_cast<std::size_t>(hi - lo + 1),
                           Complex(0.0));
  for (std::size_t i = 0; i < coeff_.size(); ++i)
    out[static_cast<std::size_t>(min_exp_ - lo) + i] += coeff_[i];
  for (std::size_t i = 0; i < o.coeff_.size(); ++i)
    out[static_cast<std::size_t>(o.min_exp_ - lo) + i] += o.coeff_[i];
  min_exp_ = lo;
  coeff_ = std::move(out);
  normalize();
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& o) {
  LaurentPolynomial neg(o);
  neg *= Complex(-1.0);
  return *this += neg;
}

LaurentPolynomial& LaurentPolynomial::operator*=(Complex c) {
  if (c == Complex(0.0)) {
    coeff_.clear();
    min_exp_ = 0;
    return *this;
  }
  for (auto& v : coeff_) v *= c;
  return *this;
}

LaurentPolynomial operator*(const LaurentPolynomial& a,
                            const LaurentPolynomial& b) {
  LaurentPolynomial p;
  if (a.is_zero() || b.is_zero()) return p;
  p.min_exp_ = a.min_exp_ + b.min_exp_;
  p.coeff_.assign(a.coeff_.size() + b.coeff_.size() - 1, Complex(0.0));
  for (std::size_t i = 0; i < a.coeff_.size(); ++i)
    for (std::size_t j = 0; j < b.coeff_.size(); ++j)
      p.coeff_[i + j] += a.coeff_[i] * b.coeff_[j];
  p.normalize();
  return p;
}

double LaurentPolynomial::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& c : coeff_) m = std::max(m, std::abs(c));
  return m;
}

void LaurentPolynomial::prune(double rel_tol) {
  const double cut = rel_tol * max_abs_coeff();
  for (auto& c : coeff_)
    if (std::abs(c) <= cut) c = Complex(0.0);
  normalize();
}

double LaurentPolynomial::distance(const LaurentPolynomial& a,
                                   const LaurentPolynomial& b) {
  LaurentPolynomial d(a);
  d -= b;
  return d.max_abs_coeff();
}

void LaurentPolynomial::normalize() {
  std::size_t head = 0;
  while (head < coeff_.size() && coeff_[head] == Complex(0.0)) ++head;
  std::size_t tail = coeff_.size();
  while (tail > head && coeff_[tail - 1] == Complex(0.0)) --tail;
  if (head == tail) {
    coeff_.clear();
    min_exp_ = 0;
    return;
  }
  if (head > 0 || tail < coeff_.size()) {
    std::vector<Complex> out(coeff_.begin() + static_cast<long>(head),
                             coeff_.begin() + static_cast<long>(tail));
    min_exp_ += static_cast<int>(head);
    coeff_ = std::move(out);
  }
}

}  // namespace cmv
