#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <string>

#include "resonator/errors.hpp"

namespace resonator {

using cpx = std::complex<double>;
using Rational = mpq_class;

// scalar that stays exact-rational as long as every operand is rational,
// and degrades to double otherwise. Graph lengths and zeta coefficients use
// this so that rational-length graphs get exact polynomials.
class Num {
 public:
  Num() : exact_(true), q_(0), d_(0.0) {}
  Num(int v) : exact_(true), q_(v), d_(double(v)) {}
  Num(long v) : exact_(true), q_(long(v)), d_(double(v)) {}
  Num(const Rational& q) : exact_(true), q_(q), d_(q.get_d()) { q_.canonicalize(); }
  static Num inexact(double v) {
    Num n;
    n.exact_ = false;
    n.q_ = 0;
    n.d_ = v;
    return n;
  }

  bool exact() const { return exact_; }
  double value() const { return d_; }
  const Rational& rational() const {
    if (!exact_) fail(errc::domain_error, "inexact value has no rational form");
    return q_;
  }

  Num operator-() const;
  Num& operator+=(const Num& o);
  Num& operator-=(const Num& o);
  Num& operator*=(const Num& o);
  Num& operator/=(const Num& o);

  friend Num operator+(Num a, const Num& b) { return a += b; }
  friend Num operator-(Num a, const Num& b) { return a -= b; }
  friend Num operator*(Num a, const Num& b) { return a *= b; }
  friend Num operator/(Num a, const Num& b) { return a /= b; }

  bool is_zero() const { return exact_ ? q_ == 0 : d_ == 0.0; }
  int sign() const { return exact_ ? sgn(q_) : (d_ > 0) - (d_ < 0); }

  // exact comparison when both sides are exact, double comparison otherwise
  friend bool operator==(const Num& a, const Num& b) {
    if (a.exact_ && b.exact_) return a.q_ == b.q_;
    return a.d_ == b.d_;
  }
  friend bool operator<(const Num& a, const Num& b) {
    if (a.exact_ && b.exact_) return a.q_ < b.q_;
    return a.d_ < b.d_;
  }

  std::string str() const;

 private:
  bool exact_;
  Rational q_;
  double d_;
};

// accepts "p/q", integers, and plain decimal strings (all exact); anything
// else that strtod understands comes back as an inexact Num
Num parse_number(const std::string& text);

std::string format_double(double v);  // 17 significant digits, locale-free

}  // namespace resonator
