#include "resonator/numeric.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace resonator {

const char* errc_name(errc c) {
  switch (c) {
    case errc::not_trivalent: return "NotTrivalent";
    case errc::non_positive_length: return "NonPositiveLength";
    case errc::disconnected: return "Disconnected";
    case errc::bad_cyclic_order: return "BadCyclicOrder";
    case errc::non_positive_scale: return "NonPositiveScale";
    case errc::matrix_too_large: return "MatrixTooLarge";
    case errc::irrational_rates: return "IrrationalRates";
    case errc::zero_leading_coefficient: return "ZeroLeadingCoefficient";
    case errc::zero_on_boundary: return "ZeroOnBoundary";
    case errc::quadrature_not_converged: return "QuadratureNotConverged";
    case errc::no_convergence: return "NoConvergence";
    case errc::no_sign_information: return "NoSignInformation";
    case errc::boundary_resonance: return "BoundaryResonance";
    case errc::pole_hit: return "PoleHit";
    case errc::not_hyperbolic: return "NotHyperbolic";
    case errc::pole_inside_disk: return "PoleInsideDisk";
    case errc::domain_error: return "DomainError";
    case errc::not_a_disk_map: return "NotADiskMap";
    case errc::degenerate_spine: return "DegenerateSpine";
    case errc::gluing_mismatch: return "GluingMismatch";
    case errc::numerical_failure: return "NumericalFailure";
    case errc::pole_too_close: return "PoleTooClose";
    case errc::bound_not_applicable: return "BoundNotApplicable";
    case errc::parse_error: return "ParseError";
    case errc::config_error: return "ConfigError";
  }
  return "UnknownError";
}

Num Num::operator-() const {
  Num r = *this;
  r.q_ = -r.q_;
  r.d_ = -r.d_;
  return r;
}

Num& Num::operator+=(const Num& o) {
  if (exact_ && o.exact_) {
    q_ += o.q_;
    d_ = q_.get_d();
  } else {
    exact_ = false;
    d_ += o.d_;
  }
  return *this;
}

Num& Num::operator-=(const Num& o) { return *this += -o; }

Num& Num::operator*=(const Num& o) {
  if (exact_ && o.exact_) {
    q_ *= o.q_;
    d_ = q_.get_d();
  } else {
    exact_ = false;
    d_ *= o.d_;
  }
  return *this;
}

Num& Num::operator/=(const Num& o) {
  if (o.is_zero()) fail(errc::domain_error, "division by zero");
  if (exact_ && o.exact_) {
    q_ /= o.q_;
    d_ = q_.get_d();
  } else {
    exact_ = false;
    d_ /= o.d_;
  }
  return *this;
}

std::string Num::str() const {
  if (exact_) return q_.get_str();
  return format_double(d_);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

bool parse_decimal(const std::string& s, Rational& out) {
  // [-+]?digits[.digits]
  size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');
  std::string digits;
  long frac_digits = -1;
  bool any = false;
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits += s[i];
      any = true;
      if (frac_digits >= 0) ++frac_digits;
    } else if (s[i] == '.' && frac_digits < 0) {
      frac_digits = 0;
    } else {
      return false;
    }
  }
  if (!any) return false;
  mpz_class num(digits.empty() ? "0" : digits);
  mpz_class den(1);
  for (long d = 0; d < std::max(frac_digits, 0L); ++d) den *= 10;
  out = Rational(num, den);
  out.canonicalize();
  if (neg) out = -out;
  return true;
}

}  // namespace

Num parse_number(const std::string& text) {
  std::string s = text;
  // trim
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) fail(errc::parse_error, "empty number");

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rational num, den;
    if (!parse_decimal(s.substr(0, slash), num) || !parse_decimal(s.substr(slash + 1), den))
      fail(errc::parse_error, "bad rational '" + text + "'");
    if (den == 0) fail(errc::parse_error, "zero denominator in '" + text + "'");
    Rational q = num / den;
    q.canonicalize();
    return Num(q);
  }
  Rational q;
  if (parse_decimal(s, q)) return Num(q);

  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || !std::isfinite(v))
    fail(errc::parse_error, "bad number '" + text + "'");
  return Num::inexact(v);
}

}  // namespace resonator
