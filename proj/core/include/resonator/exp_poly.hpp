#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "resonator/graph.hpp"
#include "resonator/numeric.hpp"

namespace resonator {

// one term a * z^b * e^{-c s}
struct ExpTerm {
  Num a;
  long b = 0;
  Num c;
};

// finite sum of exponential-polynomial terms, canonically merged and sorted
// by (b, c). Rates closer than 1e-12 (relative) merge when inexact.
class ExpPoly {
 public:
  ExpPoly() = default;
  explicit ExpPoly(std::vector<ExpTerm> terms) { for (auto& t : terms) add_term(std::move(t)); }
  static ExpPoly one() { return ExpPoly({ExpTerm{Num(1), 0, Num(0)}}); }

  void add_term(ExpTerm t);
  const std::vector<ExpTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  long z_degree() const;
  Num coeff(long b, const Num& c) const;  // 0 if absent

  ExpPoly& operator+=(const ExpPoly& o);
  ExpPoly& operator-=(const ExpPoly& o);
  friend ExpPoly operator+(ExpPoly x, const ExpPoly& y) { return x += y; }
  friend ExpPoly operator-(ExpPoly x, const ExpPoly& y) { return x -= y; }
  friend ExpPoly operator*(const ExpPoly& x, const ExpPoly& y);
  ExpPoly& scale(const Num& factor);

  // all rates multiplied by alpha (graph scaling)
  ExpPoly with_scaled_rates(const Num& alpha) const;

  bool all_coeffs_exact() const;
  bool all_rates_exact() const;
  bool all_rates_integer() const;

  // value and d/ds
  std::pair<cpx, cpx> eval(cpx s, cpx z) const;

 private:
  std::vector<ExpTerm> terms_;
};

// symbolic transfer matrix J_s: entry (i,j) = e^{-s (l_i + l_j)/2} on the
// feeds-into support, absent elsewhere
struct SymbolicMatrix {
  int n = 0;
  std::vector<std::optional<Num>> rate;  // row-major, n*n

  const std::optional<Num>& at(int i, int j) const { return rate[size_t(i) * n + j]; }
};

SymbolicMatrix build_J(const DirectedEdgeCoding& coding);

// exact det(I - z J_s) by permutation expansion over the sparse support.
// max_symbols caps 2k for the exact expansion.
ExpPoly graph_zeta(const DirectedEdgeCoding& coding, int max_symbols = 16);

// exact symbolic trace of J_s^n, recorded with z-power n
ExpPoly trace_power(const SymbolicMatrix& J, int n);

// common-denominator form: every rate c = wpow * unit with integer wpow and
// unit = 1/q, so the substitution w = e^{-s * unit} gives a bivariate
// polynomial in (w, z). Chain period of the zero set is 2*pi*q.
struct Rationalized {
  Rational q;  // rate unit is 1/q
  struct WTerm {
    Num a;
    long zpow = 0;
    long wpow = 0;
  };
  std::vector<WTerm> terms;

  std::vector<cpx> w_coefficients(cpx z) const;  // index = wpow
};

Rationalized rationalize(const ExpPoly& p);

}  // namespace resonator
