#include "resonator/exp_poly.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace resonator {

namespace {

constexpr double kRateMergeTol = 1e-12;

bool rate_equal(const Num& x, const Num& y) {
  if (x.exact() && y.exact()) return x == y;
  double scale = std::max({1.0, std::abs(x.value()), std::abs(y.value())});
  return std::abs(x.value() - y.value()) <= kRateMergeTol * scale;
}

bool term_before(const ExpTerm& s, const ExpTerm& t) {
  if (s.b != t.b) return s.b < t.b;
  if (rate_equal(s.c, t.c)) return false;
  return s.c < t.c;
}

}  // namespace

void ExpPoly::add_term(ExpTerm t) {
  if (t.a.is_zero()) return;
  if (t.b < 0) fail(errc::domain_error, "negative z-power");
  auto it = std::lower_bound(terms_.begin(), terms_.end(), t, term_before);
  if (it != terms_.end() && it->b == t.b && rate_equal(it->c, t.c)) {
    it->a += t.a;
    if (it->a.is_zero()) terms_.erase(it);
  } else {
    terms_.insert(it, std::move(t));
  }
}

long ExpPoly::z_degree() const {
  long deg = 0;
  for (const auto& t : terms_) deg = std::max(deg, t.b);
  return deg;
}

Num ExpPoly::coeff(long b, const Num& c) const {
  for (const auto& t : terms_)
    if (t.b == b && rate_equal(t.c, c)) return t.a;
  return Num(0);
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& o) {
  for (const auto& t : o.terms_) add_term(t);
  return *this;
}

ExpPoly& ExpPoly::operator-=(const ExpPoly& o) {
  for (const auto& t : o.terms_) add_term({-t.a, t.b, t.c});
  return *this;
}

ExpPoly operator*(const ExpPoly& x, const ExpPoly& y) {
  ExpPoly out;
  for (const auto& s : x.terms_)
    for (const auto& t : y.terms_) out.add_term({s.a * t.a, s.b + t.b, s.c + t.c});
  return out;
}

ExpPoly& ExpPoly::scale(const Num& factor) {
  if (factor.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.a *= factor;
  return *this;
}

ExpPoly ExpPoly::with_scaled_rates(const Num& alpha) const {
  ExpPoly out;
  for (const auto& t : terms_) out.add_term({t.a, t.b, t.c * alpha});
  return out;
}

bool ExpPoly::all_coeffs_exact() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const ExpTerm& t) { return t.a.exact(); });
}

bool ExpPoly::all_rates_exact() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const ExpTerm& t) { return t.c.exact(); });
}

bool ExpPoly::all_rates_integer() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const ExpTerm& t) {
    return t.c.exact() && t.c.rational().get_den() == 1;
  });
}

std::pair<cpx, cpx> ExpPoly::eval(cpx s, cpx z) const {
  cpx value = 0, ds = 0;
  for (const auto& t : terms_) {
    cpx zb = t.b == 0 ? cpx(1) : std::pow(z, double(t.b));
    cpx term = t.a.value() * zb * std::exp(-t.c.value() * s);
    value += term;
    ds += -t.c.value() * term;
  }
  return {value, ds};
}

SymbolicMatrix build_J(const DirectedEdgeCoding& coding) {
  const int n = coding.symbols();
  SymbolicMatrix J;
  J.n = n;
  J.rate.assign(size_t(n) * n, std::nullopt);
  const Num half = Num(Rational(1, 2));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (coding.A(i, j)) J.rate[size_t(i) * n + j] = (coding.length[i] + coding.length[j]) * half;
  return J;
}

ExpPoly graph_zeta(const DirectedEdgeCoding& coding, int max_symbols) {
  const int n = coding.symbols();
  if (n > max_symbols)
    fail(errc::matrix_too_large, "2k = " + std::to_string(n) + " exceeds the exact-expansion cap");
  SymbolicMatrix J = build_J(coding);

  // det(I - zJ) over column subsets: D[S] is the minor of rows 0..|S|-1 on
  // columns S. Sign of extending by column j is the parity of the set bits
  // above j (inversions added by the new assignment).
  const uint32_t full = (n == 32) ? ~uint32_t(0) : ((uint32_t(1) << n) - 1);
  std::vector<ExpPoly> cur(size_t(full) + 1), next;
  cur[0] = ExpPoly::one();
  std::vector<char> live(size_t(full) + 1, 0), next_live;
  live[0] = 1;
  for (int r = 0; r < n; ++r) {
    next.assign(size_t(full) + 1, ExpPoly{});
    next_live.assign(size_t(full) + 1, 0);
    for (uint32_t S = 0; S <= full; ++S) {
      if (!live[S] || std::popcount(S) != r) continue;
      const ExpPoly& minor = cur[S];
      for (int j = 0; j < n; ++j) {
        if (S & (uint32_t(1) << j)) continue;
        // entry (r, j) of I - zJ
        ExpPoly entry;
        if (r == j) entry.add_term({Num(1), 0, Num(0)});
        if (J.at(r, j)) entry.add_term({Num(-1), 1, *J.at(r, j)});
        if (entry.empty()) continue;
        int sgn = std::popcount(S >> (j + 1)) % 2 ? -1 : 1;
        ExpPoly contrib = minor * entry;
        if (sgn < 0) contrib.scale(Num(-1));
        uint32_t NS = S | (uint32_t(1) << j);
        next[NS] += contrib;
        next_live[NS] = 1;
      }
    }
    cur.swap(next);
    live.swap(next_live);
  }
  return cur[full];
}

ExpPoly trace_power(const SymbolicMatrix& J, int n) {
  if (n < 1) fail(errc::domain_error, "power must be >= 1");
  ExpPoly out;
  // walk all closed paths of length n, accumulating the rate sum
  int start = 0;
  auto rec = [&](auto&& self, int cur, int depth, Num acc) -> void {
    if (depth == n) {
      if (J.at(cur, start)) out.add_term({Num(1), n, acc + *J.at(cur, start)});
      return;
    }
    for (int j = 0; j < J.n; ++j)
      if (J.at(cur, j)) self(self, j, depth + 1, acc + *J.at(cur, j));
  };
  for (start = 0; start < J.n; ++start) rec(rec, start, 1, Num(0));
  return out;
}

namespace {

// gcd of positive rationals: gcd(n_i/d_i) = gcd(n_i * (D/d_i)) / D, D = lcm(d_i)
Rational rational_gcd(const std::vector<Rational>& vals) {
  mpz_class D(1);
  for (const auto& v : vals) {
    mpz_class den = v.get_den();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), D.get_mpz_t(), den.get_mpz_t());
    D = D / g * den;
  }
  mpz_class G(0);
  for (const auto& v : vals) {
    mpz_class scaled = v.get_num() * (D / v.get_den());
    mpz_gcd(G.get_mpz_t(), G.get_mpz_t(), scaled.get_mpz_t());
  }
  Rational r(G, D);
  r.canonicalize();
  return r;
}

}  // namespace

Rationalized rationalize(const ExpPoly& p) {
  std::vector<Rational> rates;
  for (const auto& t : p.terms()) {
    if (!t.c.exact()) fail(errc::irrational_rates, "inexact rate " + t.c.str());
    if (t.c.sign() < 0) fail(errc::domain_error, "negative rate");
    if (t.c.sign() > 0) rates.push_back(t.c.rational());
  }
  Rationalized out;
  if (rates.empty()) {
    out.q = 1;
    for (const auto& t : p.terms()) out.terms.push_back({t.a, t.b, 0});
    return out;
  }
  Rational unit = rational_gcd(rates);
  out.q = 1 / unit;
  for (const auto& t : p.terms()) {
    Rational ratio = t.c.rational() / unit;
    ratio.canonicalize();
    if (ratio.get_den() != 1)
      fail(errc::numerical_failure, "rate not an integer multiple of the unit");
    out.terms.push_back({t.a, t.b, long(ratio.get_num().get_si())});
  }
  return out;
}

std::vector<cpx> Rationalized::w_coefficients(cpx z) const {
  long deg = 0;
  for (const auto& t : terms) deg = std::max(deg, t.wpow);
  std::vector<cpx> coeffs(size_t(deg) + 1, cpx(0));
  for (const auto& t : terms) {
    cpx zb = t.zpow == 0 ? cpx(1) : std::pow(z, double(t.zpow));
    coeffs[size_t(t.wpow)] += t.a.value() * zb;
  }
  return coeffs;
}

}  // namespace resonator
