#include "resonator/orbits.hpp"

#include <Eigen/Dense>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace resonator {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::vector<std::vector<int>> enumerate_closed_words(const FlowIFS& ifs, int n) {
  if (n < 1) fail(errc::domain_error, "word length must be >= 1");
  const int syms = ifs.symbols();
  std::vector<std::vector<int>> out;
  std::vector<int> word;
  auto rec = [&](auto&& self, int cur, int depth) -> void {
    if (depth == n) {
      if (ifs.allowed(cur, word[0])) out.push_back(word);
      return;
    }
    for (int j = 0; j < syms; ++j) {
      if (!ifs.allowed(cur, j)) continue;
      word.push_back(j);
      self(self, j, depth + 1);
      word.pop_back();
    }
  };
  for (int s = 0; s < syms; ++s) {
    word = {s};
    rec(rec, s, 1);
  }
  return out;
}

MoebiusMap word_map(const FlowIFS& ifs, const std::vector<int>& word) {
  MoebiusMap M = MoebiusMap::identity();
  const int n = int(word.size());
  for (int t = 0; t < n; ++t) M = ifs.transition(word[t], word[(t + 1) % n]).f * M;
  return M;
}

OrbitRecord orbit_data(const FlowIFS& ifs, const std::vector<int>& word) {
  const int n = int(word.size());
  if (n < 1) fail(errc::domain_error, "empty word");
  for (int t = 0; t < n; ++t)
    if (!ifs.allowed(word[t], word[(t + 1) % n]))
      fail(errc::domain_error, t + 1 == n ? "word is not closed" : "word is not permissible");

  OrbitRecord rec;
  rec.word = word;

  // fixed point by letterwise iteration: f_w contracts D_{w_0} into itself,
  // and applying letters one at a time keeps every intermediate value tame
  // even when the full matrix product would overflow double precision
  double x = 0.0;
  for (int pass = 0; pass < 80; ++pass) {
    double y = x;
    for (int t = 0; t < n; ++t) y = ifs.transition(word[t], word[(t + 1) % n]).f.apply(cpx(y, 0)).real();
    if (std::abs(y - x) < 1e-15) {
      x = y;
      break;
    }
    x = y;
  }
  rec.fixed_point = x;
  if (std::abs(x) >= 1.0) fail(errc::numerical_failure, "fixed point escaped the unit disk");

  double log_deriv = 0;
  double u = x;
  for (int t = 0; t < n; ++t) {
    const MoebiusMap& f = ifs.transition(word[t], word[(t + 1) % n]).f;
    double den = f.c * u + f.d;
    log_deriv += -2 * std::log(std::abs(den));
    u = f.apply(cpx(u, 0)).real();
  }
  rec.log_deriv = log_deriv;
  rec.length = -log_deriv;
  if (!(rec.length > 0)) fail(errc::numerical_failure, "orbit length must be positive");

  // primitivity: no nontrivial rotation period
  rec.primitive = true;
  for (int p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (int t = 0; t < n && periodic; ++t)
      if (word[t] != word[(t + p) % n]) periodic = false;
    if (periodic) {
      rec.primitive = false;
      break;
    }
  }
  // canonical form: lexicographically minimal rotation
  rec.canonical = word;
  for (int r = 1; r < n; ++r) {
    std::vector<int> rot(n);
    for (int t = 0; t < n; ++t) rot[t] = word[(t + r) % n];
    if (rot < rec.canonical) rec.canonical = rot;
  }
  return rec;
}

OrbitTable::OrbitTable(const FlowIFS& ifs, int max_n) : ifs_(ifs) {
  records_.resize(size_t(max_n) + 1);
  for (int n = 1; n <= max_n; ++n) {
    auto words = enumerate_closed_words(ifs, n);
    records_[n].reserve(words.size());
    for (const auto& w : words) records_[n].push_back(orbit_data(ifs, w));
  }
}

std::pair<cpx, cpx> OrbitTable::orbit_sum(int n, cpx s) const {
  cpx total = 0, dtotal = 0;
  for (const auto& rec : records_[n]) {
    double weight = 1.0 / (1.0 - std::exp(-rec.length));
    cpx term = std::exp(-s * rec.length) * weight;
    total += term;
    dtotal += -rec.length * term;
  }
  return {total, dtotal};
}

std::vector<std::pair<cpx, cpx>> cycle_coefficients(const OrbitTable& table, cpx s, int N) {
  if (N > table.max_length())
    fail(errc::config_error, "orbit table holds words only up to length " +
                                 std::to_string(table.max_length()));
  // the partition formula collapses to the recurrence m d_m = -sum t_n d_{m-n}
  // over the memoized sums t_n = S_n(s)
  std::vector<std::pair<cpx, cpx>> t(size_t(N) + 1, {0, 0});
  for (int n = 1; n <= N; ++n) t[n] = table.orbit_sum(n, s);
  std::vector<std::pair<cpx, cpx>> d(size_t(N) + 1);
  d[0] = {1, 0};
  for (int m = 1; m <= N; ++m) {
    cpx acc = 0, dacc = 0;
    for (int n = 1; n <= m; ++n) {
      acc += t[n].first * d[m - n].first;
      dacc += t[n].second * d[m - n].first + t[n].first * d[m - n].second;
    }
    d[m] = {-acc / double(m), -dacc / double(m)};
  }
  return d;
}

ZetaValue surface_zeta_eval(const OrbitTable& table, cpx s, cpx z, int N) {
  if (N <= 0) N = table.max_length();
  auto d = cycle_coefficients(table, s, N);
  cpx value = 0, ds = 0;
  for (int l = N; l >= 0; --l) {  // Horner-ish, fixed order
    cpx zl = std::pow(z, double(l));
    value += d[l].first * zl;
    ds += d[l].second * zl;
  }
  ZetaValue out;
  out.value = value;
  out.ds = ds;
  int k = table.ifs().symbols() / 2;
  double L_scale = 0;
  for (double fl : table.ifs().face_lengths()) L_scale = std::max(L_scale, fl);
  double A = std::max(std::abs(z), L_scale * std::abs(s));
  A = std::max(A, 1e-3);
  try {
    out.truncation_diag = truncation_estimate(k, A, table.ifs().eta_hat());
  } catch (const Error&) {
    out.truncation_diag = std::numeric_limits<double>::infinity();
  }
  return out;
}

EulerProductValue euler_product_zeta(const OrbitTable& table, cpx s, cpx z, int word_cutoff,
                                     int k_cutoff) {
  EulerProductValue out;
  out.value = 1.0;
  if (word_cutoff > table.max_length())
    fail(errc::config_error, "word cutoff exceeds the orbit table");

  double min_letter = std::numeric_limits<double>::infinity();
  double last_shell = 0;
  for (int n = 1; n <= word_cutoff; ++n) {
    double shell = 0;
    for (const auto& rec : table.records(n)) {
      if (!rec.primitive || rec.canonical != rec.word) continue;  // one per cyclic class
      min_letter = std::min(min_letter, rec.length / n);
      cpx zn = std::pow(z, double(n));
      for (int k = 0; k <= k_cutoff; ++k) {
        cpx term = zn * std::exp(-(s + double(k)) * rec.length);
        out.value *= 1.0 - term;
        shell += std::abs(term);
      }
    }
    last_shell = shell;
  }
  out.tail_estimate = last_shell;

  // convergence heuristic: per-letter decay must beat the out-degree growth
  // of the coding, i.e. Re(s) * (min orbit length per letter) > log 2
  if (std::isfinite(min_letter) && !(s.real() * min_letter > std::log(2.0)))
    out.convergence_warning = true;
  return out;
}

cpx nuclear_zeta(const FlowIFS& ifs, cpx s, cpx z, int basis_degree, int quad_points) {
  const int n = ifs.symbols();
  const int M = basis_degree;
  if (M < 0) fail(errc::config_error, "basis degree must be >= 0");

  double rho = std::min(std::exp(ifs.eta_hat() / 2), 0.8 * ifs.min_pole_radius());
  if (!(rho > 1.0)) fail(errc::pole_too_close, "no admissible quadrature radius above the disks");

  const int dim = n * (M + 1);
  auto assemble = [&](int Q) {
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(dim, dim);
    std::vector<cpx> wq(Q), twiddle(Q);
    for (int q = 0; q < Q; ++q) {
      wq[q] = rho * std::exp(cpx(0, 2 * kPi * q / Q));
      twiddle[q] = std::exp(cpx(0, -2 * kPi * q / Q));
    }
    std::vector<double> rho_pow(M + 1);
    rho_pow[0] = 1;
    for (int m = 1; m <= M; ++m) rho_pow[m] = rho_pow[m - 1] * rho;
    std::vector<cpx> fw(Q), power(Q);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (!ifs.allowed(i, j)) continue;
        const IfsTransition& tr = ifs.transition(i, j);
        // V_s(f(w)) = f'(w)^s through the (alpha, xi) decomposition, which
        // keeps the logarithm on its principal branch near 1
        for (int q = 0; q < Q; ++q) {
          fw[q] = tr.f.apply(wq[q]);
          cpx den = std::sinh(tr.xi) * wq[q] + std::cosh(tr.xi);
          cpx logfp = std::log(tr.alpha) - 2.0 * std::log(den);
          power[q] = std::exp(s * logfp);
        }
        for (int m = 0; m <= M; ++m) {
          // power[q] = V_s(f(w_q)) f(w_q)^m
          for (int nn = 0; nn <= M; ++nn) {
            cpx acc = 0;
            for (int q = 0; q < Q; ++q) acc += power[q] * twiddle[size_t(q) * nn % Q];
            T(i * (M + 1) + nn, j * (M + 1) + m) = acc / (double(Q) * rho_pow[nn]);
          }
          for (int q = 0; q < Q; ++q) power[q] *= fw[q];
        }
      }
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(dim, dim) - z * T;
    return Eigen::PartialPivLU<Eigen::MatrixXcd>(A).determinant();
  };

  int Q = quad_points > 0 ? quad_points : 4 * (M + 1);
  cpx prev = assemble(Q);
  for (int round = 0; round < 6; ++round) {
    Q *= 2;
    cpx cur = assemble(Q);
    if (std::abs(cur - prev) <= 1e-10 * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  fail(errc::quadrature_not_converged, "doubling the quadrature kept moving the determinant");
}

double truncation_estimate(int k, double A, double eta_hat) {
  if (k < 1 || !(A >= 0)) fail(errc::config_error, "need k >= 1 and A >= 0");
  if (A == 0) return 0;
  double x = A * std::exp(A) * std::pow(2.0 * k + 1, 6.0) / std::exp(eta_hat / (8.0 * k + 4.0));
  if (!(x < 1)) fail(errc::bound_not_applicable, "geometric-series denominator is not positive");
  return std::pow(x, 2.0 * k + 1) / (1.0 - x);
}

}  // namespace resonator
