#include "resonator/solver.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace resonator {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<cpx> polynomial_roots(std::vector<cpx> coeffs) {
  // strip leading (highest-degree) zeros
  while (coeffs.size() > 1 && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
  const size_t deg = coeffs.size() - 1;
  if (deg == 0) return {};
  // normalize to monic and build the companion matrix
  cpx lead = coeffs.back();
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(long(deg), long(deg));
  for (size_t i = 0; i + 1 < deg; ++i) C(long(i) + 1, long(i)) = 1.0;
  for (size_t i = 0; i < deg; ++i) C(long(i), long(deg) - 1) = -coeffs[i] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  if (es.info() != Eigen::Success) fail(errc::numerical_failure, "eigenvalue iteration failed");
  std::vector<cpx> roots(deg);
  for (size_t i = 0; i < deg; ++i) roots[i] = es.eigenvalues()(long(i));
  return roots;
}

std::pair<cpx, cpx> poly_eval(const std::vector<cpx>& coeffs, cpx w) {
  cpx v = 0, dv = 0;
  for (size_t i = coeffs.size(); i-- > 0;) {
    dv = dv * w + v;
    v = v * w + coeffs[i];
  }
  return {v, dv};
}

// cluster nearby roots; radius 1e-6 relative, matching the double root at
// w = 1 in the flagship example
std::vector<std::pair<cpx, int>> cluster_roots(std::vector<cpx> roots, double radius = 1e-6) {
  std::vector<std::pair<cpx, int>> clusters;
  std::vector<char> used(roots.size(), 0);
  for (size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    cpx sum = roots[i];
    int count = 1;
    used[i] = 1;
    for (size_t j = i + 1; j < roots.size(); ++j) {
      if (used[j]) continue;
      double scale = std::max(1.0, std::abs(roots[i]));
      if (std::abs(roots[j] - roots[i]) <= radius * scale) {
        sum += roots[j];
        ++count;
        used[j] = 1;
      }
    }
    clusters.push_back({sum / double(count), count});
  }
  return clusters;
}

// Newton-polish a root of multiplicity m by running Newton on the (m-1)-th
// derivative of the polynomial
cpx polish_root(const std::vector<cpx>& coeffs, cpx w, int mult) {
  std::vector<cpx> p = coeffs;
  for (int d = 1; d < mult; ++d) {
    std::vector<cpx> dp(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) dp[i - 1] = double(i) * p[i];
    p = std::move(dp);
  }
  for (int it = 0; it < 40; ++it) {
    auto [v, dv] = poly_eval(p, w);
    if (std::abs(dv) == 0.0) break;
    cpx step = v / dv;
    w -= step;
    if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(w))) break;
  }
  return w;
}

}  // namespace

Window validate_window(const Window& w) {
  if (!(w.re_min < w.re_max) || !(w.im_min < w.im_max))
    fail(errc::config_error, "window must satisfy re_min < re_max, im_min < im_max");
  return w;
}

int ResonanceReport::total_count() const {
  int n = 0;
  for (const auto& r : roots) n += r.multiplicity;
  return n;
}

AnalyticFn exp_poly_fn(const ExpPoly& p, cpx z) {
  return [p, z](cpx s) { return p.eval(s, z); };
}

ResonanceReport roots_rational(const ExpPoly& p, cpx z0) {
  Rationalized r = rationalize(p);
  double q = r.q.get_d();
  std::vector<cpx> coeffs = r.w_coefficients(z0);
  while (coeffs.size() > 1 && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
  if (coeffs.size() > 1) {
    // degree collapse at a special z0 would silently drop roots
    double scale = 0;
    for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
    if (std::abs(coeffs.back()) < 1e-14 * std::max(1.0, scale))
      fail(errc::zero_leading_coefficient, "w-polynomial degree collapses at this z");
  }

  ResonanceReport report;
  report.method = "companion";
  report.chain_period = 2 * kPi * q;
  if (coeffs.size() <= 1) {
    report.window = {0, 0, -kPi * q, kPi * q};
    return report;
  }

  auto clusters = cluster_roots(polynomial_roots(coeffs));
  double residual = 0;
  for (auto& [w, mult] : clusters) {
    if (std::abs(w) == 0.0) continue;  // w = 0 corresponds to s = +infinity
    w = polish_root(coeffs, w, mult);
    cpx s = -q * cpx(std::log(std::abs(w)), std::arg(w));
    // arg in (-pi, pi] puts Im(s) = -q arg(w) in [-pi q, pi q)
    report.roots.push_back({s, mult});
    residual = std::max(residual, std::abs(poly_eval(coeffs, w).first));
  }
  std::sort(report.roots.begin(), report.roots.end(), [](const Resonance& a, const Resonance& b) {
    if (a.s.real() != b.s.real()) return a.s.real() > b.s.real();
    return a.s.imag() < b.s.imag();
  });
  report.max_residual = residual;
  double re_lo = 0, re_hi = 0;
  for (const auto& root : report.roots) {
    re_lo = std::min(re_lo, root.s.real());
    re_hi = std::max(re_hi, root.s.real());
  }
  report.window = {re_lo - 1, re_hi + 1, -kPi * q, kPi * q};
  return report;
}

namespace {

struct BoundarySample {
  cpx point;
  cpx value;
  cpx logderiv;
};

}  // namespace

int count_zeros(const AnalyticFn& f, const Window& win, const CountOptions& opts) {
  const Window w = validate_window(win);
  const cpx corners[5] = {{w.re_min, w.im_min},
                          {w.re_max, w.im_min},
                          {w.re_max, w.im_max},
                          {w.re_min, w.im_max},
                          {w.re_min, w.im_min}};

  double prev_winding = 1e9;
  for (int n = opts.initial_samples_per_side; n <= opts.max_samples_per_side; n *= 2) {
    cpx integral = 0;
    double min_abs = 1e300, max_abs = 0;
    bool pole_risk = false;
    for (int side = 0; side < 4; ++side) {
      cpx z0 = corners[side], z1 = corners[side + 1];
      cpx prev_ld;
      for (int i = 0; i <= n; ++i) {
        cpx z = z0 + (z1 - z0) * (double(i) / n);
        auto [v, dv] = f(z);
        double av = std::abs(v);
        min_abs = std::min(min_abs, av);
        max_abs = std::max(max_abs, av);
        if (av == 0.0) {
          pole_risk = true;
          break;
        }
        cpx ld = dv / v;
        if (i > 0) integral += (ld + prev_ld) * 0.5 * ((z1 - z0) / double(n));
        prev_ld = ld;
      }
      if (pole_risk) break;
    }
    if (pole_risk || min_abs < opts.boundary_guard * std::max(1.0, max_abs))
      fail(errc::zero_on_boundary, "|f| too small on the window boundary");
    double winding = (integral / cpx(0, 2 * kPi)).real();
    double nearest = std::round(winding);
    if (std::abs(winding - nearest) < opts.integer_tol && std::abs(winding - prev_winding) < opts.integer_tol) {
      if (std::abs(winding - nearest) > 0.25)
        fail(errc::quadrature_not_converged, "integrality residual above 0.25");
      return int(nearest);
    }
    prev_winding = winding;
  }
  fail(errc::quadrature_not_converged, "winding integral did not stabilize");
}

RefineResult refine_zero(const AnalyticFn& f, cpx s0, double tol, int max_iter) {
  cpx s = s0;
  double fscale = std::max(1.0, std::abs(f(s0).first));
  for (int it = 0; it < max_iter; ++it) {
    auto [v, dv] = f(s);
    if (std::abs(dv) == 0.0) break;
    cpx step = v / dv;
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
    // cap wild steps; Newton from a bad seed should fail, not wander off
    double cap = 1.0 + std::abs(s - s0);
    if (std::abs(step) > cap) step *= cap / std::abs(step);
    s -= step;
    if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(s)) && std::abs(v) < tol * fscale) break;
  }
  double residual = std::abs(f(s).first);
  if (!(residual <= tol * fscale) || std::abs(s - s0) > 10.0)
    fail(errc::no_convergence, "Newton iteration did not converge");

  // multiplicity from the argument principle on a small square around s
  int mult = 1;
  for (double eps : {1e-4, 1e-3, 1e-2}) {
    Window tiny{s.real() - eps, s.real() + eps, s.imag() - eps, s.imag() + eps};
    try {
      mult = count_zeros(f, tiny);
      break;
    } catch (const Error&) {
      continue;  // boundary too close to another zero; widen
    }
  }
  return {s, std::max(1, mult), residual};
}

namespace {

void collect_zeros(const AnalyticFn& f, const Window& w, const CountOptions& opts,
                   std::vector<RefineResult>& out, int depth) {
  int count = 0;
  bool counted = false;
  // a zero can sit on a candidate cut line; nudge the window a few times
  for (int attempt = 0; attempt < 6 && !counted; ++attempt) {
    double pad = attempt * 0.013 * std::max(w.width(), w.height());
    Window probe{w.re_min - pad, w.re_max + pad, w.im_min - pad, w.im_max + pad};
    try {
      count = count_zeros(f, probe, opts);
      counted = true;
    } catch (const Error& e) {
      if (e.code() != errc::zero_on_boundary) throw;
    }
  }
  if (!counted) fail(errc::zero_on_boundary, "could not isolate window boundary from zeros");
  if (count == 0) return;

  double diag = std::hypot(w.width(), w.height());
  bool must_stop = diag < 1e-6 || depth > 40;
  if (count == 1 || must_stop) {
    cpx center{(w.re_min + w.re_max) / 2, (w.im_min + w.im_max) / 2};
    try {
      out.push_back(refine_zero(f, center));
      return;
    } catch (const Error&) {
      if (must_stop) throw;  // nothing smaller to try
    }
  }
  if (w.width() >= w.height()) {
    double mid = (w.re_min + w.re_max) / 2;
    collect_zeros(f, {w.re_min, mid, w.im_min, w.im_max}, opts, out, depth + 1);
    collect_zeros(f, {mid, w.re_max, w.im_min, w.im_max}, opts, out, depth + 1);
  } else {
    double mid = (w.im_min + w.im_max) / 2;
    collect_zeros(f, {w.re_min, w.re_max, w.im_min, mid}, opts, out, depth + 1);
    collect_zeros(f, {w.re_min, w.re_max, mid, w.im_max}, opts, out, depth + 1);
  }
}

}  // namespace

ResonanceReport find_zeros_in_window(const AnalyticFn& f, const Window& win,
                                     const CountOptions& opts) {
  const Window w = validate_window(win);
  std::vector<RefineResult> found;
  collect_zeros(f, w, opts, found, 0);

  // dedupe across subdivision cells
  ResonanceReport report;
  report.window = w;
  report.method = "argument-principle";
  for (const auto& r : found) {
    bool dup = false;
    for (auto& existing : report.roots)
      if (std::abs(existing.s - r.s) < 1e-7 * std::max(1.0, std::abs(r.s))) dup = true;
    if (!dup && w.contains(r.s)) {
      report.roots.push_back({r.s, r.multiplicity});
      report.max_residual = std::max(report.max_residual, r.residual);
    }
  }
  std::sort(report.roots.begin(), report.roots.end(), [](const Resonance& a, const Resonance& b) {
    if (a.s.real() != b.s.real()) return a.s.real() > b.s.real();
    return a.s.imag() < b.s.imag();
  });
  return report;
}

double critical_exponent(const AnalyticFn& f, double lo, double hi, int scan_points) {
  if (!(lo < hi)) fail(errc::config_error, "empty search interval");
  auto fr = [&](double x) { return f(cpx(x, 0)).first.real(); };

  double x_prev = hi, f_prev = fr(hi);
  double a = 0, b = 0;
  bool bracketed = false;
  for (int i = 1; i <= scan_points; ++i) {
    double x = hi - (hi - lo) * double(i) / scan_points;
    double fx = fr(x);
    if (f_prev == 0.0) {
      a = b = x_prev;
      bracketed = true;
      break;
    }
    if (f_prev * fx < 0) {
      a = x;
      b = x_prev;
      bracketed = true;
      break;
    }
    x_prev = x;
    f_prev = fx;
  }
  if (!bracketed) fail(errc::no_sign_information, "no sign change in the search interval");

  double fa = fr(a);
  for (int it = 0; it < 200 && b - a > 1e-13 * std::max(1.0, std::abs(b)); ++it) {
    double m = (a + b) / 2;
    double fm = fr(m);
    if (fm == 0.0) {
      a = b = m;
      break;
    }
    if (fa * fm <= 0)
      b = m;
    else {
      a = m;
      fa = fm;
    }
  }
  double root = (a + b) / 2;
  // Newton polish
  for (int it = 0; it < 50; ++it) {
    auto [v, dv] = f(cpx(root, 0));
    if (std::abs(dv) == 0.0) break;
    double step = (v / dv).real();
    root -= step;
    if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(root))) break;
  }
  return root;
}

ChainReport detect_chains(const ResonanceReport& report, double period, double tol_re,
                          double tol_im) {
  if (!(period > 0)) fail(errc::config_error, "period must be positive");
  ChainReport out;
  std::vector<cpx> points;
  for (const auto& r : report.roots)
    for (int m = 0; m < r.multiplicity; ++m) points.push_back(r.s);

  std::vector<char> used(points.size(), 0);
  for (size_t i = 0; i < points.size(); ++i) {
    if (used[i]) continue;
    // gather everything with matching real part and imaginary residue mod period
    std::vector<size_t> members{i};
    for (size_t j = i + 1; j < points.size(); ++j) {
      if (used[j]) continue;
      if (std::abs(points[j].real() - points[i].real()) > tol_re) continue;
      double gap = points[j].imag() - points[i].imag();
      double residue = gap - period * std::round(gap / period);
      if (std::abs(residue) <= tol_im) members.push_back(j);
    }
    if (members.size() < 2) continue;
    Chain chain;
    chain.period = period;
    double re_sum = 0;
    for (size_t idx : members) {
      used[idx] = 1;
      chain.members.push_back(points[idx]);
      re_sum += points[idx].real();
    }
    chain.re = re_sum / double(chain.members.size());
    std::sort(chain.members.begin(), chain.members.end(),
              [](cpx a, cpx b) { return a.imag() < b.imag(); });
    out.chains.push_back(std::move(chain));
  }
  for (size_t i = 0; i < points.size(); ++i)
    if (!used[i]) out.ungrouped.push_back(points[i]);
  return out;
}

}  // namespace resonator
