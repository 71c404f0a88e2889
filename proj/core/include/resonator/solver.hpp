#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "resonator/exp_poly.hpp"
#include "resonator/numeric.hpp"

namespace resonator {

struct Window {
  double re_min, re_max, im_min, im_max;

  bool contains(cpx s) const {
    return s.real() >= re_min && s.real() <= re_max && s.imag() >= im_min && s.imag() <= im_max;
  }
  double width() const { return re_max - re_min; }
  double height() const { return im_max - im_min; }
};

Window validate_window(const Window& w);

struct Resonance {
  cpx s;
  int multiplicity = 1;
};

struct ResonanceReport {
  std::vector<Resonance> roots;
  Window window{0, 0, 0, 0};
  std::string method;
  double max_residual = 0;
  std::optional<double> chain_period;

  int total_count() const;
};

// analytic evaluator returning (f(s), f'(s))
using AnalyticFn = std::function<std::pair<cpx, cpx>(cpx)>;

AnalyticFn exp_poly_fn(const ExpPoly& p, cpx z);

// all zeros of the rationalized polynomial at z = z0 in the fundamental
// strip Im(s) in (-pi q, pi q], found as companion-matrix eigenvalues of the
// w-polynomial and mapped back through w = e^{-s/q}
ResonanceReport roots_rational(const ExpPoly& p, cpx z0);

struct CountOptions {
  int initial_samples_per_side = 32;
  int max_samples_per_side = 1 << 17;
  double integer_tol = 0.05;        // winding must be this close to an integer
  double boundary_guard = 1e-8;     // relative min |f| allowed on the boundary
};

// winding number of f around the rectangle by adaptive trapezoidal
// quadrature of f'/f
int count_zeros(const AnalyticFn& f, const Window& w, const CountOptions& opts = {});

struct RefineResult {
  cpx s;
  int multiplicity = 1;
  double residual = 0;
};

RefineResult refine_zero(const AnalyticFn& f, cpx s0, double tol = 1e-10, int max_iter = 200);

// zeros inside a window located by recursive subdivision of the
// argument-principle count followed by Newton refinement
ResonanceReport find_zeros_in_window(const AnalyticFn& f, const Window& w,
                                     const CountOptions& opts = {});

// largest real zero in [lo, hi]: descending scan, bisection, Newton polish
double critical_exponent(const AnalyticFn& f, double lo, double hi, int scan_points = 400);

struct Chain {
  double re = 0;
  double period = 0;
  std::vector<cpx> members;
};

struct ChainReport {
  std::vector<Chain> chains;       // groups of >= 2 aligned roots
  std::vector<cpx> ungrouped;
};

ChainReport detect_chains(const ResonanceReport& report, double period, double tol_re = 1e-6,
                          double tol_im = 1e-6);

}  // namespace resonator
