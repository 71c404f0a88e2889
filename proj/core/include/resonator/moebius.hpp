#pragma once

#include <complex>
#include <utility>

#include "resonator/numeric.hpp"

namespace resonator {

// real 2x2 matrix with ad-bc = 1 acting as u -> (au+b)/(cu+d).
// normalized on construction: det scaled to 1, sign fixed (positive trace
// when |trace| > 2, first nonzero entry positive otherwise).
struct MoebiusMap {
  double a = 1, b = 0, c = 0, d = 1;

  MoebiusMap() = default;
  MoebiusMap(double a_, double b_, double c_, double d_);

  static MoebiusMap identity() { return {}; }
  // translation by distance t along the imaginary axis (upward)
  static MoebiusMap axis_translation(double t);
  // translation along the unit half-circle, matrix [[cosh xi, sinh xi], [sinh xi, cosh xi]]
  static MoebiusMap circle_translation(double xi);
  // rotation of the tangent at i by angle phi (counterclockwise)
  static MoebiusMap rotation(double phi);
  // frame at x+iy with heading phi measured counterclockwise from "up"
  static MoebiusMap frame(double x, double y, double phi);

  cpx apply(cpx u) const;
  cpx derivative(cpx u) const;  // 1/(cu+d)^2
  MoebiusMap inverse() const {
    MoebiusMap r;
    r.a = d;
    r.b = -b;
    r.c = -c;
    r.d = a;
    return r;
  }

  double trace() const { return a + d; }
  bool hyperbolic() const { return std::abs(trace()) > 2.0; }
  double pole() const;  // the real point mapped to infinity; inf if c == 0

  // fixed point with |f'| < 1 together with that derivative
  std::pair<double, double> attracting_fixed_point() const;
  double translation_length() const;  // 2 arccosh(|tr|/2)

  // raw matrix product; no renormalization (entries of long word maps can be
  // huge and their determinant cancels catastrophically)
  friend MoebiusMap operator*(const MoebiusMap& m, const MoebiusMap& n) {
    MoebiusMap r;
    r.a = m.a * n.a + m.b * n.c;
    r.b = m.a * n.b + m.b * n.d;
    r.c = m.c * n.a + m.d * n.c;
    r.d = m.c * n.b + m.d * n.d;
    return r;
  }
};

struct Disk {
  cpx center;
  double radius;
};

// exact image circle of a disk under a Moebius map; the pole must lie
// outside the closed disk
Disk disk_image(const MoebiusMap& m, const Disk& disk);

// right-angled hexagon relation: the side adjacent to sides y and z and
// opposite side x, i.e. cosh(w) = (cosh y cosh z + cosh x)/(sinh y sinh z)
double hexagon_side(double x, double y, double z);

// hyperbolic distance in the upper half plane
double hyp_distance(cpx p, cpx q);

}  // namespace resonator
