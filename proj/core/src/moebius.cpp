#include "resonator/moebius.hpp"

#include <cmath>

namespace resonator {

MoebiusMap::MoebiusMap(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {
  double det = a * d - b * c;
  if (!(det > 0))
    fail(errc::domain_error, "matrix must have positive determinant");
  double s = std::sqrt(det);
  a /= s;
  b /= s;
  c /= s;
  d /= s;
  double tr = a + d;
  bool flip;
  if (std::abs(tr) > 1e-9) {
    flip = tr < 0;
  } else {
    flip = (a != 0 ? a : (b != 0 ? b : c)) < 0;
  }
  if (flip) {
    a = -a;
    b = -b;
    c = -c;
    d = -d;
  }
}

MoebiusMap MoebiusMap::axis_translation(double t) {
  return {std::exp(t / 2), 0, 0, std::exp(-t / 2)};
}

MoebiusMap MoebiusMap::circle_translation(double xi) {
  return {std::cosh(xi), std::sinh(xi), std::sinh(xi), std::cosh(xi)};
}

MoebiusMap MoebiusMap::rotation(double phi) {
  MoebiusMap m;
  m.a = std::cos(phi / 2);
  m.b = std::sin(phi / 2);
  m.c = -m.b;
  m.d = m.a;
  return m;
}

MoebiusMap MoebiusMap::frame(double x, double y, double phi) {
  if (!(y > 0)) fail(errc::domain_error, "frame point must be in the upper half plane");
  double sy = std::sqrt(y);
  MoebiusMap base{};
  base.a = sy;
  base.b = x / sy;
  base.c = 0;
  base.d = 1 / sy;
  return base * rotation(phi);
}

cpx MoebiusMap::apply(cpx u) const {
  cpx den = c * u + d;
  if (std::abs(den) < 1e-300) fail(errc::pole_hit, "evaluation at the pole");
  return (a * u + b) / den;
}

cpx MoebiusMap::derivative(cpx u) const {
  cpx den = c * u + d;
  if (std::abs(den) < 1e-300) fail(errc::pole_hit, "derivative at the pole");
  return 1.0 / (den * den);
}

double MoebiusMap::pole() const {
  if (c == 0) return std::numeric_limits<double>::infinity();
  return -d / c;
}

std::pair<double, double> MoebiusMap::attracting_fixed_point() const {
  if (!hyperbolic()) fail(errc::not_hyperbolic, "|trace| <= 2");
  // fixed points solve c u^2 + (d-a) u - b = 0
  if (std::abs(c) < 1e-14) {
    double u = b / (a - d);
    double dv = 1.0 / (d * d);
    if (std::abs(dv) < 1) return {u, dv};
    fail(errc::not_hyperbolic, "affine map with no attracting fixed point");
  }
  double disc = (d - a) * (d - a) + 4 * b * c;
  if (disc <= 0) fail(errc::not_hyperbolic, "complex fixed points");
  double sq = std::sqrt(disc);
  // avoid cancellation: compute the large-magnitude root first
  double m = (a - d) >= 0 ? (a - d) + sq : (a - d) - sq;
  double u1 = m / (2 * c);
  double u2 = -b / (c * u1);  // product of roots = -b/c
  for (double u : {u1, u2}) {
    double den = c * u + d;
    double dv = 1.0 / (den * den);
    if (std::abs(dv) < 1) return {u, dv};
  }
  fail(errc::not_hyperbolic, "no attracting fixed point found");
}

double MoebiusMap::translation_length() const {
  if (!hyperbolic()) fail(errc::not_hyperbolic, "|trace| <= 2");
  return 2 * std::acosh(std::abs(trace()) / 2);
}

Disk disk_image(const MoebiusMap& m, const Disk& disk) {
  if (std::abs(m.c) < 1e-14) {
    double al = m.a / m.d;
    return {al * disk.center + m.b / m.d, std::abs(al) * disk.radius};
  }
  double p = m.pole();
  cpx w0 = disk.center - p;
  double t = std::norm(w0) - disk.radius * disk.radius;
  if (t <= 0 || std::abs(std::abs(w0) - disk.radius) < 1e-13 * disk.radius)
    fail(errc::pole_inside_disk, "pole inside or on the disk boundary");
  // f(u) = a/c - (1/c^2) / (u - p) for det = 1
  cpx c1 = std::conj(w0) / t;
  double r1 = disk.radius / t;
  cpx center = m.a / m.c - c1 / (m.c * m.c);
  return {center, r1 / (m.c * m.c)};
}

double hexagon_side(double x, double y, double z) {
  if (!(x > 0 && y > 0 && z > 0)) fail(errc::domain_error, "sides must be positive");
  double val = (std::cosh(y) * std::cosh(z) + std::cosh(x)) / (std::sinh(y) * std::sinh(z));
  if (val < 1) fail(errc::domain_error, "arccosh argument below 1");
  return std::acosh(val);
}

double hyp_distance(cpx p, cpx q) {
  if (!(p.imag() > 0 && q.imag() > 0)) fail(errc::domain_error, "points must be in the upper half plane");
  return std::acosh(1 + std::norm(p - q) / (2 * p.imag() * q.imag()));
}

}  // namespace resonator
