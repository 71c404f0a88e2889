#include "resonator/ifs.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>

namespace resonator {

namespace {

constexpr double kPi = std::numbers::pi;

// ---- hexagon synthesis -------------------------------------------------
// turtle walk with left turns: frames[t] sits at vertex t heading along side
// t; counterclockwise boundary, interior on the left.
struct Hexagon {
  std::array<MoebiusMap, 6> frame;
  std::array<double, 6> len;
  std::array<cpx, 6> vertex;
};

Hexagon synthesize_hexagon(const std::vector<SectorSide>& sides) {
  if (sides.size() != 6) fail(errc::gluing_mismatch, "sector must have six sides");
  Hexagon hex;
  MoebiusMap M = MoebiusMap::identity();
  for (int t = 0; t < 6; ++t) {
    if (!(sides[t].len > 0)) fail(errc::gluing_mismatch, "sector side lengths must be positive");
    hex.frame[t] = M;
    hex.len[t] = sides[t].len;
    hex.vertex[t] = M.apply(cpx(0, 1));
    M = M * MoebiusMap::axis_translation(sides[t].len) * MoebiusMap::rotation(kPi / 2);
  }
  // closure: the walk must return to the starting frame (up to sign)
  double err = std::min(
      std::max({std::abs(M.a - 1), std::abs(M.b), std::abs(M.c), std::abs(M.d - 1)}),
      std::max({std::abs(M.a + 1), std::abs(M.b), std::abs(M.c), std::abs(M.d + 1)}));
  if (err > 1e-8)
    fail(errc::numerical_failure,
         "sector side lengths do not close a right-angled hexagon (residual " +
             format_double(err) + ")");
  return hex;
}

// isometry placing the hexagon so that side t lies on the unit half-circle,
// midpoint at i, hexagon inside the unit disk
MoebiusMap normalizer(const Hexagon& hex, int side) {
  MoebiusMap mid = hex.frame[side] * MoebiusMap::axis_translation(hex.len[side] / 2);
  return MoebiusMap::rotation(kPi / 2) * mid.inverse();
}

// frame at the end of side t pointing back toward its start
MoebiusMap reversed_end_frame(const Hexagon& hex, int side) {
  return hex.frame[side] * MoebiusMap::axis_translation(hex.len[side]) * MoebiusMap::rotation(kPi);
}

// ---- hyperboloid helpers (for the equidistant spine vertex) -------------
using Vec3 = std::array<double, 3>;

double mdot(const Vec3& u, const Vec3& v) { return -u[0] * v[0] + u[1] * v[1] + u[2] * v[2]; }

Vec3 to_hyperboloid(cpx z) {
  double x = z.real(), y = z.imag();
  return {(x * x + y * y + 1) / (2 * y), x / y, (x * x + y * y - 1) / (2 * y)};
}

cpx from_hyperboloid(const Vec3& p) {
  double y = 1.0 / (p[0] - p[2]);
  return {p[1] * y, y};
}

// unit spacelike normal of the geodesic carrying side t (the image of the
// imaginary axis under the side frame)
Vec3 geodesic_normal(const Hexagon& hex, int side) {
  const MoebiusMap& M = hex.frame[side];
  // ideal endpoints M(0) = b/d and M(inf) = a/c
  if (std::abs(M.d) < 1e-12 || std::abs(M.c) < 1e-12) {
    double x = std::abs(M.d) < 1e-12 ? M.a / M.c : M.b / M.d;
    return {x, 1.0, x};
  }
  double u = M.b / M.d, v = M.a / M.c;
  double c = (u + v) / 2, r = std::abs(u - v) / 2;
  return {-(1 + c * c - r * r) / (2 * r), -c / r, (1 - c * c + r * r) / (2 * r)};
}

Vec3 scale(const Vec3& v, double s) { return {v[0] * s, v[1] * s, v[2] * s}; }
Vec3 sub(const Vec3& u, const Vec3& v) { return {u[0] - v[0], u[1] - v[1], u[2] - v[2]}; }

// half-wedge boundary arcs of one sector: perpendicular feet of the
// equidistant point (the spine vertex) split each boundary arc in two
struct WedgeInfo {
  std::vector<double> half_arcs;
  bool feet_inside = true;
};

WedgeInfo half_wedges(const Hexagon& hex, const std::array<int, 3>& arc_sides) {
  std::array<Vec3, 3> normals;
  for (int t = 0; t < 3; ++t) {
    Vec3 n = geodesic_normal(hex, arc_sides[t]);
    // orient toward the hexagon: the opposite side's midpoint is interior
    int opp = (arc_sides[t] + 3) % 6;
    MoebiusMap m = hex.frame[opp] * MoebiusMap::axis_translation(hex.len[opp] / 2);
    if (mdot(to_hyperboloid(m.apply(cpx(0, 1))), n) < 0) n = scale(n, -1);
    normals[t] = n;
  }
  // equidistant point: <p, n0-n1> = <p, n0-n2> = 0, so p is the Minkowski
  // dual of the Euclidean cross product
  Vec3 a = sub(normals[0], normals[1]), b = sub(normals[0], normals[2]);
  Vec3 cross = {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
  Vec3 p = {-cross[0], cross[1], cross[2]};
  double norm = mdot(p, p);
  if (!(norm < 0)) fail(errc::numerical_failure, "no equidistant spine vertex for sector");
  p = scale(p, 1.0 / std::sqrt(-norm));
  if (p[0] < 0) p = scale(p, -1);

  WedgeInfo info;
  for (int t = 0; t < 3; ++t) {
    double pn = mdot(p, normals[t]);
    Vec3 q = sub(p, scale(normals[t], pn));
    q = scale(q, 1.0 / std::sqrt(1 + pn * pn));
    cpx foot = from_hyperboloid(q);
    int side = arc_sides[t];
    cpx v1 = hex.vertex[side], v2 = hex.vertex[(side + 1) % 6];
    double h1 = hyp_distance(v1, foot), h2 = hyp_distance(foot, v2);
    if (std::abs(h1 + h2 - hex.len[side]) > 1e-7 * std::max(1.0, hex.len[side]))
      info.feet_inside = false;
    info.half_arcs.push_back(h1);
    info.half_arcs.push_back(h2);
  }
  return info;
}

}  // namespace

const IfsTransition& FlowIFS::transition(int i, int j) const {
  const auto& t = trans_[size_t(i) * n_ + j];
  if (!t) fail(errc::domain_error, "transition " + std::to_string(i) + "->" + std::to_string(j) +
                                       " is not allowed");
  return *t;
}

MetricRibbonGraph pants_spine(const Num& L1, const Num& L2, const Num& L3) {
  const Num half = Num(Rational(1, 2));
  std::array<Num, 3> L = {L1, L2, L3};
  std::array<Num, 3> l;
  for (int i = 0; i < 3; ++i) {
    l[i] = (L[(i + 1) % 3] + L[(i + 2) % 3] - L[i]) * half;
    if (!(l[i].sign() > 0))
      fail(errc::degenerate_spine, "funnel widths must satisfy the strict triangle inequalities");
  }
  return make_theta(l[0], l[1], l[2]);
}

SectorData pants_sector_data(double L1, double L2, double L3) {
  MetricRibbonGraph spine = pants_spine(Num::inexact(L1), Num::inexact(L2), Num::inexact(L3));
  std::array<double, 3> l;
  for (int i = 0; i < 3; ++i) l[i] = spine.edges[i].length.value();
  std::array<double, 3> delta;
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3, k = (i + 2) % 3;
    // seam of edge i: opposite arc l_j + l_k, adjacent arcs l_i + l_j, l_i + l_k
    // (cuff half-lengths of the two faces containing edge i)
    delta[i] = hexagon_side(l[j] / 2 + l[k] / 2, l[i] / 2 + l[j] / 2, l[i] / 2 + l[k] / 2);
  }

  SectorData data;
  // sector 0 = vertex 0 with cyclic edge order (0,1,2); sector 1 = vertex 1
  // with order (0,2,1), matching the theta ribbon structure
  std::array<std::array<int, 3>, 2> orders = {{{0, 1, 2}, {0, 2, 1}}};
  for (const auto& order : orders) {
    std::vector<SectorSide> sides;
    for (int t = 0; t < 3; ++t) {
      int a = order[t], b = order[(t + 1) % 3];
      sides.push_back({true, delta[a]});
      sides.push_back({false, (l[a] + l[b]) / 2});
    }
    data.sectors.push_back(std::move(sides));
  }
  // seam of edge e sits at side position 2*index_in_order(e)
  auto side_of_edge = [&](int sector, int e) {
    for (int t = 0; t < 3; ++t)
      if (orders[sector][t] == e) return 2 * t;
    fail(errc::numerical_failure, "edge not in order");
  };
  for (int e = 0; e < 3; ++e) data.gluings.push_back({0, side_of_edge(0, e), 1, side_of_edge(1, e)});
  // symbols 0..2: edges forward (vertex 0 -> 1); 3..5: reversed
  for (int e = 0; e < 3; ++e) data.directed_edges.push_back({0, side_of_edge(0, e)});
  for (int e = 0; e < 3; ++e) data.directed_edges.push_back({1, side_of_edge(1, e)});
  return data;
}

FlowIFS build_pants_ifs(double L1, double L2, double L3) {
  return build_ifs_from_sectors(pants_sector_data(L1, L2, L3));
}

FlowIFS build_ifs_from_sectors(const SectorData& data) {
  const int n_sectors = int(data.sectors.size());
  if (n_sectors == 0) fail(errc::gluing_mismatch, "no sectors");

  // sides must alternate boundary/intercostal with three of each
  std::vector<std::array<int, 3>> seam_sides(n_sectors), arc_sides(n_sectors);
  for (int s = 0; s < n_sectors; ++s) {
    const auto& sides = data.sectors[s];
    if (sides.size() != 6) fail(errc::gluing_mismatch, "sector must have six sides");
    int parity = sides[0].intercostal ? 0 : 1;
    int si = 0, ai = 0;
    for (int t = 0; t < 6; ++t) {
      if (sides[t].intercostal != (t % 2 == parity))
        fail(errc::gluing_mismatch, "boundary arcs must alternate with intercostals");
      if (sides[t].intercostal)
        seam_sides[s][si++] = t;
      else
        arc_sides[s][ai++] = t;
    }
  }

  // gluing table: every intercostal side glued exactly once, equal lengths
  std::map<std::pair<int, int>, std::pair<int, int>> partner;
  for (const auto& g : data.gluings) {
    std::pair<int, int> a{g[0], g[1]}, b{g[2], g[3]};
    for (auto [s, t] : {a, b}) {
      if (s < 0 || s >= n_sectors || t < 0 || t >= 6 || !data.sectors[s][t].intercostal)
        fail(errc::gluing_mismatch, "gluing refers to a non-intercostal side");
      if (partner.count({s, t})) fail(errc::gluing_mismatch, "side glued twice");
    }
    if (std::abs(data.sectors[a.first][a.second].len - data.sectors[b.first][b.second].len) >
        1e-10 * std::max(1.0, data.sectors[a.first][a.second].len))
      fail(errc::gluing_mismatch, "glued intercostals have different lengths");
    partner[a] = b;
    partner[b] = a;
  }
  for (int s = 0; s < n_sectors; ++s)
    for (int t : seam_sides[s])
      if (!partner.count({s, t})) fail(errc::gluing_mismatch, "unglued intercostal side");

  // connectivity of the sector adjacency graph
  {
    std::vector<char> seen(n_sectors, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      int s = stack.back();
      stack.pop_back();
      for (int t : seam_sides[s]) {
        int w = partner[{s, t}].first;
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    if (std::count(seen.begin(), seen.end(), 1) != n_sectors)
      fail(errc::gluing_mismatch, "sector gluing is not connected");
  }

  // directed edges: one symbol per (sector, intercostal side)
  const int n = int(data.directed_edges.size());
  if (n != 3 * n_sectors)
    fail(errc::gluing_mismatch, "need exactly one directed edge per intercostal side");
  std::map<std::pair<int, int>, int> symbol_of;
  for (int sym = 0; sym < n; ++sym) {
    auto key = data.directed_edges[sym];
    if (symbol_of.count(key)) fail(errc::gluing_mismatch, "duplicate directed edge");
    if (!partner.count(key)) fail(errc::gluing_mismatch, "directed edge on a non-intercostal side");
    symbol_of[key] = sym;
  }

  FlowIFS ifs;
  ifs.data_ = data;
  ifs.n_ = n;
  ifs.feeds_.assign(size_t(n) * n, 0);
  ifs.trans_.assign(size_t(n) * n, std::nullopt);
  ifs.reverse_.resize(n);
  ifs.delta_.resize(n);

  for (int sym = 0; sym < n; ++sym) {
    auto [s, t] = data.directed_edges[sym];
    ifs.delta_[sym] = data.sectors[s][t].len;
    ifs.reverse_[sym] = symbol_of.at(partner.at({s, t}));
  }
  for (int i = 0; i < n; ++i) {
    auto arrive = partner.at(data.directed_edges[i]);  // side crossed into the target sector
    for (int j = 0; j < n; ++j) {
      if (data.directed_edges[j].first != arrive.first) continue;
      if (j == ifs.reverse_[i]) continue;
      ifs.feeds_[size_t(i) * n + j] = 1;
    }
  }

  // synthesize hexagons and measure eta_hat
  std::vector<Hexagon> hex;
  hex.reserve(n_sectors);
  for (int s = 0; s < n_sectors; ++s) hex.push_back(synthesize_hexagon(data.sectors[s]));

  ifs.eta_hat_ = std::numeric_limits<double>::infinity();
  for (int s = 0; s < n_sectors; ++s) {
    WedgeInfo info = half_wedges(hex[s], arc_sides[s]);
    if (!info.feet_inside) ifs.feet_inside_ = false;
    for (double h : info.half_arcs) ifs.eta_hat_ = std::min(ifs.eta_hat_, h);
  }

  // transition maps: place the source hexagon across the arrival side of the
  // target sector and pull back through both normalizations
  std::vector<std::array<MoebiusMap, 6>> nu(n_sectors);
  for (int s = 0; s < n_sectors; ++s)
    for (int t : seam_sides[s]) nu[s][t] = normalizer(hex[s], t);

  ifs.theta_ = 0;
  ifs.min_pole_radius_ = std::numeric_limits<double>::infinity();
  const Disk unit{cpx(0, 0), 1.0};
  for (int i = 0; i < n; ++i) {
    auto [si, ti] = data.directed_edges[i];
    auto [sj_in, tj_in] = partner.at({si, ti});
    for (int j = 0; j < n; ++j) {
      if (!ifs.feeds_[size_t(i) * n + j]) continue;
      auto [sj, tj] = data.directed_edges[j];
      // glue: start of source seam -> end of arrival seam (oriented surface)
      MoebiusMap W = nu[sj][tj] * reversed_end_frame(hex[sj_in], tj_in) * hex[si].frame[ti].inverse();
      MoebiusMap F = W * nu[si][ti].inverse();
      F = MoebiusMap(F.a, F.b, F.c, F.d);  // renormalize

      IfsTransition tr;
      tr.f = F;
      tr.image = disk_image(F, unit);
      if (std::abs(tr.image.center.imag()) > 1e-9)
        fail(errc::numerical_failure, "image disk center is not real");
      MapDecomposition dec = decompose_map(F, unit, tr.image);
      tr.alpha = dec.alpha;
      tr.beta = dec.beta;
      tr.xi = dec.xi;
      // the boundary arc between the arrival side and the outgoing side of
      // sector sj realizes d_H(D_j, D_ij)
      int gap = (tj_in - tj + 6) % 6;
      int arc = gap == 2 ? (tj + 1) % 6 : (tj_in + 1) % 6;
      tr.kappa = data.sectors[sj][arc].len;
      // sup of |f'| over the closed unit disk: alpha * e^{2 |xi|}
      double sup_fp = tr.alpha * std::exp(2 * std::abs(tr.xi));
      ifs.theta_ = std::max(ifs.theta_, sup_fp);
      double pole = std::abs(F.pole());
      ifs.min_pole_radius_ = std::min(ifs.min_pole_radius_, pole);

      // containment
      if (std::abs(tr.image.center) + tr.image.radius >= 1.0)
        fail(errc::numerical_failure, "image disk escapes the unit disk");
      ifs.trans_[size_t(i) * n + j] = tr;
    }
  }

  // disjointness of sibling image disks
  for (int j = 0; j < n; ++j) {
    std::vector<int> in;
    for (int i = 0; i < n; ++i)
      if (ifs.feeds_[size_t(i) * n + j]) in.push_back(i);
    for (size_t a = 0; a < in.size(); ++a)
      for (size_t b = a + 1; b < in.size(); ++b) {
        const Disk& d1 = ifs.trans_[size_t(in[a]) * n + j]->image;
        const Disk& d2 = ifs.trans_[size_t(in[b]) * n + j]->image;
        if (std::abs(d1.center - d2.center) <= d1.radius + d2.radius)
          fail(errc::numerical_failure, "image disks are not disjoint");
      }
  }

  // faces: successor of i is the symbol leaving the next intercostal side
  // after the arrival side; the boundary arc between them joins the cuff
  {
    std::vector<int> succ(n), arc_of(n);
    for (int i = 0; i < n; ++i) {
      auto [s, t] = partner.at(data.directed_edges[i]);
      // next intercostal side counterclockwise
      int tn = -1;
      for (int step = 1; step < 6 && tn < 0; ++step)
        if (data.sectors[s][(t + step) % 6].intercostal) tn = (t + step) % 6;
      succ[i] = symbol_of.at({s, tn});
      arc_of[i] = (t + 1) % 6;  // arc between t and tn
      if (!((tn - t + 6) % 6 == 2))
        fail(errc::gluing_mismatch, "intercostal sides are not alternating");
    }
    std::vector<char> used(n, 0);
    for (int start = 0; start < n; ++start) {
      if (used[start]) continue;
      std::vector<int> face;
      double len = 0;
      int cur = start;
      do {
        used[cur] = 1;
        face.push_back(cur);
        auto [s, t] = partner.at(data.directed_edges[cur]);
        len += data.sectors[s][arc_of[cur]].len;
        cur = succ[cur];
      } while (cur != start);
      ifs.faces_.push_back(std::move(face));
      ifs.face_lengths_.push_back(len);
    }
  }
  return ifs;
}

MapDecomposition decompose_map(const MoebiusMap& f, const Disk& domain, const Disk& image) {
  if (std::abs(domain.center) > 1e-12 || std::abs(domain.radius - 1.0) > 1e-12)
    fail(errc::not_a_disk_map, "decomposition requires the unit disk as domain");
  double alpha = image.radius;
  double beta = image.center.real();
  if (std::abs(image.center.imag()) > 1e-9 * image.radius)
    fail(errc::not_a_disk_map, "image disk must be centered on the real axis");
  double sa = std::sqrt(alpha);
  MoebiusMap h{sa, beta / sa, 0, 1 / sa};
  MoebiusMap g = h.inverse() * f;
  // g should be [[cosh xi, sinh xi], [sinh xi, cosh xi]] up to sign
  if (g.a < 0) {
    g.a = -g.a;
    g.b = -g.b;
    g.c = -g.c;
    g.d = -g.d;
  }
  double xi = std::asinh((g.b + g.c) / 2);
  MoebiusMap ref = MoebiusMap::circle_translation(xi);
  double resid = std::max({std::abs(g.a - ref.a), std::abs(g.b - ref.b), std::abs(g.c - ref.c),
                           std::abs(g.d - ref.d)});
  if (resid > 1e-9) fail(errc::not_a_disk_map, "map does not send the domain disk to the image disk");
  return {alpha, beta, xi};
}

namespace {

// largest rho with f(ball(0, rho)) contained in the unit disk, by bisection
double inverse_domain_radius(const MoebiusMap& f) {
  double pole = std::abs(f.pole());
  auto inside = [&](double rho) {
    if (rho >= pole) return false;
    Disk img = disk_image(f, {cpx(0, 0), rho});
    return std::abs(img.center) + img.radius < 1.0;
  };
  double lo = 1.0;
  if (!inside(lo)) return 0.0;
  double hi = std::min(pole * 0.999999, 1e12);
  if (inside(hi)) return hi;
  for (int it = 0; it < 200 && (hi - lo) > 1e-9 * hi; ++it) {
    double mid = (lo + hi) / 2;
    (inside(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

IfsDiagnostics verify_ifs(const FlowIFS& ifs, double L, double C) {
  IfsDiagnostics diag;
  diag.eta_hat = ifs.eta_hat();
  diag.L = L;
  diag.C = C;
  diag.feet_inside = ifs.feet_inside();
  diag.min_disjoint_gap = std::numeric_limits<double>::infinity();

  const double eta = ifs.eta_hat();
  const int n = ifs.symbols();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!ifs.allowed(i, j)) continue;
      const IfsTransition& tr = ifs.transition(i, j);
      TransitionDiagnostics row;
      row.i = i;
      row.j = j;
      row.alpha = tr.alpha;
      row.beta = tr.beta;
      row.xi = tr.xi;
      row.kappa = tr.kappa;
      row.sup_derivative = tr.alpha * std::exp(2 * std::abs(tr.xi));
      row.inverse_radius = inverse_domain_radius(tr.f);
      row.containment_margin = 1.0 - (std::abs(tr.image.center) + tr.image.radius);
      diag.transitions.push_back(row);

      if (!(tr.alpha <= C * std::exp(-2 * eta))) diag.alpha_upper_ok = false;
      if (!(tr.alpha >= std::exp(-L) / C)) diag.alpha_lower_ok = false;
      if (!(std::abs(tr.beta) <= C * std::exp(-eta))) diag.beta_ok = false;
      if (!(std::abs(tr.xi) <= C * std::exp(-eta))) diag.xi_ok = false;
      if (!(row.inverse_radius >= std::exp(eta / 2))) diag.inverse_ok = false;
      if (!(row.sup_derivative < 1.0) || (eta >= 2.0 && !(row.sup_derivative <= 0.5)))
        diag.contraction_ok = false;
    }

  for (int j = 0; j < n; ++j) {
    std::vector<const Disk*> disks;
    for (int i = 0; i < n; ++i)
      if (ifs.allowed(i, j)) disks.push_back(&ifs.transition(i, j).image);
    for (size_t a = 0; a < disks.size(); ++a)
      for (size_t b = a + 1; b < disks.size(); ++b) {
        double gap = std::abs(disks[a]->center - disks[b]->center) - disks[a]->radius -
                     disks[b]->radius;
        diag.min_disjoint_gap = std::min(diag.min_disjoint_gap, gap);
      }
  }
  return diag;
}

}  // namespace resonator
