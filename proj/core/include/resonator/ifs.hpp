#pragma once

#include <array>
#include <optional>
#include <vector>

#include "resonator/graph.hpp"
#include "resonator/moebius.hpp"

namespace resonator {

struct SectorSide {
  bool intercostal = false;  // false = boundary arc
  double len = 0;
};

// hexagonal sector decomposition of a surface core. Each sector lists its six
// sides in cyclic order, alternating boundary arcs and intercostals; gluings
// match intercostal sides pairwise; directed_edges assigns one symbol to each
// (sector, intercostal side) pair, i.e. to each directed spine edge, giving
// the sector the edge originates in and the side it crosses.
struct SectorData {
  std::vector<std::vector<SectorSide>> sectors;
  std::vector<std::array<int, 4>> gluings;  // {sector, side, sector, side}
  std::vector<std::pair<int, int>> directed_edges;
};

struct IfsTransition {
  MoebiusMap f;       // D_i -> D_j
  Disk image;         // D_ij = f(D_i), strictly inside the unit disk
  double alpha = 0;   // radius of D_ij   (linear part h(u) = alpha u + beta)
  double beta = 0;    // center of D_ij
  double xi = 0;      // unit-circle translation parameter of g = h^{-1} o f
  double kappa = 0;   // boundary arc length = d_H(D_j, D_ij)
};

// flow-adapted iterated function scheme: one unit disk per directed spine
// edge, Moebius transitions realizing the sector-gluing geometry
class FlowIFS {
 public:
  int symbols() const { return n_; }
  bool allowed(int i, int j) const { return feeds_[size_t(i) * n_ + j] != 0; }
  const IfsTransition& transition(int i, int j) const;
  int reverse(int sym) const { return reverse_[sym]; }

  const std::vector<uint8_t>& feeds_matrix() const { return feeds_; }
  double delta(int sym) const { return delta_[sym]; }      // intercostal length crossed
  double eta_hat() const { return eta_hat_; }              // min half-wedge boundary arc
  bool feet_inside() const { return feet_inside_; }        // ribs land inside their arcs
  double sup_letter_derivative() const { return theta_; }  // max over maps of sup_{D_i} |f'|
  double min_pole_radius() const { return min_pole_radius_; }

  const std::vector<std::vector<int>>& faces() const { return faces_; }
  const std::vector<double>& face_lengths() const { return face_lengths_; }

  const SectorData& sector_data() const { return data_; }

 private:
  friend FlowIFS build_ifs_from_sectors(const SectorData& data);

  int n_ = 0;
  std::vector<uint8_t> feeds_;
  std::vector<std::optional<IfsTransition>> trans_;
  std::vector<int> reverse_;
  std::vector<double> delta_;
  double eta_hat_ = 0;
  bool feet_inside_ = true;
  double theta_ = 0;
  double min_pole_radius_ = 0;
  std::vector<std::vector<int>> faces_;
  std::vector<double> face_lengths_;
  SectorData data_;
};

// spine of the three-funneled sphere with funnel widths L1, L2, L3: the theta
// graph with edge lengths (L_j + L_k - L_i)/2
MetricRibbonGraph pants_spine(const Num& L1, const Num& L2, const Num& L3);

// two congruent right-angled hexagons with boundary arcs (l_a + l_b)/2 and
// seams from the hexagon relation; exact for pants, where the intercostal
// feet bisect the corridor arcs
SectorData pants_sector_data(double L1, double L2, double L3);

FlowIFS build_pants_ifs(double L1, double L2, double L3);

FlowIFS build_ifs_from_sectors(const SectorData& data);

struct MapDecomposition {
  double alpha, beta, xi;
};

// split f = h o g with h(u) = alpha u + beta the linear map taking D_i onto
// D_ij and g a translation along the unit-circle geodesic
MapDecomposition decompose_map(const MoebiusMap& f, const Disk& domain, const Disk& image);

struct TransitionDiagnostics {
  int i, j;
  double alpha, beta, xi, kappa;
  double sup_derivative;      // sup over D_i of |f'|
  double inverse_radius;      // largest rho with f(ball(0, rho)) inside D_j
  double containment_margin;  // 1 - (|center| + radius) of D_ij
};

struct IfsDiagnostics {
  double eta_hat = 0;
  double L = 0;
  double C = 1;
  bool feet_inside = true;
  std::vector<TransitionDiagnostics> transitions;
  double min_disjoint_gap = 0;  // min distance between sibling image disks

  // measured extremes vs the geometric bounds, with constant factor C
  bool alpha_upper_ok = true;  // alpha <= C e^{-2 eta}
  bool alpha_lower_ok = true;  // alpha >= e^{-L}/C
  bool beta_ok = true;         // |beta| <= C e^{-eta}
  bool xi_ok = true;           // |xi| <= C e^{-eta}
  bool inverse_ok = true;      // inverse radius >= e^{eta/2}
  bool contraction_ok = true;  // sup |f'| < 1 (and < 1/2 when eta >= 2)
  bool all_ok() const {
    return alpha_upper_ok && alpha_lower_ok && beta_ok && xi_ok && inverse_ok && contraction_ok;
  }
};

// report-only measurement of the geometric-control bounds
IfsDiagnostics verify_ifs(const FlowIFS& ifs, double L, double C = 4.0);

}  // namespace resonator
