#pragma once

#include <utility>
#include <vector>

#include "resonator/ifs.hpp"
#include "resonator/numeric.hpp"

namespace resonator {

// one closed word w_0...w_n (stored as the cycle w_0..w_{n-1}) together with
// its periodic-orbit data
struct OrbitRecord {
  std::vector<int> word;       // cycle letters
  double fixed_point = 0;      // u_w in D_{w_0} (real: the limit set is real)
  double log_deriv = 0;        // log f'_w(u_w) < 0
  double length = 0;           // l(gamma_w) = -log_deriv
  bool primitive = true;
  std::vector<int> canonical;  // lexicographically minimal rotation
};

// all closed permissible words of length n, lexicographic in (w_0, ..., w_{n-1})
std::vector<std::vector<int>> enumerate_closed_words(const FlowIFS& ifs, int n);

OrbitRecord orbit_data(const FlowIFS& ifs, const std::vector<int>& word);

// word map f_w = f_{w_{n-1} w_n} o ... o f_{w_0 w_1} as a matrix product
MoebiusMap word_map(const FlowIFS& ifs, const std::vector<int>& word);

// memoized orbit data for all word lengths up to max_n
class OrbitTable {
 public:
  OrbitTable(const FlowIFS& ifs, int max_n);

  const FlowIFS& ifs() const { return ifs_; }
  int max_length() const { return int(records_.size()) - 1; }
  const std::vector<OrbitRecord>& records(int n) const { return records_[n]; }

  // S_n(s) = sum over closed words of e^{-s l} / (1 - e^{-l}), with d/ds
  std::pair<cpx, cpx> orbit_sum(int n, cpx s) const;

 private:
  const FlowIFS& ifs_;
  std::vector<std::vector<OrbitRecord>> records_;  // index = word length
};

// cycle-expansion coefficients d_0..d_N (d_0 = 1) with s-derivatives,
// assembled from the partition formula through the memoized orbit sums
std::vector<std::pair<cpx, cpx>> cycle_coefficients(const OrbitTable& table, cpx s, int N);

struct ZetaValue {
  cpx value;
  cpx ds;
  double truncation_diag = 0;  // heuristic tail bound, constant factor 1
};

// d_X(s, z) = 1 + sum_{l <= N} z^l d_l(s)
ZetaValue surface_zeta_eval(const OrbitTable& table, cpx s, cpx z, int N = 0);

struct EulerProductValue {
  cpx value;
  bool convergence_warning = false;
  double tail_estimate = 0;
};

// truncated product over primitive cyclic classes [w] and 0 <= k <= k_cutoff
// of (1 - z^{|w|} e^{-(s+k) l(gamma_w)})
EulerProductValue euler_product_zeta(const OrbitTable& table, cpx s, cpx z, int word_cutoff,
                                     int k_cutoff);

// Fredholm determinant of the Cauchy-integral matrix truncation: basis u^m on
// each disk, coefficients by Q-point trapezoidal quadrature on |w| = rho
cpx nuclear_zeta(const FlowIFS& ifs, cpx s, cpx z, int basis_degree, int quad_points = 0);

// tail bound of the cycle expansion past z^{2k}, implicit constant 1
double truncation_estimate(int k, double A, double eta_hat);

}  // namespace resonator
