#pragma once

#include <cstdint>
#include <vector>

#include "resonator/numeric.hpp"

namespace resonator {

struct GraphEdge {
  int u = 0, v = 0;  // endpoint vertex indices
  Num length;
};

// trivalent metric ribbon graph. cyclic_order[v] lists the half-edges leaving
// v as signed 1-based edge ids: +e means edge e-1 oriented u->v (so it leaves
// u), -e means the opposite orientation (leaving v).
struct MetricRibbonGraph {
  std::vector<GraphEdge> edges;
  std::vector<std::vector<int>> cyclic_order;

  int num_vertices() const { return int(cyclic_order.size()); }
  int num_edges() const { return int(edges.size()); }
  bool all_lengths_exact() const;
};

// directed-edge symbols: edge e (0-based) forward = e, reverse = k + e
struct DirectedEdgeCoding {
  int k = 0;  // undirected edge count; 2k symbols
  std::vector<uint8_t> feeds;  // 2k x 2k row-major 0/1 matrix
  std::vector<Num> length;     // per symbol (= underlying edge length)

  int symbols() const { return 2 * k; }
  uint8_t A(int i, int j) const { return feeds[size_t(i) * symbols() + j]; }
  int reverse(int sym) const { return sym < k ? sym + k : sym - k; }
};

struct FaceReport {
  std::vector<std::vector<int>> faces;  // cyclic directed-edge symbol sequences
  std::vector<Num> boundary_length;
  int genus = 0;
  int num_faces() const { return int(faces.size()); }
};

// checks trivalence, positive lengths, connectivity and that every cyclic
// order is a permutation of the half-edges leaving its vertex
MetricRibbonGraph validate_graph(const MetricRibbonGraph& raw);

// faces by the fatgraph rule: the successor of a directed edge is the
// cyclic-next half-edge after its reverse at the terminal vertex
FaceReport trace_faces(const MetricRibbonGraph& g);

DirectedEdgeCoding directed_coding(const MetricRibbonGraph& g);

MetricRibbonGraph scale_graph(const MetricRibbonGraph& g, const Num& alpha);

// theta graph on two vertices with three parallel edges; cyclic orders
// (+1,+2,+3) and (-1,-3,-2), reproducing the standard 3-face embedding
MetricRibbonGraph make_theta(const Num& l1, const Num& l2, const Num& l3);

// directed-edge helpers
int edge_of_symbol(int sym, int k);
int initial_vertex(const MetricRibbonGraph& g, int sym);
int terminal_vertex(const MetricRibbonGraph& g, int sym);

}  // namespace resonator
