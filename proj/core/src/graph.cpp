#include "resonator/graph.hpp"

#include <algorithm>
#include <map>

namespace resonator {

bool MetricRibbonGraph::all_lengths_exact() const {
  return std::all_of(edges.begin(), edges.end(), [](const GraphEdge& e) { return e.length.exact(); });
}

int edge_of_symbol(int sym, int k) { return sym < k ? sym : sym - k; }

int initial_vertex(const MetricRibbonGraph& g, int sym) {
  int k = g.num_edges();
  return sym < k ? g.edges[sym].u : g.edges[sym - k].v;
}

int terminal_vertex(const MetricRibbonGraph& g, int sym) {
  int k = g.num_edges();
  return sym < k ? g.edges[sym].v : g.edges[sym - k].u;
}

namespace {

// signed 1-based id -> directed-edge symbol
int signed_id_to_symbol(int id, int k) {
  if (id == 0 || std::abs(id) > k) fail(errc::bad_cyclic_order, "edge id out of range");
  return id > 0 ? id - 1 : k + (-id - 1);
}

}  // namespace

MetricRibbonGraph validate_graph(const MetricRibbonGraph& raw) {
  const int k = raw.num_edges();
  const int V = raw.num_vertices();
  if (k == 0 || V == 0) fail(errc::not_trivalent, "empty graph");

  for (const auto& e : raw.edges) {
    if (e.u < 0 || e.u >= V || e.v < 0 || e.v >= V)
      fail(errc::bad_cyclic_order, "edge endpoint out of range");
    if (!(e.length.sign() > 0)) fail(errc::non_positive_length, "edge length must be positive");
  }

  // half-edges leaving each vertex
  std::vector<std::vector<int>> incident(V);
  for (int e = 0; e < k; ++e) {
    incident[raw.edges[e].u].push_back(e);
    incident[raw.edges[e].v].push_back(k + e);
  }
  for (int v = 0; v < V; ++v) {
    if (incident[v].size() != 3) fail(errc::not_trivalent, "vertex " + std::to_string(v));
    if (raw.cyclic_order.size() != size_t(V) || raw.cyclic_order[v].size() != 3)
      fail(errc::bad_cyclic_order, "cyclic order must list 3 half-edges per vertex");
    std::vector<int> listed;
    for (int id : raw.cyclic_order[v]) listed.push_back(signed_id_to_symbol(id, k));
    std::vector<int> want = incident[v];
    std::vector<int> got = listed;
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    if (want != got)
      fail(errc::bad_cyclic_order, "cyclic order at vertex " + std::to_string(v) +
                                       " is not a permutation of its half-edges");
  }

  // connectivity
  std::vector<char> seen(V, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int h : incident[v]) {
      int w = (h < k) ? raw.edges[h].v : raw.edges[h - k].u;
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  if (std::count(seen.begin(), seen.end(), 1) != V) fail(errc::disconnected, "graph is not connected");

  return raw;
}

FaceReport trace_faces(const MetricRibbonGraph& g) {
  const int k = g.num_edges();
  const int n = 2 * k;

  // successor[sym] = cyclic-next half-edge after reverse(sym) at terminal vertex
  std::vector<int> succ(n, -1);
  for (int sym = 0; sym < n; ++sym) {
    int v = terminal_vertex(g, sym);
    int rev = sym < k ? sym + k : sym - k;
    const auto& order = g.cyclic_order[v];
    int pos = -1;
    for (int t = 0; t < 3; ++t)
      if (signed_id_to_symbol(order[t], k) == rev) pos = t;
    if (pos < 0) fail(errc::bad_cyclic_order, "half-edge missing from cyclic order");
    succ[sym] = signed_id_to_symbol(order[(pos + 1) % 3], k);
  }

  FaceReport report;
  std::vector<char> used(n, 0);
  for (int start = 0; start < n; ++start) {
    if (used[start]) continue;
    std::vector<int> face;
    Num len;
    int cur = start;
    do {
      used[cur] = 1;
      face.push_back(cur);
      len += g.edges[edge_of_symbol(cur, k)].length;
      cur = succ[cur];
    } while (cur != start);
    report.faces.push_back(std::move(face));
    report.boundary_length.push_back(len);
  }

  int V = g.num_vertices(), E = k, F = report.num_faces();
  int chi = V - E + F;  // = 2 - 2g
  if (chi % 2 != 0 || chi > 2) fail(errc::numerical_failure, "inconsistent Euler characteristic");
  report.genus = (2 - chi) / 2;
  return report;
}

DirectedEdgeCoding directed_coding(const MetricRibbonGraph& g) {
  const int k = g.num_edges();
  const int n = 2 * k;
  DirectedEdgeCoding coding;
  coding.k = k;
  coding.feeds.assign(size_t(n) * n, 0);
  coding.length.reserve(n);
  for (int sym = 0; sym < n; ++sym) coding.length.push_back(g.edges[edge_of_symbol(sym, k)].length);
  for (int i = 0; i < n; ++i) {
    int rev = coding.reverse(i);
    for (int j = 0; j < n; ++j) {
      if (j == rev) continue;
      if (terminal_vertex(g, i) == initial_vertex(g, j)) coding.feeds[size_t(i) * n + j] = 1;
    }
  }
  return coding;
}

MetricRibbonGraph scale_graph(const MetricRibbonGraph& g, const Num& alpha) {
  if (!(alpha.sign() > 0)) fail(errc::non_positive_scale, "scale must be positive");
  MetricRibbonGraph scaled = g;
  for (auto& e : scaled.edges) e.length *= alpha;
  return scaled;
}

MetricRibbonGraph make_theta(const Num& l1, const Num& l2, const Num& l3) {
  MetricRibbonGraph g;
  g.edges = {{0, 1, l1}, {0, 1, l2}, {0, 1, l3}};
  g.cyclic_order = {{+1, +2, +3}, {-1, -3, -2}};
  return validate_graph(g);
}

}  // namespace resonator
