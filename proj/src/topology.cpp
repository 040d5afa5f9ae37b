#include "hyperpoly/topology.hpp"

#include <numeric>
#include <stdexcept>

namespace hyperpoly {

std::vector<int> face_labels(const RotationSystem& rs, std::vector<std::vector<int>>* faces) {
  int nd = rs.num_darts();
  std::vector<int> label(nd, -1);
  int count = 0;
  for (int start = 0; start < nd; ++start) {
    if (label[start] >= 0) continue;
    std::vector<int> cycle;
    int d = start;
    while (label[d] < 0) {
      label[d] = count;
      cycle.push_back(d);
      int across = rs.partner[d] >= 0 ? rs.partner[d] : d;
      d = rs.next[across];
    }
    if (d != start) throw std::logic_error("face walk is not a permutation cycle");
    if (faces) faces->push_back(std::move(cycle));
    ++count;
  }
  return label;
}

RotationSystem rotation_system(const RibbonGraph& g, const std::vector<bool>& removed) {
  RotationSystem rs;
  rs.num_vertices = g.num_vertices();
  int nd = 4 * g.num_vertices();
  rs.vertex_of.resize(nd);
  rs.next.resize(nd);
  rs.partner.assign(nd, -1);
  for (int v = 0; v < g.num_vertices(); ++v)
    for (int s = 0; s < 4; ++s) {
      rs.vertex_of[4 * v + s] = v;
      rs.next[4 * v + s] = 4 * v + (s + 1) % 4;
    }
  for (int l = 0; l < g.num_lines(); ++l) {
    if (!removed.empty() && removed[l]) continue;
    const Line& line = g.line(l);
    int h = 4 * line.head.vertex + line.head.slot;
    int t = 4 * line.tail.vertex + line.tail.slot;
    rs.partner[h] = t;
    rs.partner[t] = h;
  }
  return rs;
}

TopologyReport trace_faces(const RibbonGraph& g) {
  TopologyReport rep;
  rep.n = g.num_vertices();
  rep.L = g.num_lines();
  rep.N = g.num_externals();
  std::vector<std::vector<int>> cycles;
  std::vector<int> label = face_labels(rotation_system(g), &cycles);
  rep.F = static_cast<int>(cycles.size());
  rep.face_of.resize(g.num_vertices());
  for (int d = 0; d < static_cast<int>(label.size()); ++d) rep.face_of[d / 4][d % 4] = label[d];
  for (const auto& cycle : cycles) {
    Face f;
    for (int d : cycle) {
      Corner c{d / 4, d % 4};
      f.corners.push_back(c);
      const SlotContent& sc = g.slot(c);
      if (sc.external) f.externals.push_back(sc.index);
    }
    f.broken = !f.externals.empty();
    if (f.broken) ++rep.B;
    rep.faces.push_back(std::move(f));
  }
  int twice_genus = 2 - rep.n + rep.L - rep.F;
  if (twice_genus < 0 || twice_genus % 2 != 0)
    throw std::logic_error("Euler characteristic inconsistent with an orientable surface");
  rep.g = twice_genus / 2;
  return rep;
}

DualGraph dual_graph(const RibbonGraph& g, const TopologyReport& topo) {
  DualGraph dg;
  dg.num_vertices = topo.F;
  for (const auto& line : g.lines())
    dg.edges.emplace_back(topo.face_of[line.head.vertex][line.head.slot],
                          topo.face_of[line.tail.vertex][line.tail.slot]);
  return dg;
}

std::vector<int> spanning_forest(int num_vertices, const std::vector<std::pair<int, int>>& edges,
                                 const std::vector<int>& candidates) {
  std::vector<int> parent(num_vertices);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<int> chosen;
  for (int e : candidates) {
    int a = find(edges[e].first), b = find(edges[e].second);
    if (a == b) continue;
    parent[a] = b;
    chosen.push_back(e);
  }
  return chosen;
}

}  // namespace hyperpoly
