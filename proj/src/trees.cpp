#include "hyperpoly/trees.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "hyperpoly/topology.hpp"

namespace hyperpoly {

RootedTree make_rooted_tree(const RibbonGraph& g, std::vector<int> lines) {
  int n = g.num_vertices();
  std::sort(lines.begin(), lines.end());
  if (static_cast<int>(lines.size()) != n - 1)
    throw std::invalid_argument("a spanning tree needs exactly n-1 lines");
  RootedTree t;
  t.lines = lines;
  t.in_tree.assign(g.num_lines(), false);
  for (int l : lines) t.in_tree.at(l) = true;
  t.toward_root.assign(n, -1);
  t.parent.assign(n, -1);
  t.tree_sign.assign(g.num_lines(), 0);
  t.branch.assign(g.num_lines(), {});

  std::vector<bool> seen(n, false);
  // Depth-first walk: at each vertex visit the corners cyclically starting at
  // the entry corner (slot 1 at the root) and descend through tree lines.
  std::function<void(int, int)> visit = [&](int v, int entry) {
    seen[v] = true;
    for (int k = 0; k < 4; ++k) {
      int s = (entry + k) % 4;
      Corner c{v, s};
      t.corner_order.push_back(c);
      const SlotContent& sc = g.slot(c);
      if (sc.external || !t.in_tree[sc.index] || (k == 0 && v != g.root())) continue;
      Corner far = *g.partner(c);
      if (seen[far.vertex]) throw std::invalid_argument("tree lines contain a cycle");
      t.parent[far.vertex] = v;
      t.toward_root[far.vertex] = sc.index;
      // Oriented towards the root when the head sits on the parent side.
      t.tree_sign[sc.index] = sc.end == End::Head ? -1 : 1;
      visit(far.vertex, far.slot);
    }
  };
  visit(g.root(), 0);
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw std::invalid_argument("tree lines do not span the graph");

  for (int l : lines) {
    const Line& line = g.line(l);
    int child = t.parent[line.head.vertex] == line.tail.vertex ? line.head.vertex : line.tail.vertex;
    std::vector<bool> above(n, false);
    for (int v = 0; v < n; ++v) {
      int x = v;
      while (x != -1 && x != child) x = t.parent[x];
      above[v] = x == child;
    }
    t.branch[l] = std::move(above);
  }
  return t;
}

std::vector<RootedTree> spanning_trees(const RibbonGraph& g) {
  int n = g.num_vertices(), L = g.num_lines();
  std::vector<std::pair<int, int>> edges;
  for (const auto& line : g.lines()) edges.emplace_back(line.head.vertex, line.tail.vertex);
  std::vector<RootedTree> out;
  int k = n - 1;
  if (k > L) return out;
  std::vector<int> comb(k);
  for (int i = 0; i < k; ++i) comb[i] = i;
  while (true) {
    if (static_cast<int>(spanning_forest(n, edges, comb).size()) == k)
      out.push_back(make_rooted_tree(g, comb));
    int i = k - 1;
    while (i >= 0 && comb[i] == L - k + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
  }
  return out;
}

RootedTree first_spanning_tree(const RibbonGraph& g, const std::vector<bool>& forbidden) {
  std::vector<std::pair<int, int>> edges;
  std::vector<int> candidates;
  for (int l = 0; l < g.num_lines(); ++l) {
    const Line& line = g.line(l);
    edges.emplace_back(line.head.vertex, line.tail.vertex);
    if (forbidden.empty() || !forbidden[l]) candidates.push_back(l);
  }
  auto chosen = spanning_forest(g.num_vertices(), edges, candidates);
  if (static_cast<int>(chosen.size()) != g.num_vertices() - 1)
    throw std::invalid_argument("allowed lines do not connect the graph");
  return make_rooted_tree(g, chosen);
}

}  // namespace hyperpoly
