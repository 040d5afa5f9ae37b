#include "hyperpoly/admissible.hpp"

#include <algorithm>
#include <stdexcept>

namespace hyperpoly {

bool check_admissible(const RibbonGraph& g, const TopologyReport& topo, const DualGraph& dual,
                      const std::vector<int>& J0, AdmissibleSet* out) {
  int L = g.num_lines();
  std::vector<bool> in_j(L, false);
  for (int l : J0) in_j.at(l) = true;
  std::vector<int> j_lines, i_lines;
  for (int l = 0; l < L; ++l) (in_j[l] ? j_lines : i_lines).push_back(l);

  auto dual_tree = spanning_forest(dual.num_vertices, dual.edges, j_lines);
  if (static_cast<int>(dual_tree.size()) != topo.F - 1) return false;
  std::vector<std::pair<int, int>> direct;
  for (const auto& line : g.lines()) direct.emplace_back(line.head.vertex, line.tail.vertex);
  auto direct_tree = spanning_forest(g.num_vertices(), direct, i_lines);
  if (static_cast<int>(direct_tree.size()) != topo.n - 1) return false;

  if (out) {
    out->J0 = j_lines;
    out->I = i_lines;
    out->k_I = static_cast<int>(i_lines.size()) - L - topo.F + 1;
    out->dual_tree = dual_tree;
    out->direct_tree = direct_tree;
    out->leading = static_cast<int>(j_lines.size()) == topo.F - 1;
  }
  return true;
}

namespace {

std::vector<AdmissibleSet> enumerate(const RibbonGraph& g, bool leading_only) {
  int L = g.num_lines();
  if (L > 24) throw std::invalid_argument("admissible-set enumeration limited to 24 lines");
  TopologyReport topo = trace_faces(g);
  DualGraph dual = dual_graph(g, topo);
  std::vector<AdmissibleSet> out;
  int lo = topo.F - 1;
  int hi = leading_only ? lo : std::min(L, topo.F - 1 + 2 * topo.g);
  for (int k = lo; k <= hi; ++k) {
    std::vector<int> comb(k);
    for (int i = 0; i < k; ++i) comb[i] = i;
    while (true) {
      AdmissibleSet a;
      if (check_admissible(g, topo, dual, comb, &a)) out.push_back(std::move(a));
      int i = k - 1;
      while (i >= 0 && comb[i] == L - k + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  return out;
}

}  // namespace

std::vector<AdmissibleSet> admissible_sets(const RibbonGraph& g) { return enumerate(g, false); }

std::vector<AdmissibleSet> leading_admissible_sets(const RibbonGraph& g) {
  return enumerate(g, true);
}

}  // namespace hyperpoly
