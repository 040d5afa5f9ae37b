#include "hyperpoly/structures.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace hyperpoly {

std::vector<VertexSpec> structure_specs(int n, const std::vector<Corner>& heads,
                                        const std::vector<Corner>& tails) {
  std::vector<VertexSpec> specs(n);
  std::vector<std::array<bool, 4>> used(n, {false, false, false, false});
  for (int v = 0; v < n; ++v) specs[v].id = std::to_string(v);
  for (size_t k = 0; k < heads.size(); ++k) {
    std::string id = std::to_string(k + 1);
    specs[heads[k].vertex].slots[heads[k].slot] = SlotSpec::line(id, End::Head);
    specs[tails[k].vertex].slots[tails[k].slot] = SlotSpec::line(id, End::Tail);
    used[heads[k].vertex][heads[k].slot] = used[tails[k].vertex][tails[k].slot] = true;
  }
  int ext = 0;
  for (int v = 0; v < n; ++v)
    for (int s = 0; s < 4; ++s)
      if (!used[v][s]) specs[v].slots[s] = SlotSpec::ext(std::to_string(++ext));
  return specs;
}

namespace {

bool connected(int n, const std::vector<Corner>& heads, const std::vector<Corner>& tails) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int comps = n;
  for (size_t k = 0; k < heads.size(); ++k) {
    int a = find(heads[k].vertex), b = find(tails[k].vertex);
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return comps == 1;
}

// Next k-subset of {0..m-1} in lexicographic order; false after the last one.
bool next_combination(std::vector<int>& c, int m) {
  int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[i] == m - k + i) --i;
  if (i < 0) return false;
  ++c[i];
  for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  return true;
}

}  // namespace

std::uint64_t enumerate_structures(int n, int L, const std::function<bool(const RibbonGraph&)>& visit) {
  if (n < 1 || L < 0 || L > 2 * n) throw std::invalid_argument("need n >= 1 and 0 <= L <= 2n");
  std::vector<Corner> plus, minus;
  for (int v = 0; v < n; ++v) {
    plus.push_back({v, 0});
    plus.push_back({v, 2});
    minus.push_back({v, 1});
    minus.push_back({v, 3});
  }
  std::uint64_t count = 0;
  std::vector<int> hc(L), tc(L);
  std::iota(hc.begin(), hc.end(), 0);
  do {
    std::iota(tc.begin(), tc.end(), 0);
    do {
      std::vector<int> perm(L);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        std::vector<Corner> heads, tails;
        for (int k = 0; k < L; ++k) {
          heads.push_back(plus[hc[k]]);
          tails.push_back(minus[tc[perm[k]]]);
        }
        if (!connected(n, heads, tails)) continue;
        ++count;
        if (!visit(RibbonGraph::build("structure", "0", structure_specs(n, heads, tails)))) return count;
      } while (std::next_permutation(perm.begin(), perm.end()));
    } while (next_combination(tc, 2 * n));
  } while (next_combination(hc, 2 * n));
  return count;
}

RibbonGraph random_structure(std::mt19937_64& rng, int n, int L) {
  if (n < 1 || L < 0 || L > 2 * n) throw std::invalid_argument("need n >= 1 and 0 <= L <= 2n");
  std::vector<Corner> plus, minus;
  for (int v = 0; v < n; ++v) {
    plus.push_back({v, 0});
    plus.push_back({v, 2});
    minus.push_back({v, 1});
    minus.push_back({v, 3});
  }
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::shuffle(plus.begin(), plus.end(), rng);
    std::shuffle(minus.begin(), minus.end(), rng);
    std::vector<Corner> heads(plus.begin(), plus.begin() + L), tails(minus.begin(), minus.begin() + L);
    if (connected(n, heads, tails))
      return RibbonGraph::build("random", "0", structure_specs(n, heads, tails));
  }
  throw std::runtime_error("no connected structure drawn");
}

std::string structure_code(const RibbonGraph& g) {
  int n = g.num_vertices();
  std::vector<int> order{g.root()}, index(n, -1);
  index[g.root()] = 0;
  std::string code;
  for (size_t k = 0; k < order.size(); ++k) {
    int v = order[k];
    for (int s = 0; s < 4; ++s) {
      const SlotContent& sc = g.slot(v, s);
      if (sc.external) {
        code += "e;";
        continue;
      }
      const Line& line = g.line(sc.index);
      const Corner& other = sc.end == End::Head ? line.tail : line.head;
      if (index[other.vertex] < 0) {
        index[other.vertex] = static_cast<int>(order.size());
        order.push_back(other.vertex);
      }
      code += (sc.end == End::Head ? "h" : "t") + std::to_string(index[other.vertex]) + "." +
              std::to_string(other.slot) + ";";
    }
    code += "|";
  }
  return code;
}

RibbonGraph relabel_lines(const RibbonGraph& g, const std::vector<std::string>& new_ids) {
  if (static_cast<int>(new_ids.size()) != g.num_lines())
    throw std::invalid_argument("one new id per line required");
  std::vector<VertexSpec> specs = g.specs();
  for (auto& v : specs)
    for (auto& s : v.slots)
      if (!s.external) {
        std::optional<int> l = g.find_line(s.id);
        s.id = new_ids.at(*l);
      }
  return RibbonGraph::build(g.name(), g.vertex_id(g.root()), specs);
}

}  // namespace hyperpoly
