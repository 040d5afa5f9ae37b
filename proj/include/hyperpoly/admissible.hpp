#pragma once

// Admissible line sets: J0 contains a spanning tree of the dual graph while its
// complement contains a spanning tree of the graph itself.

#include <vector>

#include "hyperpoly/ribbon_graph.hpp"
#include "hyperpoly/topology.hpp"

namespace hyperpoly {

struct AdmissibleSet {
  std::vector<int> J0;           // sorted line indices
  std::vector<int> I;            // complement of J0
  int k_I = 0;                   // |I| - L - F + 1
  std::vector<int> dual_tree;    // lines of J0 forming a dual spanning tree
  std::vector<int> direct_tree;  // lines of I forming a spanning tree
  bool leading = false;          // |J0| == F - 1
};

/// Checks both tree conditions; fills `out` when admissible.
bool check_admissible(const RibbonGraph& g, const TopologyReport& topo, const DualGraph& dual,
                      const std::vector<int>& J0, AdmissibleSet* out = nullptr);

/// All admissible sets ordered by size, then lexicographically. Throws
/// std::invalid_argument above 24 lines (exhaustive enumeration).
std::vector<AdmissibleSet> admissible_sets(const RibbonGraph& g);

/// Only the sets with |J0| = F - 1.
std::vector<AdmissibleSet> leading_admissible_sets(const RibbonGraph& g);

}  // namespace hyperpoly
