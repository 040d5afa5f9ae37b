#pragma once

// Spanning trees rooted at the graph's root, with the orientation data used by
// the first Filk move.

#include <vector>

#include "hyperpoly/ribbon_graph.hpp"

namespace hyperpoly {

struct RootedTree {
  std::vector<int> lines;            // sorted line indices
  std::vector<bool> in_tree;         // per line
  std::vector<int> toward_root;      // per vertex: the line l_V, -1 at the root
  std::vector<int> parent;           // per vertex, -1 at the root
  std::vector<int> tree_sign;        // per line: -1 if oriented towards the root, +1 away, 0 off-tree
  std::vector<Corner> corner_order;  // all 4n corners, root traversal order
  std::vector<std::vector<bool>> branch;  // per line: vertices above it (empty off-tree)
};

/// Annotates a set of n-1 lines; throws std::invalid_argument if it is not a spanning tree.
RootedTree make_rooted_tree(const RibbonGraph& g, std::vector<int> lines);

/// Every spanning tree, in lexicographic order of the sorted line-index sets.
std::vector<RootedTree> spanning_trees(const RibbonGraph& g);

/// Lexicographically first spanning tree avoiding the lines flagged in `forbidden`.
RootedTree first_spanning_tree(const RibbonGraph& g, const std::vector<bool>& forbidden);

}  // namespace hyperpoly
