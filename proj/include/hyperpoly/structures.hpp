#pragma once

// Enumeration and seeded sampling of orientable 4-valent ribbon structures:
// heads on '+' corners, tails on '-' corners, externals everywhere else.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hyperpoly/ribbon_graph.hpp"

namespace hyperpoly {

/// Specs for n vertices ("0".."n-1") with line k (id "k+1") running from
/// head corner heads[k] to tail corner tails[k]; free corners get external
/// labels "1", "2", ... in vertex-then-slot order.
std::vector<VertexSpec> structure_specs(int n, const std::vector<Corner>& heads,
                                        const std::vector<Corner>& tails);

/// Calls `visit` on every connected structure with n vertices and L lines, root
/// "0". Lines are numbered by their head corners, so each unlabeled structure
/// appears once per vertex labeling. Stops early when `visit` returns false.
/// Returns the number of connected structures visited.
std::uint64_t enumerate_structures(int n, int L, const std::function<bool(const RibbonGraph&)>& visit);

/// A uniformly drawn head/tail assignment, redrawn until connected.
RibbonGraph random_structure(std::mt19937_64& rng, int n, int L);

/// Root-anchored isomorphism code ignoring vertex ids, line ids and external
/// labels: equal codes mean the same rooted ribbon structure.
std::string structure_code(const RibbonGraph& g);

/// Copy of g with line i renamed to new_ids[i].
RibbonGraph relabel_lines(const RibbonGraph& g, const std::vector<std::string>& new_ids);

}  // namespace hyperpoly
