#pragma once

// Faces, genus and the dual graph of a ribbon graph.

#include <utility>
#include <vector>

#include "hyperpoly/ribbon_graph.hpp"

namespace hyperpoly {

/// A combinatorial map: darts arranged cyclically around vertices, some of them
/// paired into edges. Unpaired darts behave as boundary markers: a face walk
/// reaching one simply moves on to the next dart around the vertex.
struct RotationSystem {
  std::vector<int> vertex_of;
  std::vector<int> next;     // next dart around the same vertex
  std::vector<int> partner;  // -1 for an unpaired dart
  int num_vertices = 0;

  int num_darts() const { return static_cast<int>(next.size()); }
};

/// Face orbits of d -> next(partner(d)) (partner(d) = d when unpaired).
/// Returns the face index of every dart; faces are numbered in order of their
/// smallest dart. `faces` receives the dart cycles when non-null.
std::vector<int> face_labels(const RotationSystem& rs, std::vector<std::vector<int>>* faces = nullptr);

/// Dart 4v+s is corner (v, s). Lines flagged in `removed` leave their darts unpaired.
RotationSystem rotation_system(const RibbonGraph& g, const std::vector<bool>& removed = {});

struct Face {
  std::vector<Corner> corners;  // cyclic walk
  std::vector<int> externals;   // external indices met by the walk
  bool broken = false;
};

struct TopologyReport {
  int n = 0, L = 0, F = 0, g = 0, B = 0, N = 0;
  std::vector<Face> faces;
  std::vector<std::array<int, 4>> face_of;  // face index per corner
};

TopologyReport trace_faces(const RibbonGraph& g);

/// Vertices are faces; edge l joins the faces on the two sides of line l.
struct DualGraph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;  // indexed by line
};

DualGraph dual_graph(const RibbonGraph& g, const TopologyReport& topo);

/// Union-find helper: greedily selects the edges (in the given order) that
/// join distinct components. Returns the selected edge indices.
std::vector<int> spanning_forest(int num_vertices, const std::vector<std::pair<int, int>>& edges,
                                 const std::vector<int>& candidates);

}  // namespace hyperpoly
