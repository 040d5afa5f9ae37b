#pragma once

// The rosette: the single vertex left after contracting every tree line (first
// Filk move), with its loop lines and external legs placed on one corner cycle.

#include <utility>
#include <vector>

#include "hyperpoly/ribbon_graph.hpp"
#include "hyperpoly/trees.hpp"

namespace hyperpoly {

struct RosetteSlot {
  Corner corner;  // corner of the original graph
  int sign = 1;   // +1 on '+' corners
  bool external = false;
  int index = 0;  // loop line or external index
  End end = End::Head;
};

/// A loop line as an oriented chord (start = tail position, end = head position).
struct LoopLine {
  int line = 0;
  int start = 0;
  int end = 0;
  int sign = 0;  // +1 when it runs along the rosette orientation (start < end)
};

class Rosette {
 public:
  const std::vector<RosetteSlot>& cycle() const { return cycle_; }
  const std::vector<LoopLine>& loops() const { return loops_; }
  const RootedTree& tree() const { return tree_; }
  bool is_loop(int line) const { return loop_of_line_.at(line) >= 0; }
  const LoopLine& loop(int line) const;
  int external_position(int e) const { return external_pos_.at(e); }

  int num_faces() const { return num_faces_; }
  int genus() const { return genus_; }
  int loop_sign(int line) const { return loop(line).sign; }
  /// epsilon_k(l) for the branch above non-root vertex k: +1 if l enters it
  /// (head inside), -1 if it exits, 0 otherwise.
  int branch_sign(int vertex, int line) const { return branch_sign_.at(vertex).at(line); }

  /// Signs '+' and '-' alternate around the cycle.
  bool sign_alternates() const;

  // Order relations between loop lines a=(i,j), b=(p,q) and external positions.
  bool precedes(int a, int b) const;          // a < b as intervals: i,j < p,q
  bool precedes_external(int a, int e) const; // i,j < position of e
  bool nested(int a, int b) const;            // a inside b
  bool external_inside(int e, int a) const;
  bool ltimes(int a, int b) const;            // literal a ⋉ b pattern
  bool crosses(int a, int b) const;           // chords interleave (either pattern)
  bool start_before_end(int a, int b) const;  // start of a precedes end of b

  /// Faces of the rosette with the given lines deleted (external legs and the
  /// ends of deleted lines act as boundary markers).
  int faces_without(const std::vector<int>& removed_lines) const;

 private:
  friend Rosette build_rosette(const RibbonGraph& g, const RootedTree& t);
  friend Rosette rosette_from_cycle(std::vector<RosetteSlot> cycle, int num_lines,
                                    int num_externals);
  std::vector<RosetteSlot> cycle_;
  std::vector<LoopLine> loops_;
  std::vector<int> loop_of_line_;
  std::vector<int> external_pos_;
  std::vector<std::vector<int>> branch_sign_;
  RootedTree tree_;
  int num_faces_ = 0;
  int genus_ = 0;
};

Rosette build_rosette(const RibbonGraph& g, const RootedTree& t);

/// Rosette given directly by its corner cycle (loop-line ends and external
/// legs). Lines absent from the cycle count as tree lines; branch signs and the
/// tree are left empty.
Rosette rosette_from_cycle(std::vector<RosetteSlot> cycle, int num_lines, int num_externals);

struct NiceCrossing {
  int first = 0;   // l1
  int second = 0;  // l2: its start immediately precedes the end of l1
  bool adjacent = true;
};

/// Pairs the genus lines of the super-rosette obtained by deleting
/// `face_lines`. Throws std::invalid_argument when that rosette has more than
/// one face; returns exactly g pairs otherwise.
std::vector<NiceCrossing> nice_crossings(const Rosette& r, const std::vector<int>& face_lines);

}  // namespace hyperpoly
