#include "hyperpoly/rosette.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "hyperpoly/topology.hpp"

namespace hyperpoly {

namespace {

// Faces of a single vertex whose darts are `slots` (cyclic); darts with the
// same non-negative chord id are paired.
int chord_faces(const std::vector<int>& chord_of_dart) {
  int m = static_cast<int>(chord_of_dart.size());
  RotationSystem rs;
  rs.num_vertices = 1;
  rs.vertex_of.assign(m, 0);
  rs.next.resize(m);
  rs.partner.assign(m, -1);
  for (int i = 0; i < m; ++i) rs.next[i] = (i + 1) % m;
  for (int i = 0; i < m; ++i) {
    if (chord_of_dart[i] < 0) continue;
    for (int j = i + 1; j < m; ++j)
      if (chord_of_dart[j] == chord_of_dart[i]) {
        rs.partner[i] = j;
        rs.partner[j] = i;
      }
  }
  std::vector<std::vector<int>> faces;
  face_labels(rs, &faces);
  return static_cast<int>(faces.size());
}

}  // namespace

const LoopLine& Rosette::loop(int line) const {
  int k = loop_of_line_.at(line);
  if (k < 0) throw std::invalid_argument("line is a tree line, not a loop line");
  return loops_[k];
}

bool Rosette::sign_alternates() const {
  int m = static_cast<int>(cycle_.size());
  for (int i = 0; i < m; ++i)
    if (cycle_[i].sign == cycle_[(i + 1) % m].sign) return false;
  return true;
}

bool Rosette::precedes(int a, int b) const {
  const auto &x = loop(a), &y = loop(b);
  return std::max(x.start, x.end) < std::min(y.start, y.end);
}

bool Rosette::precedes_external(int a, int e) const {
  const auto& x = loop(a);
  return std::max(x.start, x.end) < external_pos_.at(e);
}

bool Rosette::nested(int a, int b) const {
  const auto &x = loop(a), &y = loop(b);
  int lo = std::min(y.start, y.end), hi = std::max(y.start, y.end);
  return lo < std::min(x.start, x.end) && std::max(x.start, x.end) < hi;
}

bool Rosette::external_inside(int e, int a) const {
  const auto& x = loop(a);
  int k = external_pos_.at(e);
  return std::min(x.start, x.end) < k && k < std::max(x.start, x.end);
}

bool Rosette::ltimes(int a, int b) const {
  // With l = b = (i, j) and l' = a = (p, q): l' ⋉ l when i < p < j < q.
  // Reading l = a, l' = b instead, l ⋉ l' when start(a) < end(b) < end(a) < start(b).
  const auto &l = loop(b), &lp = loop(a);
  int i = l.start, j = l.end, p = lp.start, q = lp.end;
  return (i < p && p < j && j < q) || (p < j && j < q && q < i);
}

bool Rosette::crosses(int a, int b) const {
  if (a == b) return false;
  const auto &x = loop(a), &y = loop(b);
  auto inside = [](int k, const LoopLine& c) {
    return std::min(c.start, c.end) < k && k < std::max(c.start, c.end);
  };
  return inside(y.start, x) != inside(y.end, x);
}

bool Rosette::start_before_end(int a, int b) const { return loop(a).start < loop(b).end; }

int Rosette::faces_without(const std::vector<int>& removed_lines) const {
  std::vector<int> chord(cycle_.size(), -1);
  for (size_t k = 0; k < cycle_.size(); ++k) {
    const auto& s = cycle_[k];
    if (s.external) continue;
    if (std::find(removed_lines.begin(), removed_lines.end(), s.index) != removed_lines.end())
      continue;
    chord[k] = s.index;
  }
  return chord_faces(chord);
}

Rosette rosette_from_cycle(std::vector<RosetteSlot> cycle, int num_lines, int num_externals) {
  Rosette r;
  r.cycle_ = std::move(cycle);
  r.loop_of_line_.assign(num_lines, -1);
  r.external_pos_.assign(num_externals, -1);
  std::vector<int> start(num_lines, -1), end(num_lines, -1);
  for (int pos = 0; pos < static_cast<int>(r.cycle_.size()); ++pos) {
    const RosetteSlot& s = r.cycle_[pos];
    if (s.external)
      r.external_pos_.at(s.index) = pos;
    else
      (s.end == End::Tail ? start : end).at(s.index) = pos;
  }
  for (int l = 0; l < num_lines; ++l) {
    if (start[l] < 0 && end[l] < 0) continue;
    if (start[l] < 0 || end[l] < 0) throw std::invalid_argument("loop line with a single end on the rosette");
    r.loop_of_line_[l] = static_cast<int>(r.loops_.size());
    r.loops_.push_back({l, start[l], end[l], start[l] < end[l] ? 1 : -1});
  }
  r.num_faces_ = r.faces_without({});
  int m = static_cast<int>(r.loops_.size());
  r.genus_ = (1 + m - r.num_faces_) / 2;
  return r;
}

Rosette build_rosette(const RibbonGraph& g, const RootedTree& t) {
  std::vector<RosetteSlot> cycle;
  for (const Corner& c : t.corner_order) {
    const SlotContent& sc = g.slot(c);
    if (!sc.external && t.in_tree[sc.index]) continue;
    cycle.push_back({c, slot_sign(c.slot), sc.external, sc.index, sc.end});
  }
  Rosette r = rosette_from_cycle(std::move(cycle), g.num_lines(), g.num_externals());
  r.tree_ = t;
  r.branch_sign_.assign(g.num_vertices(), std::vector<int>(g.num_lines(), 0));
  for (int v = 0; v < g.num_vertices(); ++v) {
    int lv = t.toward_root[v];
    if (lv < 0) continue;
    const auto& inside = t.branch[lv];
    for (int l = 0; l < g.num_lines(); ++l) {
      if (t.in_tree[l]) continue;
      bool head_in = inside[g.line(l).head.vertex], tail_in = inside[g.line(l).tail.vertex];
      r.branch_sign_[v][l] = head_in == tail_in ? 0 : (head_in ? 1 : -1);
    }
  }
  return r;
}

std::vector<NiceCrossing> nice_crossings(const Rosette& r, const std::vector<int>& face_lines) {
  if (r.faces_without(face_lines) != 1)
    throw std::invalid_argument("rosette without the face lines has more than one face");

  // Reduced cyclic sequence of the remaining chord ends, as (line, is_start).
  std::vector<std::pair<int, bool>> seq;
  for (const auto& s : r.cycle()) {
    if (s.external) continue;
    if (std::find(face_lines.begin(), face_lines.end(), s.index) != face_lines.end()) continue;
    seq.emplace_back(s.index, s.end == End::Tail);
  }
  int genus = static_cast<int>(seq.size()) / 4;

  std::vector<NiceCrossing> result;
  std::function<bool(const std::vector<std::pair<int, bool>>&)> solve =
      [&](const std::vector<std::pair<int, bool>>& cur) -> bool {
    if (cur.empty()) return true;
    int m = static_cast<int>(cur.size());
    auto pos_of = [&](int line, bool is_start) {
      for (int k = 0; k < m; ++k)
        if (cur[k].first == line && cur[k].second == is_start) return k;
      return -1;
    };
    auto interleave = [&](int a, int b) {
      int a0 = pos_of(a, true), a1 = pos_of(a, false);
      int lo = std::min(a0, a1), hi = std::max(a0, a1);
      auto in = [&](int k) { return lo < k && k < hi; };
      return in(pos_of(b, true)) != in(pos_of(b, false));
    };
    std::vector<NiceCrossing> candidates;
    for (int k = 0; k < m; ++k) {
      // start of l2 at k immediately precedes the end of l1 at k+1
      const auto& here = cur[k];
      const auto& next = cur[(k + 1) % m];
      if (here.second && !next.second && here.first != next.first &&
          interleave(here.first, next.first))
        candidates.push_back({next.first, here.first, true});
    }
    std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
      return std::pair(std::min(a.first, a.second), std::max(a.first, a.second)) <
             std::pair(std::min(b.first, b.second), std::max(b.first, b.second));
    });
    std::vector<int> lines;
    for (const auto& e : cur)
      if (e.second) lines.push_back(e.first);
    std::sort(lines.begin(), lines.end());
    for (size_t i = 0; i < lines.size(); ++i)
      for (size_t j = i + 1; j < lines.size(); ++j)
        if (interleave(lines[i], lines[j])) candidates.push_back({lines[i], lines[j], false});

    for (const auto& c : candidates) {
      std::vector<std::pair<int, bool>> rest;
      std::vector<int> chord;
      for (const auto& e : cur)
        if (e.first != c.first && e.first != c.second) {
          rest.push_back(e);
          chord.push_back(e.first);
        }
      if (!rest.empty() && chord_faces(chord) != 1) continue;
      result.push_back(c);
      if (solve(rest)) return true;
      result.pop_back();
    }
    return false;
  };
  if (!solve(seq) || static_cast<int>(result.size()) != genus)
    throw std::logic_error("super-rosette does not decompose into crossing pairs");
  return result;
}

}  // namespace hyperpoly
