#pragma once

// Ribbon graphs with 4-valent vertices, oriented internal lines and external legs.
//
// Slots are stored 0-based (slot index k is corner k+1); corner k+1 carries the
// sign (-1)^k, so heads sit on slots 0 and 2 and tails on slots 1 and 3.
// Vertices, lines and external legs are indexed densely in natural order of
// their ids; line index l corresponds to the variable t_{l+1}.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace hyperpoly {

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what, std::string vertex = {}, int slot = 0)
      : std::runtime_error(what), vertex_(std::move(vertex)), slot_(slot) {}
  /// Offending vertex id, or empty when the problem is not slot-specific.
  const std::string& vertex() const { return vertex_; }
  /// 1-based corner, or 0.
  int slot() const { return slot_; }

 private:
  std::string vertex_;
  int slot_;
};

enum class End { Head, Tail };

struct Corner {
  int vertex = 0;
  int slot = 0;  // 0..3
  auto operator<=>(const Corner&) const = default;
};

/// Sign of a 0-based slot: +1 on slots 0 and 2, -1 on slots 1 and 3.
inline int slot_sign(int slot) { return slot % 2 == 0 ? 1 : -1; }

/// Textual description of a slot as it appears in a graph file.
struct SlotSpec {
  bool external = false;
  std::string id;  // line id or external label
  End end = End::Head;

  static SlotSpec line(std::string id, End end) { return {false, std::move(id), end}; }
  static SlotSpec ext(std::string label) { return {true, std::move(label), End::Head}; }
};

struct VertexSpec {
  std::string id;
  std::array<SlotSpec, 4> slots;
};

struct SlotContent {
  bool external = false;
  int index = 0;  // line index or external index
  End end = End::Head;
};

struct Line {
  std::string id;
  Corner head;
  Corner tail;
  const Corner& at(End e) const { return e == End::Head ? head : tail; }
};

struct External {
  std::string label;
  Corner corner;
};

/// Natural order on ids: integers numerically and before other strings.
bool natural_less(const std::string& a, const std::string& b);

class RibbonGraph {
 public:
  /// Validates and builds. Throws ValidationError.
  static RibbonGraph build(std::string name, const std::string& root,
                           const std::vector<VertexSpec>& vertices);
  static RibbonGraph from_json(const nlohmann::json& doc);
  static RibbonGraph load(const std::string& path);

  const std::string& name() const { return name_; }
  int num_vertices() const { return static_cast<int>(vertex_ids_.size()); }
  int num_lines() const { return static_cast<int>(lines_.size()); }
  int num_externals() const { return static_cast<int>(externals_.size()); }
  int root() const { return root_; }

  const std::string& vertex_id(int v) const { return vertex_ids_.at(v); }
  const Line& line(int l) const { return lines_.at(l); }
  const std::vector<Line>& lines() const { return lines_; }
  const External& external(int e) const { return externals_.at(e); }
  const std::vector<External>& externals() const { return externals_; }
  const SlotContent& slot(int v, int s) const { return slots_.at(v)[s]; }
  const SlotContent& slot(Corner c) const { return slots_.at(c.vertex)[c.slot]; }

  std::optional<int> find_vertex(const std::string& id) const;
  std::optional<int> find_line(const std::string& id) const;
  std::optional<int> find_external(const std::string& label) const;

  /// Corner at the other end of a line end; nullopt for an external slot.
  std::optional<Corner> partner(Corner c) const;

  /// The same graph description with a different root.
  RibbonGraph with_root(int vertex) const;
  /// Rotates the slot array of one vertex by `shift` positions (must be even).
  RibbonGraph rotated(int vertex, int shift) const;

  std::vector<VertexSpec> specs() const;
  nlohmann::json to_json() const;

 private:
  std::string name_;
  std::vector<std::string> vertex_ids_;
  std::vector<std::array<SlotContent, 4>> slots_;
  std::vector<Line> lines_;
  std::vector<External> externals_;
  int root_ = 0;
};

}  // namespace hyperpoly
