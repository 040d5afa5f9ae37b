#include "hyperpoly/ribbon_graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <numeric>

#include "hyperpoly/poly.hpp"

namespace hyperpoly {

namespace {

bool is_integer(const std::string& s) {
  if (s.empty()) return false;
  size_t start = s[0] == '-' ? 1 : 0;
  if (start == s.size() || s.size() - start > 18) return false;
  return std::all_of(s.begin() + static_cast<long>(start), s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

std::string slot_name(const std::string& vertex, int slot) {
  return "vertex " + vertex + " slot " + std::to_string(slot + 1);
}

// Largest matrix index space the Pfaffian engine supports (one 64-bit mask).
constexpr int kMaxMatrixDim = 64;

}  // namespace

bool natural_less(const std::string& a, const std::string& b) {
  bool ia = is_integer(a), ib = is_integer(b);
  if (ia && ib) return std::stoll(a) < std::stoll(b);
  if (ia != ib) return ia;
  return a < b;
}

RibbonGraph RibbonGraph::build(std::string name, const std::string& root,
                               const std::vector<VertexSpec>& vertices) {
  RibbonGraph g;
  g.name_ = std::move(name);
  if (vertices.empty()) throw ValidationError("graph has no vertices");

  std::vector<const VertexSpec*> order;
  for (const auto& v : vertices) order.push_back(&v);
  std::sort(order.begin(), order.end(),
            [](const VertexSpec* a, const VertexSpec* b) { return natural_less(a->id, b->id); });
  for (size_t i = 0; i + 1 < order.size(); ++i)
    if (order[i]->id == order[i + 1]->id)
      throw ValidationError("duplicate vertex id '" + order[i]->id + "'", order[i]->id);

  struct Ends {
    std::optional<Corner> head, tail;
  };
  std::map<std::string, Ends, decltype(&natural_less)> line_ends(&natural_less);
  std::map<std::string, Corner, decltype(&natural_less)> ext_at(&natural_less);

  for (int v = 0; v < static_cast<int>(order.size()); ++v) {
    const VertexSpec& spec = *order[v];
    g.vertex_ids_.push_back(spec.id);
    for (int s = 0; s < 4; ++s) {
      const SlotSpec& slot = spec.slots[s];
      Corner here{v, s};
      if (slot.id.empty())
        throw ValidationError(slot_name(spec.id, s) + ": empty line id or external label", spec.id,
                              s + 1);
      if (slot.external) {
        if (!ext_at.emplace(slot.id, here).second)
          throw ValidationError(slot_name(spec.id, s) + ": external label '" + slot.id +
                                    "' used twice",
                                spec.id, s + 1);
        continue;
      }
      Ends& ends = line_ends[slot.id];
      auto& target = slot.end == End::Head ? ends.head : ends.tail;
      if (target)
        throw ValidationError(slot_name(spec.id, s) + ": line '" + slot.id + "' has two " +
                                  (slot.end == End::Head ? "heads" : "tails"),
                              spec.id, s + 1);
      bool plus = slot_sign(s) > 0;
      if (slot.end == End::Head && !plus)
        throw ValidationError(slot_name(spec.id, s) + ": head of line '" + slot.id +
                                  "' on a '-' corner (non-orientable line)",
                              spec.id, s + 1);
      if (slot.end == End::Tail && plus)
        throw ValidationError(slot_name(spec.id, s) + ": tail of line '" + slot.id +
                                  "' on a '+' corner (non-orientable line)",
                              spec.id, s + 1);
      target = here;
    }
  }

  std::map<std::string, int> line_index, ext_index;
  for (const auto& [id, ends] : line_ends) {
    if (!ends.head || !ends.tail) {
      Corner c = ends.head ? *ends.head : *ends.tail;
      throw ValidationError("line '" + id + "' has only one end", g.vertex_ids_[c.vertex],
                            c.slot + 1);
    }
    line_index[id] = static_cast<int>(g.lines_.size());
    g.lines_.push_back({id, *ends.head, *ends.tail});
  }
  for (const auto& [label, c] : ext_at) {
    ext_index[label] = static_cast<int>(g.externals_.size());
    g.externals_.push_back({label, c});
  }
  if (g.num_lines() > kMaxLines)
    throw ValidationError("too many internal lines (at most " + std::to_string(kMaxLines) + ")");
  if (2 * g.num_lines() + g.num_vertices() - 1 > kMaxMatrixDim)
    throw ValidationError("graph too large for the Pfaffian engine");

  g.slots_.resize(order.size());
  for (int v = 0; v < g.num_vertices(); ++v)
    for (int s = 0; s < 4; ++s) {
      const SlotSpec& slot = order[v]->slots[s];
      g.slots_[v][s] = slot.external ? SlotContent{true, ext_index[slot.id], End::Head}
                                     : SlotContent{false, line_index[slot.id], slot.end};
    }

  auto root_it = std::find(g.vertex_ids_.begin(), g.vertex_ids_.end(), root);
  if (root_it == g.vertex_ids_.end()) throw ValidationError("root '" + root + "' is not a vertex");
  g.root_ = static_cast<int>(root_it - g.vertex_ids_.begin());

  // Connectivity through internal lines.
  std::vector<int> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& l : g.lines_) parent[find(l.head.vertex)] = find(l.tail.vertex);
  for (int v = 0; v < g.num_vertices(); ++v)
    if (find(v) != find(0))
      throw ValidationError("graph is disconnected: vertex '" + g.vertex_ids_[v] +
                                "' is not reachable from '" + g.vertex_ids_[0] + "'",
                            g.vertex_ids_[v]);
  return g;
}

RibbonGraph RibbonGraph::from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ValidationError("graph document must be a JSON object");
  auto id_of = [](const nlohmann::json& j, const std::string& what) -> std::string {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw ValidationError(what + " must be a string or an integer");
  };
  std::string name = doc.contains("name") && doc["name"].is_string()
                         ? doc["name"].get<std::string>()
                         : std::string("graph");
  if (!doc.contains("root")) throw ValidationError("missing \"root\"");
  std::string root = id_of(doc["root"], "\"root\"");
  if (!doc.contains("vertices") || !doc["vertices"].is_object())
    throw ValidationError("\"vertices\" must be an object");

  std::vector<VertexSpec> specs;
  for (const auto& [vid, slots] : doc["vertices"].items()) {
    if (!slots.is_array() || slots.size() != 4)
      throw ValidationError("vertex " + vid + " must list exactly 4 slots", vid);
    VertexSpec spec;
    spec.id = vid;
    for (int s = 0; s < 4; ++s) {
      const auto& j = slots[static_cast<size_t>(s)];
      if (!j.is_object())
        throw ValidationError(slot_name(vid, s) + ": slot must be an object", vid, s + 1);
      if (j.contains("ext")) {
        if (j.contains("line"))
          throw ValidationError(slot_name(vid, s) + ": slot is both line and external", vid,
                                s + 1);
        spec.slots[s] = SlotSpec::ext(id_of(j["ext"], slot_name(vid, s) + " external label"));
      } else if (j.contains("line")) {
        if (!j.contains("end") || !j["end"].is_string())
          throw ValidationError(slot_name(vid, s) + ": line end must be \"head\" or \"tail\"",
                                vid, s + 1);
        std::string end = j["end"].get<std::string>();
        if (end != "head" && end != "tail")
          throw ValidationError(slot_name(vid, s) + ": line end must be \"head\" or \"tail\"",
                                vid, s + 1);
        spec.slots[s] = SlotSpec::line(id_of(j["line"], slot_name(vid, s) + " line id"),
                                       end == "head" ? End::Head : End::Tail);
      } else {
        throw ValidationError(slot_name(vid, s) + ": slot needs \"line\" or \"ext\"", vid, s + 1);
      }
    }
    specs.push_back(std::move(spec));
  }
  return build(name, root, specs);
}

RibbonGraph RibbonGraph::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
  return from_json(doc);
}

std::optional<int> RibbonGraph::find_vertex(const std::string& id) const {
  for (int v = 0; v < num_vertices(); ++v)
    if (vertex_ids_[v] == id) return v;
  return std::nullopt;
}

std::optional<int> RibbonGraph::find_line(const std::string& id) const {
  for (int l = 0; l < num_lines(); ++l)
    if (lines_[l].id == id) return l;
  return std::nullopt;
}

std::optional<int> RibbonGraph::find_external(const std::string& label) const {
  for (int e = 0; e < num_externals(); ++e)
    if (externals_[e].label == label) return e;
  return std::nullopt;
}

std::optional<Corner> RibbonGraph::partner(Corner c) const {
  const SlotContent& sc = slot(c);
  if (sc.external) return std::nullopt;
  const Line& l = lines_[sc.index];
  return sc.end == End::Head ? l.tail : l.head;
}

std::vector<VertexSpec> RibbonGraph::specs() const {
  std::vector<VertexSpec> out;
  for (int v = 0; v < num_vertices(); ++v) {
    VertexSpec spec;
    spec.id = vertex_ids_[v];
    for (int s = 0; s < 4; ++s) {
      const SlotContent& sc = slots_[v][s];
      spec.slots[s] = sc.external ? SlotSpec::ext(externals_[sc.index].label)
                                  : SlotSpec::line(lines_[sc.index].id, sc.end);
    }
    out.push_back(std::move(spec));
  }
  return out;
}

RibbonGraph RibbonGraph::with_root(int vertex) const {
  return build(name_, vertex_ids_.at(vertex), specs());
}

RibbonGraph RibbonGraph::rotated(int vertex, int shift) const {
  if (shift % 2 != 0) throw std::invalid_argument("rotation must preserve corner signs");
  auto sp = specs();
  auto& slots = sp.at(vertex).slots;
  int k = ((shift % 4) + 4) % 4;
  std::rotate(slots.begin(), slots.begin() + k, slots.end());
  return build(name_, vertex_ids_[root_], sp);
}

nlohmann::json RibbonGraph::to_json() const {
  nlohmann::json verts = nlohmann::json::object();
  for (const auto& spec : specs()) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : spec.slots) {
      if (s.external)
        arr.push_back({{"ext", s.id}});
      else
        arr.push_back({{"line", s.id}, {"end", s.end == End::Head ? "head" : "tail"}});
    }
    verts[spec.id] = arr;
  }
  return {{"name", name_}, {"root", vertex_ids_[root_]}, {"vertices", verts}};
}

}  // namespace hyperpoly
