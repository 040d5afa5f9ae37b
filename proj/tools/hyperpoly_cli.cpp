// Command-line front end: topology, HU, HV^R, leading terms and verification.
//
// Exit codes: 0 ok, 1 verification failure, 2 invalid input, 3 internal
// consistency failure.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hyperpoly/hu.hpp"
#include "hyperpoly/hv.hpp"
#include "hyperpoly/oracle.hpp"
#include "hyperpoly/qmatrix.hpp"
#include "hyperpoly/ribbon_graph.hpp"
#include "hyperpoly/topology.hpp"
#include "json.hpp"

namespace {

using namespace hyperpoly;
using nlohmann::json;

constexpr int kOk = 0, kVerifyFail = 1, kInput = 2, kInternal = 3;

struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string path;
  bool as_json = false;
  std::uint64_t seed = 42;
  int samples = 20;
  std::string omega_text = "0,1/3,1/2,9/10";
  int threads = 1;
};

int threads_from_env() {
  const char* v = std::getenv("HYPERPOLY_THREADS");
  if (v == nullptr || *v == '\0') return 1;
  try {
    int t = std::stoi(v);
    return t >= 1 ? t : 1;
  } catch (const std::exception&) {
    return 1;
  }
}

std::vector<Rat> parse_omegas(const std::string& text) {
  std::vector<Rat> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Rat w = parse_rat(item);
    if (w < 0 || w >= 1) throw std::invalid_argument("Omega values must lie in [0, 1): " + item);
    out.push_back(w);
  }
  if (out.empty()) throw std::invalid_argument("empty --omega list");
  return out;
}

std::string line_ids(const RibbonGraph& g, const std::vector<int>& lines) {
  std::string out = "{";
  for (size_t k = 0; k < lines.size(); ++k) out += (k ? "," : "") + g.line(lines[k]).id;
  return out + "}";
}

json line_id_array(const RibbonGraph& g, const std::vector<int>& lines) {
  json a = json::array();
  for (int l : lines) a.push_back(g.line(l).id);
  return a;
}

std::string point_string(const Assignment& p) {
  std::string out;
  for (const auto& [var, value] : p) out += (out.empty() ? "" : " ") + var.name() + "=" + to_string(value);
  return out;
}

json point_json(const Assignment& p) {
  json o = json::object();
  for (const auto& [var, value] : p) o[var.name()] = to_string(value);
  return o;
}

// ---- analyze ----

int cmd_analyze(const RibbonGraph& g, const RunConfig& cfg) {
  TopologyReport t = trace_faces(g);
  if (cfg.as_json) {
    json faces = json::array();
    for (const auto& f : t.faces) {
      json corners = json::array(), ext = json::array();
      for (const auto& c : f.corners) corners.push_back({g.vertex_id(c.vertex), c.slot + 1});
      for (int e : f.externals) ext.push_back(g.external(e).label);
      faces.push_back({{"corners", corners}, {"externals", ext}, {"broken", f.broken}});
    }
    json doc = {{"name", g.name()}, {"n", t.n}, {"L", t.L}, {"F", t.F}, {"g", t.g},
                {"B", t.B}, {"N", t.N}, {"faces", faces}};
    std::cout << doc.dump(2) << "\n";
    return kOk;
  }
  std::cout << "n=" << t.n << " L=" << t.L << " F=" << t.F << " g=" << t.g << " B=" << t.B
            << " N=" << t.N << "\n";
  for (size_t i = 0; i < t.faces.size(); ++i) {
    const Face& f = t.faces[i];
    std::cout << "face " << i + 1 << (f.broken ? " broken" : "") << ":";
    for (const auto& c : f.corners) std::cout << " " << g.vertex_id(c.vertex) << "." << c.slot + 1;
    if (!f.externals.empty()) {
      std::cout << " externals";
      for (int e : f.externals) std::cout << " " << g.external(e).label;
    }
    std::cout << "\n";
  }
  return kOk;
}

// ---- hu ----

int cmd_hu(const RibbonGraph& g, const RunConfig& cfg) {
  HUResult r = compute_hu(g, cfg.threads);
  if (!cfg.as_json) {
    std::cout << canonical_string(r.hu) << "\n";
    return kOk;
  }
  json terms = json::array();
  for (const auto& term : r.terms) {
    if (term.n_I.is_zero()) continue;
    terms.push_back({{"I", line_id_array(g, term.I)},
                     {"k_I", term.k_I},
                     {"s_exponent", term.s_exponent},
                     {"n_I", canonical_string(term.n_I)}});
  }
  json doc = {{"name", g.name()},
              {"hu", canonical_string(r.hu)},
              {"monomials", to_json(r.hu, g.num_lines())},
              {"terms", terms}};
  std::cout << doc.dump(2) << "\n";
  return kOk;
}

// ---- hv ----

int cmd_hv(const RibbonGraph& g, const RunConfig& cfg) {
  QuadForm q = hv_real(g, cfg.threads);
  if (!q.is_symmetric()) throw InternalError("HV^R quadratic form is not symmetric");
  if (cfg.as_json) {
    json doc = q.to_json();
    doc["name"] = g.name();
    doc["labels"] = q.labels();
    std::cout << doc.dump(2) << "\n";
    return kOk;
  }
  for (int a = 0; a < q.size(); ++a)
    for (int b = a; b < q.size(); ++b) {
      Poly c = q.polynomial_coefficient(a, b);
      if (!c.is_zero())
        std::cout << q.labels()[a] << "*" << q.labels()[b] << ": " << canonical_string(c) << "\n";
    }
  return kOk;
}

// ---- leading ----

struct LeadingCheck {
  bool reduced = false, filk = false, closed = false, flags = false, planar = true;
  bool consistent() const { return reduced && filk && closed && flags && planar; }
};

LeadingCheck check_leading(const LeadingTerm& lt) {
  LeadingCheck c;
  c.reduced = lt.n_I_reduced == lt.n_I || lt.n_I_reduced == -lt.n_I;
  c.filk = lt.n_I_filk == lt.n_I_reduced;
  c.closed = lt.closed_form == lt.n_I || lt.closed_form == -lt.n_I;
  c.flags = lt.filk.uwg_zero && lt.filk.wfwf_zero && lt.filk.uwf_triangular && lt.filk.jordan_form;
  c.planar = !lt.planar_regular || lt.planar_product == lt.planar_reduced_pf;
  return c;
}

int cmd_leading(const RibbonGraph& g, const RunConfig& cfg) {
  std::vector<LeadingTerm> lts = leading_terms(g);
  std::vector<HVLeadingTerm> hvs;
  if (g.num_externals() > 0) hvs = hv_leading_terms(g);
  bool consistent = true;
  json rows = json::array();
  for (const auto& lt : lts) {
    LeadingCheck c = check_leading(lt);
    consistent = consistent && c.consistent();
    if (cfg.as_json) {
      json row = {{"J0", line_id_array(g, lt.J0.J0)},
                  {"I", line_id_array(g, lt.J0.I)},
                  {"n_I", canonical_string(lt.n_I)},
                  {"n_I_factored", omega_factored_string(lt.n_I)},
                  {"closed_form", canonical_string(lt.closed_form)},
                  {"reduced_pfaffian", canonical_string(lt.n_I_reduced)},
                  {"filk_pfaffian", canonical_string(lt.n_I_filk)},
                  {"consistent", c.consistent()}};
      if (lt.planar_regular) row["planar_product"] = canonical_string(lt.planar_product);
      rows.push_back(row);
    } else {
      std::cout << "J0=" << line_ids(g, lt.J0.J0) << " n_I=" << omega_factored_string(lt.n_I)
                << " closed=" << omega_factored_string(lt.closed_form)
                << (c.consistent() ? "" : " INCONSISTENT") << "\n";
    }
  }
  json hv_rows = json::array();
  for (const auto& h : hvs) {
    std::vector<std::string> face, targets;
    for (int e : h.face) face.push_back(g.external(e).label);
    for (int e : h.targets) targets.push_back(g.external(e).label);
    if (cfg.as_json) {
      hv_rows.push_back({{"J", line_id_array(g, h.J)},
                         {"targets", targets},
                         {"face", face},
                         {"signs", h.signs},
                         {"genus_prime", h.genus_prime},
                         {"faces_prime", h.faces_prime},
                         {"closed_form", canonical_string(h.closed_form)},
                         {"coefficient", canonical_string(h.coefficient)}});
    } else {
      std::cout << "HV J=" << line_ids(g, h.J) << " face={";
      for (size_t k = 0; k < face.size(); ++k)
        std::cout << (k ? "," : "") << (h.signs[k] > 0 ? "+" : "-") << "x" << face[k];
      std::cout << "} g'=" << h.genus_prime << " F'=" << h.faces_prime
                << " closed=" << omega_factored_string(h.closed_form) << "\n";
    }
  }
  if (cfg.as_json) std::cout << json{{"name", g.name()}, {"hu", rows}, {"hv", hv_rows}}.dump(2) << "\n";
  if (!consistent) throw InternalError("leading Pfaffian routes disagree");
  return kOk;
}

// ---- verify ----

struct Check {
  std::string name;
  bool pass = true;
  std::string detail;
  std::optional<Assignment> witness;
};

class Verifier {
 public:
  Verifier(const RibbonGraph& g, const json& doc, const RunConfig& cfg)
      : g_(g), doc_(doc), cfg_(cfg), omegas_(parse_omegas(cfg.omega_text)) {}

  std::vector<Check> run() {
    topo_ = trace_faces(g_);
    hu_ = compute_hu(g_, cfg_.threads);
    leading_ = leading_terms(g_);
    std::vector<Check> out;
    out.push_back(topology());
    if (doc_.contains("expected")) out.push_back(expected());
    out.push_back(oracle_hu());
    if (g_.num_externals() > 0) out.push_back(oracle_hv());
    if (matrix_layout(g_).dim() <= 8) out.push_back(detq());
    out.push_back(leading_closed_form());
    out.push_back(fourth_filk_check());
    out.push_back(leading_degree());
    out.push_back(positivity());
    return out;
  }

 private:
  Check topology() {
    Check c{"topology", true, "", std::nullopt};
    const auto& t = topo_;
    c.detail = "n=" + std::to_string(t.n) + " L=" + std::to_string(t.L) + " F=" + std::to_string(t.F) +
               " g=" + std::to_string(t.g) + " B=" + std::to_string(t.B);
    c.pass = 2 - 2 * t.g == t.n - t.L + t.F && t.g >= 0;
    return c;
  }

  Check expected() {
    Check c{"expected", true, "", std::nullopt};
    const json& e = doc_["expected"];
    std::vector<std::string> bad;
    auto cmp = [&](const char* key, int value) {
      if (e.contains(key) && e[key].get<int>() != value) bad.push_back(key);
    };
    cmp("n", topo_.n);
    cmp("L", topo_.L);
    cmp("F", topo_.F);
    cmp("g", topo_.g);
    cmp("B", topo_.B);
    if (e.contains("hu")) {
      Poly want = parse_poly(e["hu"].get<std::string>());
      if (want != hu_.hu) {
        bad.push_back("hu");
        c.witness = distinguishing_point(want, hu_.hu);
      }
    }
    if (e.contains("leading")) {
      for (const auto& row : e["leading"]) {
        std::vector<int> J0;
        for (const auto& id : row["J0"]) {
          auto l = g_.find_line(id.get<std::string>());
          if (!l) throw std::invalid_argument("expected.leading names unknown line " + id.get<std::string>());
          J0.push_back(*l);
        }
        std::sort(J0.begin(), J0.end());
        Poly want = parse_poly(row["n_I"].get<std::string>());
        bool found = false;
        for (const auto& lt : leading_)
          if (lt.J0.J0 == J0) found = lt.n_I == want || lt.n_I == -want;
        if (!found) bad.push_back("leading " + line_ids(g_, J0));
      }
    }
    c.pass = bad.empty();
    for (const auto& b : bad) c.detail += (c.detail.empty() ? "mismatch: " : ", ") + b;
    return c;
  }

  std::optional<Assignment> distinguishing_point(const Poly& a, const Poly& b) {
    PointSampler sampler(cfg_.seed);
    for (int k = 0; k < 100; ++k) {
      Assignment p = sampler.point(g_.num_lines());
      if (a.eval(p) != b.eval(p)) return p;
    }
    return std::nullopt;
  }

  Check oracle_hu() {
    Check c{"oracle-hu", true, "", std::nullopt};
    PointSampler sampler(cfg_.seed);
    for (int k = 0; k < cfg_.samples; ++k) {
      Assignment p = sampler.point(g_.num_lines());
      Rat prod = 1;
      for (int l = 0; l < g_.num_lines(); ++l) prod *= p.at(Var::t(l));
      if (hu_.hu.eval(p) != det_AB_at(g_, p) * prod) {
        c.pass = false;
        c.witness = p;
        c.detail = "HU differs from det(A+B) prod t";
        return c;
      }
    }
    c.detail = std::to_string(cfg_.samples) + " points";
    return c;
  }

  Check oracle_hv() {
    Check c{"oracle-hv", true, "", std::nullopt};
    QuadForm q = hv_real(g_, cfg_.threads);
    PointSampler sampler(cfg_.seed + 1);
    int checked = 0;
    for (int attempt = 0; checked < cfg_.samples && attempt < 10 * cfg_.samples + 10; ++attempt) {
      Assignment p = sampler.point(g_.num_lines());
      RatMatrix m;
      try {
        m = hv_real_at(g_, p);
      } catch (const std::domain_error&) {
        continue;
      }
      ++checked;
      for (int a = 0; a < q.size(); ++a)
        for (int b = 0; b < q.size(); ++b)
          if (q.at(a, b).eval(p) != m[a][b]) {
            c.pass = false;
            c.witness = p;
            c.detail = "entry " + q.labels()[a] + "," + q.labels()[b] + " differs from P Q^-1 P^T";
            return c;
          }
    }
    c.pass = checked == cfg_.samples;
    c.detail = std::to_string(checked) + " points";
    return c;
  }

  Check detq() {
    Check c{"detq", true, "", std::nullopt};
    PointSampler sampler(cfg_.seed + 2);
    int points = std::min(cfg_.samples, 5);
    for (int k = 0; k < points; ++k) {
      Assignment p = sampler.point(g_.num_lines());
      if (!detq_check(g_, p)) {
        c.pass = false;
        c.witness = p;
        c.detail = "det Q differs from det(A+B)^4";
        return c;
      }
    }
    c.detail = std::to_string(points) + " points";
    return c;
  }

  Check leading_closed_form() {
    Check c{"leading-closed-form", true, "", std::nullopt};
    for (const auto& lt : leading_) {
      LeadingCheck lc = check_leading(lt);
      bool shape = matches_closed_form(lt.n_I, topo_.g, static_cast<int>(lt.J0.J0.size()));
      if (!lc.closed || !lc.planar || !lc.reduced || !shape) {
        c.pass = false;
        c.detail = "J0=" + line_ids(g_, lt.J0.J0) + " n_I=" + canonical_string(lt.n_I);
        return c;
      }
    }
    c.detail = std::to_string(leading_.size()) + " leading sets";
    return c;
  }

  Check fourth_filk_check() {
    Check c{"fourth-filk", true, "", std::nullopt};
    for (const auto& lt : leading_) {
      LeadingCheck lc = check_leading(lt);
      if (!lc.filk || !lc.flags) {
        c.pass = false;
        c.detail = "J0=" + line_ids(g_, lt.J0.J0);
        return c;
      }
    }
    c.detail = std::to_string(leading_.size()) + " leading sets";
    return c;
  }

  Check leading_degree() {
    Check c{"leading-degree", true, "", std::nullopt};
    if (leading_.empty()) {
      c.pass = false;
      c.detail = "no leading admissible set";
      return c;
    }
    for (const auto& lt : leading_) {
      const Poly& p = lt.n_I;
      bool only_w = p.variables().empty() || (p.variables().size() == 1 && *p.variables().begin() == Var::omega());
      int top = topo_.F - 1;
      if (p.is_zero() || !only_w || p.degree(Var::omega()) > top || p.coefficient(Var::omega(), top).is_zero()) {
        c.pass = false;
        c.detail = "J0=" + line_ids(g_, lt.J0.J0) + " n_I=" + canonical_string(p);
        return c;
      }
    }
    return c;
  }

  Check positivity() {
    Check c{"positivity", true, "", std::nullopt};
    Poly bound = theorem_bound(g_, leading_);
    PositivityReport r = positivity_check(g_, hu_.hu, bound, omegas_, cfg_.samples, cfg_.seed);
    c.pass = r.ok;
    c.witness = r.witness;
    c.detail = r.ok ? std::to_string(r.points_checked) + " points" : r.failure;
    return c;
  }

  const RibbonGraph& g_;
  const json& doc_;
  const RunConfig& cfg_;
  std::vector<Rat> omegas_;
  TopologyReport topo_;
  HUResult hu_;
  std::vector<LeadingTerm> leading_;
};

int cmd_verify(const RibbonGraph& g, const json& doc, const RunConfig& cfg) {
  std::vector<Check> checks = Verifier(g, doc, cfg).run();
  bool all = true;
  json rows = json::array();
  for (const auto& c : checks) {
    all = all && c.pass;
    if (cfg.as_json) {
      json row = {{"check", c.name}, {"pass", c.pass}, {"detail", c.detail}};
      if (c.witness) row["witness"] = point_json(*c.witness);
      rows.push_back(row);
    } else {
      std::cout << (c.pass ? "PASS " : "FAIL ") << c.name;
      if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
      if (!c.pass && c.witness) std::cout << " witness: " << point_string(*c.witness);
      std::cout << "\n";
    }
  }
  if (cfg.as_json)
    std::cout << json{{"name", g.name()}, {"seed", cfg.seed}, {"samples", cfg.samples}, {"checks", rows}, {"pass", all}}.dump(2)
              << "\n";
  return all ? kOk : kVerifyFail;
}

json read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void report_error(const RunConfig& cfg, const std::string& kind, const std::string& message,
                  const std::string& vertex = {}, int corner = 0) {
  if (cfg.as_json) {
    json err = {{"kind", kind}, {"message", message}};
    if (!vertex.empty()) err["vertex"] = vertex;
    if (corner > 0) err["corner"] = corner;
    std::cout << json{{"error", err}}.dump(2) << "\n";
  }
  std::cerr << "error (" << kind << "): " << message;
  if (!vertex.empty()) std::cerr << " [vertex " << vertex << (corner > 0 ? ", corner " + std::to_string(corner) : "") << "]";
  std::cerr << "\n";
}

int run(const RunConfig& cfg) {
  try {
    json doc = read_document(cfg.path);
    RibbonGraph g = RibbonGraph::from_json(doc);
    if (cfg.command == "analyze") return cmd_analyze(g, cfg);
    if (cfg.command == "hu") return cmd_hu(g, cfg);
    if (cfg.command == "hv") return cmd_hv(g, cfg);
    if (cfg.command == "leading") return cmd_leading(g, cfg);
    return cmd_verify(g, doc, cfg);
  } catch (const ValidationError& e) {
    report_error(cfg, "validation", e.what(), e.vertex(), e.slot());
    return kInput;
  } catch (const InternalError& e) {
    report_error(cfg, "internal", e.what());
    return kInternal;
  } catch (const std::invalid_argument& e) {
    report_error(cfg, "input", e.what());
    return kInput;
  } catch (const json::exception& e) {
    report_error(cfg, "input", e.what());
    return kInput;
  } catch (const std::exception& e) {
    report_error(cfg, "internal", e.what());
    return kInternal;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperbolic polynomials of ribbon Feynman graphs"};
  app.require_subcommand(1);
  RunConfig cfg;
  cfg.threads = threads_from_env();
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"analyze", "Faces, genus and broken faces"},
      {"hu", "First hyperbolic polynomial HU"},
      {"hv", "Real part of the second hyperbolic polynomial as a quadratic form"},
      {"leading", "Leading admissible sets with their Pfaffians"},
      {"verify", "Oracle, closed-form and positivity checks (PASS/FAIL table)"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", cfg.path, "Graph file (JSON)")->required();
    sub->add_flag("--json", cfg.as_json, "JSON output");
    sub->add_option("--seed", cfg.seed, "Seed for sampled checks")->capture_default_str();
    sub->add_option("--samples", cfg.samples, "Points per sampled check")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--omega", cfg.omega_text, "Omega values for the positivity check")->capture_default_str();
    sub->callback([&cfg, name = name] { cfg.command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }
  return run(cfg);
}
