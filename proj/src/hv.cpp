#include "hyperpoly/hv.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>

#include "hyperpoly/hu.hpp"
#include "hyperpoly/pfaffian.hpp"
#include "parallel.hpp"

namespace hyperpoly {

QuadForm::QuadForm(std::vector<std::string> labels)
    : labels_(std::move(labels)),
      coeff_(labels_.size(), std::vector<Poly>(labels_.size())) {}

void QuadForm::add_symmetric(int a, int b, const Poly& value) {
  coeff_[a][b] += value;
  if (a != b) coeff_[b][a] += value;
}

bool QuadForm::is_symmetric() const {
  for (int a = 0; a < size(); ++a)
    for (int b = a + 1; b < size(); ++b)
      if (!(coeff_[a][b] == coeff_[b][a])) return false;
  return true;
}

Rat QuadForm::eval(const Assignment& point, const std::vector<Rat>& x) const {
  if (static_cast<int>(x.size()) != size()) throw std::invalid_argument("wrong number of externals");
  Rat sum = 0;
  for (int a = 0; a < size(); ++a)
    for (int b = 0; b < size(); ++b)
      if (x[a] != 0 && x[b] != 0 && !coeff_[a][b].is_zero())
        sum += coeff_[a][b].eval(point) * x[a] * x[b];
  return sum;
}

Poly QuadForm::polynomial_coefficient(int a, int b) const {
  return a == b ? coeff_[a][a] : coeff_[a][b].scaled(2);
}

nlohmann::json QuadForm::to_json() const {
  nlohmann::json c = nlohmann::json::object();
  for (int a = 0; a < size(); ++a)
    for (int b = a; b < size(); ++b) {
      Poly p = polynomial_coefficient(a, b);
      if (!p.is_zero()) c[labels_[a] + "*" + labels_[b]] = canonical_string(p);
    }
  return {{"labels", labels_}, {"coefficients", c}};
}

std::vector<HVTerm> hv_terms(const RibbonGraph& g, int threads) {
  BMatrices bm = build_B(g);
  PMatrix p = build_P(g);
  int L = g.num_lines(), n = g.num_vertices(), d = bm.layout.dim();

  std::vector<std::vector<int>> subsets;
  for (auto& I : ordered_subsets(L))
    if ((n + static_cast<int>(I.size())) % 2 == 0) subsets.push_back(std::move(I));

  int workers = std::max(1, std::min<int>(threads, static_cast<int>(subsets.size())));
  std::vector<std::unique_ptr<MinorPfaffians>> engines;
  for (int w = 0; w < workers; ++w) engines.push_back(std::make_unique<MinorPfaffians>(bm.B));

  std::vector<HVTerm> terms(subsets.size());
  detail::parallel_for(static_cast<int>(subsets.size()), workers, [&](int idx, int w) {
    HVTerm& term = terms[idx];
    term.I = subsets[idx];
    term.weight = subset_weight(L, term.I);
    term.bracket.assign(p.rows(), Poly());
    std::vector<int> removed;
    std::vector<bool> in_i(d, false);
    for (int l : term.I) {
      removed.push_back(bm.layout.u(l));
      in_i[bm.layout.u(l)] = true;
    }
    for (int tau = 0; tau < d; ++tau) {
      if (in_i[tau]) continue;
      bool used = false;
      for (int r = 0; r < p.rows(); ++r) used = used || !p.entries[r][tau].is_zero();
      if (!used) continue;
      std::vector<int> del = removed;
      del.push_back(tau);
      Poly pf = engines[w]->pf_deleting(del);
      if (pf.is_zero()) continue;
      if (perm_sign(removed, tau, d) < 0) pf = -pf;
      for (int r = 0; r < p.rows(); ++r)
        if (!p.entries[r][tau].is_zero()) term.bracket[r] += p.entries[r][tau] * pf;
    }
  });
  return terms;
}

QuadForm hv_real(const RibbonGraph& g, int threads) {
  PMatrix p = build_P(g);
  QuadForm q(p.row_labels);
  for (const auto& term : hv_terms(g, threads))
    for (int a = 0; a < p.rows(); ++a) {
      if (term.bracket[a].is_zero()) continue;
      Poly wa = term.weight * term.bracket[a];
      for (int b = a; b < p.rows(); ++b)
        if (!term.bracket[b].is_zero()) q.add_symmetric(a, b, wa * term.bracket[b]);
    }
  return q;
}

DummyGraph dummy_graph(const RibbonGraph& g, int e, const std::vector<bool>& removed) {
  if (e < 0 || e >= g.num_externals()) throw std::invalid_argument("no such external leg");
  const External& ext = g.external(e);
  DummyGraph dg;
  dg.rs = rotation_system(g, removed);
  int root = g.root();
  int marker = dg.rs.num_darts();
  dg.rs.vertex_of.push_back(root);
  dg.rs.next.push_back(4 * root);
  dg.rs.partner.push_back(-1);
  dg.rs.next[4 * root + 3] = marker;
  int x = 4 * ext.corner.vertex + ext.corner.slot;
  dg.rs.partner[marker] = x;
  dg.rs.partner[x] = marker;
  dg.dummy_dart_root = marker;
  dg.dummy_dart_ext = x;
  dg.n = g.num_vertices();
  dg.L = 1;
  for (int l = 0; l < g.num_lines(); ++l)
    if (removed.empty() || !removed[l]) ++dg.L;
  std::vector<std::vector<int>> faces;
  face_labels(dg.rs, &faces);
  dg.F = static_cast<int>(faces.size());
  dg.g = (2 - dg.n + dg.L - dg.F) / 2;
  return dg;
}

namespace {

// F_J: externals on the face of G minus J that avoids the root marker sector
// (between corners 4 and 1 of the root). Empty unless G minus J has two faces.
void face_of_complement(const RibbonGraph& g, const std::vector<bool>& in_j, TwoAdmissibleSet& out) {
  std::vector<std::vector<int>> faces;
  std::vector<int> label = face_labels(rotation_system(g, in_j), &faces);
  if (faces.size() != 2) return;
  int root_face = label[4 * g.root()];
  for (int e = 0; e < g.num_externals(); ++e) {
    const Corner& c = g.external(e).corner;
    if (label[4 * c.vertex + c.slot] == root_face) continue;
    out.face.push_back(e);
    out.signs.push_back(slot_sign(c.slot));
  }
}

// Rosette of G' after contracting a spanning tree that contains the dummy line.
Rosette dummy_rosette(const RibbonGraph& g, const DummyGraph& dg, const std::vector<bool>& tree) {
  int nd = dg.rs.num_darts();
  auto paired = [&](int d) {
    if (dg.rs.partner[d] < 0) return false;
    if (d == dg.dummy_dart_root || d == dg.dummy_dart_ext) return true;
    return tree[g.slot(d / 4, d % 4).index];
  };
  std::vector<RosetteSlot> cycle;
  int start = 4 * g.root(), d = start, visited = 0;
  do {
    if (!paired(d) && d != dg.dummy_dart_root) {
      Corner c{d / 4, d % 4};
      const SlotContent& sc = g.slot(c);
      cycle.push_back({c, slot_sign(c.slot), sc.external, sc.index, sc.end});
    }
    d = dg.rs.next[paired(d) ? dg.rs.partner[d] : d];
    if (++visited > nd) throw std::logic_error("tree walk on G' does not close");
  } while (d != start);
  if (visited != nd) throw std::logic_error("tree walk on G' misses darts");
  return rosette_from_cycle(std::move(cycle), g.num_lines(), g.num_externals());
}

// 2^genus prod_{l in face_lines} 2(W - sigma_l) on the rosette of G': sigma_l is
// the loop sign of l, flipped once for every genus pair whose two lines both
// cross l with equal loop signs.
Poly rosette_sign_product(const Rosette& ros, const std::vector<int>& face_lines,
                          const std::vector<NiceCrossing>& pairs, int genus) {
  Poly out = Poly(2L).pow(static_cast<unsigned>(genus));
  Poly w2 = Poly::omega().scaled(2);
  for (int l : face_lines) {
    int sigma = ros.loop_sign(l);
    for (const auto& pr : pairs)
      if (ros.crosses(l, pr.first) && ros.crosses(l, pr.second) &&
          ros.loop_sign(pr.first) * ros.loop_sign(pr.second) == 1)
        sigma = -sigma;
    out *= w2 - Poly(2L * sigma);
  }
  return out;
}

}  // namespace

std::vector<TwoAdmissibleSet> two_admissible_sets(const RibbonGraph& g, int e) {
  int L = g.num_lines(), n = g.num_vertices();
  if (L > 24) throw std::invalid_argument("2-admissible enumeration limited to 24 lines");
  DummyGraph dg = dummy_graph(g, e);
  int host = g.external(e).corner.vertex;
  if (host == g.root()) return {};

  std::vector<int> label = face_labels(dg.rs);
  std::vector<std::pair<int, int>> dual, direct;
  for (const auto& line : g.lines()) {
    dual.emplace_back(label[4 * line.head.vertex + line.head.slot],
                      label[4 * line.tail.vertex + line.tail.slot]);
    direct.emplace_back(line.head.vertex, line.tail.vertex);
  }
  direct.emplace_back(host, g.root());  // the dummy line, index L

  std::vector<TwoAdmissibleSet> out;
  for (int k = dg.F - 1; k <= L; ++k) {
    std::vector<int> comb(k);
    for (int i = 0; i < k; ++i) comb[i] = i;
    while (true) {
      std::vector<bool> in_j(L, false);
      for (int l : comb) in_j[l] = true;
      std::vector<int> rest{L};
      for (int l = 0; l < L; ++l)
        if (!in_j[l]) rest.push_back(l);
      if (static_cast<int>(spanning_forest(dg.F, dual, comb).size()) == dg.F - 1) {
        auto tree = spanning_forest(n, direct, rest);
        if (static_cast<int>(tree.size()) == n - 1) {
          TwoAdmissibleSet t;
          t.J = comb;
          t.I.assign(rest.begin() + 1, rest.end());
          t.target = e;
          t.genus_prime = dg.g;
          t.faces_prime = dg.F;
          t.leading = k == dg.F - 1;
          if (t.leading) {
            face_of_complement(g, in_j, t);
            std::vector<bool> in_tree(L, false);
            for (int l : tree)
              if (l < L) in_tree[l] = true;
            Rosette ros = dummy_rosette(g, dg, in_tree);
            t.closed_form = rosette_sign_product(ros, t.J, nice_crossings(ros, t.J), dg.g);
          }
          out.push_back(std::move(t));
        }
      }
      int i = k - 1;
      while (i >= 0 && comb[i] == L - k + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  return out;
}

std::vector<HVLeadingTerm> hv_leading_terms(const RibbonGraph& g) {
  std::map<std::vector<int>, HVLeadingTerm> merged;
  for (int e = 0; e < g.num_externals(); ++e)
    for (auto& t : two_admissible_sets(g, e)) {
      if (!t.leading) continue;
      auto [it, fresh] = merged.try_emplace(t.J);
      HVLeadingTerm& h = it->second;
      h.targets.push_back(e);
      if (!fresh) continue;
      h.J = t.J;
      h.face = t.face;
      h.signs = t.signs;
      h.genus_prime = t.genus_prime;
      h.faces_prime = t.faces_prime;
      h.closed_form = t.closed_form;
      h.coefficient = Poly::s().pow(static_cast<unsigned>(2 * (t.genus_prime + t.faces_prime - 1))) *
                      t.closed_form.pow(2) * subset_weight(g.num_lines(), t.I);
    }
  std::vector<HVLeadingTerm> out;
  for (auto& [J, h] : merged) out.push_back(std::move(h));
  std::stable_sort(out.begin(), out.end(),
                   [](const HVLeadingTerm& a, const HVLeadingTerm& b) { return a.J.size() < b.J.size(); });
  return out;
}

Rat hv_leading_bound_at(const std::vector<HVLeadingTerm>& terms, const Assignment& point,
                        const std::vector<Rat>& x) {
  Rat total = 0;
  for (const auto& t : terms) {
    Rat sum = 0;
    for (size_t k = 0; k < t.face.size(); ++k) sum += t.signs[k] * x.at(t.face[k]);
    if (sum != 0) total += t.coefficient.eval(point) * sum * sum;
  }
  return total;
}

QuadForm hv_leading_bound(const RibbonGraph& g, const std::vector<HVLeadingTerm>& terms) {
  QuadForm q(build_P(g).row_labels);
  for (const auto& t : terms)
    for (size_t a = 0; a < t.face.size(); ++a)
      for (size_t b = a; b < t.face.size(); ++b)
        q.add_symmetric(t.face[a], t.face[b], t.coefficient.scaled(t.signs[a] * t.signs[b]));
  return q;
}

bool has_opposite_externals(const RibbonGraph& g) {
  for (int v = 0; v < g.num_vertices(); ++v)
    for (int s = 0; s < 2; ++s)
      if (g.slot(v, s).external && g.slot(v, s + 2).external) return true;
  return false;
}

}  // namespace hyperpoly
