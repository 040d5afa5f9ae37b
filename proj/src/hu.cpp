#include "hyperpoly/hu.hpp"

#include <memory>
#include <stdexcept>

#include "hyperpoly/oracle.hpp"
#include "hyperpoly/pfaffian.hpp"
#include "parallel.hpp"

namespace hyperpoly {

Poly subset_weight(int num_lines, const std::vector<int>& I) {
  std::vector<bool> in(num_lines, false);
  for (int i : I) in.at(i) = true;
  Poly w(1L);
  Rat half(1, 2);
  for (int l = 0; l < num_lines; ++l)
    w *= in[l] ? (Poly(1L) + Poly::t(l).pow(2)).scaled(half) : Poly::t(l);
  return w;
}

std::vector<std::vector<int>> ordered_subsets(int L) {
  std::vector<std::vector<int>> out;
  for (int k = 0; k <= L; ++k) {
    std::vector<int> comb(k);
    for (int i = 0; i < k; ++i) comb[i] = i;
    while (true) {
      out.push_back(comb);
      int i = k - 1;
      while (i >= 0 && comb[i] == L - k + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  return out;
}

HUResult compute_hu(const RibbonGraph& g, int threads) {
  HUResult res;
  res.topology = trace_faces(g);
  const TopologyReport& topo = res.topology;
  BMatrices bm = build_B(g);
  int L = g.num_lines(), n = g.num_vertices();

  std::vector<std::vector<int>> subsets;
  for (auto& I : ordered_subsets(L))
    if ((n + static_cast<int>(I.size())) % 2 == 1) subsets.push_back(std::move(I));

  int workers = std::max(1, std::min<int>(threads, static_cast<int>(subsets.size())));
  std::vector<std::unique_ptr<MinorPfaffians>> engines;
  for (int w = 0; w < workers; ++w) engines.push_back(std::make_unique<MinorPfaffians>(bm.Bprime));

  res.terms.resize(subsets.size());
  detail::parallel_for(static_cast<int>(subsets.size()), workers, [&](int idx, int w) {
    HUTerm& term = res.terms[idx];
    term.I = subsets[idx];
    int size = static_cast<int>(term.I.size());
    term.k_I = size - L - topo.F + 1;
    term.s_exponent = 2 * topo.g - term.k_I;
    if (term.s_exponent != 2 * L - size - n + 1 || term.s_exponent < 0)
      throw std::logic_error("inconsistent s exponent for a subset term");
    std::vector<int> deleted;
    for (int l : term.I) deleted.push_back(bm.layout.u(l));
    term.n_I = engines[w]->pf_deleting(deleted);
    if (!term.n_I.is_zero())
      term.contribution = Poly::s().pow(static_cast<unsigned>(term.s_exponent)) *
                          term.n_I.pow(2) * subset_weight(L, term.I);
  });
  for (const auto& t : res.terms) res.hu += t.contribution;
  return res;
}

Poly boundary_pfaffian(const RibbonGraph& g) {
  if ((g.num_vertices() + g.num_lines()) % 2 == 0) return Poly();
  BMatrices bm = build_B(g);
  std::vector<int> deleted;
  for (int l = 0; l < g.num_lines(); ++l) deleted.push_back(bm.layout.u(l));
  MinorPfaffians engine(bm.Bprime);
  return engine.pf_deleting(deleted);
}

bool matches_closed_form(const Poly& p, int genus, int factors) {
  Poly base = Poly(2L).pow(static_cast<unsigned>(genus + factors));
  for (int minus = 0; minus <= factors; ++minus) {
    Poly c = base * (Poly::omega() - Poly(1L)).pow(static_cast<unsigned>(minus)) *
             (Poly::omega() + Poly(1L)).pow(static_cast<unsigned>(factors - minus));
    if (p == c || p == -c) return true;
  }
  return false;
}

std::string omega_factored_string(const Poly& p) {
  if (p.is_zero() || p.variables().size() > 1 || (!p.is_constant() && p.degree(Var::omega()) == 0))
    return canonical_string(p);
  int deg = p.degree(Var::omega());
  Rat lead = p.coefficient(Var::omega(), deg).constant_value();
  for (int plus = deg; plus >= 0; --plus) {
    int minus = deg - plus;
    Poly c = Poly(lead) * (Poly::omega() + Poly(1L)).pow(static_cast<unsigned>(plus)) *
             (Poly::omega() - Poly(1L)).pow(static_cast<unsigned>(minus));
    if (c != p) continue;
    std::string out = to_string(lead);
    auto factor = [&](const char* base, int e) {
      if (e == 0) return;
      out += std::string("*") + base;
      if (e > 1) out += "^" + std::to_string(e);
    };
    factor("(W+1)", plus);
    factor("(W-1)", minus);
    return out;
  }
  return canonical_string(p);
}

std::vector<LeadingTerm> leading_terms(const RibbonGraph& g) {
  TopologyReport topo = trace_faces(g);
  BMatrices bm = build_B(g);
  MinorPfaffians engine(bm.Bprime);
  std::vector<LeadingTerm> out;
  Poly two_g = Poly(2L).pow(static_cast<unsigned>(topo.g));
  Poly w2 = Poly::omega().scaled(2);
  for (const auto& adm : leading_admissible_sets(g)) {
    LeadingTerm lt;
    lt.J0 = adm;
    std::vector<int> deleted;
    for (int l : adm.I) deleted.push_back(bm.layout.u(l));
    lt.n_I = engine.pf_deleting(deleted);

    ReducedBprime red = reduced_Bprime(g, adm);
    lt.n_I_reduced = pfaffian(red.matrix);
    lt.filk = fourth_filk(red);
    lt.n_I_filk = pfaffian(lt.filk.matrix);
    lt.pairs = red.pairs;

    lt.closed_form = two_g;
    for (const auto& d : lt.filk.uwf_diagonal) lt.closed_form *= d;

    lt.planar_regular = topo.g == 0 && topo.B <= 1;
    if (lt.planar_regular) {
      lt.planar_product = Poly(1L);
      for (int l : adm.J0) lt.planar_product *= w2 - Poly(2L * red.rosette.loop_sign(l));
      int k = static_cast<int>(adm.J0.size());
      lt.planar_reduced_pf = (k * (k - 1) / 2) % 2 == 0 ? lt.n_I_reduced : -lt.n_I_reduced;
    }
    out.push_back(std::move(lt));
  }
  return out;
}

Poly theorem_bound(const RibbonGraph& g, const std::vector<LeadingTerm>& leading) {
  TopologyReport topo = trace_faces(g);
  Poly bound;
  Poly spow = Poly::s().pow(static_cast<unsigned>(2 * (topo.g + topo.F - 1)));
  for (const auto& lt : leading)
    bound += spow * lt.closed_form.pow(2) * subset_weight(g.num_lines(), lt.J0.I);
  return bound;
}

PositivityReport positivity_check(const RibbonGraph& g, const Poly& hu, const Poly& bound,
                                  const std::vector<Rat>& omegas, int samples,
                                  std::uint64_t seed) {
  PositivityReport rep;
  PointSampler sampler(seed);
  for (const Rat& w : omegas) {
    if (w < 0 || w >= 1) throw std::invalid_argument("Omega values must lie in [0, 1)");
    for (int k = 0; k < samples; ++k) {
      Assignment pt = sampler.point(g.num_lines(), w);
      Rat h = hu.eval(pt), b = bound.eval(pt);
      ++rep.points_checked;
      if (h <= 0 || h < b) {
        rep.ok = false;
        rep.witness = pt;
        rep.failure = h <= 0 ? "HU is not positive" : "HU is below the leading-term bound";
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace hyperpoly
