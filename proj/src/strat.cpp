#include "qalg/strat.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace qalg {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    default: return "undecided";
  }
}

Verdict verdict_and(Verdict a, Verdict b) {
  if (a == Verdict::No || b == Verdict::No) return Verdict::No;
  if (a == Verdict::Undecided || b == Verdict::Undecided) return Verdict::Undecided;
  return Verdict::Yes;
}

namespace {

template <class K>
std::vector<bool> vertices_where(const Algebra<K>& a, auto pred) {
  std::vector<bool> out(a.num_vertices());
  for (int v = 0; v < a.num_vertices(); ++v) out[v] = pred(a.rank[v]);
  return out;
}

template <class K>
struct SubquotientData {
  SubResult<K> upper;
  QuotientResult<K> quotient;
};

template <class K>
SubquotientData<K> subquotient_data(const Module<K>& m, const Submodule<K>& upper, const Submodule<K>& lower) {
  SubResult<K> up = submodule_module(m, upper);
  Submodule<K> low;
  for (int v = 0; v < m.num_vertices(); ++v) {
    Coordinatizer<K> c(upper.basis[v]);
    Mat<K> b(upper.basis[v].cols(), lower.basis[v].cols());
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      auto co = c.checked_coords(lower.basis[v].col(j));
      if (!co) throw std::logic_error("subquotient: lower is not contained in upper");
      b.col(j) = *co;
    }
    low.basis.push_back(std::move(b));
  }
  auto q = quotient_module(up.module, low);
  return {std::move(up), std::move(q)};
}

// Submodule of the subquotient pulled back to the ambient module.
template <class K>
Submodule<K> lift(const SubquotientData<K>& d, const Submodule<K>& s) {
  Submodule<K> pre = preimage(d.upper.module, d.quotient.projection, s);
  for (size_t v = 0; v < pre.basis.size(); ++v) pre.basis[v] = mul(d.upper.inclusion.blocks[v], pre.basis[v]);
  return pre;
}

template <class K>
Submodule<K> push_into(const SubResult<K>& sub, const Submodule<K>& s) {
  Submodule<K> out;
  for (size_t v = 0; v < s.basis.size(); ++v) out.basis.push_back(mul(sub.inclusion.blocks[v], s.basis[v]));
  return out;
}

template <class K>
bool same_submodule(const Submodule<K>& a, const Submodule<K>& b) {
  return a.dims() == b.dims() && contains(a, b);
}

bool dims_fit(const std::vector<int>& small, const std::vector<int>& big) {
  for (size_t v = 0; v < small.size(); ++v)
    if (small[v] > big[v]) return false;
  return true;
}

// Is d a nonnegative integer combination of the given dimension vectors?
bool combination_exists(std::vector<int> d, const std::vector<std::vector<int>>& gens, size_t i) {
  if (std::all_of(d.begin(), d.end(), [](int x) { return x == 0; })) return true;
  if (i == gens.size()) return false;
  const auto& g = gens[i];
  if (std::all_of(g.begin(), g.end(), [](int x) { return x == 0; })) return combination_exists(d, gens, i + 1);
  while (true) {
    if (combination_exists(d, gens, i + 1)) return true;
    if (!dims_fit(g, d)) return false;
    for (size_t v = 0; v < d.size(); ++v) d[v] -= g[v];
  }
}

template <class K>
struct PeelSearch {
  const Module<K>& root;
  std::vector<std::pair<int, Module<K>>> family;
  std::vector<std::vector<int>> family_dims;
  long budget;
  long nodes = 0;
  bool exhausted = false;
  bool complete = true;
  std::mt19937_64 rng{search_seed()};
  std::vector<Submodule<K>> subs;
  std::vector<int> labels;

  PeelSearch(const Module<K>& m, std::vector<std::pair<int, Module<K>>> fam, long b)
      : root(m), family(std::move(fam)), budget(b) {}

  bool feasible(const std::vector<int>& d) const { return combination_exists(d, family_dims, 0); }

  std::vector<ModuleMap<K>> candidates(const std::vector<ModuleMap<K>>& hs) {
    std::vector<ModuleMap<K>> out(hs.begin(), hs.end());
    if (hs.size() <= 1) return out;
    complete = false;
    std::vector<K> ones(hs.size(), K(1));
    out.push_back(linear_combination(hs, ones));
    for (int t = 0; t < 8; ++t) {
      std::vector<K> c;
      for (size_t i = 0; i < hs.size(); ++i) c.push_back(random_scalar<K>(rng));
      out.push_back(linear_combination(hs, c));
    }
    return out;
  }

  bool run(const Submodule<K>& u) {
    if (u.dim() == 0) return true;
    if (!feasible(u.dims())) return false;
    if (++nodes > budget) {
      exhausted = true;
      return false;
    }
    auto x = submodule_module(root, u);
    for (const auto& [label, f] : family) {
      if (f.dim() == 0 || !dims_fit(f.dims, x.module.dims)) continue;
      std::vector<Submodule<K>> tried;
      for (const auto& h : candidates(hom_space(x.module, f))) {
        if (rank(h.total()) != f.dim()) continue;
        Submodule<K> k = push_into(x, kernel(x.module, h));
        if (std::any_of(tried.begin(), tried.end(), [&](const auto& t) { return same_submodule(t, k); })) continue;
        tried.push_back(k);
        subs.push_back(k);
        labels.push_back(label);
        if (run(k)) return true;
        subs.pop_back();
        labels.pop_back();
        if (exhausted) return false;
      }
    }
    return false;
  }
};

}  // namespace

template <class K>
Submodule<K> trace_of_vertices(const Module<K>& m, const std::vector<bool>& vertices) {
  std::vector<Mat<K>> gens;
  for (int v = 0; v < m.num_vertices(); ++v)
    gens.push_back(vertices[v] ? identity<K>(m.dims[v]) : zeros<K>(m.dims[v], 0));
  return generated_submodule(m, gens);
}

template <class K>
Submodule<K> largest_submodule_with_factors(const Module<K>& m, const std::vector<bool>& vertices) {
  const auto& a = *m.alg;
  Submodule<K> u;
  for (int v = 0; v < m.num_vertices(); ++v) {
    if (!vertices[v]) {
      u.basis.push_back(zeros<K>(m.dims[v], 0));
      continue;
    }
    Mat<K> stack = zeros<K>(0, m.dims[v]);
    for (const auto& p : a.basis)
      if (p.s == v && !vertices[p.t]) stack = vcat(stack, m.path_matrix(p));
    u.basis.push_back(kernel_basis(stack));
  }
  return u;
}

template <class K>
Module<K> subquotient(const Module<K>& m, const Submodule<K>& upper, const Submodule<K>& lower) {
  return subquotient_data(m, upper, lower).quotient.module;
}

template <class K>
StratFamily<K> strat_family(const AlgPtr<K>& a) {
  StratFamily<K> f;
  f.alg = a;
  const int n = a->num_vertices();
  auto standard_side = [](const AlgPtr<K>& b, std::vector<Module<K>>& delta, std::vector<Module<K>>& proper) {
    for (int v = 0; v < b->num_vertices(); ++v) {
      const int r = b->rank[v];
      auto p = projective_module(b, v);
      auto d = quotient_module(p, trace_of_vertices(p, vertices_where(*b, [r](int x) { return x > r; }))).module;
      Submodule<K> rad = radical(d, full_submodule(d));
      std::vector<Mat<K>> gens;
      for (int w = 0; w < b->num_vertices(); ++w) gens.push_back(w == v ? rad.basis[w] : zeros<K>(d.dims[w], 0));
      proper.push_back(quotient_module(d, generated_submodule(d, gens)).module);
      delta.push_back(std::move(d));
    }
  };
  standard_side(a, f.Delta, f.ProperDelta);
  std::vector<Module<K>> op_delta, op_proper;
  standard_side(opposite(a), op_delta, op_proper);
  for (int v = 0; v < n; ++v) {
    f.P.push_back(projective_module(a, v));
    f.I.push_back(injective_module(a, v));
    f.L.push_back(simple_module(a, v));
    f.Nabla.push_back(dual(op_delta[v]));
    f.ProperNabla.push_back(dual(op_proper[v]));
  }
  return f;
}

template <class K>
FiltrationResult<K> delta_filtration(const StratFamily<K>& f, const Module<K>& m) {
  const auto& a = *f.alg;
  const int n = a.num_vertices();
  FiltrationResult<K> res;
  FiltrationCertificate<K> cert;
  Submodule<K> below = zero_submodule(m);
  cert.chain.push_back(below);
  for (int k = n - 1; k >= 0; --k) {
    const int lam = a.order()[k];
    Submodule<K> u = trace_of_vertices(m, vertices_where(a, [k](int x) { return x >= k; }));
    if (u.dim() == below.dim()) continue;
    Module<K> q = subquotient(m, u, below);
    const int r = top_dims(q)[lam];
    std::vector<int> expect = f.Delta[lam].dims;
    for (int& x : expect) x *= r;
    if (q.dims != expect) {
      res.member = Verdict::No;
      res.diagnostics = "trace layer at " + a.label(lam) + " is not a sum of standard modules";
      return res;
    }
    cert.chain.push_back(u);
    cert.layers.push_back({lam, r});
    below = u;
  }
  res.member = Verdict::Yes;
  res.certificate = std::move(cert);
  return res;
}

template <class K>
FiltrationResult<K> find_filtration(const Module<K>& m, const std::vector<std::pair<int, Module<K>>>& family,
                                    long budget) {
  PeelSearch<K> s(m, family, budget);
  std::stable_sort(s.family.begin(), s.family.end(), [](const auto& x, const auto& y) {
    if (x.second.dim() != y.second.dim()) return x.second.dim() > y.second.dim();
    return x.second.dims > y.second.dims;
  });
  for (const auto& [l, f] : s.family) s.family_dims.push_back(f.dims);
  FiltrationResult<K> res;
  if (!s.feasible(m.dims)) {
    res.member = Verdict::No;
    res.diagnostics = "dimension vector is not a combination of the family";
    return res;
  }
  if (s.run(full_submodule(m))) {
    FiltrationCertificate<K> cert;
    cert.chain.push_back(zero_submodule(m));
    for (int i = static_cast<int>(s.subs.size()) - 2; i >= 0; --i) cert.chain.push_back(s.subs[i]);
    cert.chain.push_back(full_submodule(m));
    for (int i = static_cast<int>(s.labels.size()) - 1; i >= 0; --i) cert.layers.push_back({s.labels[i], 1});
    res.member = Verdict::Yes;
    res.certificate = std::move(cert);
    return res;
  }
  if (s.exhausted) {
    res.diagnostics = "search budget of " + std::to_string(budget) + " nodes exhausted";
  } else if (s.complete) {
    res.member = Verdict::No;
    res.diagnostics = "exhaustive search found no filtration";
  } else {
    res.diagnostics = "sampled search found no filtration";
  }
  return res;
}

template <class K>
FiltrationResult<K> layered_filtration(const Module<K>& m, const std::vector<Module<K>>& family, long budget) {
  const auto& a = *m.alg;
  const int n = a.num_vertices();
  std::vector<std::pair<int, Module<K>>> all;
  for (int v = 0; v < n; ++v) all.push_back({v, family[v]});
  FiltrationCertificate<K> cert;
  Submodule<K> below = zero_submodule(m);
  cert.chain.push_back(below);
  for (int k = 0; k < n; ++k) {
    const int lam = a.order()[k];
    Submodule<K> u = largest_submodule_with_factors(m, vertices_where(a, [k](int x) { return x <= k; }));
    if (u.dim() == below.dim()) continue;
    auto d = subquotient_data(m, u, below);
    const Module<K>& x = d.quotient.module;
    const Module<K>& f = family[lam];
    bool done = false;
    if (f.dim() > 0 && x.dim() % f.dim() == 0 && find_isomorphism(x, power(f, x.dim() / f.dim()))) {
      cert.chain.push_back(u);
      cert.layers.push_back({lam, x.dim() / f.dim()});
      done = true;
    } else if (f.dim() > 0) {
      auto inner = find_filtration(x, {{lam, f}}, budget);
      if (inner.member == Verdict::Yes) {
        const auto& c = *inner.certificate;
        for (size_t i = 1; i < c.chain.size(); ++i) {
          cert.chain.push_back(lift(d, c.chain[i]));
          cert.layers.push_back(c.layers[i - 1]);
        }
        done = true;
      }
    }
    if (!done) {
      auto res = find_filtration(m, all, budget);
      res.diagnostics = "layer at " + a.label(lam) + " not split; " + res.diagnostics;
      return res;
    }
    below = u;
  }
  FiltrationResult<K> res;
  if (below.dim() != m.dim()) {
    res.member = Verdict::No;
    res.diagnostics = "module has no layered filtration";
    return res;
  }
  res.member = Verdict::Yes;
  res.certificate = std::move(cert);
  return res;
}

template <class K>
FiltrationResult<K> proper_costandard_filtration(const StratFamily<K>& f, const Module<K>& m, long budget) {
  Verdict v = Verdict::Yes;
  for (const auto& d : f.Delta)
    if (ext_dim(d, m, 1) != 0) v = Verdict::No;
  FiltrationResult<K> res = layered_filtration(m, f.ProperNabla, budget);
  if (res.member == Verdict::Yes && v == Verdict::No)
    throw TheoremViolation("module has a proper costandard filtration but Ext^1(Delta, M) != 0");
  if (v == Verdict::Yes && res.member != Verdict::Yes)
    res.diagnostics = "Ext^1(Delta, M) = 0; certificate search incomplete: " + res.diagnostics;
  res.member = v;
  if (v == Verdict::No) res.certificate.reset();
  return res;
}

template <class K>
bool check_certificate(const Module<K>& m, const FiltrationCertificate<K>& c, const std::vector<Module<K>>& family) {
  if (c.chain.empty() || c.chain.size() != c.layers.size() + 1) return false;
  if (c.chain.front().dim() != 0 || c.chain.back().dim() != m.dim()) return false;
  for (size_t i = 0; i < c.chain.size(); ++i) {
    if (!is_stable(m, c.chain[i])) return false;
    if (i == 0) continue;
    if (!contains(c.chain[i], c.chain[i - 1])) return false;
    const auto [label, mult] = c.layers[i - 1];
    if (label < 0 || label >= static_cast<int>(family.size()) || mult < 1) return false;
    if (!find_isomorphism(subquotient(m, c.chain[i], c.chain[i - 1]), power(family[label], mult))) return false;
  }
  return true;
}

namespace {

template <class K>
std::pair<Verdict, std::vector<FiltrationResult<K>>> kernel_filtrations(const StratFamily<K>& f) {
  const auto& a = *f.alg;
  Verdict v = Verdict::Yes;
  std::vector<FiltrationResult<K>> out;
  for (int lam = 0; lam < a.num_vertices(); ++lam) {
    const int r = a.rank[lam];
    Submodule<K> k = trace_of_vertices(f.P[lam], vertices_where(a, [r](int x) { return x > r; }));
    out.push_back(delta_filtration(f, submodule_module(f.P[lam], k).module));
    v = verdict_and(v, out.back().member);
  }
  return {v, std::move(out)};
}

}  // namespace

template <class K>
Verdict standardly_stratified(const StratFamily<K>& f) {
  return kernel_filtrations(f).first;
}

template <class K>
Classification<K> classify(const StratFamily<K>& f, long budget) {
  Classification<K> c;
  const auto& a = *f.alg;
  auto [sss, kernels] = kernel_filtrations(f);
  c.sss = sss;
  c.kernel_filtrations = std::move(kernels);
  // A is properly stratified iff both A and A^opp are standardly stratified.
  const Verdict sss_op = standardly_stratified(strat_family(opposite(f.alg)));
  c.properly_stratified = verdict_and(sss, sss_op);
  bool qh = true;
  for (int lam = 0; lam < a.num_vertices(); ++lam) {
    auto r = find_filtration(f.Delta[lam], {{lam, f.ProperDelta[lam]}}, budget);
    if (c.properly_stratified == Verdict::Yes && r.member == Verdict::No)
      throw TheoremViolation("properly stratified but a standard module has no proper standard filtration");
    c.standard_filtrations.push_back(std::move(r));
    qh = qh && f.Delta[lam].dims == f.ProperDelta[lam].dims;
  }
  if (sss == Verdict::Yes && sss_op == Verdict::No) {
    bool all = true;
    for (const auto& r : c.standard_filtrations) all = all && r.member == Verdict::Yes;
    if (all) throw TheoremViolation("standard modules filtered by proper standards but the opposite is not standardly stratified");
  }
  c.quasi_hereditary = sss == Verdict::Yes ? verdict_of(qh) : sss;
  return c;
}

template <class K>
Classification<K> classify(const AlgPtr<K>& a, long budget) {
  return classify(strat_family(a), budget);
}

#define QALG_INST(K)                                                                                              \
  template StratFamily<K> strat_family(const AlgPtr<K>&);                                                         \
  template Submodule<K> trace_of_vertices(const Module<K>&, const std::vector<bool>&);                            \
  template Submodule<K> largest_submodule_with_factors(const Module<K>&, const std::vector<bool>&);               \
  template Module<K> subquotient(const Module<K>&, const Submodule<K>&, const Submodule<K>&);                     \
  template FiltrationResult<K> delta_filtration(const StratFamily<K>&, const Module<K>&);                         \
  template FiltrationResult<K> proper_costandard_filtration(const StratFamily<K>&, const Module<K>&, long);        \
  template FiltrationResult<K> layered_filtration(const Module<K>&, const std::vector<Module<K>>&, long);          \
  template FiltrationResult<K> find_filtration(const Module<K>&, const std::vector<std::pair<int, Module<K>>>&,   \
                                               long);                                                             \
  template bool check_certificate(const Module<K>&, const FiltrationCertificate<K>&, const std::vector<Module<K>>&); \
  template Verdict standardly_stratified(const StratFamily<K>&);                                                  \
  template Classification<K> classify(const StratFamily<K>&, long);                                               \
  template Classification<K> classify(const AlgPtr<K>&, long);

QALG_INST(Rational)
QALG_INST(Zp)

}  // namespace qalg
