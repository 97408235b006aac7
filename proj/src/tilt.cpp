#include "qalg/tilt.hpp"

#include <sstream>
#include <stdexcept>

namespace qalg {

std::string to_string(DualityKind k) {
  switch (k) {
    case DualityKind::Witness: return "witness";
    case DualityKind::RefutedByExt: return "refuted-by-ext";
    default: return "not-found";
  }
}

namespace {

template <class K>
std::vector<bool> above(const Algebra<K>& a, int lambda) {
  std::vector<bool> out(a.num_vertices());
  for (int v = 0; v < a.num_vertices(); ++v) out[v] = a.rank[v] > a.rank[lambda];
  return out;
}

}  // namespace

template <class K>
Module<K> universal_extension(const Module<K>& x, const Module<K>& p, const Submodule<K>& omega) {
  auto om = submodule_module(p, omega);
  const Eigen::Index len = flat_length(om.module, x);
  IncrementalBasis<K> span(len);
  for (const auto& g : hom_space(p, x)) span.insert_or_express(flatten(compose(g, om.inclusion)));
  // Ext^1 is a module over End(p); only generators modulo its radical are needed.
  auto hs = hom_space(om.module, x);
  auto rp = submodule_module(p, radical(p, full_submodule(p)));
  std::vector<Coordinatizer<K>> oc;
  for (int v = 0; v < p.num_vertices(); ++v) oc.emplace_back(omega.basis[v]);
  for (const auto& g0 : hom_space(p, rp.module)) {
    const ModuleMap<K> g = compose(rp.inclusion, g0);
    ModuleMap<K> on_omega;
    for (int v = 0; v < p.num_vertices(); ++v) {
      const Mat<K> img = mul(g.blocks[v], omega.basis[v]);
      Mat<K> b(omega.basis[v].cols(), img.cols());
      for (Eigen::Index c = 0; c < img.cols(); ++c) b.col(c) = *oc[v].checked_coords(img.col(c));
      on_omega.blocks.push_back(std::move(b));
    }
    for (const auto& h : hs) span.insert_or_express(flatten(compose(h, on_omega)));
  }
  std::vector<ModuleMap<K>> reps;
  for (const auto& h : hs)
    if (!span.insert_or_express(flatten(h))) reps.push_back(h);
  const int d = static_cast<int>(reps.size());
  if (d == 0) return x;
  Module<K> m = direct_sum(x, power(p, d));
  std::vector<Mat<K>> gens;
  for (int v = 0; v < x.num_vertices(); ++v) {
    const Eigen::Index k = omega.basis[v].cols(), xv = x.dims[v], pv = p.dims[v];
    Mat<K> g = Mat<K>::Zero(m.dims[v], d * k);
    for (int i = 0; i < d; ++i) {
      g.block(0, i * k, xv, k) = reps[i].blocks[v];
      g.block(xv + i * pv, i * k, pv, k) = -omega.basis[v];
    }
    gens.push_back(std::move(g));
  }
  return quotient_module(m, generated_submodule(m, gens)).module;
}

template <class K>
Module<K> tilting_module(const StratFamily<K>& f, int lambda, int max_rounds) {
  const auto& a = *f.alg;
  const int n = a.num_vertices();
  Module<K> x = f.Delta[lambda];
  for (int round = 0; round < max_rounds; ++round) {
    bool changed = false;
    for (int k = n - 1; k >= 0 && !changed; --k) {
      const int mu = a.order()[k];
      const auto& p = f.P[mu];
      Module<K> e = universal_extension(x, p, trace_of_vertices(p, above(a, mu)));
      if (e.dim() != x.dim()) {
        x = std::move(e);
        changed = true;
      }
    }
    if (!changed) return x;
  }
  throw std::runtime_error("tilting construction exceeded " + std::to_string(max_rounds) + " rounds");
}

template <class K>
Module<K> cotilting_module(const StratFamily<K>& f, int lambda, int max_rounds) {
  return dual(tilting_module(strat_family(opposite(f.alg)), lambda, max_rounds));
}

template <class K>
TiltingData<K> tilting_data(const StratFamily<K>& f, long budget) {
  if (standardly_stratified(f) != Verdict::Yes) throw std::domain_error("tilting modules need a standardly stratified algebra");
  TiltingData<K> d;
  for (int lam = 0; lam < f.alg->num_vertices(); ++lam) {
    Module<K> t = tilting_module(f, lam);
    auto df = delta_filtration(f, t);
    auto nf = proper_costandard_filtration(f, t, budget);
    if (df.member != Verdict::Yes || nf.member != Verdict::Yes)
      throw TheoremViolation("T(" + f.alg->label(lam) + ") is not in F(Delta) and F(proper costandard)");
    if (!has_local_endomorphisms(t)) throw TheoremViolation("T(" + f.alg->label(lam) + ") is decomposable");
    d.T.push_back(std::move(t));
    d.delta.push_back(std::move(df));
    d.proper_costandard.push_back(std::move(nf));
  }
  return d;
}

template <class K>
std::vector<Module<K>> cotilting_modules(const StratFamily<K>& f) {
  if (classify(f).properly_stratified != Verdict::Yes)
    throw std::domain_error("cotilting modules need a properly stratified algebra");
  auto fop = strat_family(opposite(f.alg));
  std::vector<Module<K>> out;
  for (int lam = 0; lam < f.alg->num_vertices(); ++lam) out.push_back(dual(tilting_module(fop, lam)));
  return out;
}

template <class K>
EndAlgebra<K> endomorphism_algebra(const AlgPtr<K>& a, const std::vector<Module<K>>& ys, std::vector<int> order,
                                   const std::string& arrow_prefix) {
  EndAlgebra<K> e;
  e.base = a;
  e.Y = ys;
  const int n = static_cast<int>(ys.size());
  e.hom.assign(n, std::vector<std::vector<ModuleMap<K>>>(n));
  std::vector<std::vector<Coordinatizer<K>>> coord(n, std::vector<Coordinatizer<K>>(n));
  std::vector<std::vector<int>> start(n, std::vector<int>(n));
  auto& ab = e.abstract;
  ab.field = a->field();
  for (int v = 0; v < n; ++v) ab.vertices.push_back(a->label(v));
  ab.order = std::move(order);
  ab.identity.assign(n, -1);
  std::vector<std::pair<int, int>> block_of;
  for (int mu = 0; mu < n; ++mu)
    for (int lam = 0; lam < n; ++lam) {
      auto hs = hom_space(ys[mu], ys[lam]);
      auto& basis = e.hom[mu][lam];
      const Eigen::Index len = flat_length(ys[mu], ys[lam]);
      if (mu == lam) {
        IncrementalBasis<K> span(len);
        basis.push_back(identity_map(ys[mu]));
        span.insert_or_express(flatten(basis[0]));
        for (const auto& h : hs)
          if (!span.insert_or_express(flatten(h))) basis.push_back(h);
      } else {
        basis = hs;
      }
      coord[mu][lam] = map_coordinates(basis, len);
      start[mu][lam] = static_cast<int>(block_of.size());
      if (mu == lam) ab.identity[mu] = start[mu][lam];
      for (size_t k = 0; k < basis.size(); ++k) {
        block_of.push_back({mu, lam});
        ab.src.push_back(lam);
        ab.tgt.push_back(mu);
      }
    }
  const int d = static_cast<int>(block_of.size());
  ab.table.assign(d, std::vector<SparseVec<K>>(d));
  for (int i = 0; i < d; ++i) {
    const auto [mi, li] = block_of[i];
    const auto& bi = e.hom[mi][li][i - start[mi][li]];
    for (int j = 0; j < d; ++j) {
      const auto [mj, lj] = block_of[j];
      if (li != mj) continue;
      const auto& bj = e.hom[mj][lj][j - start[mj][lj]];
      Vec<K> c = coords_of(coord[mi][lj], compose(bj, bi));
      for (Eigen::Index k = 0; k < c.size(); ++k)
        if (!is_zero(c(k))) ab.table[i][j].push_back({start[mi][lj] + static_cast<int>(k), c(k)});
    }
  }
  e.recovered = quiver_presentation_of(ab, arrow_prefix);
  for (const auto& el : e.recovered.arrow_elements) {
    int first = -1;
    for (int i = 0; i < d && first < 0; ++i)
      if (!is_zero(el(i))) first = i;
    if (first < 0) throw std::logic_error("zero arrow element");
    const auto [mu, lam] = block_of[first];
    std::vector<K> c;
    for (size_t k = 0; k < e.hom[mu][lam].size(); ++k) c.push_back(el(start[mu][lam] + static_cast<int>(k)));
    e.arrow_maps.push_back(linear_combination(e.hom[mu][lam], c));
  }
  return e;
}

template <class K>
EndAlgebra<K> ringel_dual(const AlgPtr<K>& a, const std::vector<Module<K>>& tilting) {
  std::vector<int> order(a->order().rbegin(), a->order().rend());
  return endomorphism_algebra(a, tilting, order, "r");
}

template <class K>
Module<K> hom_functor(const EndAlgebra<K>& e, const Module<K>& m) {
  const int n = static_cast<int>(e.Y.size());
  const auto& r = e.algebra();
  std::vector<std::vector<ModuleMap<K>>> hs(n);
  std::vector<Coordinatizer<K>> co;
  Module<K> out;
  out.alg = r;
  for (int v = 0; v < n; ++v) {
    hs[v] = hom_space(e.Y[v], m);
    co.push_back(map_coordinates(hs[v], flat_length(e.Y[v], m)));
    out.dims.push_back(static_cast<int>(hs[v].size()));
  }
  for (int x = 0; x < r->num_arrows(); ++x) {
    const auto& ar = r->pres.arrows[x];
    Mat<K> act(out.dims[ar.to], out.dims[ar.from]);
    for (int j = 0; j < out.dims[ar.from]; ++j) act.col(j) = coords_of(co[ar.to], compose(hs[ar.from][j], e.arrow_maps[x]));
    out.act.push_back(std::move(act));
  }
  return out;
}

template <class K>
Module<K> dual_hom_functor(const EndAlgebra<K>& e, const Module<K>& m) {
  const int n = static_cast<int>(e.Y.size());
  const auto& r = e.algebra();
  std::vector<std::vector<ModuleMap<K>>> hs(n);
  std::vector<Coordinatizer<K>> co;
  Module<K> out;
  out.alg = r;
  for (int v = 0; v < n; ++v) {
    hs[v] = hom_space(m, e.Y[v]);
    co.push_back(map_coordinates(hs[v], flat_length(m, e.Y[v])));
    out.dims.push_back(static_cast<int>(hs[v].size()));
  }
  for (int x = 0; x < r->num_arrows(); ++x) {
    const auto& ar = r->pres.arrows[x];
    Mat<K> pre(out.dims[ar.from], out.dims[ar.to]);
    for (int j = 0; j < out.dims[ar.to]; ++j) pre.col(j) = coords_of(co[ar.from], compose(e.arrow_maps[x], hs[ar.to][j]));
    out.act.push_back(pre.transpose());
  }
  return out;
}

template <class K>
Module<K> tensor_functor(const EndAlgebra<K>& e, const Module<K>& x) {
  const auto& a = e.base;
  const int n = static_cast<int>(e.Y.size()), na = a->num_vertices();
  std::vector<std::vector<int>> off(na, std::vector<int>(n + 1, 0));
  Module<K> big;
  big.alg = a;
  for (int w = 0; w < na; ++w) {
    for (int v = 0; v < n; ++v) off[w][v + 1] = off[w][v] + e.Y[v].dims[w] * x.dims[v];
    big.dims.push_back(off[w][n]);
  }
  for (int b = 0; b < a->num_arrows(); ++b) {
    const auto& ar = a->pres.arrows[b];
    Mat<K> act = Mat<K>::Zero(big.dims[ar.to], big.dims[ar.from]);
    for (int v = 0; v < n; ++v)
      act.block(off[ar.to][v], off[ar.from][v], off[ar.to][v + 1] - off[ar.to][v], off[ar.from][v + 1] - off[ar.from][v]) =
          kron(identity<K>(x.dims[v]), e.Y[v].act[b]);
    big.act.push_back(std::move(act));
  }
  const auto& r = e.algebra();
  std::vector<std::vector<Vec<K>>> rel(na);
  for (int q = 0; q < r->num_arrows(); ++q) {
    const int s = r->pres.arrows[q].from, t = r->pres.arrows[q].to;
    const auto& g = e.arrow_maps[q];
    for (int w = 0; w < na; ++w)
      for (int i = 0; i < e.Y[t].dims[w]; ++i)
        for (int j = 0; j < x.dims[s]; ++j) {
          Vec<K> vec = Vec<K>::Zero(big.dims[w]);
          for (int rr = 0; rr < e.Y[s].dims[w]; ++rr) vec(off[w][s] + j * e.Y[s].dims[w] + rr) += g.blocks[w](rr, i);
          for (int jj = 0; jj < x.dims[t]; ++jj) vec(off[w][t] + jj * e.Y[t].dims[w] + i) -= x.act[q](jj, j);
          rel[w].push_back(std::move(vec));
        }
  }
  std::vector<Mat<K>> gens;
  for (int w = 0; w < na; ++w) {
    Mat<K> g(big.dims[w], rel[w].size());
    for (size_t c = 0; c < rel[w].size(); ++c) g.col(c) = rel[w][c];
    gens.push_back(std::move(g));
  }
  return quotient_module(big, generated_submodule(big, gens)).module;
}

template <class K>
DualityResult<K> find_simple_preserving_duality(const AlgPtr<K>& a, long budget) {
  DualityResult<K> res;
  auto q = ext_quiver(a);
  const int n = a->num_vertices();
  for (int l = 0; l < n; ++l)
    for (int m = 0; m < n; ++m)
      if (q[l][m] != q[m][l]) {
        res.kind = DualityKind::RefutedByExt;
        res.description = "dim Ext^1(L(" + a->label(l) + "),L(" + a->label(m) + ")) = " + std::to_string(q[l][m]) +
                          " but dim Ext^1(L(" + a->label(m) + "),L(" + a->label(l) + ")) = " + std::to_string(q[m][l]);
        return res;
      }
  auto op = opposite(a);
  auto images = find_algebra_isomorphism(*a, *op, budget);
  if (!images) {
    res.description = "no anti-automorphism found among arrow combinations";
    return res;
  }
  res.kind = DualityKind::Witness;
  res.arrow_images = *images;
  std::ostringstream os;
  for (int x = 0; x < a->num_arrows(); ++x) {
    if (x) os << ", ";
    os << a->pres.arrows[x].name << " -> ";
    bool first = true;
    for (int y = 0; y < op->num_arrows(); ++y) {
      const K c = (*images)[x](op->arrow_basis[y]);
      if (is_zero(c)) continue;
      if (!first) os << " + ";
      if (!(c == K(1))) os << c << "*";
      os << op->pres.arrows[y].name;
      first = false;
    }
  }
  res.description = os.str();
  return res;
}

template <class K>
Module<K> duality_image(const DualityResult<K>& w, const Module<K>& m) {
  if (w.kind != DualityKind::Witness) throw std::invalid_argument("duality image needs a witness");
  Module<K> d = dual(m);
  Module<K> out;
  out.alg = m.alg;
  out.dims = m.dims;
  for (int x = 0; x < m.alg->num_arrows(); ++x) {
    const auto& ar = m.alg->pres.arrows[x];
    out.act.push_back(d.element_block(w.arrow_images[x], ar.from, ar.to));
  }
  return out;
}

#define QALG_INST(K)                                                                                              \
  template Module<K> universal_extension(const Module<K>&, const Module<K>&, const Submodule<K>&);                \
  template Module<K> tilting_module(const StratFamily<K>&, int, int);                                            \
  template Module<K> cotilting_module(const StratFamily<K>&, int, int);                                          \
  template TiltingData<K> tilting_data(const StratFamily<K>&, long);                                              \
  template std::vector<Module<K>> cotilting_modules(const StratFamily<K>&);                                       \
  template EndAlgebra<K> endomorphism_algebra(const AlgPtr<K>&, const std::vector<Module<K>>&, std::vector<int>,  \
                                              const std::string&);                                                \
  template EndAlgebra<K> ringel_dual(const AlgPtr<K>&, const std::vector<Module<K>>&);                            \
  template Module<K> hom_functor(const EndAlgebra<K>&, const Module<K>&);                                         \
  template Module<K> dual_hom_functor(const EndAlgebra<K>&, const Module<K>&);                                    \
  template Module<K> tensor_functor(const EndAlgebra<K>&, const Module<K>&);                                      \
  template DualityResult<K> find_simple_preserving_duality(const AlgPtr<K>&, long);                               \
  template Module<K> duality_image(const DualityResult<K>&, const Module<K>&);

QALG_INST(Rational)
QALG_INST(Zp)

}  // namespace qalg
