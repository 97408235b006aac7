#include "qalg/homology.hpp"

namespace qalg {

std::string ProjDim::str() const {
  switch (kind) {
    case Kind::Finite:
      return std::to_string(value);
    case Kind::AtLeast:
      return periodic ? "inf" : ">=" + std::to_string(value);
  }
  return "?";
}

namespace {

template <class K>
struct ProjectiveSum {
  Module<K> module;
  std::vector<int> vertices;
  // position of the path basis element b within summand k at vertex t
  std::vector<std::vector<int>> local;      // local[k][b]
  std::vector<std::vector<int>> offset;     // offset[k][t]
};

template <class K>
ProjectiveSum<K> projective_sum(const AlgPtr<K>& a, const std::vector<int>& vs) {
  ProjectiveSum<K> p;
  p.vertices = vs;
  std::vector<Module<K>> ps;
  std::vector<int> running(a->num_vertices(), 0);
  for (int u : vs) {
    std::vector<int> loc(a->dim(), -1), cnt(a->num_vertices(), 0);
    for (int b = 0; b < a->dim(); ++b)
      if (a->basis[b].s == u) loc[b] = cnt[a->basis[b].t]++;
    p.local.push_back(loc);
    p.offset.push_back(running);
    for (int t = 0; t < a->num_vertices(); ++t) running[t] += cnt[t];
    ps.push_back(projective_module(a, u));
  }
  p.module = direct_sum(ps, a);
  return p;
}

// Generators of m: per vertex, vectors completing rad m to m.
template <class K>
std::vector<std::pair<int, Vec<K>>> top_generators(const Module<K>& m) {
  auto rad = radical(m, full_submodule(m));
  std::vector<std::pair<int, Vec<K>>> gens;
  for (int v = 0; v < m.num_vertices(); ++v) {
    Mat<K> c = complement(rad.basis[v]);
    for (Eigen::Index j = 0; j < c.cols(); ++j) gens.push_back({v, c.col(j)});
  }
  return gens;
}

template <class K>
Resolution<K> resolve(const Module<K>& m, int cap, bool stop_on_period) {
  const AlgPtr<K>& a = m.alg;
  Resolution<K> res;
  res.target = m;
  res.syzygies.push_back(m);
  res.diff.push_back({});
  Module<K> omega = m;
  std::optional<ProjectiveSum<K>> prev;  // P_{i-1}, containing omega as a submodule
  std::optional<SubResult<K>> embed;
  for (int i = 0;; ++i) {
    if (omega.dim() == 0) {
      if (i == 0) res.terms.push_back({});
      res.finite = true;
      return res;
    }
    if (i > cap) {
      res.truncated_at = cap;
      return res;
    }
    if (stop_on_period && i >= 1) {
      for (int j = 0; j < i; ++j)
        if (res.syzygies[j].dims == omega.dims && find_isomorphism(res.syzygies[j], omega)) {
          res.period_start = j;
          res.syzygies.push_back(omega);
          return res;
        }
    }
    if (i >= 1) res.syzygies.push_back(omega);
    auto gens = top_generators(omega);
    std::vector<int> vs;
    for (const auto& [v, g] : gens) vs.push_back(v);
    res.terms.push_back(vs);
    if (i == 0) {
      for (const auto& [v, g] : gens) res.cover.push_back(g);
    } else {
      std::vector<std::vector<Vec<K>>> d;
      for (const auto& [v, g] : gens) {
        Vec<K> inP = mul(embed->inclusion.blocks[v], g);
        std::vector<Vec<K>> row;
        for (size_t k = 0; k < prev->vertices.size(); ++k) {
          Vec<K> x = Vec<K>::Zero(a->dim());
          for (int b = 0; b < a->dim(); ++b)
            if (a->basis[b].s == prev->vertices[k] && a->basis[b].t == v)
              x(b) = inP(prev->offset[k][v] + prev->local[k][b]);
          row.push_back(x);
        }
        d.push_back(row);
      }
      res.diff.push_back(d);
    }
    ProjectiveSum<K> p = projective_sum(a, vs);
    ModuleMap<K> pi;
    for (int t = 0; t < a->num_vertices(); ++t) {
      Mat<K> block = Mat<K>::Zero(omega.dims[t], p.module.dims[t]);
      for (size_t k = 0; k < vs.size(); ++k)
        for (int b = 0; b < a->dim(); ++b) {
          if (a->basis[b].s != vs[k] || a->basis[b].t != t) continue;
          block.col(p.offset[k][t] + p.local[k][b]) = mul(omega.path_matrix(a->basis[b]), Vec<K>(gens[k].second));
        }
      pi.blocks.push_back(std::move(block));
    }
    Submodule<K> ker = kernel(p.module, pi);
    embed = submodule_module(p.module, ker);
    omega = embed->module;
    prev = std::move(p);
  }
}

}  // namespace

template <class K>
Resolution<K> min_proj_resolution(const Module<K>& m, int cap) {
  return resolve(m, cap, false);
}

template <class K>
Resolution<K> resolve_until_periodic(const Module<K>& m, int cap) {
  return resolve(m, cap, true);
}

template <class K>
ProjDim proj_dim(const Module<K>& m, int cap) {
  if (m.dim() == 0) return ProjDim::finite_value(0);
  Resolution<K> r = resolve_until_periodic(m, cap);
  if (r.finite) return ProjDim::finite_value(r.length());
  return {ProjDim::Kind::AtLeast, cap, r.period_start.has_value()};
}

template <class K>
ProjDim inj_dim(const Module<K>& m, int cap) {
  return proj_dim(dual(m), cap);
}

namespace {

// delta_i : Hom(P_i, N) -> Hom(P_{i+1}, N)
template <class K>
Mat<K> coboundary(const Resolution<K>& res, const Module<K>& n, int i) {
  const auto& src = res.terms[i];
  const auto& dst = res.terms[i + 1];
  std::vector<int> co(src.size() + 1, 0), ro(dst.size() + 1, 0);
  for (size_t k = 0; k < src.size(); ++k) co[k + 1] = co[k] + n.dims[src[k]];
  for (size_t j = 0; j < dst.size(); ++j) ro[j + 1] = ro[j] + n.dims[dst[j]];
  Mat<K> d = Mat<K>::Zero(ro.back(), co.back());
  for (size_t j = 0; j < dst.size(); ++j)
    for (size_t k = 0; k < src.size(); ++k) {
      const Vec<K>& x = res.diff[i + 1][j][k];
      if (is_zero(Mat<K>(x)) || !n.dims[dst[j]] || !n.dims[src[k]]) continue;
      d.block(ro[j], co[k], n.dims[dst[j]], n.dims[src[k]]) = n.element_block(x, src[k], dst[j]);
    }
  return d;
}

template <class K>
int hom_from_term(const Resolution<K>& res, const Module<K>& n, int i) {
  int d = 0;
  for (int v : res.terms[i]) d += n.dims[v];
  return d;
}

}  // namespace

template <class K>
std::vector<int> ext_dims(const Resolution<K>& res, const Module<K>& n, int top) {
  std::vector<int> out;
  const int len = res.length();
  if (!res.finite && top + 1 > len) throw Undecided("insufficient cap: resolution too short for Ext^" + std::to_string(top));
  std::vector<int> ranks;  // rank of delta_i
  for (int i = 0; i <= top; ++i) {
    if (i > len) {
      out.push_back(0);
      continue;
    }
    if (i + 1 <= len) ranks.push_back(rank(coboundary(res, n, i)));
    else ranks.push_back(0);
    const int prev = i == 0 ? 0 : ranks[i - 1];
    out.push_back(hom_from_term(res, n, i) - ranks[i] - prev);
  }
  return out;
}

template <class K>
int ext_dim(const Resolution<K>& res, const Module<K>& n, int i) {
  return ext_dims(res, n, i).back();
}

template <class K>
int ext_dim(const Module<K>& m, const Module<K>& n, int i) {
  return ext_dim(min_proj_resolution(m, i + 1), n, i);
}

template <class K>
std::vector<std::vector<int>> ext_quiver(const AlgPtr<K>& a) {
  const int n = a->num_vertices();
  std::vector<std::vector<int>> q(n, std::vector<int>(n, 0));
  for (int l = 0; l < n; ++l) {
    auto r = min_proj_resolution(simple_module(a, l), 1);
    if (r.length() < 1) continue;
    for (int v : r.terms[1]) ++q[l][v];
  }
  return q;
}

#define QALG_INST(K)                                                                  \
  template Resolution<K> min_proj_resolution(const Module<K>&, int);                  \
  template Resolution<K> resolve_until_periodic(const Module<K>&, int);               \
  template ProjDim proj_dim(const Module<K>&, int);                                    \
  template ProjDim inj_dim(const Module<K>&, int);                                     \
  template std::vector<int> ext_dims(const Resolution<K>&, const Module<K>&, int);    \
  template int ext_dim(const Resolution<K>&, const Module<K>&, int);                  \
  template int ext_dim(const Module<K>&, const Module<K>&, int);                      \
  template std::vector<std::vector<int>> ext_quiver(const AlgPtr<K>&);

QALG_INST(Rational)
QALG_INST(Zp)

}  // namespace qalg
