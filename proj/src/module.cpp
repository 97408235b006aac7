#include "qalg/module.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <random>

namespace qalg {

template <class K>
int Module<K>::dim() const {
  int d = 0;
  for (int x : dims) d += x;
  return d;
}

template <class K>
int Module<K>::offset(int v) const {
  int o = 0;
  for (int i = 0; i < v; ++i) o += dims[i];
  return o;
}

template <class K>
Mat<K> Module<K>::path_matrix(const Path& p) const {
  Mat<K> m = Mat<K>::Identity(dims[p.s], dims[p.s]);
  for (int x : p.arrows) m = mul(act[x], m);
  return m;
}

template <class K>
Mat<K> Module<K>::element_block(const Vec<K>& e, int s, int t) const {
  Mat<K> out = Mat<K>::Zero(dims[t], dims[s]);
  for (int i = 0; i < alg->dim(); ++i) {
    if (is_zero(e(i))) continue;
    const Path& p = alg->basis[i];
    if (p.s != s || p.t != t) continue;
    out += e(i) * path_matrix(p);
  }
  return out;
}

template <class K>
Mat<K> Module<K>::element_matrix(const Vec<K>& e) const {
  const int n = num_vertices();
  Mat<K> out = Mat<K>::Zero(dim(), dim());
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      if (dims[s] && dims[t]) out.block(offset(t), offset(s), dims[t], dims[s]) = element_block(e, s, t);
  return out;
}

template <class K>
void Module<K>::check() const {
  if (static_cast<int>(dims.size()) != alg->num_vertices() || static_cast<int>(act.size()) != alg->num_arrows())
    throw std::logic_error("module shape does not match its algebra");
  for (int x = 0; x < alg->num_arrows(); ++x) {
    const auto& a = alg->pres.arrows[x];
    if (act[x].rows() != dims[a.to] || act[x].cols() != dims[a.from]) throw std::logic_error("arrow matrix has the wrong size");
  }
  for (const auto& r : alg->pres.relations) {
    const int s = alg->pres.arrows[r[0].word.front()].from, t = alg->pres.arrows[r[0].word.back()].to;
    Mat<K> sum = Mat<K>::Zero(dims[t], dims[s]);
    for (const auto& term : r) sum += term.coeff * path_matrix(Path{s, t, term.word});
    if (!is_zero(sum)) throw std::logic_error("module violates a relation");
  }
}

template <class K>
Mat<K> ModuleMap<K>::total() const {
  Eigen::Index r = 0, c = 0;
  for (const auto& b : blocks) r += b.rows(), c += b.cols();
  Mat<K> out = Mat<K>::Zero(r, c);
  Eigen::Index i = 0, j = 0;
  for (const auto& b : blocks) {
    out.block(i, j, b.rows(), b.cols()) = b;
    i += b.rows();
    j += b.cols();
  }
  return out;
}

template <class K>
int Submodule<K>::dim() const {
  int d = 0;
  for (const auto& b : basis) d += static_cast<int>(b.cols());
  return d;
}

template <class K>
std::vector<int> Submodule<K>::dims() const {
  std::vector<int> d;
  for (const auto& b : basis) d.push_back(static_cast<int>(b.cols()));
  return d;
}

template <class K>
Module<K> zero_module(const AlgPtr<K>& a) {
  Module<K> m;
  m.alg = a;
  m.dims.assign(a->num_vertices(), 0);
  for (const auto& x : a->pres.arrows) {
    (void)x;
    m.act.push_back(Mat<K>(0, 0));
  }
  return m;
}

template <class K>
Module<K> simple_module(const AlgPtr<K>& a, int v) {
  Module<K> m = zero_module(a);
  m.dims[v] = 1;
  for (int x = 0; x < a->num_arrows(); ++x) {
    const auto& ar = a->pres.arrows[x];
    m.act[x] = Mat<K>::Zero(m.dims[ar.to], m.dims[ar.from]);
  }
  return m;
}

template <class K>
Module<K> projective_module(const AlgPtr<K>& a, int v) {
  const int n = a->num_vertices();
  Module<K> m;
  m.alg = a;
  m.dims.assign(n, 0);
  std::vector<int> local(a->dim(), -1);
  for (int i = 0; i < a->dim(); ++i)
    if (a->basis[i].s == v) local[i] = m.dims[a->basis[i].t]++;
  for (int x = 0; x < a->num_arrows(); ++x) {
    const auto& ar = a->pres.arrows[x];
    Mat<K> mat = Mat<K>::Zero(m.dims[ar.to], m.dims[ar.from]);
    for (int i = 0; i < a->dim(); ++i) {
      if (a->basis[i].s != v || a->basis[i].t != ar.from) continue;
      for (const auto& [k, c] : a->table[a->arrow_basis[x]][i]) mat(local[k], local[i]) += c;
    }
    m.act.push_back(std::move(mat));
  }
  return m;
}

template <class K>
Module<K> dual(const Module<K>& m) {
  Module<K> d;
  d.alg = opposite(m.alg);
  d.dims = m.dims;
  for (const auto& x : m.act) d.act.push_back(x.transpose());
  return d;
}

template <class K>
Module<K> injective_module(const AlgPtr<K>& a, int v) {
  return dual(projective_module(opposite(a), v));
}

template <class K>
Module<K> regular_module(const AlgPtr<K>& a) {
  std::vector<Module<K>> ps;
  for (int v = 0; v < a->num_vertices(); ++v) ps.push_back(projective_module(a, v));
  return direct_sum(ps, a);
}

template <class K>
Module<K> direct_sum(const Module<K>& m, const Module<K>& n) {
  Module<K> s;
  s.alg = m.alg;
  for (int v = 0; v < m.num_vertices(); ++v) s.dims.push_back(m.dims[v] + n.dims[v]);
  for (int x = 0; x < m.alg->num_arrows(); ++x) {
    const auto& ar = m.alg->pres.arrows[x];
    Mat<K> b = Mat<K>::Zero(s.dims[ar.to], s.dims[ar.from]);
    b.topLeftCorner(m.dims[ar.to], m.dims[ar.from]) = m.act[x];
    b.bottomRightCorner(n.dims[ar.to], n.dims[ar.from]) = n.act[x];
    s.act.push_back(std::move(b));
  }
  return s;
}

template <class K>
Module<K> direct_sum(const std::vector<Module<K>>& ms, const AlgPtr<K>& a) {
  Module<K> s = zero_module(a);
  for (int x = 0; x < a->num_arrows(); ++x) s.act[x] = Mat<K>(0, 0);
  for (const auto& m : ms) s = direct_sum(s, m);
  return s;
}

template <class K>
Module<K> power(const Module<K>& m, int k) {
  return direct_sum(std::vector<Module<K>>(k, m), m.alg);
}

template <class K>
std::vector<ModuleMap<K>> hom_space(const Module<K>& m, const Module<K>& n) {
  const int nv = m.num_vertices();
  std::vector<int> off(nv + 1, 0);
  for (int v = 0; v < nv; ++v) off[v + 1] = off[v] + n.dims[v] * m.dims[v];
  const int unknowns = off[nv];
  std::vector<ModuleMap<K>> out;
  if (unknowns == 0) return out;
  // f_v(i,j) has index off[v] + j * n.dims[v] + i
  int rows = 0;
  for (int x = 0; x < m.alg->num_arrows(); ++x) {
    const auto& ar = m.alg->pres.arrows[x];
    rows += n.dims[ar.to] * m.dims[ar.from];
  }
  Mat<K> sys = Mat<K>::Zero(rows, unknowns);
  int r = 0;
  for (int x = 0; x < m.alg->num_arrows(); ++x) {
    const auto& ar = m.alg->pres.arrows[x];
    const int s = ar.from, t = ar.to;
    const Mat<K>& na = n.act[x];
    const Mat<K>& ma = m.act[x];
    for (int j = 0; j < m.dims[s]; ++j)
      for (int i = 0; i < n.dims[t]; ++i, ++r) {
        for (int k = 0; k < n.dims[s]; ++k)
          if (!is_zero(na(i, k))) sys(r, off[s] + j * n.dims[s] + k) += na(i, k);
        for (int k = 0; k < m.dims[t]; ++k)
          if (!is_zero(ma(k, j))) sys(r, off[t] + k * n.dims[t] + i) -= ma(k, j);
      }
  }
  Mat<K> ker = kernel_basis(sys);
  for (Eigen::Index c = 0; c < ker.cols(); ++c) {
    ModuleMap<K> f;
    for (int v = 0; v < nv; ++v) {
      Mat<K> b(n.dims[v], m.dims[v]);
      for (int j = 0; j < m.dims[v]; ++j)
        for (int i = 0; i < n.dims[v]; ++i) b(i, j) = ker(off[v] + j * n.dims[v] + i, c);
      f.blocks.push_back(std::move(b));
    }
    out.push_back(std::move(f));
  }
  return out;
}

template <class K>
int hom_dim(const Module<K>& m, const Module<K>& n) {
  return static_cast<int>(hom_space(m, n).size());
}

template <class K>
bool is_module_map(const Module<K>& m, const Module<K>& n, const ModuleMap<K>& f) {
  if (static_cast<int>(f.blocks.size()) != m.num_vertices()) return false;
  for (int v = 0; v < m.num_vertices(); ++v)
    if (f.blocks[v].rows() != n.dims[v] || f.blocks[v].cols() != m.dims[v]) return false;
  for (int x = 0; x < m.alg->num_arrows(); ++x) {
    const auto& ar = m.alg->pres.arrows[x];
    if (!is_zero(Mat<K>(mul(n.act[x], f.blocks[ar.from]) - mul(f.blocks[ar.to], m.act[x])))) return false;
  }
  return true;
}

template <class K>
ModuleMap<K> compose(const ModuleMap<K>& g, const ModuleMap<K>& f) {
  ModuleMap<K> h;
  for (size_t v = 0; v < f.blocks.size(); ++v) h.blocks.push_back(mul(g.blocks[v], f.blocks[v]));
  return h;
}

template <class K>
ModuleMap<K> identity_map(const Module<K>& m) {
  ModuleMap<K> f;
  for (int d : m.dims) f.blocks.push_back(Mat<K>::Identity(d, d));
  return f;
}

template <class K>
ModuleMap<K> zero_map(const Module<K>& m, const Module<K>& n) {
  ModuleMap<K> f;
  for (int v = 0; v < m.num_vertices(); ++v) f.blocks.push_back(Mat<K>::Zero(n.dims[v], m.dims[v]));
  return f;
}

template <class K>
ModuleMap<K> linear_combination(const std::vector<ModuleMap<K>>& fs, const std::vector<K>& c) {
  ModuleMap<K> out = fs.at(0);
  for (auto& b : out.blocks) b.setZero();
  for (size_t i = 0; i < fs.size(); ++i) {
    if (is_zero(c[i])) continue;
    for (size_t v = 0; v < out.blocks.size(); ++v) out.blocks[v] += c[i] * fs[i].blocks[v];
  }
  return out;
}

template <class K>
bool is_zero_map(const ModuleMap<K>& f) {
  for (const auto& b : f.blocks)
    if (!is_zero(b)) return false;
  return true;
}

template <class K>
bool is_invertible(const ModuleMap<K>& f) {
  for (const auto& b : f.blocks) {
    if (b.rows() != b.cols()) return false;
    if (b.rows() && rank(b) != b.rows()) return false;
  }
  return true;
}

template <class K>
Submodule<K> zero_submodule(const Module<K>& m) {
  Submodule<K> u;
  for (int d : m.dims) u.basis.push_back(Mat<K>(d, 0));
  return u;
}

template <class K>
Submodule<K> full_submodule(const Module<K>& m) {
  Submodule<K> u;
  for (int d : m.dims) u.basis.push_back(Mat<K>::Identity(d, d));
  return u;
}

template <class K>
Submodule<K> kernel(const Module<K>& m, const ModuleMap<K>& f) {
  Submodule<K> u;
  for (int v = 0; v < m.num_vertices(); ++v) u.basis.push_back(kernel_basis(f.blocks[v]));
  return u;
}

template <class K>
Submodule<K> image(const Module<K>& n, const ModuleMap<K>& f) {
  Submodule<K> u;
  for (int v = 0; v < n.num_vertices(); ++v) u.basis.push_back(column_basis(f.blocks[v]));
  return u;
}

template <class K>
Submodule<K> submodule_sum(const Submodule<K>& u, const Submodule<K>& w) {
  Submodule<K> s;
  for (size_t v = 0; v < u.basis.size(); ++v) s.basis.push_back(span_sum(u.basis[v], w.basis[v]));
  return s;
}

template <class K>
Submodule<K> submodule_intersection(const Submodule<K>& u, const Submodule<K>& w) {
  Submodule<K> s;
  for (size_t v = 0; v < u.basis.size(); ++v) s.basis.push_back(intersect(u.basis[v], w.basis[v]));
  return s;
}

template <class K>
bool contains(const Submodule<K>& big, const Submodule<K>& small) {
  for (size_t v = 0; v < big.basis.size(); ++v) {
    if (small.basis[v].cols() == 0) continue;
    if (rank(hcat(big.basis[v], small.basis[v])) != big.basis[v].cols()) return false;
  }
  return true;
}

template <class K>
bool is_stable(const Module<K>& m, const Submodule<K>& u) {
  for (int x = 0; x < m.alg->num_arrows(); ++x) {
    const auto& ar = m.alg->pres.arrows[x];
    const Mat<K> img = mul(m.act[x], u.basis[ar.from]);
    if (img.cols() == 0) continue;
    if (rank(hcat(u.basis[ar.to], img)) != u.basis[ar.to].cols()) return false;
  }
  return true;
}

template <class K>
Submodule<K> generated_submodule(const Module<K>& m, const std::vector<Mat<K>>& gens) {
  const int nv = m.num_vertices();
  std::vector<IncrementalBasis<K>> span;
  std::vector<std::vector<Vec<K>>> vecs(nv);
  for (int v = 0; v < nv; ++v) span.emplace_back(m.dims[v]);
  std::deque<std::pair<int, Vec<K>>> queue;
  for (int v = 0; v < nv; ++v)
    for (Eigen::Index c = 0; c < gens[v].cols(); ++c) queue.push_back({v, gens[v].col(c)});
  while (!queue.empty()) {
    auto [v, x] = std::move(queue.front());
    queue.pop_front();
    if (span[v].insert_or_express(x)) continue;
    vecs[v].push_back(x);
    for (int a = 0; a < m.alg->num_arrows(); ++a)
      if (m.alg->pres.arrows[a].from == v) queue.push_back({m.alg->pres.arrows[a].to, mul(m.act[a], x)});
  }
  Submodule<K> u;
  for (int v = 0; v < nv; ++v) {
    Mat<K> b(m.dims[v], vecs[v].size());
    for (size_t j = 0; j < vecs[v].size(); ++j) b.col(j) = vecs[v][j];
    u.basis.push_back(std::move(b));
  }
  return u;
}

template <class K>
SubResult<K> submodule_module(const Module<K>& m, const Submodule<K>& u) {
  SubResult<K> out;
  out.module.alg = m.alg;
  std::vector<Coordinatizer<K>> coord;
  for (int v = 0; v < m.num_vertices(); ++v) {
    out.module.dims.push_back(static_cast<int>(u.basis[v].cols()));
    coord.emplace_back(u.basis[v]);
  }
  for (int x = 0; x < m.alg->num_arrows(); ++x) {
    const auto& ar = m.alg->pres.arrows[x];
    const Mat<K> img = mul(m.act[x], u.basis[ar.from]);
    Mat<K> b(u.basis[ar.to].cols(), img.cols());
    for (Eigen::Index c = 0; c < img.cols(); ++c) {
      auto co = coord[ar.to].checked_coords(img.col(c));
      if (!co) throw std::logic_error("subspace is not a submodule");
      b.col(c) = *co;
    }
    out.module.act.push_back(std::move(b));
  }
  out.inclusion.blocks = u.basis;
  return out;
}

template <class K>
QuotientResult<K> quotient_module(const Module<K>& m, const Submodule<K>& u) {
  const int nv = m.num_vertices();
  QuotientResult<K> out;
  out.module.alg = m.alg;
  std::vector<Mat<K>> comp(nv), proj(nv);
  for (int v = 0; v < nv; ++v) {
    comp[v] = complement(u.basis[v]);
    const Eigen::Index k = u.basis[v].cols();
    auto inv = inverse(hcat(u.basis[v], comp[v]));
    if (!inv) throw std::logic_error("submodule basis is not independent");
    proj[v] = inv->bottomRows(inv->rows() - k);
    out.module.dims.push_back(static_cast<int>(comp[v].cols()));
  }
  for (int x = 0; x < m.alg->num_arrows(); ++x) {
    const auto& ar = m.alg->pres.arrows[x];
    out.module.act.push_back(mul(proj[ar.to], mul(m.act[x], comp[ar.from])));
  }
  out.projection.blocks = proj;
  return out;
}

template <class K>
Submodule<K> preimage(const Module<K>& m, const ModuleMap<K>& f, const Submodule<K>& w) {
  Submodule<K> u;
  for (int v = 0; v < m.num_vertices(); ++v) {
    const Eigen::Index k = w.basis[v].cols();
    Mat<K> ker = kernel_basis(hcat(f.blocks[v], Mat<K>(-w.basis[v])));
    u.basis.push_back(column_basis(Mat<K>(ker.topRows(ker.rows() - k))));
  }
  return u;
}

template <class K>
ModuleMap<K> restrict_map(const SubResult<K>& sub, const ModuleMap<K>& f) {
  return compose(f, sub.inclusion);
}

template <class K>
Submodule<K> radical(const Module<K>& m, const Submodule<K>& u) {
  Submodule<K> r;
  r.basis.resize(m.num_vertices());
  std::vector<Mat<K>> parts(m.num_vertices());
  for (int v = 0; v < m.num_vertices(); ++v) parts[v] = Mat<K>(m.dims[v], 0);
  for (int x = 0; x < m.alg->num_arrows(); ++x) {
    const auto& ar = m.alg->pres.arrows[x];
    parts[ar.to] = hcat(parts[ar.to], mul(m.act[x], u.basis[ar.from]));
  }
  for (int v = 0; v < m.num_vertices(); ++v) r.basis[v] = column_basis(parts[v]);
  return r;
}

template <class K>
Submodule<K> socle(const Module<K>& m) {
  auto series = socle_series(m);
  return series.size() > 1 ? series[1] : series[0];
}

template <class K>
std::vector<Submodule<K>> radical_series(const Module<K>& m) {
  std::vector<Submodule<K>> out{full_submodule(m)};
  while (out.back().dim() > 0) out.push_back(radical(m, out.back()));
  return out;
}

template <class K>
std::vector<Submodule<K>> socle_series(const Module<K>& m) {
  const int nv = m.num_vertices();
  std::vector<Submodule<K>> out{zero_submodule(m)};
  while (out.back().dim() < m.dim()) {
    const Submodule<K>& s = out.back();
    std::vector<Mat<K>> ann(nv);
    for (int v = 0; v < nv; ++v) ann[v] = Mat<K>(kernel_basis(Mat<K>(s.basis[v].transpose())).transpose());
    Submodule<K> next;
    for (int v = 0; v < nv; ++v) {
      Mat<K> cond(0, m.dims[v]);
      for (int x = 0; x < m.alg->num_arrows(); ++x)
        if (m.alg->pres.arrows[x].from == v) cond = vcat(cond, mul(ann[m.alg->pres.arrows[x].to], m.act[x]));
      next.basis.push_back(kernel_basis(cond));
    }
    if (next.dim() == s.dim()) throw std::logic_error("socle series does not grow");
    out.push_back(std::move(next));
  }
  return out;
}

template <class K>
std::vector<std::vector<int>> radical_layers(const Module<K>& m) {
  auto series = radical_series(m);
  std::vector<std::vector<int>> out;
  for (size_t k = 0; k + 1 < series.size(); ++k) {
    std::vector<int> layer;
    for (int v = 0; v < m.num_vertices(); ++v) layer.push_back(series[k].dims()[v] - series[k + 1].dims()[v]);
    out.push_back(layer);
  }
  return out;
}

template <class K>
std::vector<std::vector<int>> socle_layers(const Module<K>& m) {
  auto series = socle_series(m);
  std::vector<std::vector<int>> out;
  for (size_t k = series.size() - 1; k > 0; --k) {
    std::vector<int> layer;
    for (int v = 0; v < m.num_vertices(); ++v) layer.push_back(series[k].dims()[v] - series[k - 1].dims()[v]);
    out.push_back(layer);
  }
  return out;
}

template <class K>
std::vector<std::vector<std::string>> layer_labels(const Module<K>& m, const std::vector<std::vector<int>>& layers) {
  std::vector<std::vector<std::string>> out;
  for (const auto& l : layers) {
    std::vector<std::string> row;
    for (int v = 0; v < m.num_vertices(); ++v)
      for (int k = 0; k < l[v]; ++k) row.push_back(m.alg->label(v));
    out.push_back(row);
  }
  return out;
}

template <class K>
std::vector<int> top_dims(const Module<K>& m) {
  auto r = radical(m, full_submodule(m));
  std::vector<int> out;
  for (int v = 0; v < m.num_vertices(); ++v) out.push_back(m.dims[v] - static_cast<int>(r.basis[v].cols()));
  return out;
}

template <class K>
Submodule<K> trace(const Module<K>& x, const Module<K>& m) {
  Submodule<K> t = zero_submodule(m);
  std::vector<Mat<K>> parts = t.basis;
  for (const auto& f : hom_space(x, m))
    for (int v = 0; v < m.num_vertices(); ++v) parts[v] = hcat(parts[v], f.blocks[v]);
  for (int v = 0; v < m.num_vertices(); ++v) t.basis[v] = column_basis(parts[v]);
  return t;
}

namespace {

std::atomic<std::uint64_t> g_seed{0x5eedULL};

template <class K>
bool is_nilpotent(const Mat<K>& f) {
  if (f.rows() == 0) return true;
  Mat<K> p = f;
  for (Eigen::Index k = 1; k < f.rows(); k *= 2) p = mul(p, p);
  return is_zero(p);
}

template <class K>
Mat<K> matrix_power(const Mat<K>& f, Eigen::Index e) {
  Mat<K> result = Mat<K>::Identity(f.rows(), f.cols()), base = f;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

template <class K>
std::vector<K> eigen_candidates(const Mat<K>& f) {
  std::vector<K> cs;
  const Eigen::Index n = f.rows();
  if constexpr (std::is_same_v<K, Zp>) {
    if (Zp::modulus() <= 257) {
      for (std::uint32_t c = 0; c < Zp::modulus(); ++c) cs.push_back(K(static_cast<long>(c)));
      return cs;
    }
  }
  auto add = [&](const K& c) {
    if (std::find(cs.begin(), cs.end(), c) == cs.end()) cs.push_back(c);
  };
  for (Eigen::Index i = 0; i < n; ++i) add(f(i, i));
  for (long c = -3; c <= 3; ++c) add(K(c));
  return cs;
}

// The scalar c with f - c nilpotent, when f has a single eigenvalue in the field.
template <class K>
std::optional<K> single_eigenvalue(const Mat<K>& f) {
  const Eigen::Index n = f.rows();
  if (n == 0) return K(0);
  bool char_divides = false;
  if constexpr (std::is_same_v<K, Zp>) char_divides = n % Zp::modulus() == 0;
  if (!char_divides) {
    K tr(0);
    for (Eigen::Index i = 0; i < n; ++i) tr += f(i, i);
    const K c = tr / K(static_cast<long>(n));
    if (is_nilpotent(Mat<K>(f - c * Mat<K>::Identity(n, n)))) return c;
    return std::nullopt;
  }
  for (const K& c : eigen_candidates(f))
    if (is_nilpotent(Mat<K>(f - c * Mat<K>::Identity(n, n)))) return c;
  return std::nullopt;
}

// An endomorphism that is neither nilpotent nor invertible, if one is found.
template <class K>
std::optional<Mat<K>> find_splitter(const std::vector<Mat<K>>& basis) {
  if (basis.empty()) return std::nullopt;
  const Eigen::Index n = basis[0].rows();
  const Mat<K> id = Mat<K>::Identity(n, n);
  auto splits = [&](const Mat<K>& h) {
    const int r = rank(matrix_power(h, n));
    return r > 0 && r < n;
  };
  std::vector<Mat<K>> cands = basis;
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = 0; j < basis.size(); ++j) cands.push_back(mul(basis[i], basis[j]));
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = i + 1; j < basis.size(); ++j) cands.push_back(basis[i] + basis[j]);
  std::mt19937_64 rng(g_seed.load());
  for (int t = 0; t < 16; ++t) {
    Mat<K> h = Mat<K>::Zero(n, n);
    for (const auto& b : basis) h += random_scalar<K>(rng) * b;
    cands.push_back(h);
  }
  for (const auto& h : cands)
    for (const K& c : eigen_candidates(h)) {
      Mat<K> g = h - c * id;
      if (splits(g)) return g;
    }
  return std::nullopt;
}

template <class K>
std::vector<Mat<K>> total_matrices(const std::vector<ModuleMap<K>>& fs) {
  std::vector<Mat<K>> out;
  for (const auto& f : fs) out.push_back(f.total());
  return out;
}

template <class K>
std::vector<Module<K>> split_recursive(const Module<K>& m) {
  if (m.dim() == 0) return {};
  if (has_local_endomorphisms(m)) return {m};
  auto ends = hom_space(m, m);
  auto h = find_splitter(total_matrices(ends));
  if (!h) throw Undecided("cannot split a decomposable module over this field");
  const Mat<K> p = matrix_power(*h, m.dim());
  Submodule<K> ker, img;
  for (int v = 0; v < m.num_vertices(); ++v) {
    const int o = m.offset(v), d = m.dims[v];
    Mat<K> block = p.block(o, o, d, d);
    ker.basis.push_back(kernel_basis(block));
    img.basis.push_back(column_basis(block));
  }
  std::vector<Module<K>> out = split_recursive(submodule_module(m, ker).module);
  auto rest = split_recursive(submodule_module(m, img).module);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

}  // namespace

void set_search_seed(std::uint64_t seed) { g_seed.store(seed); }
std::uint64_t search_seed() { return g_seed.load(); }

template <class K>
bool invariants_agree(const Module<K>& m, const Module<K>& n) {
  if (m.dims != n.dims) return false;
  if (radical_layers(m) != radical_layers(n)) return false;
  if (socle_layers(m) != socle_layers(n)) return false;
  const int e = hom_dim(m, m);
  return hom_dim(n, n) == e && hom_dim(m, n) == e && hom_dim(n, m) == e;
}

template <class K>
std::optional<ModuleMap<K>> find_isomorphism(const Module<K>& m, const Module<K>& n) {
  if (m.dims != n.dims) return std::nullopt;
  auto hs = hom_space(m, n);
  if (m.dim() == 0) return zero_map(m, n);
  if (hs.empty()) return std::nullopt;
  for (const auto& h : hs)
    if (is_invertible(h)) return h;
  std::mt19937_64 rng(g_seed.load());
  for (int t = 0; t < 32; ++t) {
    std::vector<K> c;
    for (size_t i = 0; i < hs.size(); ++i) c.push_back(random_scalar<K>(rng));
    auto h = linear_combination(hs, c);
    if (is_invertible(h)) return h;
  }
  const size_t k = std::min<size_t>(hs.size(), 12);
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    std::vector<K> c(hs.size(), K(0));
    for (size_t i = 0; i < k; ++i)
      if (mask & (1u << i)) c[i] = K(1);
    auto h = linear_combination(hs, c);
    if (is_invertible(h)) return h;
  }
  return std::nullopt;
}

template <class K>
bool is_isomorphic(const Module<K>& m, const Module<K>& n) {
  if (m.dims != n.dims) return false;
  if (find_isomorphism(m, n)) return true;
  if (!invariants_agree(m, n)) return false;
  throw Undecided("isomorphism search failed without a separating invariant");
}

template <class K>
bool has_local_endomorphisms(const Module<K>& m) {
  if (m.dim() == 0) return false;
  auto ends = total_matrices(hom_space(m, m));
  const Eigen::Index n = m.dim();
  const Mat<K> id = Mat<K>::Identity(n, n);
  std::vector<Mat<K>> nil;
  bool all_single = true;
  for (const auto& f : ends) {
    auto c = single_eigenvalue(f);
    if (!c) {
      all_single = false;
      break;
    }
    Mat<K> g = f - *c * id;
    if (!is_zero(g)) nil.push_back(std::move(g));
  }
  if (all_single) {
    // the algebra generated by the nilpotent parts must itself be nilpotent
    std::vector<Mat<K>> power = nil;
    for (Eigen::Index k = 0; k <= n && !power.empty(); ++k) {
      IncrementalBasis<K> span(n * n);
      std::vector<Mat<K>> next;
      for (const auto& p : power)
        for (const auto& g : nil) {
          Mat<K> q = mul(g, p);
          Vec<K> flat = Eigen::Map<const Vec<K>>(q.data(), q.size());
          if (!span.insert_or_express(flat)) next.push_back(std::move(q));
        }
      power = std::move(next);
    }
    if (power.empty()) return true;
  }
  if (find_splitter(ends)) return false;
  throw Undecided("endomorphism ring is not split over the field: enlarge field");
}

template <class K>
std::vector<Summand<K>> decompose(const Module<K>& m) {
  std::vector<Module<K>> parts = split_recursive(m);
  std::vector<Summand<K>> out;
  for (auto& p : parts) {
    bool merged = false;
    for (auto& s : out)
      if (s.module.dims == p.dims && is_isomorphic(s.module, p)) {
        ++s.multiplicity;
        merged = true;
        break;
      }
    if (!merged) out.push_back({std::move(p), 1});
  }
  std::stable_sort(out.begin(), out.end(), [](const Summand<K>& a, const Summand<K>& b) {
    if (a.module.dim() != b.module.dim()) return a.module.dim() < b.module.dim();
    return a.module.dims < b.module.dims;
  });
  return out;
}

template <class K>
Module<K> tensor_module(const AlgPtr<K>& d, const Module<K>& m, const Module<K>& v) {
  if (d->tensor_vertices.empty()) throw std::invalid_argument("tensor_module needs an algebra built by tensor_algebra");
  Module<K> out;
  out.alg = d;
  for (const auto& [l, b] : d->tensor_vertices) out.dims.push_back(m.dims[l] * v.dims[b]);
  for (const auto& ta : d->tensor_arrows) {
    if (ta.left) {
      const int db = v.dims[ta.other_vertex];
      out.act.push_back(kron(m.act[ta.arrow], Mat<K>(Mat<K>::Identity(db, db))));
    } else {
      const int da = m.dims[ta.other_vertex];
      out.act.push_back(kron(Mat<K>(Mat<K>::Identity(da, da)), v.act[ta.arrow]));
    }
  }
  return out;
}

#define QALG_INST(K)                                                                                              \
  template struct Module<K>;                                                                                      \
  template struct ModuleMap<K>;                                                                                   \
  template struct Submodule<K>;                                                                                   \
  template Module<K> zero_module(const AlgPtr<K>&);                                                               \
  template Module<K> simple_module(const AlgPtr<K>&, int);                                                        \
  template Module<K> projective_module(const AlgPtr<K>&, int);                                                    \
  template Module<K> injective_module(const AlgPtr<K>&, int);                                                     \
  template Module<K> regular_module(const AlgPtr<K>&);                                                            \
  template Module<K> dual(const Module<K>&);                                                                      \
  template Module<K> direct_sum(const Module<K>&, const Module<K>&);                                              \
  template Module<K> direct_sum(const std::vector<Module<K>>&, const AlgPtr<K>&);                                 \
  template Module<K> power(const Module<K>&, int);                                                                \
  template std::vector<ModuleMap<K>> hom_space(const Module<K>&, const Module<K>&);                               \
  template int hom_dim(const Module<K>&, const Module<K>&);                                                       \
  template bool is_module_map(const Module<K>&, const Module<K>&, const ModuleMap<K>&);                           \
  template ModuleMap<K> compose(const ModuleMap<K>&, const ModuleMap<K>&);                                        \
  template ModuleMap<K> identity_map(const Module<K>&);                                                           \
  template ModuleMap<K> zero_map(const Module<K>&, const Module<K>&);                                             \
  template ModuleMap<K> linear_combination(const std::vector<ModuleMap<K>>&, const std::vector<K>&);              \
  template bool is_zero_map(const ModuleMap<K>&);                                                                 \
  template bool is_invertible(const ModuleMap<K>&);                                                               \
  template Submodule<K> zero_submodule(const Module<K>&);                                                         \
  template Submodule<K> full_submodule(const Module<K>&);                                                         \
  template Submodule<K> kernel(const Module<K>&, const ModuleMap<K>&);                                            \
  template Submodule<K> image(const Module<K>&, const ModuleMap<K>&);                                             \
  template Submodule<K> submodule_sum(const Submodule<K>&, const Submodule<K>&);                                  \
  template Submodule<K> submodule_intersection(const Submodule<K>&, const Submodule<K>&);                         \
  template bool contains(const Submodule<K>&, const Submodule<K>&);                                               \
  template bool is_stable(const Module<K>&, const Submodule<K>&);                                                 \
  template Submodule<K> generated_submodule(const Module<K>&, const std::vector<Mat<K>>&);                        \
  template SubResult<K> submodule_module(const Module<K>&, const Submodule<K>&);                                  \
  template QuotientResult<K> quotient_module(const Module<K>&, const Submodule<K>&);                              \
  template Submodule<K> preimage(const Module<K>&, const ModuleMap<K>&, const Submodule<K>&);                     \
  template ModuleMap<K> restrict_map(const SubResult<K>&, const ModuleMap<K>&);                                   \
  template Submodule<K> radical(const Module<K>&, const Submodule<K>&);                                           \
  template Submodule<K> socle(const Module<K>&);                                                                  \
  template std::vector<Submodule<K>> radical_series(const Module<K>&);                                            \
  template std::vector<Submodule<K>> socle_series(const Module<K>&);                                              \
  template std::vector<std::vector<int>> radical_layers(const Module<K>&);                                        \
  template std::vector<std::vector<int>> socle_layers(const Module<K>&);                                          \
  template std::vector<std::vector<std::string>> layer_labels(const Module<K>&, const std::vector<std::vector<int>>&); \
  template std::vector<int> top_dims(const Module<K>&);                                                           \
  template Submodule<K> trace(const Module<K>&, const Module<K>&);                                                \
  template bool is_isomorphic(const Module<K>&, const Module<K>&);                                                \
  template std::optional<ModuleMap<K>> find_isomorphism(const Module<K>&, const Module<K>&);                      \
  template bool invariants_agree(const Module<K>&, const Module<K>&);                                             \
  template bool has_local_endomorphisms(const Module<K>&);                                                        \
  template std::vector<Summand<K>> decompose(const Module<K>&);                                                   \
  template Module<K> tensor_module(const AlgPtr<K>&, const Module<K>&, const Module<K>&);

QALG_INST(Rational)
QALG_INST(Zp)

}  // namespace qalg
