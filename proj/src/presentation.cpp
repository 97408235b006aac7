#include "qalg/presentation.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace qalg {

bool deglex_less(const Path& a, const Path& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  if (a.arrows != b.arrows) return a.arrows < b.arrows;
  if (a.s != b.s) return a.s < b.s;
  return a.t < b.t;
}

namespace {

struct WordLess {
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

template <class K>
using Poly = std::map<std::vector<int>, K, WordLess>;

template <class K>
void add_term(Poly<K>& p, const std::vector<int>& w, const K& c) {
  if (is_zero(c)) return;
  auto [it, inserted] = p.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (is_zero(it->second)) p.erase(it);
  }
}

int find_sub(const std::vector<int>& w, const std::vector<int>& pat) {
  if (pat.size() > w.size()) return -1;
  for (size_t i = 0; i + pat.size() <= w.size(); ++i)
    if (std::equal(pat.begin(), pat.end(), w.begin() + i)) return static_cast<int>(i);
  return -1;
}

bool has_suffix(const std::vector<int>& w, const std::vector<int>& suf) {
  return suf.size() <= w.size() && std::equal(suf.begin(), suf.end(), w.end() - suf.size());
}

template <class K>
const std::vector<int>& tip(const Poly<K>& p) {
  return std::prev(p.end())->first;
}

template <class K>
void make_monic(Poly<K>& p) {
  const K inv = K(1) / std::prev(p.end())->second;
  for (auto& [w, c] : p) c *= inv;
}

template <class K>
Poly<K> reduce(Poly<K> f, const std::vector<Poly<K>>& G) {
  Poly<K> r;
  while (!f.empty()) {
    auto last = std::prev(f.end());
    const std::vector<int> w = last->first;
    const K c = last->second;
    bool reduced = false;
    for (const auto& g : G) {
      const auto& t = tip(g);
      const int pos = find_sub(w, t);
      if (pos < 0) continue;
      for (const auto& [x, gc] : g) {
        std::vector<int> nw(w.begin(), w.begin() + pos);
        nw.insert(nw.end(), x.begin(), x.end());
        nw.insert(nw.end(), w.begin() + pos + t.size(), w.end());
        add_term(f, nw, -(c * gc));
      }
      reduced = true;
      break;
    }
    if (!reduced) {
      add_term(r, w, c);
      f.erase(std::prev(f.end()));
    }
  }
  return r;
}

template <class K>
void push_overlaps(const Poly<K>& g1, const Poly<K>& g2, std::deque<Poly<K>>& queue) {
  const auto& t1 = tip(g1);
  const auto& t2 = tip(g2);
  const size_t m = std::min(t1.size(), t2.size());
  for (size_t k = 1; k < m; ++k) {
    if (!std::equal(t1.end() - k, t1.end(), t2.begin())) continue;
    std::vector<int> u(t1.begin(), t1.end() - k), v(t2.begin() + k, t2.end());
    Poly<K> s;
    for (const auto& [x, c] : g1) {
      std::vector<int> w = x;
      w.insert(w.end(), v.begin(), v.end());
      add_term(s, w, c);
    }
    for (const auto& [y, c] : g2) {
      std::vector<int> w = u;
      w.insert(w.end(), y.begin(), y.end());
      add_term(s, w, -c);
    }
    if (!s.empty()) queue.push_back(std::move(s));
  }
}

template <class K>
std::vector<Poly<K>> groebner_basis(const std::vector<Relation<K>>& rels, int cap) {
  std::deque<Poly<K>> queue;
  for (const auto& r : rels) {
    Poly<K> p;
    for (const auto& t : r) add_term(p, t.word, t.coeff);
    if (!p.empty()) queue.push_back(std::move(p));
  }
  std::vector<Poly<K>> G;
  long steps = 0;
  const long step_limit = 200000;
  while (!queue.empty()) {
    Poly<K> f = reduce(std::move(queue.front()), G);
    queue.pop_front();
    if (f.empty()) continue;
    if (++steps > step_limit || static_cast<int>(tip(f).size()) > 2 * cap + 2)
      throw InputError("not finite-dimensional within cap");
    make_monic(f);
    for (size_t i = 0; i < G.size();) {
      if (find_sub(tip(G[i]), tip(f)) >= 0) {
        queue.push_back(std::move(G[i]));
        G.erase(G.begin() + i);
      } else {
        ++i;
      }
    }
    G.push_back(std::move(f));
    const Poly<K>& nf = G.back();
    for (const auto& g : G) {
      push_overlaps(nf, g, queue);
      if (&g != &nf) push_overlaps(g, nf, queue);
    }
  }
  // tail reduction
  for (size_t i = 0; i < G.size(); ++i) {
    Poly<K> rest = G[i];
    const auto t = tip(rest);
    rest.erase(t);
    std::vector<Poly<K>> others;
    for (size_t j = 0; j < G.size(); ++j)
      if (j != i) others.push_back(G[j]);
    Poly<K> red = reduce(std::move(rest), others);
    red[t] = K(1);
    G[i] = std::move(red);
  }
  std::sort(G.begin(), G.end(), [](const Poly<K>& a, const Poly<K>& b) { return WordLess{}(tip(a), tip(b)); });
  return G;
}

template <class K>
Relation<K> to_relation(const Poly<K>& p) {
  Relation<K> r;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r.push_back({it->second, it->first});
  return r;
}

template <class K>
Vec<K> sparse_to_dense(const SparseVec<K>& s, int n) {
  Vec<K> v = Vec<K>::Zero(n);
  for (const auto& [i, c] : s) v(i) += c;
  return v;
}

template <class K>
Vec<K> abstract_product(const AbstractAlgebra<K>& a, const Vec<K>& x, const Vec<K>& y) {
  const int n = a.dim();
  Vec<K> out = Vec<K>::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (is_zero(x(i))) continue;
    for (int j = 0; j < n; ++j) {
      if (is_zero(y(j))) continue;
      const K c = x(i) * y(j);
      for (const auto& [k, v] : a.table[i][j]) out(k) += c * v;
    }
  }
  return out;
}

}  // namespace

template <class K>
int Presentation<K>::vertex_index(const std::string& label) const {
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == label) return static_cast<int>(i);
  throw InputError("unknown vertex '" + label + "'");
}

template <class K>
int Presentation<K>::arrow_index(const std::string& name) const {
  for (size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].name == name) return static_cast<int>(i);
  throw InputError("unknown arrow '" + name + "'");
}

template <class K>
void Presentation<K>::validate() const {
  const int n = static_cast<int>(vertices.size());
  if (n == 0) throw InputError("presentation has no vertices");
  std::set<std::string> seen(vertices.begin(), vertices.end());
  if (static_cast<int>(seen.size()) != n) throw InputError("duplicate vertex label");
  std::set<std::string> names;
  for (const auto& a : arrows) {
    if (!names.insert(a.name).second) throw InputError("duplicate arrow name '" + a.name + "'");
    if (a.from < 0 || a.from >= n || a.to < 0 || a.to >= n) throw InputError("arrow '" + a.name + "' has a bad endpoint");
  }
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n; ++i)
    if (static_cast<int>(sorted.size()) != n || sorted[i] != i) throw InputError("order must list every vertex exactly once");
  if (max_path_length < 1) throw InputError("max_path_length must be positive");
  for (const auto& r : relations) {
    if (r.empty()) throw InputError("empty relation");
    int s = -1, t = -1;
    for (const auto& term : r) {
      if (term.word.size() < 2) throw InputError("relation terms must be paths of length at least 2");
      for (int x : term.word)
        if (x < 0 || x >= static_cast<int>(arrows.size())) throw InputError("relation uses an unknown arrow");
      for (size_t k = 0; k + 1 < term.word.size(); ++k)
        if (arrows[term.word[k]].to != arrows[term.word[k + 1]].from) throw InputError("non-composable path in relation");
      const int ts = arrows[term.word.front()].from, tt = arrows[term.word.back()].to;
      if (s < 0) s = ts, t = tt;
      if (ts != s || tt != t) throw InputError("relation terms are not parallel paths");
    }
  }
}

template <class K>
int Algebra<K>::index_of(const Path& p) const {
  if (p.length() == 0) return vertex_basis[p.s];
  auto it = word_index[p.s].find(p.arrows);
  return it == word_index[p.s].end() ? -1 : it->second;
}

template <class K>
SparseVec<K> Algebra<K>::normal_form(const Path& p) const {
  if (p.length() == 0) return {{vertex_basis[p.s], K(1)}};
  std::vector<Poly<K>> G;
  G.reserve(groebner.size());
  for (const auto& r : groebner) {
    Poly<K> g;
    for (const auto& t : r) add_term(g, t.word, t.coeff);
    G.push_back(std::move(g));
  }
  Poly<K> f;
  f[p.arrows] = K(1);
  Poly<K> red = reduce(std::move(f), G);
  SparseVec<K> out;
  for (const auto& [w, c] : red) {
    const int idx = index_of(Path{p.s, p.t, w});
    if (idx < 0) throw std::logic_error("normal form produced a non-basis word");
    out.push_back({idx, c});
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

template <class K>
Vec<K> Algebra<K>::product(const Vec<K>& x, const Vec<K>& y) const {
  const int n = dim();
  Vec<K> out = Vec<K>::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (is_zero(x(i))) continue;
    for (int j = 0; j < n; ++j) {
      if (is_zero(y(j))) continue;
      const K c = x(i) * y(j);
      for (const auto& [k, v] : table[i][j]) out(k) += c * v;
    }
  }
  return out;
}

template <class K>
Vec<K> Algebra<K>::unit_vector(int i) const {
  Vec<K> v = Vec<K>::Zero(dim());
  v(i) = K(1);
  return v;
}

template <class K>
AlgPtr<K> build_algebra(const Presentation<K>& pres) {
  pres.validate();
  if constexpr (std::is_same_v<K, Zp>) {
    if (pres.field.kind != Field::Kind::Prime) throw InputError("GF(p) arithmetic requested for a rational presentation");
    if (Zp::modulus() != pres.field.p) Zp::set_modulus(pres.field.p);
  }
  auto a = std::make_shared<Algebra<K>>();
  a->pres = pres;
  const int n = static_cast<int>(pres.vertices.size());
  a->rank.assign(n, 0);
  for (int i = 0; i < n; ++i) a->rank[pres.order[i]] = i;

  const int cap = pres.max_path_length;
  std::vector<Poly<K>> G = groebner_basis(pres.relations, cap);
  for (const auto& g : G) a->groebner.push_back(to_relation(g));

  std::vector<Path> words;
  for (int v = 0; v < n; ++v) {
    std::vector<Path> frontier{Path{v, v, {}}};
    while (!frontier.empty()) {
      std::vector<Path> next;
      for (const auto& w : frontier) {
        words.push_back(w);
        for (int x = 0; x < static_cast<int>(pres.arrows.size()); ++x) {
          if (pres.arrows[x].from != w.t) continue;
          Path nw{w.s, pres.arrows[x].to, w.arrows};
          nw.arrows.push_back(x);
          bool normal = true;
          for (const auto& g : G)
            if (has_suffix(nw.arrows, tip(g))) { normal = false; break; }
          if (!normal) continue;
          if (nw.length() > cap) throw InputError("not finite-dimensional within cap");
          next.push_back(std::move(nw));
        }
      }
      frontier = std::move(next);
    }
  }
  std::sort(words.begin(), words.end(), deglex_less);
  a->basis = words;
  a->vertex_basis.assign(n, -1);
  a->arrow_basis.assign(pres.arrows.size(), -1);
  a->word_index.assign(n, {});
  for (int i = 0; i < a->dim(); ++i) {
    const Path& p = a->basis[i];
    if (p.length() == 0) a->vertex_basis[p.s] = i;
    else a->word_index[p.s][p.arrows] = i;
    if (p.length() == 1) a->arrow_basis[p.arrows[0]] = i;
  }
  for (size_t x = 0; x < pres.arrows.size(); ++x)
    if (a->arrow_basis[x] < 0) throw InputError("arrow '" + pres.arrows[x].name + "' is zero in the algebra");

  const int d = a->dim();
  a->table.assign(d, std::vector<SparseVec<K>>(d));
  for (int i = 0; i < d; ++i) {
    const Path& bi = a->basis[i];
    for (int j = 0; j < d; ++j) {
      const Path& bj = a->basis[j];
      if (bj.t != bi.s) continue;
      if (bj.length() == 0) a->table[i][j] = {{i, K(1)}};
      else if (bi.length() == 0) a->table[i][j] = {{j, K(1)}};
      else {
        Path cat{bj.s, bi.t, bj.arrows};
        cat.arrows.insert(cat.arrows.end(), bi.arrows.begin(), bi.arrows.end());
        a->table[i][j] = a->normal_form(cat);
      }
    }
  }
  return a;
}

template <class K>
AlgPtr<K> opposite(const AlgPtr<K>& a) {
  std::lock_guard<std::mutex> lock(a->op_mutex);
  if (a->op_strong) return a->op_strong;
  if (auto w = a->op_weak.lock()) return w;
  Presentation<K> p = a->pres;
  for (auto& x : p.arrows) std::swap(x.from, x.to);
  for (auto& r : p.relations)
    for (auto& t : r) std::reverse(t.word.begin(), t.word.end());
  auto built = build_algebra(p);
  auto op = std::const_pointer_cast<Algebra<K>>(built);
  op->origin = "opposite";
  op->op_weak = a;
  a->op_strong = op;
  return op;
}

template <class K>
AlgPtr<K> tensor_algebra(const AlgPtr<K>& a, const AlgPtr<K>& b) {
  if (!(a->field() == b->field())) throw InputError("tensor factors over different fields");
  Presentation<K> p;
  p.field = a->field();
  const int na = a->num_vertices(), nb = b->num_vertices();
  const bool local = nb == 1;
  auto vid = [&](int l, int m) { return l * nb + m; };
  std::vector<std::pair<int, int>> tv;
  for (int l = 0; l < na; ++l)
    for (int m = 0; m < nb; ++m) {
      p.vertices.push_back(local ? a->label(l) : a->label(l) + "|" + b->label(m));
      tv.push_back({l, m});
    }
  for (int ra = 0; ra < na; ++ra)
    for (int rb = 0; rb < nb; ++rb) p.order.push_back(vid(a->order()[ra], b->order()[rb]));
  std::vector<typename Algebra<K>::TensorArrow> ta;
  std::vector<std::vector<int>> left_id(a->num_arrows(), std::vector<int>(nb)), right_id(b->num_arrows(), std::vector<int>(na));
  for (int x = 0; x < a->num_arrows(); ++x)
    for (int m = 0; m < nb; ++m) {
      const auto& ar = a->pres.arrows[x];
      left_id[x][m] = static_cast<int>(p.arrows.size());
      p.arrows.push_back({local ? ar.name : ar.name + "@" + b->label(m), vid(ar.from, m), vid(ar.to, m)});
      ta.push_back({true, x, m});
    }
  for (int y = 0; y < b->num_arrows(); ++y)
    for (int l = 0; l < na; ++l) {
      const auto& ar = b->pres.arrows[y];
      right_id[y][l] = static_cast<int>(p.arrows.size());
      p.arrows.push_back({ar.name + "@" + a->label(l), vid(l, ar.from), vid(l, ar.to)});
      ta.push_back({false, y, l});
    }
  for (const auto& r : a->pres.relations)
    for (int m = 0; m < nb; ++m) {
      Relation<K> nr;
      for (const auto& t : r) {
        Term<K> nt{t.coeff, {}};
        for (int x : t.word) nt.word.push_back(left_id[x][m]);
        nr.push_back(nt);
      }
      p.relations.push_back(nr);
    }
  for (const auto& r : b->pres.relations)
    for (int l = 0; l < na; ++l) {
      Relation<K> nr;
      for (const auto& t : r) {
        Term<K> nt{t.coeff, {}};
        for (int y : t.word) nt.word.push_back(right_id[y][l]);
        nr.push_back(nt);
      }
      p.relations.push_back(nr);
    }
  for (int x = 0; x < a->num_arrows(); ++x)
    for (int y = 0; y < b->num_arrows(); ++y) {
      const auto& ax = a->pres.arrows[x];
      const auto& by = b->pres.arrows[y];
      // (x at source of y) then (y at target of x) equals (y at source of x) then (x at target of y)
      Relation<K> r{{K(1), {left_id[x][by.from], right_id[y][ax.to]}}, {K(-1), {right_id[y][ax.from], left_id[x][by.to]}}};
      p.relations.push_back(r);
    }
  p.max_path_length = a->pres.max_path_length + b->pres.max_path_length;
  auto built = std::const_pointer_cast<Algebra<K>>(build_algebra(p));
  built->origin = "tensor";
  built->left_factor = a;
  built->right_factor = b;
  built->tensor_vertices = tv;
  built->tensor_arrows = ta;
  return built;
}

template <class K>
std::vector<std::vector<int>> cartan_matrix(const Algebra<K>& a) {
  const int n = a.num_vertices();
  std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
  for (const auto& p : a.basis) ++c[p.s][p.t];
  return c;
}

template <class K>
bool same_algebra(const Algebra<K>& a, const Algebra<K>& b) {
  if (a.dim() != b.dim() || a.pres.vertices != b.pres.vertices || a.pres.order != b.pres.order) return false;
  if (!(a.pres.arrows == b.pres.arrows)) return false;
  if (!(a.basis == b.basis)) return false;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      const auto& x = a.table[i][j];
      const auto& y = b.table[i][j];
      if (x.size() != y.size()) return false;
      for (size_t k = 0; k < x.size(); ++k)
        if (x[k].first != y[k].first || x[k].second != y[k].second) return false;
    }
  return true;
}

template <class K>
AbstractAlgebra<K> as_abstract(const Algebra<K>& a) {
  AbstractAlgebra<K> out;
  out.field = a.field();
  out.vertices = a.pres.vertices;
  out.order = a.pres.order;
  for (const auto& p : a.basis) {
    out.src.push_back(p.s);
    out.tgt.push_back(p.t);
  }
  out.identity = a.vertex_basis;
  out.table = a.table;
  return out;
}

template <class K>
RecoveredPresentation<K> quiver_presentation_of(const AbstractAlgebra<K>& a, const std::string& prefix) {
  const int n = static_cast<int>(a.vertices.size()), d = a.dim();
  auto unit = [&](int i) {
    Vec<K> v = Vec<K>::Zero(d);
    v(i) = K(1);
    return v;
  };
  auto prod = [&](const Vec<K>& x, const Vec<K>& y) { return abstract_product(a, x, y); };

  // radical: off-diagonal blocks plus the nilpotent parts of the local diagonal blocks
  struct Elem {
    Vec<K> v;
    int s, t;
  };
  std::vector<Elem> rad;
  for (int v = 0; v < n; ++v) {
    std::vector<int> block;
    for (int i = 0; i < d; ++i)
      if (a.src[i] == v && a.tgt[i] == v) block.push_back(i);
    const int m = static_cast<int>(block.size());
    for (int i : block) {
      if (i == a.identity[v]) continue;
      Mat<K> L = Mat<K>::Zero(m, m);
      for (int c = 0; c < m; ++c)
        for (const auto& [k, val] : a.table[i][block[c]]) {
          auto pos = std::find(block.begin(), block.end(), k) - block.begin();
          L(pos, c) += val;
        }
      K scalar(0);
      bool found = false;
      const bool char_divides = a.field.kind == Field::Kind::Prime && m % a.field.p == 0;
      if (!char_divides) {
        K tr(0);
        for (int c = 0; c < m; ++c) tr += L(c, c);
        scalar = tr / K(m);
        found = true;
      } else {
        for (std::uint32_t c = 0; c < a.field.p && !found; ++c) {
          Mat<K> N = L - K(static_cast<long>(c)) * Mat<K>::Identity(m, m);
          Mat<K> P = N;
          for (int k = 1; k < m; ++k) P = mul(P, N);
          if (is_zero(P)) scalar = K(static_cast<long>(c)), found = true;
        }
      }
      if (!found) throw Undecided("local block is not split over the field");
      Vec<K> r = unit(i);
      r(a.identity[v]) -= scalar;
      rad.push_back({r, v, v});
    }
  }
  for (int i = 0; i < d; ++i)
    if (a.src[i] != a.tgt[i]) rad.push_back({unit(i), a.src[i], a.tgt[i]});

  // rad^2 per block and a nilpotency check
  std::map<std::pair<int, int>, IncrementalBasis<K>> rad2;
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) rad2.emplace(std::make_pair(s, t), IncrementalBasis<K>(d));
  for (const auto& x : rad)
    for (const auto& y : rad) {
      if (y.t != x.s) continue;
      Vec<K> p = prod(x.v, y.v);
      rad2.at({y.s, x.t}).insert_or_express(p);
    }
  {
    std::vector<Vec<K>> power;
    for (const auto& x : rad) power.push_back(x.v);
    for (int k = 0; k <= d && !power.empty(); ++k) {
      IncrementalBasis<K> next(d);
      std::vector<Vec<K>> nv;
      for (const auto& p : power)
        for (const auto& x : rad) {
          Vec<K> q = prod(x.v, p);
          if (!next.insert_or_express(q)) nv.push_back(q);
        }
      power = std::move(nv);
      if (k == d && !power.empty()) throw InputError("radical is not nilpotent: condense first");
    }
  }

  RecoveredPresentation<K> out;
  Presentation<K>& p = out.pres;
  p.field = a.field;
  p.vertices = a.vertices;
  p.order = a.order;
  std::vector<Vec<K>> arrows;
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      IncrementalBasis<K> span = rad2.at({s, t});
      for (const auto& x : rad) {
        if (x.s != s || x.t != t) continue;
        if (!span.insert_or_express(x.v)) {
          p.arrows.push_back({prefix + std::to_string(p.arrows.size() + 1), s, t});
          arrows.push_back(x.v);
        }
      }
    }
  const int na = static_cast<int>(arrows.size());

  // normal words, greedily in deglex order
  std::map<std::pair<int, int>, IncrementalBasis<K>> spans;
  std::map<std::pair<int, int>, std::vector<std::vector<int>>> block_words;
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) spans.emplace(std::make_pair(s, t), IncrementalBasis<K>(d));
  std::set<std::vector<int>> normal;
  std::map<std::vector<int>, Vec<K>> image;
  int count = 0;
  for (int v = 0; v < n; ++v) {
    spans.at({v, v}).insert_or_express(unit(a.identity[v]));
    block_words[{v, v}].push_back({});
    ++count;
  }
  std::vector<std::vector<int>> layer;
  for (int x = 0; x < na; ++x) {
    const auto& ar = p.arrows[x];
    if (spans.at({ar.from, ar.to}).insert_or_express(arrows[x])) throw std::logic_error("arrow dependent on shorter words");
    block_words[{ar.from, ar.to}].push_back({x});
    normal.insert({x});
    image[{x}] = arrows[x];
    layer.push_back({x});
    ++count;
  }
  int maxlen = 1;
  while (!layer.empty()) {
    std::vector<std::vector<int>> cand;
    for (const auto& w : layer)
      for (int x = 0; x < na; ++x) {
        if (p.arrows[x].from != p.arrows[w.back()].to) continue;
        std::vector<int> nw = w;
        nw.push_back(x);
        if (!normal.count(std::vector<int>(nw.begin() + 1, nw.end()))) continue;
        cand.push_back(std::move(nw));
      }
    std::sort(cand.begin(), cand.end());
    std::vector<std::vector<int>> next;
    for (const auto& w : cand) {
      const int s = p.arrows[w.front()].from, t = p.arrows[w.back()].to;
      Vec<K> img = prod(arrows[w.back()], image.at(std::vector<int>(w.begin(), w.end() - 1)));
      auto dep = spans.at({s, t}).insert_or_express(img);
      if (!dep) {
        normal.insert(w);
        image[w] = img;
        block_words[{s, t}].push_back(w);
        next.push_back(w);
        ++count;
        maxlen = std::max(maxlen, static_cast<int>(w.size()));
        continue;
      }
      Relation<K> rel{{K(1), w}};
      const auto& bw = block_words[{s, t}];
      for (int j = 0; j < dep->size(); ++j)
        if (!is_zero((*dep)(j))) rel.push_back({-(*dep)(j), bw[j]});
      p.relations.push_back(rel);
    }
    layer = std::move(next);
  }
  if (count != d) throw InputError("algebra is not generated by its radical layers: condense first");
  p.max_path_length = maxlen + 1;
  out.arrow_elements = arrows;
  out.algebra = build_algebra(p);
  if (out.algebra->dim() != d) throw std::logic_error("recovered presentation has the wrong dimension");
  return out;
}

template <class K>
RecoveredPresentation<K> quiver_presentation_of(const Algebra<K>& a, const std::string& prefix) {
  RecoveredPresentation<K> r = quiver_presentation_of(as_abstract(a), prefix);
  bool same = r.pres.arrows.size() == a.pres.arrows.size();
  for (size_t x = 0; same && x < r.arrow_elements.size(); ++x) same = r.arrow_elements[x] == a.unit_vector(a.arrow_basis[x]);
  if (same) {
    for (size_t x = 0; x < r.pres.arrows.size(); ++x) r.pres.arrows[x].name = a.pres.arrows[x].name;
    r.algebra = build_algebra(r.pres);
  }
  return r;
}

template <class K>
bool satisfies_relations(const Algebra<K>& a, const Algebra<K>& b, const std::vector<Vec<K>>& images) {
  for (const auto& r : a.pres.relations) {
    Vec<K> sum = Vec<K>::Zero(b.dim());
    for (const auto& t : r) {
      Vec<K> acc = images[t.word[0]];
      for (size_t k = 1; k < t.word.size(); ++k) acc = b.product(images[t.word[k]], acc);
      sum += t.coeff * acc;
    }
    if (!is_zero(Mat<K>(sum))) return false;
  }
  return true;
}

template <class K>
std::optional<std::vector<Vec<K>>> find_algebra_isomorphism(const Algebra<K>& a, const Algebra<K>& b, long budget) {
  if (a.dim() != b.dim() || a.num_vertices() != b.num_vertices() || a.num_arrows() != b.num_arrows()) return std::nullopt;
  const int n = a.num_vertices();
  std::vector<int> vmap(n);
  for (int v = 0; v < n; ++v) vmap[v] = b.pres.vertex_index(a.label(v));
  auto ca = cartan_matrix(a), cb = cartan_matrix(b);
  for (int l = 0; l < n; ++l)
    for (int m = 0; m < n; ++m)
      if (ca[l][m] != cb[vmap[l]][vmap[m]]) return std::nullopt;

  const int na = a.num_arrows();
  std::vector<std::vector<Vec<K>>> cands(na);
  for (int x = 0; x < na; ++x) {
    const int s = vmap[a.pres.arrows[x].from], t = vmap[a.pres.arrows[x].to];
    std::vector<int> ys;
    for (int y = 0; y < b.num_arrows(); ++y)
      if (b.pres.arrows[y].from == s && b.pres.arrows[y].to == t) ys.push_back(y);
    const int k = static_cast<int>(ys.size());
    if (k == 0) return std::nullopt;
    long total = 1;
    for (int i = 0; i < k; ++i) total *= 3;
    std::vector<std::pair<int, Vec<K>>> list;
    for (long code = 1; code < total; ++code) {
      long c = code;
      int weight = 0;
      Vec<K> v = Vec<K>::Zero(b.dim());
      for (int i = 0; i < k; ++i, c /= 3) {
        const int digit = static_cast<int>(c % 3);
        if (digit == 0) continue;
        ++weight;
        v(b.arrow_basis[ys[i]]) = digit == 1 ? K(1) : K(-1);
      }
      list.push_back({weight, v});
    }
    std::stable_sort(list.begin(), list.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
    for (auto& [w, v] : list) cands[x].push_back(v);
  }

  std::vector<Vec<K>> images(na);
  long nodes = 0;
  auto relation_ok = [&](int upto) {
    for (const auto& r : a.pres.relations) {
      bool ready = true;
      for (const auto& t : r)
        for (int x : t.word)
          if (x > upto) ready = false;
      if (!ready) continue;
      Vec<K> sum = Vec<K>::Zero(b.dim());
      for (const auto& t : r) {
        Vec<K> acc = images[t.word[0]];
        for (size_t k = 1; k < t.word.size(); ++k) acc = b.product(images[t.word[k]], acc);
        sum += t.coeff * acc;
      }
      if (!is_zero(Mat<K>(sum))) return false;
    }
    return true;
  };
  auto independent = [&](int upto) {
    std::map<std::pair<int, int>, IncrementalBasis<K>> sp;
    for (int x = 0; x <= upto; ++x) {
      auto key = std::make_pair(a.pres.arrows[x].from, a.pres.arrows[x].to);
      auto it = sp.find(key);
      if (it == sp.end()) it = sp.emplace(key, IncrementalBasis<K>(b.dim())).first;
      if (it->second.insert_or_express(images[x])) return false;
    }
    return true;
  };
  std::function<bool(int)> rec = [&](int x) -> bool {
    if (x == na) return true;
    for (const auto& c : cands[x]) {
      if (++nodes > budget) return false;
      images[x] = c;
      if (!independent(x) || !relation_ok(x)) continue;
      if (rec(x + 1)) return true;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return images;
}

template <class K>
std::string relation_str(const Presentation<K>& p, const Relation<K>& r) {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : r) {
    std::string c = t.coeff.str();
    bool neg = !c.empty() && c[0] == '-';
    if (neg) c = c.substr(1);
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    if (c != "1") os << c << " ";
    for (auto it = t.word.rbegin(); it != t.word.rend(); ++it) os << (it == t.word.rbegin() ? "" : "*") << p.arrows[*it].name;
    first = false;
  }
  return os.str();
}

#define QALG_INST(K)                                                                                               \
  template struct Presentation<K>;                                                                                 \
  template struct Algebra<K>;                                                                                      \
  template AlgPtr<K> build_algebra(const Presentation<K>&);                                                        \
  template AlgPtr<K> opposite(const AlgPtr<K>&);                                                                   \
  template AlgPtr<K> tensor_algebra(const AlgPtr<K>&, const AlgPtr<K>&);                                           \
  template std::vector<std::vector<int>> cartan_matrix(const Algebra<K>&);                                         \
  template bool same_algebra(const Algebra<K>&, const Algebra<K>&);                                                \
  template AbstractAlgebra<K> as_abstract(const Algebra<K>&);                                                      \
  template RecoveredPresentation<K> quiver_presentation_of(const AbstractAlgebra<K>&, const std::string&);         \
  template RecoveredPresentation<K> quiver_presentation_of(const Algebra<K>&, const std::string&);                 \
  template bool satisfies_relations(const Algebra<K>&, const Algebra<K>&, const std::vector<Vec<K>>&);             \
  template std::optional<std::vector<Vec<K>>> find_algebra_isomorphism(const Algebra<K>&, const Algebra<K>&, long); \
  template std::string relation_str(const Presentation<K>&, const Relation<K>&);

QALG_INST(Rational)
QALG_INST(Zp)

}  // namespace qalg
