#include "doctest.h"
#include "helpers.hpp"
#include "qalg/module.hpp"

using namespace qalg;
using qalg::test::load_fixture;

namespace {

using Layers = std::vector<std::vector<std::string>>;

Layers layers(const Module<Rational>& m) { return layer_labels(m, radical_layers(m)); }

// Span in P(s) of all products b * p, b running over the basis of P(t); computed with the
// multiplication table only.
int right_ideal_image_dim(const AlgPtr<Rational>& a, int s, const std::vector<int>& generators) {
  std::vector<Vec<Rational>> vs;
  for (int g : generators)
    for (int b = 0; b < a->dim(); ++b)
      if (a->basis[b].s == a->basis[g].t) vs.push_back(a->product(a->unit_vector(b), a->unit_vector(g)));
  Mat<Rational> m(a->dim(), vs.size());
  for (size_t j = 0; j < vs.size(); ++j) m.col(j) = vs[j];
  (void)s;
  return rank(m);
}

}  // namespace

TEST_CASE("standard objects of the two-vertex example") {
  auto a = load_fixture("s82.json");
  auto p1 = projective_module(a, 0), p2 = projective_module(a, 1);
  p1.check();
  p2.check();
  CHECK(p1.dim() == 6);
  CHECK(p2.dim() == 5);
  auto i1 = injective_module(a, 0);
  CHECK(i1.dim() == 7);
  CHECK(layer_labels(i1, socle_layers(i1)) == Layers{{"1"}, {"2"}, {"1", "1"}, {"2", "2"}, {"1"}});
  CHECK(injective_module(a, 1).dim() == 4);
  CHECK(layers(p1) == Layers{{"1"}, {"2"}, {"1", "1"}, {"2"}, {"1"}});
  CHECK(layers(p2) == Layers{{"2"}, {"1", "1"}, {"2"}, {"1"}});
  CHECK(top_dims(p1) == std::vector<int>{1, 0});
  CHECK(hom_dim(p1, p1) == 4);
  CHECK(hom_dim(simple_module(a, 0), simple_module(a, 1)) == 0);
}

TEST_CASE("Cartan pairing: dim Hom(P(v), M) equals the multiplicity of L(v)") {
  for (const char* name : {"s82.json", "s825.json", "s84_nonselfinj.json"}) {
    auto a = load_fixture(name);
    std::vector<Module<Rational>> ms;
    for (int v = 0; v < a->num_vertices(); ++v) {
      ms.push_back(projective_module(a, v));
      ms.push_back(injective_module(a, v));
      ms.push_back(simple_module(a, v));
    }
    for (const auto& m : ms)
      for (int v = 0; v < a->num_vertices(); ++v) CHECK(hom_dim(projective_module(a, v), m) == m.dims[v]);
  }
}

TEST_CASE("trace of P(2) in P(1)") {
  auto a = load_fixture("s82.json");
  auto p1 = projective_module(a, 0), p2 = projective_module(a, 1);
  auto t = trace(p2, p1);
  CHECK(is_stable(p1, t));
  std::vector<int> gens;
  for (int i = 0; i < a->dim(); ++i)
    if (a->basis[i].s == 0 && a->basis[i].t == 1) gens.push_back(i);
  CHECK(t.dim() == right_ideal_image_dim(a, 0, gens));
  CHECK(t.dims() == std::vector<int>{3, 2});
  CHECK(trace(p1, p1).dim() == p1.dim());
  CHECK(trace(simple_module(a, 0), simple_module(a, 1)).dim() == 0);
}

TEST_CASE("subquotients") {
  auto a = load_fixture("s82.json");
  auto p1 = projective_module(a, 0);
  auto q0 = quotient_module(p1, zero_submodule(p1));
  CHECK(is_isomorphic(q0.module, p1));
  CHECK(quotient_module(p1, full_submodule(p1)).module.dim() == 0);
  auto rad = radical(p1, full_submodule(p1));
  auto sub = submodule_module(p1, rad);
  sub.module.check();
  CHECK(is_module_map(sub.module, p1, sub.inclusion));
  auto q = quotient_module(p1, rad);
  CHECK(is_module_map(p1, q.module, q.projection));
  CHECK(is_isomorphic(q.module, simple_module(a, 0)));
}

TEST_CASE("duality") {
  auto a = load_fixture("s825.json");
  auto p = projective_module(a, 0);
  auto dd = dual(dual(p));
  CHECK(dd.alg == a);
  CHECK(is_isomorphic(dd, p));
  CHECK(is_isomorphic(dual(projective_module(a, 1)), injective_module(opposite(a), 1)));
  CHECK(is_isomorphic(dual(simple_module(a, 0)), simple_module(opposite(a), 0)));
  // socle layers of the dual mirror the radical layers
  auto rl = radical_layers(p);
  auto sl = socle_layers(dual(p));
  std::reverse(sl.begin(), sl.end());
  CHECK(rl == sl);
  for (int v = 0; v < 2; ++v)
    for (int w = 0; w < 2; ++w) {
      auto m = projective_module(a, v), n = injective_module(a, w);
      CHECK(is_isomorphic(m, n) == is_isomorphic(dual(m), dual(n)));
    }
}

TEST_CASE("decomposition") {
  auto a = load_fixture("s82.json");
  auto l1 = simple_module(a, 0);
  auto d = decompose(direct_sum(l1, l1));
  REQUIRE(d.size() == 1);
  CHECK(d[0].multiplicity == 2);
  CHECK(is_isomorphic(d[0].module, l1));
  auto reg = decompose(regular_module(a));
  CHECK(reg.size() == 2);
  for (const auto& s : reg) CHECK(s.multiplicity == 1);
  auto mixed = direct_sum(projective_module(a, 1), direct_sum(injective_module(a, 0), projective_module(a, 1)));
  auto parts = decompose(mixed);
  std::vector<Module<Rational>> rebuilt;
  for (const auto& s : parts)
    for (int k = 0; k < s.multiplicity; ++k) rebuilt.push_back(s.module);
  CHECK(is_isomorphic(direct_sum(rebuilt, a), mixed));
  CHECK(has_local_endomorphisms(projective_module(a, 0)));
  CHECK(!has_local_endomorphisms(direct_sum(l1, simple_module(a, 1))));
}

TEST_CASE("local self-injective algebra") {
  auto a = load_fixture("local_kx2.json");
  auto p = projective_module(a, 0), i = injective_module(a, 0);
  CHECK(p.dim() == 2);
  CHECK(is_isomorphic(p, i));
  CHECK(is_isomorphic(p, regular_module(a)));
}

TEST_CASE("tensor modules over a tensor algebra") {
  auto h = load_fixture("s81_qh.json");
  auto kx = load_fixture("local_kx2.json");
  auto d = tensor_algebra(h, kx);
  for (int v = 0; v < 2; ++v) {
    auto m = tensor_module(d, projective_module(h, v), projective_module(kx, 0));
    m.check();
    CHECK(is_isomorphic(m, projective_module(d, v)));
  }
}
