#include <chrono>
#include <exception>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fuzz.hpp"
#include "helpers.hpp"
#include "qalg/twostep.hpp"

using namespace qalg;
using qalg::test::algebra_from_json;
using qalg::test::load_fixture;

namespace {

using Layers = std::vector<std::vector<std::string>>;

Layers layers(const Module<Rational>& m) { return layer_labels(m, radical_layers(m)); }

const char* kFixtures[] = {"s81_qh.json", "s82.json", "s825.json", "s84_selfinj.json", "s84_nonselfinj.json",
                           "local_kx2.json"};

const char* kRingelDual82 = R"({
  "field": {"kind": "Q"},
  "vertices": ["1", "2"],
  "arrows": [
    {"name": "beta", "from": "1", "to": "2"},
    {"name": "alpha", "from": "2", "to": "1"},
    {"name": "gamma", "from": "2", "to": "2"}
  ],
  "relations": [
    [{"coeff": "1", "path": ["gamma", "beta"]}],
    [{"coeff": "1", "path": ["gamma", "gamma"]}],
    [{"coeff": "1", "path": ["alpha", "beta"]}]
  ],
  "order": ["2", "1"]
})";

const char* kTwoStepDual82 = R"({
  "field": {"kind": "Q"},
  "vertices": ["1", "2"],
  "arrows": [
    {"name": "beta", "from": "1", "to": "2"},
    {"name": "alpha", "from": "2", "to": "1"},
    {"name": "gamma", "from": "2", "to": "2"}
  ],
  "relations": [
    [{"coeff": "1", "path": ["gamma", "gamma"]}],
    [{"coeff": "1", "path": ["gamma", "beta"]}],
    [{"coeff": "1", "path": ["beta", "alpha"]}]
  ],
  "order": ["1", "2"]
})";

const char* kRadicalSquareZero = R"({
  "field": {"kind": "Q"},
  "vertices": ["o"],
  "arrows": [{"name": "x", "from": "o", "to": "o"}, {"name": "y", "from": "o", "to": "o"}],
  "relations": [
    [{"coeff": "1", "path": ["x", "x"]}],
    [{"coeff": "1", "path": ["x", "y"]}],
    [{"coeff": "1", "path": ["y", "x"]}],
    [{"coeff": "1", "path": ["y", "y"]}]
  ],
  "order": ["o"]
})";

struct Check {
  std::vector<std::string> failures;
  std::ostringstream summary;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string str(const Layers& l) {
  std::string s;
  for (const auto& row : l) {
    s += "[";
    for (size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + row[i];
    s += "]";
  }
  return s;
}

int pd_of(const Module<Rational>& m) {
  auto pd = proj_dim(m);
  if (!pd.finite()) throw std::runtime_error("projective dimension not certified finite");
  return pd.value;
}

void criterion1(Check& c) {
  auto a = load_fixture("s82.json");
  c.expect(a->dim() == 11, "dim A = " + std::to_string(a->dim()));
  auto cl = classify(a);
  c.expect(cl.sss == Verdict::Yes, "A not SSS");
  c.expect(cl.properly_stratified == Verdict::No, "A classified properly stratified");
  auto d = two_step(a);
  const auto& f = d.family;
  const Layers proj1{{"1"}, {"2"}, {"1", "1"}, {"2"}, {"1"}};
  const std::vector<std::pair<std::string, std::pair<const Module<Rational>*, Layers>>> rows = {
      {"P(1)", {&f.P[0], proj1}},
      {"P(2)", {&f.P[1], {{"2"}, {"1", "1"}, {"2"}, {"1"}}}},
      {"T(2)", {&d.tilting.T[1], proj1}},
      {"H(1)", {&d.H[0], {{"1"}, {"2"}, {"1"}, {"2"}, {"1"}}}},
      {"I(2)", {&f.I[1], {{"1"}, {"2"}, {"1"}, {"2"}}}},
  };
  for (const auto& [name, row] : rows) {
    auto got = layers(*row.first);
    c.expect(got == row.second, name + " layers " + str(got));
  }
  c.summary << "dim A=11, SSS and not PS, 5 layer profiles";
}

void criterion2(Check& c) {
  auto a = load_fixture("s82.json");
  auto d = two_step(a);
  const auto& r = d.ringel.algebra();
  c.expect(r->dim() == 8, "dim R = " + std::to_string(r->dim()));
  c.expect(r->order() == std::vector<int>{1, 0}, "R not ordered 2 < 1");
  c.expect(classify(r).properly_stratified == Verdict::Yes, "R not properly stratified");
  const auto& b = d.B->algebra();
  c.expect(b->dim() == 7, "dim B(A) = " + std::to_string(b->dim()));
  auto er = algebra_from_json(kRingelDual82);
  auto eb = algebra_from_json(kTwoStepDual82);
  c.expect(er->dim() == 8 && eb->dim() == 7, "published presentations have the wrong dimension");
  c.expect(find_algebra_isomorphism(*er, *r).has_value(), "R differs from gamma.beta = gamma^2 = alpha.beta = 0");
  c.expect(find_algebra_isomorphism(*eb, *b).has_value(), "B(A) differs from gamma^2 = gamma.beta = beta.alpha = 0");
  auto bop = opposite(b);
  c.expect(bop->dim() != a->dim(), "A and B(A)^opp have equal dimension");
  c.expect(!find_algebra_isomorphism(*a, *bop).has_value(), "A isomorphic to B(A)^opp");
  c.summary << "dim R=8 PS under 2<1, dim B=7, both presentations recovered, A !~ B(A)^opp (11 vs 7)";
}

void criterion3(Check& c) {
  auto a = load_fixture("s825.json");
  c.expect(classify(a).properly_stratified == Verdict::Yes, "A not properly stratified");
  auto w = find_simple_preserving_duality(a);
  c.expect(w.kind == DualityKind::Witness, "no duality witness for A");
  auto op = opposite(a);
  auto arrow = [&](const std::string& name) {
    return op->unit_vector(op->arrow_basis[op->pres.arrow_index(name)]);
  };
  std::vector<Vec<Rational>> iota(a->num_arrows());
  const std::pair<const char*, const char*> swaps[] = {
      {"alpha", "beta"}, {"beta", "alpha"}, {"gamma", "delta"}, {"delta", "gamma"}};
  for (const auto& [from, to] : swaps) iota[a->pres.arrow_index(from)] = arrow(to);
  c.expect(satisfies_relations(*a, *op, iota), "iota is not an anti-automorphism");
  auto f = strat_family(a);
  for (int l = 0; l < 2; ++l) c.expect(is_isomorphic(duality_image(w, f.L[l]), f.L[l]), "witness moves a simple");

  auto d = two_step(a);
  auto ext = ext_quiver(d.ringel.algebra());
  c.expect(ext[0][1] == 2, "dim Ext^1_R(L1,L2) = " + std::to_string(ext[0][1]));
  c.expect(ext[1][0] == 1, "dim Ext^1_R(L2,L1) = " + std::to_string(ext[1][0]));
  c.expect(find_simple_preserving_duality(d.ringel.algebra()).kind == DualityKind::RefutedByExt,
           "R not refuted by Ext");
  const auto& b = d.B->algebra();
  c.expect(classify(opposite(b)).sss == Verdict::Yes, "B(A)^opp not SSS");
  c.expect(classify(b).sss == Verdict::No, "B(A) is SSS");
  c.summary << "A PS with witness, iota valid, Ext^1_R = 2/1, RefutedByExt, B^opp SSS, B not SSS";
}

void criterion4(Check& c) {
  int agreed = 0, positive = 0;
  auto compare = [&](const auto& alg, const std::string& name) {
    auto x = two_step_core(alg);
    c.expect(x.condition_III != Verdict::Undecided, name + ": condition (III) undecided");
    c.expect(x.condition_III == x.ringel_ps, name + ": condition (III) and classify(R) disagree");
    agreed += x.condition_III == x.ringel_ps;
    positive += x.condition_III == Verdict::Yes;
  };
  std::vector<std::pair<std::string, AlgPtr<Rational>>> algebras;
  for (const char* name : kFixtures) algebras.push_back({name, load_fixture(name)});
  for (const char* name : {"s82.json", "s825.json"}) {
    auto d = two_step(load_fixture(name));
    algebras.push_back({std::string(name) + " R", d.ringel.algebra()});
    algebras.push_back({std::string(name) + " B^opp", opposite(d.B->algebra())});
  }
  for (const auto& [name, alg] : algebras) compare(alg, name);
  const int fixed = agreed;

  ModulusScope gf(5);
  std::mt19937_64 rng(2024);
  int fuzzed = 0, skipped = 0;
  for (int i = 0; fuzzed < 100 && i < 2000; ++i) {
    auto a = build_algebra(test::random_presentation(rng));
    auto d = tensor_algebra(a, test::local_algebra(static_cast<int>(rng() % 3)));
    if (d->dim() > 30 || standardly_stratified(strat_family(d)) != Verdict::Yes) {
      ++skipped;
      continue;
    }
    compare(d, "fuzz case " + std::to_string(i));
    ++fuzzed;
  }
  c.expect(fuzzed == 100, "only " + std::to_string(fuzzed) + " fuzz cases");
  c.summary << fixed << " fixture algebras + " << fuzzed << " GF(5) tensor algebras agree (" << positive
            << " PS, " << agreed - positive << " not)";
}

void criterion5(Check& c) {
  auto h = load_fixture("s81_qh.json");
  auto hr = ringel_dual(h, tilting_data(strat_family(h)).T).algebra();
  int samples = 0;
  for (const auto& [name, a] : std::vector<std::pair<std::string, AlgPtr<Rational>>>{{"s81", h}, {"s81 R", hr}}) {
    c.expect(classify(a).quasi_hereditary == Verdict::Yes, name + " not quasi-hereditary");
    auto d = two_step(a);
    for (size_t l = 0; l < d.H.size(); ++l) {
      c.expect(is_isomorphic(d.sn.N[l], d.family.Nabla[l]), name + ": N != costandard");
      c.expect(is_isomorphic(d.H[l], d.family.I[l]), name + ": H != I");
    }
    c.expect(find_algebra_isomorphism(*a, *d.B->algebra()).has_value(), name + ": B(A) not isomorphic to A");
    for (const auto& m : sample_finite_pd(d, 12, 7)) {
      c.expect(is_isomorphic(G_prime_apply(d, G_apply(d, m)), m), name + ": G'G(M) != M");
      ++samples;
    }
  }
  c.summary << "2 quasi-hereditary algebras: N=costandard, H=I, B(A)=A, G'G=id on " << samples << " samples";
}

void criterion6(Check& c) {
  auto qa = load_fixture("s81_qh.json");
  auto fa = strat_family(qa);
  auto ta = tilting_data(fa).T;
  int checks = 0;
  for (const auto& [name, b, selfinj] :
       std::vector<std::tuple<std::string, AlgPtr<Rational>, bool>>{
           {"k[x]/x^2", load_fixture("local_kx2.json"), true},
           {"k[x,y]/(x,y)^2", algebra_from_json(kRadicalSquareZero), false}}) {
    auto d = tensor_algebra(qa, b);
    auto fd = strat_family(d);
    c.expect(classify(fd).properly_stratified == Verdict::Yes, name + ": D not properly stratified");
    const auto pb = projective_module(b, 0), ib = injective_module(b, 0), lb = simple_module(b, 0);
    auto td = tilting_data(fd).T;
    auto cd = cotilting_modules(fd);
    bool all_equal = true;
    for (int l = 0; l < qa->num_vertices(); ++l) {
      const std::pair<const char*, bool> rows[] = {
          {"Delta", is_isomorphic(fd.Delta[l], tensor_module(d, fa.Delta[l], pb))},
          {"proper Delta", is_isomorphic(fd.ProperDelta[l], tensor_module(d, fa.Delta[l], lb))},
          {"Nabla", is_isomorphic(fd.Nabla[l], tensor_module(d, fa.Nabla[l], ib))},
          {"proper Nabla", is_isomorphic(fd.ProperNabla[l], tensor_module(d, fa.Nabla[l], lb))},
          {"T", is_isomorphic(td[l], tensor_module(d, ta[l], pb))},
          {"C", is_isomorphic(cd[l], tensor_module(d, ta[l], ib))},
      };
      for (const auto& [what, ok] : rows) {
        c.expect(ok, name + ": " + what + "(" + std::to_string(l + 1) + ") is not the tensor product");
        ++checks;
      }
      all_equal = all_equal && is_isomorphic(td[l], cd[l]);
    }
    c.expect(all_equal == selfinj, name + (selfinj ? ": T != C" : ": T = C"));
  }
  c.summary << checks << " tensor identities; T=C for k[x]/x^2, T!=C for k[x,y]/(x,y)^2";
}

void criterion7(Check& c) {
  int fixtures = 0, sampled = 0;
  for (const char* name : kFixtures) {
    auto d = two_step(load_fixture(name));
    if (!d.has_H()) continue;
    ++fixtures;
    const auto& a = d.alg();
    auto h = direct_sum(d.H, a);
    auto pd = proj_dim(h);
    c.expect(pd.finite(), std::string(name) + ": p.d.(H) not finite");
    if (!pd.finite()) continue;
    auto hres = min_proj_resolution(h, pd.value + 2);
    auto e = ext_dims(hres, h, pd.value + 1);
    for (int i = 1; i <= pd.value + 1; ++i) c.expect(e[i] == 0, std::string(name) + ": Ext^>0(H,H) != 0");
    auto reg = add_h_coresolution(d, regular_module(a));
    c.expect(reg.complete && reg.length() == pd.value,
             std::string(name) + ": coresolution of A has length " + std::to_string(reg.length()));
    bool equal = false;
    auto samples = sample_finite_pd(d, 20, 1);
    c.expect(samples.size() == 20, std::string(name) + ": " + std::to_string(samples.size()) + " samples");
    for (const auto& m : samples) {
      ++sampled;
      auto cr = add_h_coresolution(d, m);
      c.expect(cr.complete, std::string(name) + ": no finite add(H)-coresolution");
      const int pm = pd_of(m);
      c.expect(pm <= pd.value, std::string(name) + ": sample exceeds p.d.(H)");
      equal = equal || pm == pd.value;
    }
    c.expect(equal, std::string(name) + ": no sample attains p.d.(H)");
  }
  c.summary << fixtures << " fixtures, " << sampled << " sampled modules";
}

void criterion8(Check& c) {
  auto d = two_step(load_fixture("s825.json"));
  auto rep = findim(d);
  c.expect(rep.witness_A.kind == DualityKind::Witness, "no duality witness");
  c.expect(rep.pd_TR.has_value(), "p.d.(T^R) missing");
  if (!rep.pd_TR) return;
  const int b = *rep.pd_TR;
  c.expect(rep.pd_H.finite() && rep.pd_H.value == 2 * b, "p.d.(H) != 2 p.d.(T^R)");
  const auto& a = d.alg();
  auto h = direct_sum(d.H, a);
  auto hdual = duality_image(rep.witness_A, h);
  auto e = ext_dims(min_proj_resolution(h, 2 * b + 3), hdual, 2 * b + 2);
  c.expect(e[2 * b] != 0, "Ext^{2b}(H,H°) = 0");
  for (int i = 2 * b + 1; i <= 2 * b + 2; ++i) c.expect(e[i] == 0, "Ext^" + std::to_string(i) + "(H,H°) != 0");
  c.summary << "p.d.(H)=" << rep.pd_H.value << "=2*" << b << ", dim Ext^" << 2 * b << "(H,H°)=" << e[2 * b]
            << ", zero above";
}

void criterion9(Check& c) {
  int compared = 0;
  for (const char* name : kFixtures) {
    auto d = two_step(load_fixture(name));
    auto samples = sample_finite_pd(d, 10, 9);
    c.expect(samples.size() == 10, std::string(name) + ": " + std::to_string(samples.size()) + " samples");
    for (const auto& m : samples) {
      auto fn = codim_FN(d, m);
      auto pn = codim_proper_costandard(d.family, m);
      c.expect(fn.kind == Codim::Kind::Finite, std::string(name) + ": codim_F(N) " + fn.str());
      c.expect(fn == pn, std::string(name) + ": codim_F(N)=" + fn.str() + " vs " + pn.str());
      ++compared;
    }
  }
  c.summary << compared << " modules over 6 fixtures";
}

void criterion10(Check& c) {
  int rows = 0;
  for (const char* name : {"s82.json", "s81_qh.json"}) {
    auto d = two_step(load_fixture(name));
    const auto& b = d.B->algebra();
    auto fb = strat_family(b);
    auto dop = two_step(opposite(b));
    auto hstar = [&](int l) { return dual(dop.H[l]); };
    auto nstar = [&](int l) { return dual(dop.sn.N[l]); };
    for (int l = 0; l < static_cast<int>(d.H.size()); ++l) {
      const std::string at = std::string(name) + " (" + std::to_string(l + 1) + "): ";
      c.expect(is_isomorphic(G_apply(d, d.H[l]), fb.I[l]), at + "G(H) != I");
      c.expect(is_isomorphic(G_apply(d, d.sn.N[l]), fb.Nabla[l]), at + "G(N) != costandard");
      c.expect(is_isomorphic(G_apply(d, d.tilting.T[l]), cotilting_module(fb, l)), at + "G(T) != C");
      c.expect(is_isomorphic(G_apply(d, d.family.Delta[l]), nstar(l)), at + "G(Delta) != N*");
      c.expect(is_isomorphic(G_apply(d, d.family.P[l]), hstar(l)), at + "G(P) != H*");
      c.expect(is_isomorphic(G_prime_apply(d, fb.Nabla[l]), d.sn.N[l]), at + "G'(costandard) != N");
      rows += 6;
    }
  }
  c.summary << rows << " isomorphisms on s82 and s81";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"two-vertex SSS example", criterion1},
      {"Ringel and two-step duals of the two-vertex example", criterion2},
      {"properly stratified example with duality", criterion3},
      {"condition (III) against classify(R)", criterion4},
      {"quasi-hereditary degeneration", criterion5},
      {"tensor construction", criterion6},
      {"H is a generalized tilting module", criterion7},
      {"duality dimension formulas", criterion8},
      {"codimension of F(N)", criterion9},
      {"images of the two-step duality functor", criterion10},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = c.failures.empty();
    failed += !ok;
    std::ostringstream time;
    time.precision(1);
    time << std::fixed << secs << "s";
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << i + 1 << ": " << criteria[i].first << " -- "
              << (ok ? c.summary.str() : c.failures.front()) << " (" << time.str() << ")\n";
    for (size_t k = 1; k < c.failures.size() && k < 6; ++k) std::cout << "        " << c.failures[k] << "\n";
    std::cout.flush();
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
