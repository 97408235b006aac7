#pragma once
#include <optional>
#include <string>
#include <vector>

#include "qalg/strat.hpp"

namespace qalg {

// The extension 0 -> x -> E -> (p/omega)^d -> 0 whose class runs over a basis of
// Ext^1(p/omega, x), for p projective.
template <class K>
Module<K> universal_extension(const Module<K>& x, const Module<K>& p, const Submodule<K>& omega);

template <class K>
Module<K> tilting_module(const StratFamily<K>& f, int lambda, int max_rounds = 64);
// D of the tilting module over the opposite algebra.
template <class K>
Module<K> cotilting_module(const StratFamily<K>& f, int lambda, int max_rounds = 64);

template <class K>
struct TiltingData {
  std::vector<Module<K>> T;
  std::vector<FiltrationResult<K>> delta;
  std::vector<FiltrationResult<K>> proper_costandard;
};

// Requires (A, order) standardly stratified; checks the invariants of each T(lambda).
template <class K>
TiltingData<K> tilting_data(const StratFamily<K>& f, long budget = 10000);
template <class K>
std::vector<Module<K>> cotilting_modules(const StratFamily<K>& f);

// End_A(Y) for Y = sum of pairwise non-isomorphic indecomposables Y(v), with product
// r * s = s o r. Hom_A(Y, M) is then a left module and Y(v) is sent to the projective at v.
template <class K>
struct EndAlgebra {
  AlgPtr<K> base;
  std::vector<Module<K>> Y;
  std::vector<std::vector<std::vector<ModuleMap<K>>>> hom;  // hom[mu][lam]: basis of Hom(Y(mu), Y(lam))
  AbstractAlgebra<K> abstract;
  RecoveredPresentation<K> recovered;
  std::vector<ModuleMap<K>> arrow_maps;  // arrow s -> t of the recovered quiver: a map Y(t) -> Y(s)

  const AlgPtr<K>& algebra() const { return recovered.algebra; }
};

template <class K>
EndAlgebra<K> endomorphism_algebra(const AlgPtr<K>& a, const std::vector<Module<K>>& ys, std::vector<int> order,
                                   const std::string& arrow_prefix = "x");

// R = End_A(T) with the order of A reversed.
template <class K>
EndAlgebra<K> ringel_dual(const AlgPtr<K>& a, const std::vector<Module<K>>& tilting);

// Hom_A(Y, M) over End(Y).
template <class K>
Module<K> hom_functor(const EndAlgebra<K>& e, const Module<K>& m);
// Y tensored over End(Y) with X.
template <class K>
Module<K> tensor_functor(const EndAlgebra<K>& e, const Module<K>& x);
// D Hom_A(M, Y) over End(Y).
template <class K>
Module<K> dual_hom_functor(const EndAlgebra<K>& e, const Module<K>& m);

template <class K>
Module<K> F_apply(const EndAlgebra<K>& rd, const Module<K>& m) {
  return hom_functor(rd, m);
}
template <class K>
Module<K> F_inverse_apply(const EndAlgebra<K>& rd, const Module<K>& x) {
  return tensor_functor(rd, x);
}

enum class DualityKind { Witness, RefutedByExt, NotFound };
std::string to_string(DualityKind k);

// An isomorphism A -> A^opp fixing the vertices, i.e. an anti-automorphism of A.
template <class K>
struct DualityResult {
  DualityKind kind = DualityKind::NotFound;
  std::vector<Vec<K>> arrow_images;  // elements of opposite(a), one per arrow of a
  std::string description;
};

template <class K>
DualityResult<K> find_simple_preserving_duality(const AlgPtr<K>& a, long budget = 200000);

// The module M twisted by the witness: D(M) with each arrow acting as its image.
template <class K>
Module<K> duality_image(const DualityResult<K>& w, const Module<K>& m);

}  // namespace qalg
