#pragma once
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <type_traits>
#include <string>
#include <vector>

#include "qalg/presentation.hpp"

namespace qalg {

// A left module: one vector space per vertex and one matrix per arrow.
// An arrow a: s -> t acts by act[a], a dims[t] x dims[s] matrix.
template <class K>
struct Module {
  AlgPtr<K> alg;
  std::vector<int> dims;
  std::vector<Mat<K>> act;

  int dim() const;
  int num_vertices() const { return static_cast<int>(dims.size()); }
  int offset(int v) const;
  Mat<K> path_matrix(const Path& p) const;
  // Action of an algebra element from the piece at s to the piece at t.
  Mat<K> element_block(const Vec<K>& e, int s, int t) const;
  // Action on the whole space, vertices stacked in index order.
  Mat<K> element_matrix(const Vec<K>& e) const;
  void check() const;
};

template <class K>
struct ModuleMap {
  std::vector<Mat<K>> blocks;  // blocks[v] : dims_source[v] -> dims_target[v]
  Mat<K> total() const;
};

// Per-vertex column bases of an action-stable subspace.
template <class K>
struct Submodule {
  std::vector<Mat<K>> basis;
  int dim() const;
  std::vector<int> dims() const;
};

template <class K>
struct SubResult {
  Module<K> module;
  ModuleMap<K> inclusion;
};
template <class K>
struct QuotientResult {
  Module<K> module;
  ModuleMap<K> projection;
};

template <class K>
Module<K> zero_module(const AlgPtr<K>& a);
template <class K>
Module<K> simple_module(const AlgPtr<K>& a, int v);
template <class K>
Module<K> projective_module(const AlgPtr<K>& a, int v);
template <class K>
Module<K> injective_module(const AlgPtr<K>& a, int v);
template <class K>
Module<K> regular_module(const AlgPtr<K>& a);
// Over the opposite algebra; arrows act by transposed matrices.
template <class K>
Module<K> dual(const Module<K>& m);
template <class K>
Module<K> direct_sum(const Module<K>& m, const Module<K>& n);
template <class K>
Module<K> direct_sum(const std::vector<Module<K>>& ms, const AlgPtr<K>& a);
template <class K>
Module<K> power(const Module<K>& m, int k);

template <class K>
std::vector<ModuleMap<K>> hom_space(const Module<K>& m, const Module<K>& n);
template <class K>
int hom_dim(const Module<K>& m, const Module<K>& n);
template <class K>
bool is_module_map(const Module<K>& m, const Module<K>& n, const ModuleMap<K>& f);
template <class K>
ModuleMap<K> compose(const ModuleMap<K>& g, const ModuleMap<K>& f);
template <class K>
ModuleMap<K> identity_map(const Module<K>& m);
template <class K>
ModuleMap<K> zero_map(const Module<K>& m, const Module<K>& n);
template <class K>
ModuleMap<K> linear_combination(const std::vector<ModuleMap<K>>& fs, const std::vector<K>& c);
template <class K>
bool is_zero_map(const ModuleMap<K>& f);
template <class K>
bool is_invertible(const ModuleMap<K>& f);

template <class K>
Submodule<K> zero_submodule(const Module<K>& m);
template <class K>
Submodule<K> full_submodule(const Module<K>& m);
template <class K>
Submodule<K> kernel(const Module<K>& m, const ModuleMap<K>& f);
template <class K>
Submodule<K> image(const Module<K>& n, const ModuleMap<K>& f);
template <class K>
Submodule<K> submodule_sum(const Submodule<K>& u, const Submodule<K>& w);
template <class K>
Submodule<K> submodule_intersection(const Submodule<K>& u, const Submodule<K>& w);
template <class K>
bool contains(const Submodule<K>& big, const Submodule<K>& small);
template <class K>
bool is_stable(const Module<K>& m, const Submodule<K>& u);
// Smallest submodule containing the given per-vertex vectors.
template <class K>
Submodule<K> generated_submodule(const Module<K>& m, const std::vector<Mat<K>>& gens);
template <class K>
SubResult<K> submodule_module(const Module<K>& m, const Submodule<K>& u);
template <class K>
QuotientResult<K> quotient_module(const Module<K>& m, const Submodule<K>& u);
// Preimage of a submodule of the target.
template <class K>
Submodule<K> preimage(const Module<K>& m, const ModuleMap<K>& f, const Submodule<K>& w);
template <class K>
ModuleMap<K> restrict_map(const SubResult<K>& sub, const ModuleMap<K>& f);

template <class K>
Submodule<K> radical(const Module<K>& m, const Submodule<K>& u);
template <class K>
Submodule<K> socle(const Module<K>& m);
// rad^0 M = M, rad^1 M, ..., ending with 0.
template <class K>
std::vector<Submodule<K>> radical_series(const Module<K>& m);
// 0 = soc^0, soc^1 M, ..., ending with M.
template <class K>
std::vector<Submodule<K>> socle_series(const Module<K>& m);
// Per-layer composition multiplicities, top layer first.
template <class K>
std::vector<std::vector<int>> radical_layers(const Module<K>& m);
template <class K>
std::vector<std::vector<int>> socle_layers(const Module<K>& m);
// Layers as lists of vertex labels, in vertex index order within a layer.
template <class K>
std::vector<std::vector<std::string>> layer_labels(const Module<K>& m, const std::vector<std::vector<int>>& layers);
template <class K>
std::vector<int> top_dims(const Module<K>& m);

// Blocks of a map concatenated column-major, for linear algebra on hom spaces.
template <class K>
Vec<K> flatten(const ModuleMap<K>& f) {
  Eigen::Index n = 0;
  for (const auto& b : f.blocks) n += b.size();
  Vec<K> v(n);
  Eigen::Index k = 0;
  for (const auto& b : f.blocks)
    for (Eigen::Index c = 0; c < b.cols(); ++c)
      for (Eigen::Index r = 0; r < b.rows(); ++r) v(k++) = b(r, c);
  return v;
}

template <class K>
Eigen::Index flat_length(const Module<K>& m, const Module<K>& n) {
  Eigen::Index len = 0;
  for (int v = 0; v < m.num_vertices(); ++v) len += static_cast<Eigen::Index>(m.dims[v]) * n.dims[v];
  return len;
}

template <class K>
Coordinatizer<K> map_coordinates(const std::vector<ModuleMap<K>>& basis, Eigen::Index len) {
  Mat<K> m(len, basis.size());
  for (size_t j = 0; j < basis.size(); ++j) m.col(j) = flatten(basis[j]);
  return Coordinatizer<K>(m);
}

// Coordinates of f in a hom basis; throws if f is outside the span.
template <class K>
Vec<K> coords_of(const Coordinatizer<K>& c, const ModuleMap<K>& f) {
  if (c.size() == 0) return Vec<K>(0);
  auto co = c.checked_coords(flatten(f));
  if (!co) throw std::logic_error("map outside the hom basis span");
  return *co;
}

// Sum of the images of all homomorphisms x -> m.
template <class K>
Submodule<K> trace(const Module<K>& x, const Module<K>& m);

void set_search_seed(std::uint64_t seed);
std::uint64_t search_seed();

// Uniform in GF(p); an integer in [-100, 100] over Q.
template <class K>
K random_scalar(std::mt19937_64& rng) {
  if constexpr (std::is_same_v<K, Zp>) {
    return K(static_cast<long long>(rng() % Zp::modulus()));
  } else {
    return K(static_cast<long>(rng() % 201) - 100);
  }
}

// True iff some homomorphism is invertible. Throws Undecided when the search fails but
// no invariant separates the modules.
template <class K>
bool is_isomorphic(const Module<K>& m, const Module<K>& n);
template <class K>
std::optional<ModuleMap<K>> find_isomorphism(const Module<K>& m, const Module<K>& n);
// Cheap isomorphism invariants; false certifies non-isomorphism.
template <class K>
bool invariants_agree(const Module<K>& m, const Module<K>& n);

// Exact test that End(m) is local with residue field k.
template <class K>
bool has_local_endomorphisms(const Module<K>& m);

template <class K>
struct Summand {
  Module<K> module;
  int multiplicity = 1;
};
template <class K>
std::vector<Summand<K>> decompose(const Module<K>& m);

// M tensor V over a tensor algebra built by tensor_algebra(A, B).
template <class K>
Module<K> tensor_module(const AlgPtr<K>& d, const Module<K>& m, const Module<K>& v);

}  // namespace qalg
