#pragma once
#include <optional>
#include <string>
#include <vector>

#include "qalg/homology.hpp"

namespace qalg {

enum class Verdict { Yes, No, Undecided };
std::string to_string(Verdict v);
inline Verdict verdict_of(bool b) { return b ? Verdict::Yes : Verdict::No; }
Verdict verdict_and(Verdict a, Verdict b);

// 0 = chain[0] < chain[1] < ... < chain.back() = M; chain[i+1]/chain[i] is isomorphic to
// family(layers[i].first) to the power layers[i].second.
template <class K>
struct FiltrationCertificate {
  std::vector<Submodule<K>> chain;
  std::vector<std::pair<int, int>> layers;
};

template <class K>
struct FiltrationResult {
  Verdict member = Verdict::Undecided;
  std::optional<FiltrationCertificate<K>> certificate;
  std::string diagnostics;
};

template <class K>
struct StratFamily {
  AlgPtr<K> alg;
  std::vector<Module<K>> P, I, L, Delta, ProperDelta, Nabla, ProperNabla;
};

template <class K>
StratFamily<K> strat_family(const AlgPtr<K>& a);

// Submodule generated by the pieces at the given vertices.
template <class K>
Submodule<K> trace_of_vertices(const Module<K>& m, const std::vector<bool>& vertices);
// Largest submodule whose composition factors lie at the given vertices.
template <class K>
Submodule<K> largest_submodule_with_factors(const Module<K>& m, const std::vector<bool>& vertices);
template <class K>
Module<K> subquotient(const Module<K>& m, const Submodule<K>& upper, const Submodule<K>& lower);

// Exact decision through the trace filtration by the order.
template <class K>
FiltrationResult<K> delta_filtration(const StratFamily<K>& f, const Module<K>& m);
// Ext^1(Delta, M) = 0 decides membership for standardly stratified algebras; the certificate
// comes from the filtration by largest submodules with bounded factors.
template <class K>
FiltrationResult<K> proper_costandard_filtration(const StratFamily<K>& f, const Module<K>& m, long budget = 10000);
// Filtration by the family modules, one per vertex, layered by largest submodules with bounded
// factors; layers not of the form family(v)^k fall back to the peeling search.
template <class K>
FiltrationResult<K> layered_filtration(const Module<K>& m, const std::vector<Module<K>>& family, long budget = 10000);

// Backtracking search peeling submodules isomorphic to family members.
template <class K>
FiltrationResult<K> find_filtration(const Module<K>& m, const std::vector<std::pair<int, Module<K>>>& family,
                                    long budget = 10000);

// Independent check of a certificate: stability, strict growth and layer isomorphisms.
template <class K>
bool check_certificate(const Module<K>& m, const FiltrationCertificate<K>& c, const std::vector<Module<K>>& family);

template <class K>
struct Classification {
  Verdict sss = Verdict::Undecided;
  Verdict properly_stratified = Verdict::Undecided;
  Verdict quasi_hereditary = Verdict::Undecided;
  std::vector<FiltrationResult<K>> kernel_filtrations;  // kernels of P(v) -> Delta(v)
  std::vector<FiltrationResult<K>> standard_filtrations;  // Delta(v) by proper standard modules
};

// Condition (SS), decided exactly by trace filtrations of the kernels.
template <class K>
Verdict standardly_stratified(const StratFamily<K>& f);

template <class K>
Classification<K> classify(const StratFamily<K>& f, long budget = 10000);
template <class K>
Classification<K> classify(const AlgPtr<K>& a, long budget = 10000);

}  // namespace qalg
