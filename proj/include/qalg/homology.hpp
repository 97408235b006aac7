#pragma once
#include <optional>
#include <string>
#include <vector>

#include "qalg/module.hpp"

namespace qalg {

// Minimal projective resolution ... -> P_1 -> P_0 -> M.
// P_i is the direct sum of P(v) for v in terms[i]; the generator of summand j of P_i maps to
// sum_k diff[i][j][k] * (generator k of P_{i-1}), an element of e_{v_j} A e_{u_k}.
template <class K>
struct Resolution {
  Module<K> target;
  std::vector<std::vector<int>> terms;
  std::vector<std::vector<std::vector<Vec<K>>>> diff;  // diff[0] is empty
  std::vector<Vec<K>> cover;                           // images in M of the generators of P_0
  std::vector<Module<K>> syzygies;                     // syzygies[i] = kernel of P_i -> P_{i-1} (i >= 1), syzygies[0] = M
  bool finite = false;                                 // terminated with a zero syzygy
  std::optional<int> truncated_at;
  std::optional<int> period_start;                     // a later syzygy repeats syzygies[*period_start]

  int length() const { return static_cast<int>(terms.size()) - 1; }
};

template <class K>
Resolution<K> min_proj_resolution(const Module<K>& m, int cap);
// Stops early once a syzygy is isomorphic to an earlier one.
template <class K>
Resolution<K> resolve_until_periodic(const Module<K>& m, int cap);

// AtLeast(cap) when no zero syzygy was reached; periodic marks a repeating syzygy, which
// certifies infinite projective dimension.
struct ProjDim {
  enum class Kind { Finite, AtLeast };
  Kind kind = Kind::Finite;
  int value = 0;
  bool periodic = false;
  bool finite() const { return kind == Kind::Finite; }
  bool operator==(const ProjDim&) const = default;
  std::string str() const;
  static ProjDim finite_value(int n) { return {Kind::Finite, n}; }
};

constexpr int kDefaultCap = 64;

template <class K>
ProjDim proj_dim(const Module<K>& m, int cap = kDefaultCap);
template <class K>
ProjDim inj_dim(const Module<K>& m, int cap = kDefaultCap);

// dim Ext^i(M, N) from a resolution of M computed at least to degree i + 1 (or finite).
template <class K>
int ext_dim(const Resolution<K>& res, const Module<K>& n, int i);
template <class K>
int ext_dim(const Module<K>& m, const Module<K>& n, int i);
// dims of Ext^0 .. Ext^top.
template <class K>
std::vector<int> ext_dims(const Resolution<K>& res, const Module<K>& n, int top);

// entry [l][m] = dim Ext^1(L(l), L(m))
template <class K>
std::vector<std::vector<int>> ext_quiver(const AlgPtr<K>& a);

}  // namespace qalg
