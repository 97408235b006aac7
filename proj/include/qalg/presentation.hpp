#pragma once
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "qalg/linalg.hpp"

namespace qalg {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct Undecided : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TheoremViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Arrow {
  std::string name;
  int from = 0;
  int to = 0;
  bool operator==(const Arrow&) const = default;
};

// A path is stored in traversal order: arrows[0] leaves s, arrows.back() enters t.
// As an algebra element the path (a1,...,ak) is the product ak...a1.
struct Path {
  int s = 0;
  int t = 0;
  std::vector<int> arrows;
  int length() const { return static_cast<int>(arrows.size()); }
  bool operator==(const Path&) const = default;
};

bool deglex_less(const Path& a, const Path& b);

template <class K>
struct Term {
  K coeff;
  std::vector<int> word;  // traversal order
};
template <class K>
using Relation = std::vector<Term<K>>;

template <class K>
using SparseVec = std::vector<std::pair<int, K>>;

template <class K>
struct Presentation {
  Field field;
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::vector<Relation<K>> relations;
  std::vector<int> order;  // vertex indices, ascending
  int max_path_length = 32;

  int vertex_index(const std::string& label) const;
  int arrow_index(const std::string& name) const;
  void validate() const;
};

template <class K>
struct Algebra;
template <class K>
using AlgPtr = std::shared_ptr<const Algebra<K>>;

template <class K>
struct Algebra {
  Presentation<K> pres;
  std::vector<Relation<K>> groebner;
  std::vector<Path> basis;
  std::vector<std::vector<SparseVec<K>>> table;  // table[i][j] = b_i * b_j
  std::vector<int> vertex_basis;
  std::vector<int> arrow_basis;
  std::vector<int> rank;  // position of each vertex in the order
  std::string origin = "presentation";

  struct TensorArrow {
    bool left = true;  // arrow of the left factor tensored with a vertex of the right one
    int arrow = 0;
    int other_vertex = 0;
  };
  AlgPtr<K> left_factor, right_factor;
  std::vector<std::pair<int, int>> tensor_vertices;
  std::vector<TensorArrow> tensor_arrows;

  int dim() const { return static_cast<int>(basis.size()); }
  int num_vertices() const { return static_cast<int>(pres.vertices.size()); }
  int num_arrows() const { return static_cast<int>(pres.arrows.size()); }
  const Field& field() const { return pres.field; }
  const std::string& label(int v) const { return pres.vertices[v]; }
  bool less(int v, int w) const { return rank[v] < rank[w]; }
  const std::vector<int>& order() const { return pres.order; }

  int index_of(const Path& p) const;
  SparseVec<K> normal_form(const Path& p) const;
  Vec<K> product(const Vec<K>& x, const Vec<K>& y) const;
  Vec<K> unit_vector(int basis_index) const;

  mutable std::mutex op_mutex;
  mutable AlgPtr<K> op_strong;
  mutable std::weak_ptr<const Algebra<K>> op_weak;

  std::vector<std::map<std::vector<int>, int>> word_index;  // per start vertex, nonempty words
};

template <class K>
AlgPtr<K> build_algebra(const Presentation<K>& pres);
template <class K>
AlgPtr<K> opposite(const AlgPtr<K>& a);
template <class K>
AlgPtr<K> tensor_algebra(const AlgPtr<K>& a, const AlgPtr<K>& b);

// cartan[l][m] = dim e_m A e_l, the multiplicity of L(m) in P(l).
template <class K>
std::vector<std::vector<int>> cartan_matrix(const Algebra<K>& a);
template <class K>
bool same_algebra(const Algebra<K>& a, const Algebra<K>& b);

// An algebra given by a homogeneous basis and its structure constants.
template <class K>
struct AbstractAlgebra {
  Field field;
  std::vector<std::string> vertices;
  std::vector<int> order;
  std::vector<int> src, tgt;  // basis element i lies in e_tgt A e_src
  std::vector<int> identity;  // basis index of e_v
  std::vector<std::vector<SparseVec<K>>> table;
  int dim() const { return static_cast<int>(src.size()); }
};

template <class K>
AbstractAlgebra<K> as_abstract(const Algebra<K>& a);

template <class K>
struct RecoveredPresentation {
  Presentation<K> pres;
  std::vector<Vec<K>> arrow_elements;  // coordinates in the abstract basis
  AlgPtr<K> algebra;
};

template <class K>
RecoveredPresentation<K> quiver_presentation_of(const AbstractAlgebra<K>& a, const std::string& arrow_prefix = "x");
template <class K>
RecoveredPresentation<K> quiver_presentation_of(const Algebra<K>& a, const std::string& arrow_prefix = "x");

// Searches for an isomorphism fixing vertex labels that sends arrows to combinations of arrows
// with coefficients in {0,1,-1}; returns the images as elements of b.
template <class K>
std::optional<std::vector<Vec<K>>> find_algebra_isomorphism(const Algebra<K>& a, const Algebra<K>& b,
                                                             long budget = 200000);
template <class K>
bool satisfies_relations(const Algebra<K>& a, const Algebra<K>& b, const std::vector<Vec<K>>& images);

template <class K>
std::string relation_str(const Presentation<K>& p, const Relation<K>& r);

}  // namespace qalg
