#pragma once
#include <optional>
#include <vector>

#include "qalg/scalar.hpp"

namespace qalg {

template <class K>
using Mat = Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic>;
template <class K>
using Vec = Eigen::Matrix<K, Eigen::Dynamic, 1>;

template <class K>
struct Rref {
  Mat<K> matrix;
  std::vector<int> pivots;
  int rank = 0;
};

// Gauss-Jordan with the leftmost pivot column and the first nonzero row.
template <class K>
int rref_inplace(Mat<K>& m, std::vector<int>* pivots = nullptr) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index r = 0;
  std::vector<Eigen::Index> nz;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (!is_zero(m(i, c))) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r) m.row(piv).swap(m.row(r));
    const K inv = K(1) / m(r, c);
    nz.clear();
    for (Eigen::Index j = c; j < cols; ++j)
      if (!is_zero(m(r, j))) {
        m(r, j) *= inv;
        nz.push_back(j);
      }
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      const K f = m(i, c);
      for (Eigen::Index j : nz) m(i, j) -= f * m(r, j);
    }
    if (pivots) pivots->push_back(static_cast<int>(c));
    ++r;
  }
  return static_cast<int>(r);
}

template <class K>
Rref<K> rref(Mat<K> m) {
  Rref<K> out;
  out.rank = rref_inplace(m, &out.pivots);
  out.matrix = std::move(m);
  return out;
}

template <class K>
int rank(Mat<K> m) {
  return rref_inplace(m);
}

template <class K>
bool is_zero(const Mat<K>& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!is_zero(m(i, j))) return false;
  return true;
}

template <class K>
Mat<K> zeros(Eigen::Index r, Eigen::Index c) {
  return Mat<K>::Zero(r, c);
}

template <class K>
Mat<K> identity(Eigen::Index n) {
  return Mat<K>::Identity(n, n);
}

// Product that skips zero entries; the matrices in this library are sparse in practice.
template <class K>
Mat<K> mul(const Mat<K>& a, const Mat<K>& b) {
  Mat<K> out = Mat<K>::Zero(a.rows(), b.cols());
  for (Eigen::Index k = 0; k < a.cols(); ++k) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      if (is_zero(b(k, j))) continue;
      const K& bk = b(k, j);
      for (Eigen::Index i = 0; i < a.rows(); ++i)
        if (!is_zero(a(i, k))) out(i, j) += a(i, k) * bk;
    }
  }
  return out;
}

template <class K>
Vec<K> mul(const Mat<K>& a, const Vec<K>& v) {
  Vec<K> out = Vec<K>::Zero(a.rows());
  for (Eigen::Index k = 0; k < a.cols(); ++k) {
    if (is_zero(v(k))) continue;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!is_zero(a(i, k))) out(i) += a(i, k) * v(k);
  }
  return out;
}

template <class K>
Mat<K> kron(const Mat<K>& a, const Mat<K>& b) {
  Mat<K> out = Mat<K>::Zero(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (is_zero(a(i, j))) continue;
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          if (!is_zero(b(k, l))) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

template <class K>
Mat<K> hcat(const Mat<K>& a, const Mat<K>& b) {
  Mat<K> out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

template <class K>
Mat<K> vcat(const Mat<K>& a, const Mat<K>& b) {
  Mat<K> out(a.rows() + b.rows(), a.cols());
  out << a, b;
  return out;
}

// Right null space; one vector per free column, in column order.
template <class K>
Mat<K> kernel_basis(const Mat<K>& m) {
  Rref<K> r = rref(m);
  const Eigen::Index n = m.cols();
  std::vector<char> is_piv(n, 0);
  for (int c : r.pivots) is_piv[c] = 1;
  Mat<K> out = Mat<K>::Zero(n, n - r.rank);
  Eigen::Index col = 0;
  for (Eigen::Index f = 0; f < n; ++f) {
    if (is_piv[f]) continue;
    out(f, col) = K(1);
    for (int i = 0; i < r.rank; ++i)
      if (!is_zero(r.matrix(i, f))) out(r.pivots[i], col) = -r.matrix(i, f);
    ++col;
  }
  return out;
}

template <class K>
std::optional<Vec<K>> solve(const Mat<K>& m, const Vec<K>& rhs) {
  if (rhs.rows() != m.rows()) throw std::invalid_argument("solve: dimension mismatch");
  Mat<K> aug(m.rows(), m.cols() + 1);
  aug << m, rhs;
  Rref<K> r = rref(std::move(aug));
  if (!r.pivots.empty() && r.pivots.back() == m.cols()) return std::nullopt;
  Vec<K> x = Vec<K>::Zero(m.cols());
  for (int i = 0; i < r.rank; ++i) x(r.pivots[i]) = r.matrix(i, m.cols());
  return x;
}

template <class K>
Mat<K> transpose(const Mat<K>& m) {
  return m.transpose();
}

// Linearly independent subset of the columns spanning the column space.
template <class K>
Mat<K> column_basis(const Mat<K>& m) {
  Rref<K> r = rref(m);
  Mat<K> out(m.rows(), r.rank);
  for (int i = 0; i < r.rank; ++i) out.col(i) = m.col(r.pivots[i]);
  return out;
}

// Reduced column echelon form of the span; equal spans give equal matrices.
template <class K>
Mat<K> canonical_basis(const Mat<K>& m) {
  Rref<K> r = rref(Mat<K>(m.transpose()));
  return r.matrix.topRows(r.rank).transpose();
}

template <class K>
bool in_span(const Mat<K>& basis, const Vec<K>& v) {
  if (basis.cols() == 0) return is_zero(Mat<K>(v));
  return rank(hcat(basis, Mat<K>(v))) == rank(basis);
}

template <class K>
Mat<K> span_sum(const Mat<K>& a, const Mat<K>& b) {
  return column_basis(hcat(a, b));
}

template <class K>
Mat<K> intersect(const Mat<K>& a, const Mat<K>& b) {
  if (a.cols() == 0 || b.cols() == 0) return Mat<K>(a.rows(), 0);
  Mat<K> ker = kernel_basis(hcat(a, Mat<K>(-b)));
  return column_basis(mul(a, Mat<K>(ker.topRows(a.cols()))));
}

// Standard basis vectors completing the span of `a` to the whole space.
template <class K>
Mat<K> complement(const Mat<K>& a) {
  const Eigen::Index n = a.rows();
  std::vector<char> piv(n, 0);
  if (a.cols() > 0) {
    Rref<K> r = rref(Mat<K>(a.transpose()));
    for (int c : r.pivots) piv[c] = 1;
  }
  std::vector<Eigen::Index> free;
  for (Eigen::Index i = 0; i < n; ++i)
    if (!piv[i]) free.push_back(i);
  Mat<K> out = Mat<K>::Zero(n, free.size());
  for (size_t j = 0; j < free.size(); ++j) out(free[j], j) = K(1);
  return out;
}

template <class K>
std::optional<Mat<K>> inverse(const Mat<K>& a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) return std::nullopt;
  Rref<K> r = rref(hcat(a, Mat<K>(Mat<K>::Identity(n, n))));
  if (r.rank < n || (n > 0 && r.pivots[n - 1] != n - 1)) return std::nullopt;
  return Mat<K>(r.matrix.rightCols(n));
}

// Coordinates with respect to a fixed basis of a subspace.
template <class K>
class Coordinatizer {
 public:
  Coordinatizer() = default;
  explicit Coordinatizer(Mat<K> basis) : basis_(std::move(basis)) {
    const Eigen::Index k = basis_.cols();
    if (k == 0) return;
    Rref<K> r = rref(Mat<K>(basis_.transpose()));
    if (r.rank != k) throw std::invalid_argument("Coordinatizer: dependent basis");
    rows_ = r.pivots;
    Mat<K> sq(k, k);
    for (Eigen::Index i = 0; i < k; ++i) sq.row(i) = basis_.row(rows_[i]);
    inv_ = *inverse(sq);
  }

  Eigen::Index size() const { return basis_.cols(); }
  const Mat<K>& basis() const { return basis_; }

  Vec<K> coords(const Vec<K>& v) const {
    const Eigen::Index k = basis_.cols();
    Vec<K> sel(k);
    for (Eigen::Index i = 0; i < k; ++i) sel(i) = v(rows_[i]);
    return mul(inv_, sel);
  }

  std::optional<Vec<K>> checked_coords(const Vec<K>& v) const {
    Vec<K> c = coords(v);
    if (!is_zero(Mat<K>(mul(basis_, c) - v))) return std::nullopt;
    return c;
  }

 private:
  Mat<K> basis_;
  std::vector<int> rows_;
  Mat<K> inv_;
};

// Vectors inserted one at a time; dependent vectors are expressed in the earlier ones.
template <class K>
class IncrementalBasis {
 public:
  explicit IncrementalBasis(Eigen::Index n = 0) : n_(n) {}

  Eigen::Index ambient() const { return n_; }
  int size() const { return count_; }

  // Inserts v if it is independent (returns nullopt); otherwise returns c with v = sum c_j v_j.
  std::optional<Vec<K>> insert_or_express(const Vec<K>& v) {
    Vec<K> r = v;
    Vec<K> c = Vec<K>::Zero(count_);
    reduce(r, c);
    Eigen::Index p = -1;
    for (Eigen::Index i = 0; i < n_; ++i)
      if (!is_zero(r(i))) { p = i; break; }
    if (p < 0) return c;
    const K inv = K(1) / r(p);
    Vec<K> e = Vec<K>::Zero(count_ + 1);
    e.head(count_) = -c;
    e(count_) = K(1);
    for (auto& x : expr_) x.conservativeResize(count_ + 1), x(count_) = K(0);
    rows_.push_back(r * inv);
    expr_.push_back(e * inv);
    piv_.push_back(p);
    ++count_;
    return std::nullopt;
  }

  bool contains(const Vec<K>& v) const {
    Vec<K> r = v;
    Vec<K> c = Vec<K>::Zero(count_);
    reduce(r, c);
    for (Eigen::Index i = 0; i < n_; ++i)
      if (!is_zero(r(i))) return false;
    return true;
  }

 private:
  void reduce(Vec<K>& r, Vec<K>& c) const {
    for (size_t k = 0; k < rows_.size(); ++k) {
      if (is_zero(r(piv_[k]))) continue;
      const K f = r(piv_[k]);
      for (Eigen::Index i = 0; i < n_; ++i)
        if (!is_zero(rows_[k](i))) r(i) -= f * rows_[k](i);
      for (Eigen::Index j = 0; j < expr_[k].size(); ++j)
        if (!is_zero(expr_[k](j))) c(j) += f * expr_[k](j);
    }
  }

  Eigen::Index n_;
  int count_ = 0;
  std::vector<Vec<K>> rows_, expr_;
  std::vector<Eigen::Index> piv_;
};

}  // namespace qalg
