#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "reflectionlab/scalar.hpp"

namespace Eigen {

template <>
struct NumTraits<reflectionlab::QuadExt>
    : GenericNumTraits<reflectionlab::QuadExt> {
  using Real = reflectionlab::QuadExt;
  using NonInteger = reflectionlab::QuadExt;
  using Nested = reflectionlab::QuadExt;
  using Literal = reflectionlab::Int;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 30,
    MulCost = 60,
  };

  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace reflectionlab {

template <class S>
using DenseVector = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using DenseMatrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

using Vec = DenseVector<Scalar>;
using Mat = DenseMatrix<Scalar>;

template <class S>
S dot(const DenseVector<S>& x, const DenseVector<S>& y) {
  S acc{};
  for (Eigen::Index i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

/// Row echelon form over an exact field; returns the rank. Any nonzero pivot
/// works, no magnitude concerns.
template <class S>
int row_reduce(DenseMatrix<S>& m) {
  int rows = int(m.rows()), cols = int(m.cols());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pivot = -1;
    for (int i = r; i < rows; ++i)
      if (!m(i, c).is_zero()) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != r) m.row(pivot).swap(m.row(r));
    S inv = S(1) / m(r, c);
    for (int j = c; j < cols; ++j) m(r, j) = m(r, j) * inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      S f = m(i, c);
      for (int j = c; j < cols; ++j) m(i, j) = m(i, j) - f * m(r, j);
    }
    ++r;
  }
  return r;
}

template <class S>
int rank_of(DenseMatrix<S> m) {
  return row_reduce(m);
}

/// Incrementally maintained echelon basis of a span, for membership tests.
template <class S>
class SpanBasis {
public:
  explicit SpanBasis(int dim) : dim_(dim) {}

  int rank() const { return int(rows_.size()); }
  int dim() const { return dim_; }

  /// Adds v to the span; returns true if it enlarged the span.
  bool add(DenseVector<S> v) {
    reduce(v);
    int lead = leading(v);
    if (lead < 0) return false;
    S inv = S(1) / v[lead];
    for (int j = 0; j < dim_; ++j) v[j] = v[j] * inv;
    rows_.push_back(std::move(v));
    leads_.push_back(lead);
    return true;
  }

  bool contains(DenseVector<S> v) const {
    reduce(v);
    return leading(v) < 0;
  }

private:
  void reduce(DenseVector<S>& v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const S& f = v[leads_[k]];
      if (f.is_zero()) continue;
      S c = f;  // rows are normalized to leading 1
      for (int j = 0; j < dim_; ++j) v[j] = v[j] - c * rows_[k][j];
    }
  }

  int leading(const DenseVector<S>& v) const {
    for (int j = 0; j < dim_; ++j)
      if (!v[j].is_zero()) return j;
    return -1;
  }

  int dim_;
  std::vector<DenseVector<S>> rows_;
  std::vector<int> leads_;
};

/// Solves A x = b exactly. Returns nullopt when inconsistent; when the system
/// is underdetermined an arbitrary solution is returned.
template <class S>
std::optional<DenseVector<S>> solve(const DenseMatrix<S>& a,
                                    const DenseVector<S>& b) {
  int rows = int(a.rows()), cols = int(a.cols());
  DenseMatrix<S> aug(rows, cols + 1);
  aug.leftCols(cols) = a;
  aug.col(cols) = b;
  row_reduce(aug);
  DenseVector<S> x = DenseVector<S>::Constant(cols, S(0));
  for (int i = 0; i < rows; ++i) {
    int lead = -1;
    for (int j = 0; j < cols; ++j)
      if (!aug(i, j).is_zero()) {
        lead = j;
        break;
      }
    if (lead < 0) {
      if (!aug(i, cols).is_zero()) return std::nullopt;
      continue;
    }
    x[lead] = aug(i, cols);  // other variables stay zero in echelon form
  }
  // Echelon back-substitution above relies on full reduction in row_reduce.
  return x;
}

/// Basis of the kernel of A, as columns.
template <class S>
std::vector<DenseVector<S>> kernel_basis(DenseMatrix<S> a) {
  int rows = int(a.rows()), cols = int(a.cols());
  row_reduce(a);
  std::vector<int> lead_of_col(cols, -1);
  int r = 0;
  for (int i = 0; i < rows; ++i) {
    int lead = -1;
    for (int j = 0; j < cols; ++j)
      if (!a(i, j).is_zero()) {
        lead = j;
        break;
      }
    if (lead >= 0) {
      lead_of_col[lead] = i;
      ++r;
    }
  }
  std::vector<DenseVector<S>> basis;
  for (int c = 0; c < cols; ++c) {
    if (lead_of_col[c] >= 0) continue;
    DenseVector<S> v = DenseVector<S>::Constant(cols, S(0));
    v[c] = S(1);
    for (int j = 0; j < cols; ++j) {
      if (lead_of_col[j] >= 0) v[j] = -a(lead_of_col[j], c);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Characteristic polynomial det(xI - A) by the Faddeev-LeVerrier recurrence.
/// Coefficients returned lowest degree first, c[n] = 1.
template <class S>
std::vector<S> char_poly(const DenseMatrix<S>& a) {
  int n = int(a.rows());
  std::vector<S> c(std::size_t(n) + 1, S(0));
  c[std::size_t(n)] = S(1);
  DenseMatrix<S> m = DenseMatrix<S>::Constant(n, n, S(0));
  for (int k = 1; k <= n; ++k) {
    for (int i = 0; i < n; ++i) m(i, i) += c[std::size_t(n - k + 1)];
    m = (a * m).eval();
    S tr{};
    for (int i = 0; i < n; ++i) tr += m(i, i);
    c[std::size_t(n - k)] = -(tr / S(k));
  }
  return c;
}

}  // namespace reflectionlab
