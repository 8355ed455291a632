#pragma once

// Exact elimination kernels over an ordered field. No pivot thresholds:
// a pivot is any entry that compares unequal to zero, so these are only
// meaningful for exact scalars.

#include "eeinv/rational.hpp"

#include <optional>
#include <vector>

namespace eeinv::linalg {

template <typename Scalar>
struct Echelon {
  Mat<Scalar> reduced;          // reduced row echelon form of the input
  std::vector<Index> pivots;    // pivot column of each nonzero row
};

/// Reduced row echelon form by Gauss-Jordan elimination.
template <typename Scalar>
Echelon<Scalar> rref(Mat<Scalar> a) {
  Echelon<Scalar> out;
  const Index rows = a.rows();
  const Index cols = a.cols();
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index pivot = -1;
    for (Index i = r; i < rows; ++i) {
      if (a(i, c) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != r) a.row(pivot).swap(a.row(r));
    const Scalar inv = Scalar(1) / a(r, c);
    for (Index j = c; j < cols; ++j) a(r, j) *= inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Scalar factor = a(i, c);
      for (Index j = c; j < cols; ++j) a(i, j) -= factor * a(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(a);
  return out;
}

template <typename Scalar>
Index rank(const Mat<Scalar>& a) {
  return static_cast<Index>(rref<Scalar>(a).pivots.size());
}

/// Some solution of a x = b (free variables set to zero), or nullopt.
template <typename Scalar>
std::optional<Vec<Scalar>> solve(const Mat<Scalar>& a, const Vec<Scalar>& b) {
  if (a.rows() != b.size()) return std::nullopt;
  Mat<Scalar> aug(a.rows(), a.cols() + 1);
  aug << a, b;
  const auto ech = rref<Scalar>(aug);
  Vec<Scalar> x = Vec<Scalar>::Zero(a.cols());
  for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
    const Index c = ech.pivots[i];
    if (c == a.cols()) return std::nullopt;  // 0 = 1 row
    x(c) = ech.reduced(static_cast<Index>(i), a.cols());
  }
  return x;
}

/// True when b lies in the column space of a.
template <typename Scalar>
bool in_column_space(const Mat<Scalar>& a, const Vec<Scalar>& b) {
  return solve<Scalar>(a, b).has_value();
}

template <typename Scalar>
std::optional<Mat<Scalar>> inverse(const Mat<Scalar>& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  const Index n = a.rows();
  Mat<Scalar> aug(n, 2 * n);
  aug << a, Mat<Scalar>::Identity(n, n);
  const auto ech = rref<Scalar>(aug);
  if (static_cast<Index>(ech.pivots.size()) < n || (n > 0 && ech.pivots[n - 1] >= n))
    return std::nullopt;
  return Mat<Scalar>(ech.reduced.rightCols(n));
}

/// Square, with exactly one nonzero entry per row and per column, all
/// nonzero entries positive: a positively scaled permutation.
template <typename Scalar>
bool is_positive_monomial(const Mat<Scalar>& a) {
  if (a.rows() != a.cols()) return false;
  std::vector<int> col_hits(static_cast<std::size_t>(a.cols()), 0);
  for (Index r = 0; r < a.rows(); ++r) {
    int row_hits = 0;
    for (Index c = 0; c < a.cols(); ++c) {
      if (a(r, c) == 0) continue;
      if (a(r, c) < 0) return false;
      ++row_hits;
      ++col_hits[static_cast<std::size_t>(c)];
    }
    if (row_hits != 1) return false;
  }
  for (int hits : col_hits)
    if (hits != 1) return false;
  return true;
}

/// a * b, skipping zero entries of a. Restriction maps are mostly zero and
/// a dense product of rationals pays for every term.
template <typename Scalar>
Mat<Scalar> sparse_product(const Mat<Scalar>& a, const Mat<Scalar>& b) {
  Mat<Scalar> out = Mat<Scalar>::Zero(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (Index j = 0; j < b.cols(); ++j)
        if (b(k, j) != 0) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

}  // namespace eeinv::linalg
