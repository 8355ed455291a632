#pragma once

// Exact two-phase simplex for  minimize c.x  subject to  A x = b, x >= 0.
// Bland's rule guarantees termination; with exact scalars the optimum is
// attained at a basic feasible solution and reported without rounding.

#include "eeinv/rational.hpp"

#include <vector>

namespace eeinv::lp {

enum class Status { Optimal, Infeasible, Unbounded };

template <typename Scalar>
struct Result {
  Status status = Status::Infeasible;
  Vec<Scalar> x;   // an optimal vertex when status == Optimal
  Scalar value{};  // c.x at that vertex
};

namespace detail {

template <typename Scalar>
class Tableau {
 public:
  // rows 0..m-1: constraints, row m: reduced costs; last column: rhs.
  Tableau(const Mat<Scalar>& a, const Vec<Scalar>& b)
      : m_(a.rows()), n_(a.cols()), t_(Mat<Scalar>::Zero(a.rows() + 1, a.cols() + a.rows() + 1)) {
    for (Index i = 0; i < m_; ++i) {
      const bool flip = b(i) < 0;
      for (Index j = 0; j < n_; ++j) t_(i, j) = flip ? Scalar(-a(i, j)) : a(i, j);
      t_(i, n_ + i) = 1;
      t_(i, rhs()) = flip ? Scalar(-b(i)) : b(i);
      basis_.push_back(n_ + i);
    }
  }

  Index rhs() const { return n_ + m_; }

  // Phase one: minimize the sum of artificials. Returns false if infeasible.
  bool phase_one() {
    for (Index j = 0; j <= rhs(); ++j) {
      Scalar s = 0;
      for (Index i = 0; i < m_; ++i) s += t_(i, j);
      t_(m_, j) = (j >= n_ && j < rhs()) ? Scalar(0) : Scalar(-s);
    }
    run(rhs());
    if (t_(m_, rhs()) != 0) return false;
    // Drive zero-level artificials out of the basis where possible.
    for (Index i = 0; i < m_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < n_) continue;
      for (Index j = 0; j < n_; ++j) {
        if (t_(i, j) != 0) {
          pivot(i, j);
          break;
        }
      }
    }
    return true;
  }

  // Phase two on the original columns. Returns false if unbounded.
  bool phase_two(const Vec<Scalar>& c) {
    for (Index j = 0; j <= rhs(); ++j) t_(m_, j) = (j < n_) ? c(j) : Scalar(0);
    for (Index i = 0; i < m_; ++i) {
      const Index bv = basis_[static_cast<std::size_t>(i)];
      if (bv >= n_) continue;
      const Scalar cb = c(bv);
      if (cb == 0) continue;
      for (Index j = 0; j <= rhs(); ++j) t_(m_, j) -= cb * t_(i, j);
    }
    return run(n_);
  }

  Vec<Scalar> solution() const {
    Vec<Scalar> x = Vec<Scalar>::Zero(n_);
    for (Index i = 0; i < m_; ++i) {
      const Index bv = basis_[static_cast<std::size_t>(i)];
      if (bv < n_) x(bv) = t_(i, rhs());
    }
    return x;
  }

 private:
  // Iterate with entering columns restricted to [0, limit).
  bool run(Index limit) {
    for (;;) {
      Index enter = -1;
      for (Index j = 0; j < limit; ++j) {
        if (t_(m_, j) < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      Index leave = -1;
      Scalar best{};
      for (Index i = 0; i < m_; ++i) {
        if (!(t_(i, enter) > 0)) continue;
        const Scalar ratio = t_(i, rhs()) / t_(i, enter);
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void pivot(Index row, Index col) {
    const Scalar inv = Scalar(1) / t_(row, col);
    for (Index j = 0; j <= rhs(); ++j) t_(row, j) *= inv;
    for (Index i = 0; i <= m_; ++i) {
      if (i == row || t_(i, col) == 0) continue;
      const Scalar factor = t_(i, col);
      for (Index j = 0; j <= rhs(); ++j) {
        if (t_(row, j) != 0) t_(i, j) -= factor * t_(row, j);
      }
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  Index m_;
  Index n_;
  Mat<Scalar> t_;
  std::vector<Index> basis_;
};

}  // namespace detail

template <typename Scalar>
Result<Scalar> minimize(const Mat<Scalar>& a, const Vec<Scalar>& b, const Vec<Scalar>& c) {
  Result<Scalar> out;
  detail::Tableau<Scalar> tab(a, b);
  if (!tab.phase_one()) {
    out.status = Status::Infeasible;
    return out;
  }
  if (!tab.phase_two(c)) {
    out.status = Status::Unbounded;
    return out;
  }
  out.status = Status::Optimal;
  out.x = tab.solution();
  out.value = c.dot(out.x);
  return out;
}

/// Some x >= 0 with A x = b, or an empty result.
template <typename Scalar>
Result<Scalar> feasible_point(const Mat<Scalar>& a, const Vec<Scalar>& b) {
  return minimize<Scalar>(a, b, Vec<Scalar>::Zero(a.cols()));
}

}  // namespace eeinv::lp
