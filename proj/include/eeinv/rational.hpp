#pragma once

// Exact scalar types shared by every module: a GMP-backed rational,
// Eigen dense aliases over it, and integer matrices for K-theory maps.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <string_view>

namespace eeinv {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = std::int64_t;
using Index = Eigen::Index;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixQ = Mat<Rational>;
using VectorQ = Vec<Rational>;
using MatrixZ = Mat<Integer>;
using VectorZ = Vec<Integer>;

/// Canonical text form "num/den" (den > 0, lowest terms; integers keep "/1").
std::string format_rational(const Rational& q);

/// Accepts "num/den" or a bare integer. Throws DocumentError on malformed
/// text or a zero denominator.
Rational parse_rational(std::string_view text);

inline Rational rat(Integer num, Integer den = 1) { return Rational(num, den); }

inline VectorQ to_rational(const VectorZ& v) { return v.cast<Rational>(); }

inline bool is_nonnegative(const VectorQ& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (v(i) < 0) return false;
  return true;
}

inline bool is_nonnegative(const MatrixQ& m) {
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c)
      if (m(r, c) < 0) return false;
  return true;
}

/// Exact structural equality, shape included.
template <typename Derived, typename Other>
bool same_matrix(const Eigen::MatrixBase<Derived>& a, const Eigen::MatrixBase<Other>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index r = 0; r < a.rows(); ++r)
    for (Index c = 0; c < a.cols(); ++c)
      if (!(a(r, c) == b(r, c))) return false;
  return true;
}

}  // namespace eeinv
