#pragma once

// Exact integer linear algebra on top of Eigen with GMP scalars.
// All Sp(2g,Z) and Smith-normal-form arithmetic goes through these types;
// entries of high twist powers overflow machine words quickly.

#include <Eigen/Dense>
#include <gmpxx.h>

#include <string>

namespace Eigen {

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  using Real = mpz_class;
  using NonInteger = mpz_class;
  using Nested = mpz_class;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 30,
    MulCost = 50
  };
};

}  // namespace Eigen

namespace obk {

using Int = mpz_class;
using IMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

inline IMat int_identity(Eigen::Index n) { return IMat::Identity(n, n); }

// Whole-matrix equality; Eigen's operator== is elementwise and does not mix
// well with GMP expression templates, so spell out the loop.
template <typename A, typename B>
bool int_equal(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

template <typename A>
bool is_int_identity(const Eigen::MatrixBase<A>& a) {
  if (a.rows() != a.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != Int(i == j ? 1 : 0)) return false;
  return true;
}

inline IMat int_pow(IMat base, long long e) {
  IMat result = int_identity(base.rows());
  if (e < 0) throw std::invalid_argument("int_pow: negative exponent");
  while (e > 0) {
    if (e & 1) result = (result * base).eval();
    base = (base * base).eval();
    e >>= 1;
  }
  return result;
}

inline std::string to_string(const IMat& m) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    s += (i ? "; " : "");
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) s += " ";
      s += m(i, j).get_str();
    }
  }
  return s + "]";
}

}  // namespace obk
