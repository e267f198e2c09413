#include "obk/sp.hpp"

namespace obk {

IMat symplectic_form(int genus) {
  const int n = 2 * genus;
  IMat j = IMat::Zero(n, n);
  for (int i = 0; i < genus; ++i) {
    j(i, genus + i) = 1;
    j(genus + i, i) = -1;
  }
  return j;
}

bool is_symplectic(const IMat& m, int genus) {
  if (m.rows() != 2 * genus || m.cols() != 2 * genus) return false;
  IMat j = symplectic_form(genus);
  return int_equal((m.transpose() * j * m).eval(), j);
}

IMat sp_inverse(const IMat& m, int genus) {
  IMat j = symplectic_form(genus);
  return (-(j * m.transpose() * j)).eval();
}

IMat transvection(const IVec& v, long long k, int genus) {
  const int n = 2 * genus;
  IMat j = symplectic_form(genus);
  IVec jv = (j.transpose() * v).eval();  // row covector v^T J, stored as column
  IMat t = int_identity(n);
  Int kk(static_cast<long>(k));
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < n; ++c) t(i, c) -= kk * v(i) * jv(c);
  return t;
}

IMat twist_matrix(const CurveSystem& sys, const CurveRef& curve, long long k) {
  IVec v = sys.hom_class(curve);
  return transvection(v, k, sys.genus());
}

IMat rho(const CurveSystem& sys, const TwistWord& w) {
  IMat m = int_identity(2 * sys.genus());
  for (const auto& l : w.letters()) m = (m * twist_matrix(sys, l.curve, l.power)).eval();
  return m;
}

bool is_torelli(const CurveSystem& sys, const TwistWord& w) {
  return is_int_identity(rho(sys, w));
}

}  // namespace obk
