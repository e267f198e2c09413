#include "obk/homology.hpp"

#include <algorithm>

namespace obk {

namespace {

// Index of an entry of minimal nonzero absolute value in m(r.., c..), if any.
bool find_pivot(const IMat& m, Eigen::Index from, Eigen::Index& pr, Eigen::Index& pc) {
  bool found = false;
  Int best = 0;
  for (Eigen::Index i = from; i < m.rows(); ++i)
    for (Eigen::Index j = from; j < m.cols(); ++j) {
      if (m(i, j) == 0) continue;
      Int a = abs(m(i, j));
      if (!found || a < best) {
        best = a;
        pr = i;
        pc = j;
        found = true;
      }
    }
  return found;
}

}  // namespace

std::vector<Int> smith_normal_form(IMat m) {
  const Eigen::Index n = std::min(m.rows(), m.cols());
  std::vector<Int> diag;

  for (Eigen::Index t = 0; t < n; ++t) {
    Eigen::Index pr = t, pc = t;
    if (!find_pivot(m, t, pr, pc)) break;
    m.row(t).swap(m.row(pr));
    m.col(t).swap(m.col(pc));

    // Clear row and column t; restart whenever a remainder reduces the pivot.
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (Eigen::Index i = t + 1; i < m.rows(); ++i) {
        if (m(i, t) == 0) continue;
        Int q = m(i, t) / m(t, t);
        m.row(i) -= q * m.row(t);
        if (m(i, t) != 0) {  // remainder strictly smaller: promote it
          m.row(t).swap(m.row(i));
          dirty = true;
        }
      }
      for (Eigen::Index j = t + 1; j < m.cols(); ++j) {
        if (m(t, j) == 0) continue;
        Int q = m(t, j) / m(t, t);
        m.col(j) -= q * m.col(t);
        if (m(t, j) != 0) {
          m.col(t).swap(m.col(j));
          dirty = true;
        }
      }
    }

    // Divisibility: fold any entry the pivot misses into column t and redo.
    bool again = false;
    for (Eigen::Index i = t + 1; i < m.rows() && !again; ++i)
      for (Eigen::Index j = t + 1; j < m.cols() && !again; ++j)
        if (m(i, j) % m(t, t) != 0) {
          m.col(t) += m.col(j);
          again = true;
        }
    if (again) {
      --t;
      continue;
    }
    diag.push_back(abs(m(t, t)));
  }

  while (static_cast<Eigen::Index>(diag.size()) < n) diag.push_back(0);
  return diag;
}

HomologySummary coker_invariants(const IMat& m) {
  HomologySummary h;
  for (const Int& d : smith_normal_form(m)) {
    if (d == 0)
      ++h.free_rank;
    else if (d > 1)
      h.torsion.push_back(d);
  }
  std::sort(h.torsion.begin(), h.torsion.end());
  return h;
}

HomologySummary open_book_homology(const CurveSystem& sys, const TwistWord& w) {
  IMat m = rho(sys, w);
  IMat mi = (m - int_identity(2 * sys.genus())).eval();
  return coker_invariants(mi);
}

}  // namespace obk
