#pragma once

// First homology of the closed 3-manifold presented by an open book with
// page a genus-g surface with one boundary circle: the cokernel of
// rho(monodromy) - I, read off a Smith normal form.

#include <vector>

#include "obk/curve_system.hpp"
#include "obk/ints.hpp"
#include "obk/sp.hpp"

namespace obk {

// Diagonal of a Smith normal form of m: non-negative entries d_1 | d_2 | ...
// (zeros trailing). Exact integer arithmetic throughout.
std::vector<Int> smith_normal_form(IMat m);

struct HomologySummary {
  long long free_rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1

  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  bool operator==(const HomologySummary&) const = default;
};

HomologySummary coker_invariants(const IMat& m);

// H_1 of the total space of the open book (page Sigma_{g,1}, monodromy w).
HomologySummary open_book_homology(const CurveSystem& sys, const TwistWord& w);

}  // namespace obk
