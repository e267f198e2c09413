#pragma once

// The homology action of twist words: integer transvections assembling to
// the symplectic representation rho : words -> Sp(2g, Z).

#include "obk/curve_system.hpp"
#include "obk/ints.hpp"
#include "obk/words.hpp"

namespace obk {

// Standard symplectic form matrix for the basis (alpha_1..alpha_g, beta_1..beta_g):
// J = [[0, I], [-I, 0]], so <u,v> = u^T J v and <alpha_i, beta_i> = 1.
IMat symplectic_form(int genus);

bool is_symplectic(const IMat& m, int genus);

// Exact inverse of a symplectic matrix: M^{-1} = -J M^T J.
IMat sp_inverse(const IMat& m, int genus);

// Transvection along the class v with power k: x -> x + k <x,v> v.
IMat transvection(const IVec& v, long long k, int genus);

// Homology action of a k-fold twist along a curve (image curves conjugate).
IMat twist_matrix(const CurveSystem& sys, const CurveRef& curve, long long k);

// Product of letter matrices in word order (leftmost letter applied first).
IMat rho(const CurveSystem& sys, const TwistWord& w);

bool is_torelli(const CurveSystem& sys, const TwistWord& w);

}  // namespace obk
