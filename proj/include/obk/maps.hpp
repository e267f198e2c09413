#pragma once

// Coordinate realizations of the twist and embedding maps on the T*S^n model.

#include "obk/geometry.hpp"
#include "obk/profiles.hpp"

namespace obk {

// The k-fold twist (x, y) -> sigma_{g_k(|y|)}(x, y), with the continuous
// limit ((-1)^k x, 0) on the zero section; identity for |y| >= p0.
AmbientMap dehn_twist_map(int n, const TwistProfile& profile);

// The embedding j_t : T*S^n -> T*S^{n+1},
//   j_t(x, y) = (x, 0, y, t * g(|y|)).
AmbientMap embedding_map(double t, const CutoffProfile& cutoff, int n);

// j_t with a twist applied first: j_t(tau_k(p)). Used by the distance and
// support-disjointness checks.
AmbientMap embedded_twist_map(double t, const CutoffProfile& cutoff, int n,
                              const TwistProfile& twist);

}  // namespace obk
