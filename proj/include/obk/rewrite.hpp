#pragma once

// Word rewriting: length-non-increasing normalization (free reduction plus
// sorting of provably disjoint adjacent twists) and the explicit, user-invoked
// chain-relation rewrites.

#include <functional>
#include <optional>

#include "obk/curve_system.hpp"
#include "obk/words.hpp"

namespace obk {

// Disjointness oracle: 0 means the two twists provably commute.
using DisjointnessFn = std::function<std::optional<int>(const CurveRef&, const CurveRef&)>;

// Merges and cancels same-curve adjacent letters and bubble-sorts adjacent
// letters on disjoint curves into the fixed total order. Deterministic,
// rho-invariant, and terminating: every pass decreases (length, inversions)
// lexicographically. Frames of image-curve letters are normalized first.
TwistWord normalize(const TwistWord& w, const DisjointnessFn& disjoint, const CurveOrder& order);
TwistWord normalize(const CurveSystem& sys, const TwistWord& w);

enum class ChainDirection {
  Forward,   // expanded chain power -> boundary twists
  Backward,  // boundary twists -> expanded chain power
};

// Rewrites one occurrence of the registered chain relation inside w. The
// pattern must occur contiguously in normalize(w) (or verbatim in w).
// Throws Error when the pattern is absent. rho is unchanged by the rewrite.
TwistWord apply_chain_relation(const CurveSystem& sys, const TwistWord& w, const Chain& chain,
                               ChainDirection direction);

// True iff every letter, after expanding image-curve frames and bases, twists
// only along curves in `allowed`. Purely syntactic.
bool uses_only(const TwistWord& w, const std::vector<std::string>& allowed);

}  // namespace obk
