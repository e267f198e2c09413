#include "obk/rewrite.hpp"

#include <algorithm>

namespace obk {

namespace {

CurveRef normalize_ref(const CurveRef& c, const DisjointnessFn& disjoint,
                       const CurveOrder& order);

std::vector<Letter> normalize_letters(std::vector<Letter> letters, const DisjointnessFn& disjoint,
                                      const CurveOrder& order) {
  for (auto& l : letters) l.curve = normalize_ref(l.curve, disjoint, order);
  bool changed = true;
  while (changed) {
    changed = false;
    // merge / cancel
    std::vector<Letter> merged;
    for (auto& l : letters) {
      if (l.power == 0) {
        changed = true;
        continue;
      }
      if (!merged.empty() && merged.back().curve == l.curve) {
        merged.back().power += l.power;
        if (merged.back().power == 0) merged.pop_back();
        changed = true;
      } else {
        merged.push_back(std::move(l));
      }
    }
    letters = std::move(merged);
    // one bubble pass over disjoint out-of-order neighbours
    for (std::size_t i = 0; i + 1 < letters.size(); ++i) {
      if (!order.before(letters[i + 1].curve, letters[i].curve)) continue;
      auto gi = disjoint(letters[i].curve, letters[i + 1].curve);
      if (gi && *gi == 0) {
        std::swap(letters[i], letters[i + 1]);
        changed = true;
      }
    }
  }
  return letters;
}

CurveRef normalize_ref(const CurveRef& c, const DisjointnessFn& disjoint,
                       const CurveOrder& order) {
  if (!c.is_image()) return c;
  CurveRef out{c.name, normalize_letters(c.frame, disjoint, order)};
  if (out.frame.empty()) return CurveRef::plain(out.name);
  return out;
}

}  // namespace

TwistWord normalize(const TwistWord& w, const DisjointnessFn& disjoint, const CurveOrder& order) {
  return TwistWord::of(normalize_letters(w.letters(), disjoint, order));
}

TwistWord normalize(const CurveSystem& sys, const TwistWord& w) {
  DisjointnessFn fn = [&sys](const CurveRef& a, const CurveRef& b) { return sys.geom_int(a, b); };
  return normalize(w, fn, sys.order());
}

namespace {

// Positions of `pattern` as a contiguous letter run inside `host`, or npos.
std::size_t find_subword(const std::vector<Letter>& host, const std::vector<Letter>& pattern) {
  if (pattern.empty() || pattern.size() > host.size()) return std::string::npos;
  for (std::size_t i = 0; i + pattern.size() <= host.size(); ++i) {
    bool hit = true;
    for (std::size_t j = 0; j < pattern.size(); ++j)
      if (!(host[i + j] == pattern[j])) {
        hit = false;
        break;
      }
    if (hit) return i;
  }
  return std::string::npos;
}

TwistWord splice(const std::vector<Letter>& host, std::size_t at, std::size_t len,
                 const std::vector<Letter>& replacement) {
  std::vector<Letter> out(host.begin(), host.begin() + at);
  out.insert(out.end(), replacement.begin(), replacement.end());
  out.insert(out.end(), host.begin() + at + len, host.end());
  return TwistWord::of(std::move(out));
}

}  // namespace

TwistWord apply_chain_relation(const CurveSystem& sys, const TwistWord& w, const Chain& chain,
                               ChainDirection direction) {
  std::vector<Letter> members;
  for (const auto& m : chain.members) members.push_back(Letter{m, 1});
  TwistWord expanded = TwistWord::of(members).pow(chain.relation_power());
  std::vector<Letter> boundary;
  for (const auto& b : chain.boundary) boundary.push_back(Letter{CurveRef::plain(b), 1});
  TwistWord folded = TwistWord::of(boundary);

  const TwistWord& pat = direction == ChainDirection::Forward ? expanded : folded;
  const TwistWord& rep = direction == ChainDirection::Forward ? folded : expanded;

  // Verbatim occurrence first, then up to the commutation moves of normalize.
  if (auto at = find_subword(w.letters(), pat.letters()); at != std::string::npos)
    return splice(w.letters(), at, pat.size(), rep.letters());

  TwistWord wn = normalize(sys, w);
  TwistWord pn = normalize(sys, pat);
  if (auto at = find_subword(wn.letters(), pn.letters()); at != std::string::npos)
    return splice(wn.letters(), at, pn.size(), rep.letters());

  throw Error("chain pattern for '" + chain.name + "' not found in word");
}

bool uses_only(const TwistWord& w, const std::vector<std::string>& allowed) {
  for (const auto& name : mentioned_names(w))
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) return false;
  return true;
}

}  // namespace obk
