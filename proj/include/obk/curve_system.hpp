#pragma once

// Curve systems on a genus-g surface with one boundary component: named
// curves, geometric intersection data, homology classes in a fixed
// symplectic basis (alpha_1..alpha_g, beta_1..beta_g), and registered
// twist chains with their boundary curves.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "obk/ints.hpp"
#include "obk/words.hpp"

namespace obk {

// A chain of curves with pairwise consecutive intersection one. An odd chain
// (length 2k+1) satisfies (t_1...t_{2k+1})^{2k+2} = t_{d1} t_{d2} for the two
// boundary curves of its regular neighborhood; an even chain (length 2k)
// satisfies (t_1...t_{2k})^{4k+2} = t_d for its single boundary curve.
struct Chain {
  std::string name;
  std::vector<CurveRef> members;
  std::vector<std::string> boundary;  // one curve (even chain) or two (odd chain)

  bool odd() const { return members.size() % 2 == 1; }
  long long relation_power() const {
    return odd() ? static_cast<long long>(members.size()) + 1
                 : 2 * static_cast<long long>(members.size()) + 2;
  }
};

class CurveSystem {
 public:
  CurveSystem(int genus, std::vector<std::string> curve_names);

  int genus() const { return genus_; }
  const std::vector<std::string>& curves() const { return names_; }

  bool has_curve(const std::string& name) const;
  int index_of(const std::string& name) const;  // throws on unknown curve
  void add_curve(const std::string& name);

  void set_hom_class(const std::string& curve, IVec cls);
  const IVec& hom_class(const std::string& curve) const;
  // Homology class of a possibly-conjugated curve: rho(frame) * [base].
  IVec hom_class(const CurveRef& c) const;

  void set_geom_int(const std::string& a, const std::string& b, int value);
  // Geometric intersection number if recorded (or derivable for image
  // curves whose frame is disjoint from the other curve); nullopt otherwise.
  std::optional<int> geom_int(const CurveRef& a, const CurveRef& b) const;

  void register_chain(Chain chain);  // validates intersections and the matrix relation
  const std::vector<Chain>& chains() const { return chains_; }
  const Chain& chain(const std::string& name) const;

  // Algebraic intersection <u,v> = u^T J v of two homology classes.
  Int pairing(const IVec& u, const IVec& v) const;

  CurveOrder order() const;

  // Checks every recorded pair satisfies |<[a],[b]>| <= geomInt(a,b) and all
  // registered chains satisfy their homology-level relation. Throws Error
  // with a description of the first violation.
  void validate() const;

 private:
  int genus_;
  std::vector<std::string> names_;
  std::map<std::string, int> index_;
  std::map<std::string, IVec> hom_;
  std::map<std::pair<std::string, std::string>, int> geom_;
  std::vector<Chain> chains_;
};

// The default curve system: the 2g+1 generator configuration b1, a1, c1,
// a2, ..., c_{g-1}, a_g, b2 (b2 present for g >= 2) plus the boundary-parallel
// curve d, with the full spine chain registered against d.
CurveSystem default_humphries_system(int genus);

// The default system enriched with the standard short chains: the 3-chain
// {b1, a1, c1} with boundary curves d1, d2 (g >= 2) and the conjugated chain
// {b2(a2), c2, a3} with boundary curves e1, e2 (g >= 3).
CurveSystem extended_humphries_system(int genus);

// The blue subsystem: the curves along the spine chain b1,a1,c1,...,a_g.
std::vector<std::string> blue_curves(int genus);

CurveSystem curve_system_from_json(const std::string& json_text);
std::string curve_system_to_json(const CurveSystem& sys);

}  // namespace obk
