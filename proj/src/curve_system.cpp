#include "obk/curve_system.hpp"

#include <algorithm>

#include <json.hpp>

#include "obk/sp.hpp"

namespace obk {

using nlohmann::json;

CurveSystem::CurveSystem(int genus, std::vector<std::string> curve_names)
    : genus_(genus), names_(std::move(curve_names)) {
  if (genus < 1) throw Error("genus must be at least 1");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (index_.count(names_[i])) throw Error("duplicate curve name: " + names_[i]);
    index_[names_[i]] = static_cast<int>(i);
  }
}

bool CurveSystem::has_curve(const std::string& name) const { return index_.count(name) > 0; }

int CurveSystem::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw Error("unknown curve: " + name);
  return it->second;
}

void CurveSystem::add_curve(const std::string& name) {
  if (index_.count(name)) throw Error("duplicate curve name: " + name);
  index_[name] = static_cast<int>(names_.size());
  names_.push_back(name);
}

void CurveSystem::set_hom_class(const std::string& curve, IVec cls) {
  index_of(curve);
  if (cls.size() != 2 * genus_) throw Error("homology class must have length 2g");
  hom_[curve] = std::move(cls);
}

const IVec& CurveSystem::hom_class(const std::string& curve) const {
  auto it = hom_.find(curve);
  if (it == hom_.end()) throw Error("no homology class for curve: " + curve);
  return it->second;
}

IVec CurveSystem::hom_class(const CurveRef& c) const {
  const IVec& base = hom_class(c.name);
  if (!c.is_image()) return base;
  IMat frame = rho(*this, TwistWord::of(c.frame));
  return (frame * base).eval();
}

void CurveSystem::set_geom_int(const std::string& a, const std::string& b, int value) {
  index_of(a);
  index_of(b);
  if (value < 0) throw Error("geometric intersection numbers are non-negative");
  geom_[std::minmax(a, b)] = value;
}

std::optional<int> CurveSystem::geom_int(const CurveRef& a, const CurveRef& b) const {
  if (a == b) return 0;  // simple closed curves are disjoint from themselves
  if (a.is_image()) {
    // i(f(c), b) = i(c, f^{-1}(b)) = i(c, b) whenever every twist in f is
    // along a curve disjoint from b.
    for (const auto& l : a.frame) {
      auto i = geom_int(l.curve, b);
      if (!i || *i != 0) return std::nullopt;
    }
    return geom_int(CurveRef::plain(a.name), b);
  }
  if (b.is_image()) return geom_int(b, a);
  index_of(a.name);
  index_of(b.name);
  auto it = geom_.find(std::minmax(a.name, b.name));
  if (it == geom_.end()) return std::nullopt;
  return it->second;
}

Int CurveSystem::pairing(const IVec& u, const IVec& v) const {
  IMat j = symplectic_form(genus_);
  return (u.transpose() * j * v).eval()(0, 0);
}

void CurveSystem::register_chain(Chain chain) {
  if (chain.members.size() < 2) throw Error("chain needs at least two members");
  std::size_t want_boundary = chain.odd() ? 2 : 1;
  if (chain.boundary.size() != want_boundary)
    throw Error("chain " + chain.name + ": expected " + std::to_string(want_boundary) +
                " boundary curve(s)");
  for (const auto& b : chain.boundary) index_of(b);

  for (std::size_t i = 0; i < chain.members.size(); ++i) {
    for (std::size_t j = i + 1; j < chain.members.size(); ++j) {
      auto gi = geom_int(chain.members[i], chain.members[j]);
      int want = (j == i + 1) ? 1 : 0;
      if (!gi) throw Error("chain " + chain.name + ": unknown intersection between members");
      if (*gi != want)
        throw Error("chain " + chain.name + ": members must meet consecutively once");
    }
  }

  // Homology-level consistency: rho(chain word)^power equals the product of
  // the boundary twists.
  std::vector<Letter> letters;
  for (const auto& m : chain.members) letters.push_back(Letter{m, 1});
  IMat lhs = int_pow(rho(*this, TwistWord::of(letters)), chain.relation_power());
  IMat rhs = int_identity(2 * genus_);
  for (const auto& b : chain.boundary)
    rhs = (rhs * transvection(hom_class(b), 1, genus_)).eval();
  if (!int_equal(lhs, rhs))
    throw Error("chain " + chain.name + ": homology-level chain relation fails");

  chains_.push_back(std::move(chain));
}

const Chain& CurveSystem::chain(const std::string& name) const {
  for (const auto& c : chains_)
    if (c.name == name) return c;
  throw Error("no registered chain named " + name);
}

CurveOrder CurveSystem::order() const {
  return CurveOrder{[this](const std::string& n) { return index_of(n); }};
}

void CurveSystem::validate() const {
  for (const auto& [pair, gi] : geom_) {
    auto ha = hom_.find(pair.first);
    auto hb = hom_.find(pair.second);
    if (ha == hom_.end() || hb == hom_.end()) continue;
    Int alg = pairing(ha->second, hb->second);
    if (abs(alg) > gi)
      throw Error("curves " + pair.first + "," + pair.second +
                  ": |algebraic| exceeds geometric intersection");
  }
  for (const auto& c : chains_) {
    CurveSystem copy = *this;
    copy.chains_.clear();
    copy.register_chain(c);  // re-runs all chain checks
  }
}

std::vector<std::string> blue_curves(int genus) {
  std::vector<std::string> spine = {"b1", "a1"};
  for (int i = 1; i < genus; ++i) {
    spine.push_back("c" + std::to_string(i));
    spine.push_back("a" + std::to_string(i + 1));
  }
  return spine;
}

CurveSystem default_humphries_system(int genus) {
  if (genus < 1) throw Error("genus must be at least 1");
  const int g = genus;

  std::vector<std::string> names = blue_curves(g);
  if (g >= 2) names.push_back("b2");
  names.push_back("d");

  CurveSystem sys(g, names);

  auto unit = [g](int idx) {
    IVec v = IVec::Zero(2 * g);
    v(idx) = 1;
    return v;
  };
  // alpha_i at index i-1, beta_i at index g+i-1.
  for (int i = 1; i <= g; ++i) sys.set_hom_class("a" + std::to_string(i), unit(i - 1));
  sys.set_hom_class("b1", unit(g));
  if (g >= 2) sys.set_hom_class("b2", unit(g + 1));
  for (int i = 1; i < g; ++i) {
    IVec v = IVec::Zero(2 * g);
    v(g + i - 1) = 1;
    v(g + i) = 1;
    sys.set_hom_class("c" + std::to_string(i), v);
  }
  sys.set_hom_class("d", IVec::Zero(2 * g));

  std::vector<std::string> spine = blue_curves(g);

  // Generators: consecutive spine curves meet once, b2 meets a2 once,
  // everything else is disjoint.
  std::vector<std::string> gens = spine;
  if (g >= 2) gens.push_back("b2");
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) sys.set_geom_int(gens[i], gens[j], 0);
  for (std::size_t i = 0; i + 1 < spine.size(); ++i) sys.set_geom_int(spine[i], spine[i + 1], 1);
  if (g >= 2) sys.set_geom_int("b2", "a2", 1);

  // d is parallel to the surface boundary, hence disjoint from everything.
  for (const auto& n : names)
    if (n != "d") sys.set_geom_int("d", n, 0);

  Chain full;
  full.name = "spine";
  for (const auto& n : spine) full.members.push_back(CurveRef::plain(n));
  full.boundary = {"d"};
  sys.register_chain(full);

  sys.validate();
  return sys;
}

CurveSystem extended_humphries_system(int genus) {
  CurveSystem sys = default_humphries_system(genus);
  const int g = genus;
  auto unit = [g](int idx) {
    IVec v = IVec::Zero(2 * g);
    v(idx) = 1;
    return v;
  };
  std::vector<std::string> gens = blue_curves(g);
  if (g >= 2) gens.push_back("b2");

  if (g >= 2) {
    // d1, d2 bound a neighborhood of b1 u a1 u c1; among the generators only
    // a2 enters it.
    sys.add_curve("d1");
    sys.add_curve("d2");
    sys.set_hom_class("d1", unit(g + 1));
    sys.set_hom_class("d2", (-unit(g + 1)).eval());
    sys.set_geom_int("d1", "d2", 0);
    sys.set_geom_int("d1", "d", 0);
    sys.set_geom_int("d2", "d", 0);
    for (const auto& n : gens) {
      int v = n == "a2" ? 1 : 0;
      sys.set_geom_int("d1", n, v);
      sys.set_geom_int("d2", n, v);
    }
    Chain three{"d-chain",
                {CurveRef::plain("b1"), CurveRef::plain("a1"), CurveRef::plain("c1")},
                {"d1", "d2"}};
    sys.register_chain(three);
  }
  if (g >= 3) {
    // e1, e2 bound a neighborhood of b2(a2) u c2 u a3. Generators meeting a
    // member (c1, a2, b2, c3) keep an unrecorded intersection with them.
    IVec v = IVec::Zero(2 * g);
    v(1) = 1;
    v(2) = -1;
    v(g + 1) = 1;
    sys.add_curve("e1");
    sys.add_curve("e2");
    sys.set_hom_class("e1", v);
    sys.set_hom_class("e2", (-v).eval());
    sys.set_geom_int("e1", "e2", 0);
    sys.set_geom_int("e1", "d", 0);
    sys.set_geom_int("e2", "d", 0);
    for (const auto& n : gens) {
      bool crosses_member = n == "c1" || n == "a2" || n == "b2" || n == "c3";
      if (crosses_member) continue;
      sys.set_geom_int("e1", n, 0);
      sys.set_geom_int("e2", n, 0);
    }
    CurveRef image{"a2", {Letter{CurveRef::plain("b2"), 1}}};
    Chain echain{"e-chain", {image, CurveRef::plain("c2"), CurveRef::plain("a3")}, {"e1", "e2"}};
    sys.register_chain(echain);
  }

  sys.validate();
  return sys;
}

CurveSystem curve_system_from_json(const std::string& json_text) {
  json doc = json::parse(json_text);
  int genus = doc.at("genus").get<int>();
  std::vector<std::string> names;
  for (const auto& c : doc.at("curves")) names.push_back(c.at("name").get<std::string>());
  CurveSystem sys(genus, names);
  for (const auto& c : doc.at("curves")) {
    IVec v = IVec::Zero(2 * genus);
    const auto& hom = c.at("hom");
    if (static_cast<int>(hom.size()) != 2 * genus)
      throw ParseError("homology class length must be 2*genus");
    for (int i = 0; i < 2 * genus; ++i) v(i) = Int(hom[i].get<long>());
    sys.set_hom_class(c.at("name").get<std::string>(), v);
  }
  if (doc.contains("intersections"))
    for (const auto& e : doc.at("intersections"))
      sys.set_geom_int(e.at("a").get<std::string>(), e.at("b").get<std::string>(),
                       e.at("i").get<int>());
  if (doc.contains("chains"))
    for (const auto& ch : doc.at("chains")) {
      Chain chain;
      chain.name = ch.value("name", "chain");
      for (const auto& m : ch.at("members")) {
        TwistWord w = parse_word(m.get<std::string>());
        if (w.size() != 1 || w.letters()[0].power != 1)
          throw ParseError("chain member must be a single unpowered curve");
        chain.members.push_back(w.letters()[0].curve);
      }
      for (const auto& b : ch.at("boundary")) chain.boundary.push_back(b.get<std::string>());
      sys.register_chain(chain);
    }
  sys.validate();
  return sys;
}

std::string curve_system_to_json(const CurveSystem& sys) {
  json doc;
  doc["genus"] = sys.genus();
  doc["curves"] = json::array();
  for (const auto& n : sys.curves()) {
    json c;
    c["name"] = n;
    c["hom"] = json::array();
    const IVec& v = sys.hom_class(n);
    for (Eigen::Index i = 0; i < v.size(); ++i) c["hom"].push_back(v(i).get_si());
    doc["curves"].push_back(c);
  }
  doc["intersections"] = json::array();
  const auto& names = sys.curves();
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j) {
      auto gi = sys.geom_int(CurveRef::plain(names[i]), CurveRef::plain(names[j]));
      if (gi) doc["intersections"].push_back({{"a", names[i]}, {"b", names[j]}, {"i", *gi}});
    }
  doc["chains"] = json::array();
  for (const auto& ch : sys.chains()) {
    json c;
    c["name"] = ch.name;
    c["members"] = json::array();
    for (const auto& m : ch.members) c["members"].push_back(format_letter(Letter{m, 1}));
    c["boundary"] = ch.boundary;
    doc["chains"].push_back(c);
  }
  return doc.dump(2);
}

}  // namespace obk
