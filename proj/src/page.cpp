#include "obk/page.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include <json.hpp>

namespace obk {

using nlohmann::json;

bool PageGraph::has_node(const std::string& name) const {
  return std::any_of(nodes.begin(), nodes.end(),
                     [&](const auto& p) { return p.first == name; });
}

const BaseLabel& PageGraph::node(const std::string& name) const {
  for (const auto& p : nodes)
    if (p.first == name) return p.second;
  throw Error("unknown page node: " + name);
}

void PageGraph::add_node(const std::string& name, BaseLabel base) {
  if (has_node(name)) throw Error("duplicate page node: " + name);
  nodes.emplace_back(name, std::move(base));
}

void PageGraph::add_edge(const std::string& a, const std::string& b, EdgeKind kind) {
  node(a);
  node(b);
  edges.push_back(PageEdge{a, b, kind});
}

bool PageGraph::adjacent(const std::string& a, const std::string& b) const {
  for (const auto& e : edges)
    if ((e.a == a && e.b == b) || (e.a == b && e.b == a)) return true;
  return false;
}

int PageGraph::node_rank(const std::string& name) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].first == name) return static_cast<int>(i);
  throw Error("unknown page node: " + name);
}

bool PageGraph::connected() const {
  if (nodes.empty()) return false;
  std::set<std::string> seen{nodes.front().first};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& e : edges) {
      if (seen.count(e.a) && !seen.count(e.b)) seen.insert(e.b), grew = true;
      if (seen.count(e.b) && !seen.count(e.a)) seen.insert(e.a), grew = true;
    }
  }
  return seen.size() == nodes.size();
}

void PageGraph::validate() const {
  if (nodes.empty()) throw Error("page graph has no nodes");
  if (dim < 2 || dim % 2 != 0) throw Error("page dimension must be even and positive");
  for (const auto& [name, base] : nodes) {
    if (base.n < 1) throw Error("node " + name + ": base dimension must be >= 1");
    if (2 * base.n != dim) throw Error("node " + name + ": base dimension does not match page");
  }
  for (const auto& e : edges) {
    if (!has_node(e.a) || !has_node(e.b)) throw Error("edge references unknown node");
    if (e.a == e.b) throw Error("self-edges are not allowed");
  }
  if (!connected()) throw Error("page graph is disconnected");
}

Diagnostic validate_type1(const OpenBook& ob) {
  try {
    ob.page.validate();
  } catch (const Error& e) {
    return {false, e.what()};
  }
  for (const auto& l : ob.monodromy.letters()) {
    if (l.curve.is_image())
      return {false, "monodromy letter " + format_letter(l) + " is not a node twist"};
    if (!ob.page.has_node(l.curve.name))
      return {false, "monodromy letter on unknown node " + l.curve.name};
    if (ob.page.node(l.curve.name).kind != BaseLabel::Kind::Sphere)
      return {false, "monodromy twists non-sphere node " + l.curve.name};
  }
  return {true, ""};
}

namespace {

std::string fresh_name(const PageGraph& page, const std::string& stem) {
  for (int i = 1;; ++i) {
    std::string candidate = stem + std::to_string(i);
    if (!page.has_node(candidate)) return candidate;
  }
}

}  // namespace

OpenBook stabilize(const OpenBook& ob, int sign, const std::string& attach) {
  if (sign != 1 && sign != -1) throw Error("stabilization sign must be +1 or -1");
  ob.page.node(attach);  // throws on unknown node
  OpenBook out = ob;
  std::string name = fresh_name(out.page, "stab");
  out.page.add_node(name, BaseLabel::sphere(out.page.n()));
  out.page.add_edge(attach, name, EdgeKind::Plumb);
  out.monodromy = out.monodromy.concat(TwistWord::of({Letter{CurveRef::plain(name), sign}}));
  return out;
}

OpenBook connected_sum(const OpenBook& ob1, const OpenBook& ob2) {
  if (ob1.page.dim != ob2.page.dim) throw Error("connected sum needs equal page dimensions");
  OpenBook out;
  out.page.dim = ob1.page.dim;
  for (const auto& [name, base] : ob1.page.nodes) out.page.add_node(name, base);
  std::map<std::string, std::string> rename;
  for (const auto& [name, base] : ob2.page.nodes) {
    std::string use = name;
    int suffix = 2;
    while (out.page.has_node(use)) use = name + "_" + std::to_string(suffix++);
    rename[name] = use;
    out.page.add_node(use, base);
  }
  out.page.edges = ob1.page.edges;
  for (const auto& e : ob2.page.edges)
    out.page.edges.push_back(PageEdge{rename.at(e.a), rename.at(e.b), e.kind});

  auto least = [](const PageGraph& p, const std::map<std::string, std::string>* map) {
    std::string best;
    for (const auto& [name, base] : p.nodes) {
      std::string use = map ? map->at(name) : name;
      if (best.empty() || use < best) best = use;
    }
    return best;
  };
  out.page.add_edge(least(ob1.page, nullptr), least(ob2.page, &rename), EdgeKind::BSum);

  std::vector<Letter> word = ob1.monodromy.letters();
  for (const auto& l : ob2.monodromy.letters()) {
    if (l.curve.is_image()) throw Error("open book monodromy cannot use image curves");
    word.push_back(Letter{CurveRef::plain(rename.at(l.curve.name)), l.power});
  }
  out.monodromy = TwistWord::of(std::move(word));
  return out;
}

TwistWord normalize(const PageGraph& page, const TwistWord& w) {
  DisjointnessFn disjoint = [&page](const CurveRef& a, const CurveRef& b) -> std::optional<int> {
    if (a.is_image() || b.is_image()) return std::nullopt;
    if (a.name == b.name) return 0;
    // zero sections of distinct nodes meet iff the nodes are plumbed
    bool plumbed = false;
    for (const auto& e : page.edges)
      if (e.kind == EdgeKind::Plumb &&
          ((e.a == a.name && e.b == b.name) || (e.a == b.name && e.b == a.name)))
        plumbed = true;
    return plumbed ? 1 : 0;
  };
  CurveOrder order{[&page](const std::string& n) { return page.node_rank(n); }};
  return normalize(w, disjoint, order);
}

namespace {

// All label- and edge-preserving node bijections page1 -> page2.
bool find_isomorphism(const PageGraph& p1, const PageGraph& p2,
                      const std::function<bool(const std::map<std::string, std::string>&)>& accept) {
  if (p1.nodes.size() != p2.nodes.size() || p1.edges.size() != p2.edges.size()) return false;

  auto edge_multiset = [](const PageGraph& p, const std::map<std::string, std::string>* map) {
    std::multiset<std::tuple<std::string, std::string, int>> s;
    for (const auto& e : p.edges) {
      std::string a = map ? map->at(e.a) : e.a;
      std::string b = map ? map->at(e.b) : e.b;
      if (b < a) std::swap(a, b);
      s.insert({a, b, static_cast<int>(e.kind)});
    }
    return s;
  };
  auto target_edges = edge_multiset(p2, nullptr);

  std::map<std::string, std::string> assignment;
  std::set<std::string> used;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == p1.nodes.size()) {
      if (edge_multiset(p1, &assignment) != target_edges) return false;
      return accept(assignment);
    }
    const auto& [name, base] = p1.nodes[i];
    for (const auto& [cand, cbase] : p2.nodes) {
      if (used.count(cand) || !(cbase == base)) continue;
      assignment[name] = cand;
      used.insert(cand);
      if (rec(i + 1)) return true;
      assignment.erase(name);
      used.erase(cand);
    }
    return false;
  };
  return rec(0);
}

}  // namespace

bool equivalent_cyclic(const OpenBook& ob1, const OpenBook& ob2) {
  if (ob1.page.nodes.size() > 12 || ob2.page.nodes.size() > 12)
    throw Error("cyclic equivalence search is limited to 12 nodes");
  TwistWord w2 = normalize(ob2.page, ob2.monodromy);
  return find_isomorphism(ob1.page, ob2.page, [&](const std::map<std::string, std::string>& iso) {
    std::vector<Letter> mapped;
    for (const auto& l : ob1.monodromy.letters()) {
      if (l.curve.is_image()) return false;
      mapped.push_back(Letter{CurveRef::plain(iso.at(l.curve.name)), l.power});
    }
    TwistWord w1 = normalize(ob2.page, TwistWord::of(std::move(mapped)));
    std::size_t len = std::max<std::size_t>(w2.size(), 1);
    for (std::size_t r = 0; r < len; ++r)
      if (normalize(ob2.page, w2.rotated(r)) == w1) return true;
    return false;
  });
}

bool detect_negative_stabilization(const OpenBook& ob) {
  for (const auto& [name, base] : ob.page.nodes) {
    if (base.kind != BaseLabel::Kind::Sphere) continue;
    int occurrences = 0;
    long long power = 0;
    for (const auto& l : ob.monodromy.letters())
      if (!l.curve.is_image() && l.curve.name == name) {
        ++occurrences;
        power = l.power;
      }
    bool one_negative_twist = occurrences == 1 && power == -1;
    if (!one_negative_twist) continue;

    if (ob.page.nodes.size() == 1) return true;  // a negatively stabilized disk
    int plumb_degree = 0, other_degree = 0;
    for (const auto& e : ob.page.edges) {
      if (e.a != name && e.b != name) continue;
      (e.kind == EdgeKind::Plumb ? plumb_degree : other_degree)++;
    }
    if (plumb_degree == 1 && other_degree == 0) return true;
  }
  return false;
}

OpenBook catalog(const CatalogRequest& req) {
  OpenBook ob;
  if (req.which == "xi_n") {
    if (req.n < 1) throw Error("xi_n needs n >= 1");
    ob.page.dim = 2;
    std::vector<Letter> word;
    for (int i = 1; i <= req.n; ++i) {
      std::string name = "v" + std::to_string(i);
      ob.page.add_node(name, BaseLabel::sphere(1));
      if (i > 1) ob.page.add_edge("v" + std::to_string(i - 1), name, EdgeKind::Plumb);
      word.push_back(Letter{CurveRef::plain(name), -1});
    }
    ob.monodromy = TwistWord::of(word);
  } else if (req.which == "rp3") {
    ob.page.dim = 2;
    ob.page.add_node("v1", BaseLabel::sphere(1));
    ob.monodromy = TwistWord::of({Letter{CurveRef::plain("v1"), 2}});
  } else if (req.which == "ustilovsky") {
    if (req.m < 2) throw Error("ustilovsky needs m >= 2");
    if (req.k % 2 == 0) throw Error("ustilovsky twist power must be odd");
    ob.page.dim = 4 * req.m;
    ob.page.add_node("v1", BaseLabel::sphere(2 * req.m));
    ob.monodromy = TwistWord::of({Letter{CurveRef::plain("v1"), req.k}});
  } else if (req.which == "std_sphere") {
    if (req.n < 1) throw Error("std_sphere needs n >= 1");
    ob.page.dim = 2 * req.n;
    ob.page.add_node("v1", BaseLabel::sphere(req.n));
    ob.monodromy = TwistWord::of({Letter{CurveRef::plain("v1"), 1}});
  } else {
    throw Error("unknown catalog entry: " + req.which);
  }
  return ob;
}

std::pair<PageGraph, std::map<std::string, std::string>> surface_to_page(int genus) {
  if (genus < 1) throw Error("genus must be at least 1");
  PageGraph page;
  page.dim = 2;
  std::map<std::string, std::string> alphabet;
  std::vector<std::string> spine = blue_curves(genus);
  for (std::size_t i = 0; i < spine.size(); ++i) {
    page.add_node(spine[i], BaseLabel::sphere(1));
    if (i > 0) page.add_edge(spine[i - 1], spine[i], EdgeKind::Plumb);
    alphabet[spine[i]] = spine[i];
  }
  return {page, alphabet};
}

namespace {

json base_to_json(const BaseLabel& b) {
  json j;
  j["kind"] = b.kind == BaseLabel::Kind::Sphere ? "sphere" : "hypersurface";
  j["n"] = b.n;
  if (!b.label.empty()) j["label"] = b.label;
  return j;
}

BaseLabel base_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  int n = j.at("n").get<int>();
  if (kind == "sphere") return BaseLabel::sphere(n);
  if (kind == "hypersurface") return BaseLabel::hypersurface(j.value("label", "V"), n);
  throw ParseError("unknown base kind: " + kind);
}

}  // namespace

std::string open_book_to_json(const OpenBook& ob) {
  json j;
  j["dim"] = ob.page.dim;
  j["nodes"] = json::array();
  for (const auto& [name, base] : ob.page.nodes)
    j["nodes"].push_back({{"name", name}, {"base", base_to_json(base)}});
  j["edges"] = json::array();
  for (const auto& e : ob.page.edges)
    j["edges"].push_back(
        {{"a", e.a}, {"b", e.b}, {"kind", e.kind == EdgeKind::Plumb ? "plumb" : "bsum"}});
  j["monodromy"] = format_word(ob.monodromy);
  return j.dump(2);
}

OpenBook open_book_from_json(const std::string& text) {
  json j = json::parse(text);
  OpenBook ob;
  ob.page.dim = j.at("dim").get<int>();
  for (const auto& node : j.at("nodes"))
    ob.page.add_node(node.at("name").get<std::string>(), base_from_json(node.at("base")));
  for (const auto& e : j.value("edges", json::array())) {
    std::string kind = e.at("kind").get<std::string>();
    if (kind != "plumb" && kind != "bsum") throw ParseError("unknown edge kind: " + kind);
    ob.page.add_edge(e.at("a").get<std::string>(), e.at("b").get<std::string>(),
                     kind == "plumb" ? EdgeKind::Plumb : EdgeKind::BSum);
  }
  ob.monodromy = parse_word(j.value("monodromy", ""));
  return ob;
}

}  // namespace obk
