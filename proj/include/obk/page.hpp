#pragma once

// Abstract open books: pages are graphs of disk cotangent bundles joined by
// plumbing or boundary-connected-sum edges; monodromies are twist words over
// the sphere-base node names.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "obk/rewrite.hpp"
#include "obk/words.hpp"

namespace obk {

struct BaseLabel {
  enum class Kind { Sphere, Hypersurface };
  Kind kind = Kind::Sphere;
  int n = 1;          // base dimension; the node is DT* of the base
  std::string label;  // hypersurface name, empty for spheres

  bool operator==(const BaseLabel&) const = default;
  static BaseLabel sphere(int n) { return BaseLabel{Kind::Sphere, n, ""}; }
  static BaseLabel hypersurface(std::string name, int n) {
    return BaseLabel{Kind::Hypersurface, n, std::move(name)};
  }
};

enum class EdgeKind { Plumb, BSum };

struct PageEdge {
  std::string a, b;
  EdgeKind kind = EdgeKind::Plumb;
  bool operator==(const PageEdge&) const = default;
};

struct PageGraph {
  int dim = 2;  // fiber dimension 2n shared by all nodes
  std::vector<std::pair<std::string, BaseLabel>> nodes;  // insertion-ordered
  std::vector<PageEdge> edges;

  int n() const { return dim / 2; }
  bool has_node(const std::string& name) const;
  const BaseLabel& node(const std::string& name) const;
  void add_node(const std::string& name, BaseLabel base);
  void add_edge(const std::string& a, const std::string& b, EdgeKind kind);
  bool connected() const;
  bool adjacent(const std::string& a, const std::string& b) const;
  int node_rank(const std::string& name) const;

  // Throws Error describing the first structural violation (dimension
  // mismatch, dangling edge, disconnected graph).
  void validate() const;
};

struct OpenBook {
  PageGraph page;
  TwistWord monodromy;
};

struct Diagnostic {
  bool ok = true;
  std::string message;
};

// Type-1 check: all nodes are DT* of spheres or of hypersurfaces of S^{n+1}
// with one shared n, and every monodromy letter twists a sphere node.
Diagnostic validate_type1(const OpenBook& ob);

// Plumb a fresh sphere node onto `attach` and post-compose the monodromy
// with a single +1/-1 twist on it.
OpenBook stabilize(const OpenBook& ob, int sign, const std::string& attach);

// Pages joined by one boundary-connected-sum edge between the
// lexicographically least nodes; monodromies concatenated. Colliding node
// names from the right operand get a numeric suffix.
OpenBook connected_sum(const OpenBook& ob1, const OpenBook& ob2);

// True iff some base-label graph isomorphism carries the normalized
// monodromy of ob1 to a cyclic rotation of the normalized monodromy of ob2.
bool equivalent_cyclic(const OpenBook& ob1, const OpenBook& ob2);

// Sound, incomplete overtwistedness check: a sphere leaf attached by one
// plumb edge whose only monodromy occurrence is a single -1 twist (the
// one-node page with monodromy exactly one -1 twist also counts).
bool detect_negative_stabilization(const OpenBook& ob);

struct CatalogRequest {
  std::string which;  // xi_n | rp3 | ustilovsky | std_sphere
  int n = 1;          // xi_n copies / sphere dimension
  int m = 2;          // ustilovsky parameter
  long long k = 1;    // ustilovsky twist power
};

OpenBook catalog(const CatalogRequest& req);

// The 2g-node linear plumbing chain carrying a surface monodromy word over
// the spine curves; returns the page and the curve-to-node name map.
std::pair<PageGraph, std::map<std::string, std::string>> surface_to_page(int genus);

// Word normalization over a page: twists on non-plumbed nodes commute.
TwistWord normalize(const PageGraph& page, const TwistWord& w);

std::string open_book_to_json(const OpenBook& ob);
OpenBook open_book_from_json(const std::string& text);

}  // namespace obk
