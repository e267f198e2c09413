#include <doctest.h>

#include <cmath>

#include "obk/report.hpp"

using namespace obk;

namespace {

NumericConfig fast() {
  NumericConfig cfg;
  cfg.samples = 200;
  cfg.seed = 11;
  return cfg;
}

const AmbientTwist* corrective_of(const ScheduleBlock& block) {
  bool seen_away = false;
  for (const auto& s : block.steps) {
    if (std::holds_alternative<IsotopeAway>(s)) seen_away = true;
    if (seen_away)
      if (const auto* t = std::get_if<AmbientTwist>(&s)) return t;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("synth_single_node structure") {
  EmbeddingCertificate cert = synth_single_node(1, 2, 1);
  CHECK(cert.source.page.dim == 2);
  CHECK(cert.target.page.dim == 4);
  CHECK(cert.source.monodromy == parse_word("v1^2"));
  CHECK(cert.target.monodromy == parse_word("v1"));
  REQUIRE(cert.schedule.size() == 1);
  const auto& steps = cert.schedule[0].steps;
  REQUIRE(steps.size() == 6);
  CHECK(std::get<AmbientTwist>(steps[0]).power == 2);
  CHECK(std::get<IsotopeAway>(steps[1]).eps == doctest::Approx(0.2));
  CHECK(std::get<AmbientTwist>(steps[2]).power == -1);
  CHECK(std::get<AmbientTwist>(steps[2]).support == doctest::Approx(0.05));
  CHECK(std::holds_alternative<IsotopeBack>(steps[3]));
  CHECK(std::holds_alternative<ExtendIsotopy>(steps[4]));
  CHECK(std::holds_alternative<GlueMappingTorus>(steps[5]));
  CHECK(cert.schedule[0].t0 == doctest::Approx(1.0 / 3.0));
  CHECK(cert.schedule[0].t1 == doctest::Approx(2.0 / 3.0));

  // degenerate identity certificate still carries both twist steps
  EmbeddingCertificate zero = synth_single_node(1, 0, 0);
  const auto& zsteps = zero.schedule[0].steps;
  CHECK(std::get<AmbientTwist>(zsteps[0]).power == 0);
  CHECK(std::get<AmbientTwist>(zsteps[2]).power == 0);
  CHECK(zero.target.monodromy.empty());
}

TEST_CASE("synth_type1 over a plumbing of two spheres") {
  CatalogRequest xi;
  xi.which = "xi_n";
  xi.n = 2;
  OpenBook ob = catalog(xi);
  EmbeddingCertificate cert = synth_type1(ob);
  CHECK(cert.target.page.nodes.size() == 2);
  for (const auto& [name, base] : cert.target.page.nodes) {
    CHECK(base.kind == BaseLabel::Kind::Sphere);
    CHECK(base.n == 2);
  }
  CHECK(cert.target.monodromy == parse_word("v1 v2"));
  REQUIRE(cert.schedule.size() == 2);
  // disjoint intervals, ordered, summing to less than 1
  double total = 0.0;
  for (std::size_t i = 0; i < cert.schedule.size(); ++i) {
    CHECK(cert.schedule[i].t0 < cert.schedule[i].t1);
    if (i) CHECK(cert.schedule[i - 1].t1 < cert.schedule[i].t0);
    total += cert.schedule[i].t1 - cert.schedule[i].t0;
  }
  CHECK(total < 1.0);
  // per-node corrective power: 1 - (-1) = 2
  CHECK(corrective_of(cert.schedule[0])->power == 2);

  // promotion preserves the page graph
  CHECK(cert.target.page.edges.size() == ob.page.edges.size());

  // one-node specialization agrees with synth_single_node(n, k, 1)
  OpenBook single;
  single.page.dim = 4;
  single.page.add_node("v1", BaseLabel::sphere(2));
  single.monodromy = parse_word("v1^3");
  EmbeddingCertificate a = synth_type1(single);
  EmbeddingCertificate b = synth_single_node(2, 3, 1);
  CHECK(certificate_to_json(a) != "");
  CHECK(a.schedule.size() == b.schedule.size());
  CHECK(corrective_of(a.schedule[0])->power == corrective_of(b.schedule[0])->power);
  CHECK(a.target.monodromy == b.target.monodromy);
}

TEST_CASE("synth_type1 hypersurface nodes get no leading twist") {
  OpenBook ob;
  ob.page.dim = 4;
  ob.page.add_node("s", BaseLabel::sphere(2));
  ob.page.add_node("h", BaseLabel::hypersurface("V", 2));
  ob.page.add_edge("s", "h", EdgeKind::BSum);
  ob.monodromy = parse_word("s^2");
  EmbeddingCertificate cert = synth_type1(ob);
  REQUIRE(cert.schedule.size() == 2);
  const auto& hsteps = cert.schedule[1].steps;
  CHECK(std::holds_alternative<IsotopeAway>(hsteps[0]));  // no leading AmbientTwist
  CHECK(std::get<AmbientTwist>(hsteps[1]).power == 1);
  // hypersurface promotes to a sphere
  CHECK(cert.target.page.node("h").kind == BaseLabel::Kind::Sphere);

  OpenBook bad = ob;
  bad.monodromy = parse_word("h");
  CHECK_THROWS_AS(synth_type1(bad), Error);
}

TEST_CASE("synth_surface") {
  EmbeddingCertificate cert = synth_surface(1, parse_word("a1 b1"));
  CHECK(cert.source.page.nodes.size() == 2);
  CHECK(cert.target.page.nodes.size() == 2);
  for (const auto& [name, base] : cert.target.page.nodes) CHECK(base.n == 2);

  CHECK_THROWS_AS(synth_surface(2, parse_word("b2")), Error);
  CHECK_THROWS_AS(synth_surface(2, parse_word("b2(a2)")), Error);
  try {
    synth_surface(2, parse_word("b2"));
  } catch (const Error& e) {
    std::string msg = e.what();
    CHECK(msg.find("b2") != std::string::npos);
    CHECK(msg.find("not a proof") != std::string::npos);
  }

  // empty word: valid, no leading twists with nonzero power
  EmbeddingCertificate empty = synth_surface(2, TwistWord());
  CHECK(empty.schedule.size() == 4);
  for (const auto& block : empty.schedule) {
    const auto* lead = std::get_if<AmbientTwist>(&block.steps[0]);
    REQUIRE(lead != nullptr);
    CHECK(lead->power == 0);
  }

  // image curves over the spine are allowed and expanded
  EmbeddingCertificate conj = synth_surface(2, parse_word("a1(b1)"));
  long long net_b1 = 0;
  for (const auto& l : conj.source.monodromy.letters())
    if (l.curve.name == "b1") net_b1 += l.power;
  CHECK(net_b1 == 1);
}

TEST_CASE("the rp3 instance matches the catalogs") {
  EmbeddingCertificate cert = synth_single_node(1, 2, 1);
  CatalogRequest rp;
  rp.which = "rp3";
  CHECK(equivalent_cyclic(cert.source, catalog(rp)));
  CatalogRequest sphere;
  sphere.which = "std_sphere";
  sphere.n = 2;
  CHECK(equivalent_cyclic(cert.target, catalog(sphere)));
  CHECK(cert.metadata.count("presentation") == 1);
}

TEST_CASE("broken node maps are structural failures") {
  NumericConfig cfg = fast();
  EmbeddingCertificate cert = synth_single_node(1, 1, 1);

  EmbeddingCertificate missing = cert;
  missing.node_map.clear();
  Report rep = check_certificate(missing, cfg);
  CHECK(!rep.pass);
  CHECK(rep.obligations[0].detail.find("node map") != std::string::npos);

  EmbeddingCertificate wrong_dim = cert;
  wrong_dim.target.page.nodes[0].second = BaseLabel::sphere(3);
  wrong_dim.target.page.dim = 6;
  rep = check_certificate(wrong_dim, cfg);
  CHECK(!rep.pass);

  EmbeddingCertificate demoted = cert;
  demoted.target.page.nodes[0].second = BaseLabel::hypersurface("V", 2);
  rep = check_certificate(demoted, cfg);
  CHECK(!rep.pass);
  CHECK(rep.obligations[0].detail.find("promote") != std::string::npos);
}

TEST_CASE("certificate json round trip") {
  EmbeddingCertificate cert = synth_single_node(2, -1, 1);
  std::string doc = certificate_to_json(cert);
  EmbeddingCertificate back = certificate_from_json(doc);
  CHECK(certificate_to_json(back) == doc);
  CHECK(back.schedule.size() == cert.schedule.size());
  CHECK(back.eps == cert.eps);
  CHECK(back.source.monodromy == cert.source.monodromy);
}

TEST_CASE("check_certificate passes synthesized certificates") {
  NumericConfig cfg = fast();
  for (auto [n, k, l] : {std::tuple<int, long long, long long>{1, 2, 1},
                         {1, -1, 1},
                         {2, -1, 1},
                         {1, 0, 0}}) {
    Report rep = check_certificate(synth_single_node(n, k, l), cfg);
    CHECK(rep.pass);
  }
  CatalogRequest xi;
  xi.which = "xi_n";
  xi.n = 2;
  Report rep = check_certificate(synth_type1(catalog(xi)), cfg);
  CHECK(rep.pass);
}

TEST_CASE("tampered support fails obligation (a) only") {
  NumericConfig cfg = fast();
  EmbeddingCertificate cert = synth_single_node(1, -1, 1);
  for (auto& block : cert.schedule)
    for (auto& step : block.steps)
      if (auto* t = std::get_if<AmbientTwist>(&step); t && t->power == 2)
        t->support = 0.1;  // m0, not m0/2
  Report rep = check_certificate(cert, cfg);
  CHECK(!rep.pass);
  bool support_failed = false;
  for (const auto& o : rep.obligations)
    if (o.name == "support-arithmetic" && o.failed()) support_failed = true;
  CHECK(support_failed);
}

TEST_CASE("overlapping schedule is a structural failure before numerics") {
  NumericConfig cfg = fast();
  CatalogRequest xi;
  xi.which = "xi_n";
  xi.n = 2;
  EmbeddingCertificate cert = synth_type1(catalog(xi));
  cert.schedule[1].t0 = cert.schedule[0].t1 - 0.01;
  Report rep = check_certificate(cert, cfg);
  CHECK(!rep.pass);
  REQUIRE(rep.obligations.size() == 1);
  CHECK(rep.obligations[0].name == "structure");
  CHECK(rep.obligations[0].detail.find("overlap") != std::string::npos);
}

TEST_CASE("tampered net word is caught") {
  NumericConfig cfg = fast();
  EmbeddingCertificate cert = synth_single_node(1, 1, 1);
  cert.target.monodromy = parse_word("v1^5");
  Report rep = check_certificate(cert, cfg);
  CHECK(!rep.pass);
  bool net_failed = false;
  for (const auto& o : rep.obligations)
    if (o.name == "net-word" && o.failed()) net_failed = true;
  CHECK(net_failed);
}

TEST_CASE("missing citation is structural") {
  NumericConfig cfg = fast();
  EmbeddingCertificate cert = synth_single_node(1, 1, 1);
  for (auto& block : cert.schedule)
    for (auto& step : block.steps)
      if (auto* e = std::get_if<ExtendIsotopy>(&step)) e->citation.clear();
  Report rep = check_certificate(cert, cfg);
  CHECK(!rep.pass);
  CHECK(rep.obligations[0].detail.find("citation") != std::string::npos);
}

TEST_CASE("hypersurface obligations are marked symbolic") {
  NumericConfig cfg = fast();
  OpenBook ob;
  ob.page.dim = 4;
  ob.page.add_node("s", BaseLabel::sphere(2));
  ob.page.add_node("h", BaseLabel::hypersurface("V", 2));
  ob.page.add_edge("s", "h", EdgeKind::BSum);
  ob.monodromy = parse_word("s");
  Report rep = check_certificate(synth_type1(ob), cfg);
  CHECK(rep.pass);
  int symbolic = 0;
  for (const auto& o : rep.obligations)
    if (o.node == "h" && o.status == Obligation::Status::Symbolic) ++symbolic;
  CHECK(symbolic >= 3);  // distance, disjointness, pullback
}

TEST_CASE("run_single_node_suite aggregates and flags high dimensions") {
  NumericConfig cfg = fast();
  Report rep = run_single_node_suite(1, 2, 1, cfg);
  CHECK(rep.pass);
  bool saw_twist = false, saw_witness = false;
  for (const auto& o : rep.obligations) {
    if (o.name == "twist-symplectic-source") saw_twist = true;
    if (o.name == "exactness-witness-ambient") saw_witness = true;
  }
  CHECK(saw_twist);
  CHECK(saw_witness);

  Report high = run_single_node_suite(5, 1, 1, cfg);
  CHECK(high.pass);
  int symbolic = 0;
  for (const auto& o : high.obligations)
    if (o.status == Obligation::Status::Symbolic) ++symbolic;
  CHECK(symbolic >= 5);  // all numeric obligations skipped with a flag
}

TEST_CASE("report json shape") {
  NumericConfig cfg = fast();
  Report rep = run_single_node_suite(1, 1, 1, cfg);
  std::string doc = report_to_json(rep);
  CHECK(doc.find("\"pass\": true") != std::string::npos);
  CHECK(doc.find("net-word") != std::string::npos);
  CHECK(doc.find("\"seed\"") != std::string::npos);
}
