#include "obk/certificate.hpp"

#include <algorithm>

#include <json.hpp>

#include "obk/rewrite.hpp"

namespace obk {

using nlohmann::json;

namespace {

constexpr const char* kExtensionCitation = "ambient-isotopy-extension";

OpenBook promote_page(const OpenBook& ob) {
  OpenBook target;
  target.page.dim = ob.page.dim + 2;
  for (const auto& [name, base] : ob.page.nodes)
    target.page.add_node(name, BaseLabel::sphere(base.n + 1));
  target.page.edges = ob.page.edges;
  std::vector<Letter> word;
  for (const auto& [name, base] : ob.page.nodes)
    word.push_back(Letter{CurveRef::plain(name), 1});
  target.monodromy = TwistWord::of(word);
  return target;
}

// Net twist power per node; the monodromy is realized per node through its
// total power (word order is recorded on the source open book itself).
std::map<std::string, long long> net_powers(const OpenBook& ob) {
  std::map<std::string, long long> p;
  for (const auto& [name, base] : ob.page.nodes) p[name] = 0;
  for (const auto& l : ob.monodromy.letters()) p.at(l.curve.name) += l.power;
  return p;
}

}  // namespace

EmbeddingCertificate synth_type1(const OpenBook& ob, const SynthConfig& cfg) {
  Diagnostic diag = validate_type1(ob);
  if (!diag.ok) throw Error("not a type-1 open book: " + diag.message);

  EmbeddingCertificate cert;
  cert.source = ob;
  cert.target = promote_page(ob);
  cert.eps = cfg.eps;
  cert.delta = cfg.delta;
  for (const auto& [name, base] : ob.page.nodes) cert.node_map[name] = name;

  double m0 = 0.5 * std::min(cfg.eps, cfg.delta);
  auto powers = net_powers(ob);
  const auto N = static_cast<double>(ob.page.nodes.size());

  for (std::size_t i = 0; i < ob.page.nodes.size(); ++i) {
    const auto& [name, base] = ob.page.nodes[i];
    long long k = powers.at(name);
    ScheduleBlock block;
    block.t0 = (2.0 * (i + 1) - 1.0) / (2.0 * N + 1.0);
    block.t1 = (2.0 * (i + 1)) / (2.0 * N + 1.0);
    if (base.kind == BaseLabel::Kind::Sphere)
      block.steps.push_back(AmbientTwist{name, k, cfg.lead_support});
    block.steps.push_back(IsotopeAway{name, cfg.eps, cfg.delta});
    block.steps.push_back(AmbientTwist{name, 1 - k, m0 / 2.0});
    block.steps.push_back(IsotopeBack{name});
    block.steps.push_back(ExtendIsotopy{kExtensionCitation});
    if (i + 1 == ob.page.nodes.size()) block.steps.push_back(GlueMappingTorus{});
    cert.schedule.push_back(std::move(block));
  }
  return cert;
}

EmbeddingCertificate synth_single_node(int n, long long k, long long l, const SynthConfig& cfg) {
  if (n < 1) throw Error("synth_single_node needs n >= 1");
  OpenBook source;
  source.page.dim = 2 * n;
  source.page.add_node("v1", BaseLabel::sphere(n));
  source.monodromy = TwistWord::of({Letter{CurveRef::plain("v1"), k}});

  EmbeddingCertificate cert = synth_type1(source, cfg);

  // Target word tau_l instead of the generic tau_1, with the corrective
  // ambient twist adjusted to power l - k.
  cert.target.monodromy = TwistWord::of({Letter{CurveRef::plain("v1"), l}});
  double m0 = 0.5 * std::min(cfg.eps, cfg.delta);
  auto& steps = cert.schedule.front().steps;
  steps.clear();
  steps.push_back(AmbientTwist{"v1", k, cfg.lead_support});
  steps.push_back(IsotopeAway{"v1", cfg.eps, cfg.delta});
  steps.push_back(AmbientTwist{"v1", l - k, m0 / 2.0});
  steps.push_back(IsotopeBack{"v1"});
  steps.push_back(ExtendIsotopy{kExtensionCitation});
  steps.push_back(GlueMappingTorus{});
  cert.metadata["construction"] = "single-node embedding, source power " + std::to_string(k) +
                                  ", target power " + std::to_string(l);
  cert.metadata["presentation"] =
      "target written as the promoted sphere page with one twist; other pages supporting "
      "the same contact manifold are not identified with it";
  return cert;
}

EmbeddingCertificate synth_surface(int genus, const TwistWord& word, const SynthConfig& cfg) {
  std::vector<std::string> allowed = blue_curves(genus);
  if (!uses_only(word, allowed)) {
    std::string offenders;
    for (const auto& n : mentioned_names(word))
      if (std::find(allowed.begin(), allowed.end(), n) == allowed.end())
        offenders += (offenders.empty() ? "" : ", ") + n;
    throw Error(
        "monodromy twists along {" + offenders +
        "} fall outside the spine generators b1, a1, c1, ..., a_g; no certificate is "
        "synthesized for them (this is not a proof that the open book fails to embed)");
  }

  auto [page, alphabet] = surface_to_page(genus);
  OpenBook source;
  source.page = page;
  std::vector<Letter> mapped;
  TwistWord expanded = expand_images(word);
  for (const auto& l : expanded.letters())
    mapped.push_back(Letter{CurveRef::plain(alphabet.at(l.curve.name)), l.power});
  source.monodromy = TwistWord::of(std::move(mapped));

  EmbeddingCertificate cert = synth_type1(source, cfg);
  cert.metadata["construction"] =
      "surface monodromy over the genus-" + std::to_string(genus) + " spine chain";
  return cert;
}

namespace {

json step_to_json(const Step& s) {
  json j;
  if (const auto* t = std::get_if<AmbientTwist>(&s)) {
    j["type"] = "ambient_twist";
    j["node"] = t->node;
    j["power"] = t->power;
    j["support"] = t->support;
  } else if (const auto* a = std::get_if<IsotopeAway>(&s)) {
    j["type"] = "isotope_away";
    j["node"] = a->node;
    j["eps"] = a->eps;
    j["delta"] = a->delta;
  } else if (const auto* b = std::get_if<IsotopeBack>(&s)) {
    j["type"] = "isotope_back";
    j["node"] = b->node;
  } else if (const auto* e = std::get_if<ExtendIsotopy>(&s)) {
    j["type"] = "extend_isotopy";
    j["citation"] = e->citation;
  } else {
    j["type"] = "glue_mapping_torus";
  }
  return j;
}

Step step_from_json(const json& j) {
  std::string type = j.at("type").get<std::string>();
  if (type == "ambient_twist")
    return AmbientTwist{j.at("node").get<std::string>(), j.at("power").get<long long>(),
                        j.at("support").get<double>()};
  if (type == "isotope_away")
    return IsotopeAway{j.at("node").get<std::string>(), j.at("eps").get<double>(),
                       j.at("delta").get<double>()};
  if (type == "isotope_back") return IsotopeBack{j.at("node").get<std::string>()};
  if (type == "extend_isotopy") return ExtendIsotopy{j.value("citation", "")};
  if (type == "glue_mapping_torus") return GlueMappingTorus{};
  throw ParseError("unknown step type: " + type);
}

}  // namespace

std::string certificate_to_json(const EmbeddingCertificate& cert) {
  json j;
  j["source"] = json::parse(open_book_to_json(cert.source));
  j["target"] = json::parse(open_book_to_json(cert.target));
  j["nodeMap"] = cert.node_map;
  j["schedule"] = json::array();
  for (const auto& block : cert.schedule) {
    json b;
    b["t0"] = block.t0;
    b["t1"] = block.t1;
    b["steps"] = json::array();
    for (const auto& s : block.steps) b["steps"].push_back(step_to_json(s));
    j["schedule"].push_back(b);
  }
  j["params"] = {{"eps", cert.eps}, {"delta", cert.delta}};
  j["metadata"] = cert.metadata;
  return j.dump(2);
}

EmbeddingCertificate certificate_from_json(const std::string& text) {
  json j = json::parse(text);
  EmbeddingCertificate cert;
  cert.source = open_book_from_json(j.at("source").dump());
  cert.target = open_book_from_json(j.at("target").dump());
  for (const auto& [k, v] : j.at("nodeMap").items()) cert.node_map[k] = v.get<std::string>();
  for (const auto& b : j.at("schedule")) {
    ScheduleBlock block;
    block.t0 = b.at("t0").get<double>();
    block.t1 = b.at("t1").get<double>();
    for (const auto& s : b.at("steps")) block.steps.push_back(step_from_json(s));
    cert.schedule.push_back(std::move(block));
  }
  cert.eps = j.at("params").at("eps").get<double>();
  cert.delta = j.at("params").at("delta").get<double>();
  if (j.contains("metadata"))
    for (const auto& [k, v] : j.at("metadata").items()) cert.metadata[k] = v.get<std::string>();
  return cert;
}

}  // namespace obk
