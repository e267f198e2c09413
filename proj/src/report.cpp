#include "obk/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "obk/rewrite.hpp"

namespace obk {

using nlohmann::json;

void Report::add(Obligation o) {
  if (o.failed()) pass = false;
  obligations.push_back(std::move(o));
}

namespace {

struct BlockView {
  std::string node;          // source node
  const AmbientTwist* lead = nullptr;
  const IsotopeAway* away = nullptr;
  const AmbientTwist* corrective = nullptr;
  const IsotopeBack* back = nullptr;
  const ExtendIsotopy* extend = nullptr;
  bool glue = false;
};

// Enforces the per-node step pattern:
//   [AmbientTwist]? IsotopeAway AmbientTwist IsotopeBack [ExtendIsotopy]? [Glue]?
std::optional<BlockView> parse_block(const ScheduleBlock& block, std::string& why) {
  BlockView view;
  std::size_t i = 0;
  const auto& s = block.steps;
  auto at = [&](std::size_t j) -> const Step* { return j < s.size() ? &s[j] : nullptr; };

  if (const auto* p = at(i); p && std::holds_alternative<AmbientTwist>(*p)) {
    view.lead = &std::get<AmbientTwist>(*p);
    ++i;
  }
  if (const auto* p = at(i); p && std::holds_alternative<IsotopeAway>(*p)) {
    view.away = &std::get<IsotopeAway>(*p);
    ++i;
  } else {
    why = "expected an isotope-away step";
    return std::nullopt;
  }
  if (const auto* p = at(i); p && std::holds_alternative<AmbientTwist>(*p)) {
    view.corrective = &std::get<AmbientTwist>(*p);
    ++i;
  } else {
    why = "expected the corrective ambient twist after isotope-away";
    return std::nullopt;
  }
  if (const auto* p = at(i); p && std::holds_alternative<IsotopeBack>(*p)) {
    view.back = &std::get<IsotopeBack>(*p);
    ++i;
  } else {
    why = "expected an isotope-back step";
    return std::nullopt;
  }
  if (const auto* p = at(i); p && std::holds_alternative<ExtendIsotopy>(*p)) {
    view.extend = &std::get<ExtendIsotopy>(*p);
    ++i;
  }
  if (const auto* p = at(i); p && std::holds_alternative<GlueMappingTorus>(*p)) {
    view.glue = true;
    ++i;
  }
  if (i != s.size()) {
    why = "unexpected trailing steps in block";
    return std::nullopt;
  }
  view.node = view.away->node;
  if (view.back->node != view.node) {
    why = "isotope-away and isotope-back reference different nodes";
    return std::nullopt;
  }
  return view;
}

std::string check_structure(const EmbeddingCertificate& cert, std::vector<BlockView>& views) {
  if (cert.target.page.dim != cert.source.page.dim + 2)
    return "target page dimension must exceed the source by 2";

  for (const auto& [name, base] : cert.source.page.nodes) {
    auto it = cert.node_map.find(name);
    if (it == cert.node_map.end()) return "node map misses source node " + name;
    if (!cert.target.page.has_node(it->second))
      return "node map sends " + name + " to unknown target node";
    const BaseLabel& tgt = cert.target.page.node(it->second);
    if (tgt.kind != BaseLabel::Kind::Sphere || tgt.n != base.n + 1)
      return "node " + name + " must promote to a sphere of one higher dimension";
  }

  double prev_end = 0.0;
  for (const auto& block : cert.schedule) {
    if (!(block.t0 > 0.0 && block.t0 < block.t1 && block.t1 < 1.0))
      return "schedule block interval must satisfy 0 < t0 < t1 < 1";
    if (block.t0 < prev_end) return "schedule blocks overlap";
    prev_end = block.t1;
  }

  int glue_count = 0;
  std::vector<std::string> covered;
  for (const auto& block : cert.schedule) {
    std::string why;
    auto view = parse_block(block, why);
    if (!view) return why;
    if (!cert.source.page.has_node(view->node))
      return "schedule references unknown source node " + view->node;
    const std::string& target_node = cert.node_map.at(view->node);
    if (view->lead && view->lead->node != target_node)
      return "leading ambient twist must act on the mapped target node";
    if (view->corrective->node != target_node)
      return "corrective ambient twist must act on the mapped target node";
    if (view->corrective->support <= 0.0) return "ambient twist support must be positive";
    if (!(view->away->eps > 0.0 && view->away->eps <= 1.0 && view->away->delta > 0.0 &&
          view->away->delta <= 1.0))
      return "isotopy parameters must lie in (0, 1]";
    if (view->extend && view->extend->citation.empty())
      return "extend-isotopy step is missing its citation";
    if (view->glue) ++glue_count;
    covered.push_back(view->node);
    views.push_back(*view);
  }
  std::sort(covered.begin(), covered.end());
  if (std::adjacent_find(covered.begin(), covered.end()) != covered.end())
    return "a node is scheduled more than once";
  if (covered.size() != cert.source.page.nodes.size()) return "schedule misses a source node";
  if (glue_count != 1) return "expected exactly one glue-mapping-torus step";
  return "";
}

NumericConfig derived(const NumericConfig& base, std::size_t index) {
  NumericConfig cfg = base;
  cfg.seed = base.seed + 7919 * (index + 1);
  return cfg;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

Report check_certificate(const EmbeddingCertificate& cert, const NumericConfig& cfg) {
  cfg.validate();
  Report rep;
  rep.seed = cfg.seed;

  std::vector<BlockView> views;
  std::string structural = check_structure(cert, views);
  {
    Obligation o;
    o.name = "structure";
    o.status = structural.empty() ? Obligation::Status::Pass : Obligation::Status::Fail;
    o.detail = structural;
    rep.add(std::move(o));
  }
  if (!structural.empty()) return rep;  // numerics are meaningless on a broken schedule

  std::size_t idx = 0;
  for (const auto& view : views) {
    const BaseLabel& base = cert.source.page.node(view.node);
    long long k = view.lead ? view.lead->power : 0;
    long long l = k + view.corrective->power;
    CutoffProfile cutoff{view.away->eps, view.away->delta};
    double m0 = 0.5 * std::min(view.away->eps, view.away->delta);

    {
      Obligation o;
      o.name = "support-arithmetic";
      o.node = view.node;
      o.measured = view.corrective->support;
      o.threshold = m0 / 2.0;
      o.status = view.corrective->support <= m0 / 2.0 + 1e-15 ? Obligation::Status::Pass
                                                              : Obligation::Status::Fail;
      if (o.failed())
        o.detail = "corrective support " + fmt(o.measured) + " exceeds m0/2 = " + fmt(o.threshold);
      rep.add(std::move(o));
    }

    bool numeric = base.kind == BaseLabel::Kind::Sphere && base.n <= 3;
    std::string skip_reason = base.kind != BaseLabel::Kind::Sphere
                                  ? "no coordinate model for hypersurface bases"
                                  : "numerics limited to base dimension <= 3";

    {
      Obligation o;
      o.name = "distance-bound";
      o.node = view.node;
      o.threshold = m0;
      if (!numeric) {
        o.status = Obligation::Status::Symbolic;
        o.detail = skip_reason;
      } else {
        auto res = check_distance_bound(base.n, k, cutoff, derived(cfg, idx));
        o.measured = res.measured;
        o.samples = cfg.samples;
        o.status = res.ok() ? Obligation::Status::Pass : Obligation::Status::Fail;
        if (o.failed()) o.detail = "measured distance " + fmt(res.measured) + " <= m0";
      }
      rep.add(std::move(o));
    }
    {
      Obligation o;
      o.name = "support-disjoint";
      o.node = view.node;
      o.threshold = cfg.tol_equality;
      if (!numeric) {
        o.status = Obligation::Status::Symbolic;
        o.detail = skip_reason;
      } else {
        auto res = check_support_disjoint(base.n, k, l, cutoff, view.corrective->support,
                                          derived(cfg, idx + 1000));
        o.measured = res.max_displacement;
        o.samples = cfg.samples;
        o.status = res.ok ? Obligation::Status::Pass : Obligation::Status::Fail;
        o.detail = res.witness;
      }
      rep.add(std::move(o));
    }
    {
      Obligation o;
      o.name = "isotopy-pullback";
      o.node = view.node;
      o.threshold = cfg.tol_pullback;
      if (!numeric) {
        o.status = Obligation::Status::Symbolic;
        o.detail = skip_reason;
      } else {
        double worst = 0.0;
        int count = 0;
        for (double t : {0.0, 0.5, 1.0}) {
          AmbientMap jt = embedding_map(t, cutoff, base.n);
          auto samples = sample(base.n, derived(cfg, idx + 2000).seed, cfg.samples);
          auto stats = pullback_error(jt, samples, cfg.h);
          worst = std::max(worst, stats.max_error);
          count += stats.samples;
        }
        o.measured = worst;
        o.samples = count;
        o.status = worst < cfg.tol_pullback ? Obligation::Status::Pass : Obligation::Status::Fail;
        if (o.failed()) o.detail = "pullback mismatch " + fmt(worst);
      }
      rep.add(std::move(o));
    }
    ++idx;
  }

  {
    // Net target word: concatenation of the scheduled ambient twists,
    // isotopy conjugations elided.
    std::vector<Letter> letters;
    for (const auto& view : views) {
      if (view.lead && view.lead->power != 0)
        letters.push_back(Letter{CurveRef::plain(view.lead->node), view.lead->power});
      if (view.corrective->power != 0)
        letters.push_back(
            Letter{CurveRef::plain(view.corrective->node), view.corrective->power});
    }
    TwistWord net = normalize(cert.target.page, TwistWord::of(std::move(letters)));
    TwistWord want = normalize(cert.target.page, cert.target.monodromy);
    Obligation o;
    o.name = "net-word";
    o.status = net == want ? Obligation::Status::Pass : Obligation::Status::Fail;
    if (o.failed())
      o.detail = "net word '" + format_word(net) + "' differs from target monodromy '" +
                 format_word(want) + "'";
    rep.add(std::move(o));
  }

  for (const auto& view : views) {
    if (!view.extend) continue;
    Obligation o;
    o.name = "symbolic-extension";
    o.node = view.node;
    o.status = Obligation::Status::Symbolic;
    o.detail = view.extend->citation;
    rep.add(std::move(o));
  }
  return rep;
}

Report run_single_node_suite(int n, long long k, long long l, const NumericConfig& cfg) {
  cfg.validate();
  if (n < 1) throw Error("run_single_node_suite needs n >= 1");

  SynthConfig synth;
  synth.eps = cfg.eps;
  synth.delta = cfg.delta;
  EmbeddingCertificate cert = synth_single_node(n, k, l, synth);
  Report rep = check_certificate(cert, cfg);
  double m0 = 0.5 * std::min(synth.eps, synth.delta);

  auto twist_obligation = [&](const std::string& name, int dim, const TwistProfile& profile,
                              std::size_t salt) {
    Obligation o;
    o.name = name;
    o.threshold = cfg.tol_pullback;
    if (dim > 3) {
      o.status = Obligation::Status::Symbolic;
      o.detail = "numerics limited to dimension <= 3";
    } else {
      auto stats = check_twist_symplectic(dim, profile, derived(cfg, salt));
      o.measured = stats.max_error;
      o.samples = stats.samples;
      o.status = stats.max_error < cfg.tol_pullback ? Obligation::Status::Pass
                                                    : Obligation::Status::Fail;
    }
    rep.add(std::move(o));
  };
  twist_obligation("twist-symplectic-source", n, TwistProfile{k, synth.lead_support}, 11);
  twist_obligation("twist-symplectic-ambient", n + 1, TwistProfile{l - k, m0 / 2.0}, 13);

  auto witness_obligation = [&](const std::string& name, int dim, const TwistProfile& profile,
                                std::size_t salt) {
    Obligation o;
    o.name = name;
    o.threshold = cfg.tol_exactness;
    if (dim > 3) {
      o.status = Obligation::Status::Symbolic;
      o.detail = "numerics limited to dimension <= 3";
    } else {
      auto res = exactness_witness(dim, profile, derived(cfg, salt));
      o.measured = res.residual;
      o.samples = res.samples;
      o.status = res.residual < cfg.tol_exactness ? Obligation::Status::Pass
                                                  : Obligation::Status::Fail;
    }
    rep.add(std::move(o));
  };
  witness_obligation("exactness-witness-source", n, TwistProfile{k, synth.lead_support}, 17);
  witness_obligation("exactness-witness-ambient", n + 1, TwistProfile{l - k, m0 / 2.0}, 19);

  return rep;
}

std::string report_to_json(const Report& report) {
  json j;
  j["pass"] = report.pass;
  j["seed"] = report.seed;
  j["obligations"] = json::array();
  for (const auto& o : report.obligations) {
    json e;
    e["name"] = o.name;
    if (!o.node.empty()) e["node"] = o.node;
    e["status"] = o.status == Obligation::Status::Pass
                      ? "pass"
                      : (o.status == Obligation::Status::Fail ? "fail" : "symbolic");
    e["measured"] = o.measured;
    e["threshold"] = o.threshold;
    e["samples"] = o.samples;
    if (!o.detail.empty()) e["detail"] = o.detail;
    j["obligations"].push_back(e);
  }
  return j.dump(2);
}

}  // namespace obk
