#pragma once

// Embedding certificates: ordered, machine-checkable schedules of ambient
// twists and isotopies realizing a codimension-2 open book embedding of a
// type-1 open book into the promoted page with a single positive twist per
// node.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "obk/page.hpp"

namespace obk {

struct AmbientTwist {
  std::string node;  // target node carrying the ambient twist
  long long power = 0;
  double support = 0.5;  // twist profile radius p0
};

struct IsotopeAway {
  std::string node;  // source node being pushed off the zero section
  double eps = 0.2;
  double delta = 0.2;
};

struct IsotopeBack {
  std::string node;
};

struct ExtendIsotopy {
  std::string citation;  // symbolic: names the extension device used
};

struct GlueMappingTorus {};

using Step = std::variant<AmbientTwist, IsotopeAway, IsotopeBack, ExtendIsotopy,
                          GlueMappingTorus>;

struct ScheduleBlock {
  double t0 = 0.0, t1 = 0.0;  // subinterval of the mapping-torus circle
  std::vector<Step> steps;
};

struct EmbeddingCertificate {
  OpenBook source;  // dim 2n
  OpenBook target;  // dim 2n + 2
  std::map<std::string, std::string> node_map;
  std::vector<ScheduleBlock> schedule;
  double eps = 0.2, delta = 0.2;
  std::map<std::string, std::string> metadata;
};

struct SynthConfig {
  double eps = 0.2;
  double delta = 0.2;
  double lead_support = 0.5;  // support of the pre-isotopy ambient twists
};

// Source: one sphere node with a k-fold twist; target: the promoted node
// with an l-fold twist. The schedule realizes tau_l as tau_k followed by a
// small-support (l-k)-twist applied while the page is pushed away.
EmbeddingCertificate synth_single_node(int n, long long k, long long l,
                                const SynthConfig& cfg = {});

// Any type-1 open book into the promoted page with monodromy tau_1 on every
// node. One scheduled block per node; node i of N occupies
// [(2i-1)/(2N+1), 2i/(2N+1)].
EmbeddingCertificate synth_type1(const OpenBook& ob, const SynthConfig& cfg = {});

// Surface monodromies over the spine curves b1, a1, c1, ..., a_g via the
// plumbing chain page. Rejects words mentioning any other curve (b2 in
// particular): such monodromies are outside this construction, which is not
// a proof that they do not embed.
EmbeddingCertificate synth_surface(int genus, const TwistWord& word,
                                     const SynthConfig& cfg = {});

std::string certificate_to_json(const EmbeddingCertificate& cert);
EmbeddingCertificate certificate_from_json(const std::string& text);

}  // namespace obk
