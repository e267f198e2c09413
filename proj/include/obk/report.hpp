#pragma once

// Obligation reports: certificate checking and the single-node embedding
// suite, aggregating the numeric checks into pass/fail records.

#include <string>
#include <vector>

#include "obk/certificate.hpp"
#include "obk/checks.hpp"

namespace obk {

struct Obligation {
  std::string name;
  std::string node;  // empty for certificate-level obligations
  enum class Status { Pass, Fail, Symbolic } status = Status::Pass;
  double measured = 0.0;
  double threshold = 0.0;
  int samples = 0;
  std::string detail;

  bool failed() const { return status == Status::Fail; }
};

struct Report {
  bool pass = true;
  std::vector<Obligation> obligations;
  std::uint64_t seed = 0;

  void add(Obligation o);
};

// Verifies an embedding certificate: schedule structure, support arithmetic
// (support <= m0/2 with m0 recomputed), the numeric distance bound, support
// disjointness, the isotopy pullback checks, the net-word identity, and the
// well-formedness of the symbolic steps. Structural failure short-circuits
// the numerics.
Report check_certificate(const EmbeddingCertificate& cert, const NumericConfig& cfg);

// The full single-node obligation suite for source power k, target power l
// on DT*S^n: both twist symplecticity checks, embedding pullbacks, distance
// bound, support disjointness, exactness witnesses, net word. Numeric
// obligations are flagged symbolic above dimension 3.
Report run_single_node_suite(int n, long long k, long long l, const NumericConfig& cfg);

std::string report_to_json(const Report& report);

}  // namespace obk
