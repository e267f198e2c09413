#pragma once

// Numeric checks backing the embedding obligations: twist symplecticity,
// exactness witnesses, the distance bound, support disjointness, and the
// contact positivity of the binding form.

#include <cstdint>
#include <functional>
#include <string>

#include "obk/geometry.hpp"
#include "obk/maps.hpp"
#include "obk/profiles.hpp"

namespace obk {

struct NumericConfig {
  int samples = 500;
  std::uint64_t seed = 7;
  double h = 1e-4;
  double tol_pullback = 1e-6;
  double tol_exactness = 1e-5;
  double tol_equality = 1e-12;
  int grid_r = 200;
  int grid_ang = 50;
  double r_min = 1e-3;
  double eps = 0.2;    // default isotopy parameters for synthesized suites
  double delta = 0.2;
  std::string p0_policy = "m0/2";  // ambient twist support rule

  void validate() const;
};

// Config JSON: {samples, seed, h, tolerances{pullback, exactness, equality},
// grid{r, ang, r_min}, eps, delta, p0_policy}. Missing keys keep defaults.
NumericConfig config_from_json(const std::string& text);
std::string config_to_json(const NumericConfig& cfg);

// Samples for twist checks: the generic sampler plus a stratum with fiber
// norm clustered at the support radius, where profile defects concentrate.
std::vector<SampleTS> twist_check_samples(int n, std::uint64_t seed, int count, double p0,
                                          double h);

// Max pullback error of the k-fold twist against dlambda.
PullbackStats check_twist_symplectic(int n, const TwistProfile& profile,
                                     const NumericConfig& cfg);

struct WitnessResult {
  std::function<double(double)> h_of_s;  // the primitive h_k, constant past p0
  double residual = 0.0;                 // max |(tau^* lambda - lambda) - dh|
  int samples = 0;
};

// Concrete exactness witness for the twist: h_k(s) = s g_k(s) - int_0^s g_k,
// with the measured residual of tau_k^* lambda - lambda = d h_k.
WitnessResult exactness_witness(int n, const TwistProfile& profile, const NumericConfig& cfg);

struct DistanceResult {
  double measured = 0.0;  // estimated inf distance to the zero section
  double bound = 0.0;     // m0 = min(eps, delta) / 2
  bool ok() const { return measured > bound; }
};

// Estimated distance between j_1(tau_k(DT*S^n)) and the zero section of
// DT*S^{n+1}: dense seeded sampling plus golden-section refinement in the
// fiber radius.
DistanceResult check_distance_bound(int n, long long k, const CutoffProfile& cutoff,
                                    const NumericConfig& cfg);

struct DisjointResult {
  bool ok = false;
  double max_displacement = 0.0;
  std::string witness;  // offending sample, when any
};

// The ambient (l-k)-twist with support p0 must fix j_1(tau_k(DT*S^n))
// pointwise.
DisjointResult check_support_disjoint(int n, long long k, long long l,
                                      const CutoffProfile& cutoff, double ambient_p0,
                                      const NumericConfig& cfg);

struct ContactCheckResult {
  double min_volume = 0.0;
  double min_reduced = 0.0;
  bool signs_agree = false;
  double overlap_error = 0.0;  // max |h1 - e^{1/2-r}| + |h2 - 1| on [1/2, 1]
  std::string worst_location;
  bool ok(double /*unused*/ = 0.0) const {
    return min_volume > 0.0 && min_reduced > 0.0 && signs_agree;
  }
};

// Contact positivity of beta = h1 alpha + h2 dt on the binding region
// dV x D^2 for dV = S^1 (n=1) or S^3 (n=2): direct wedge evaluation of
// beta ^ (d beta)^n on an oriented frame over a grid, cross-validated
// against the reduced condition h1^{n-1} (h1 h2' - h1' h2) > 0.
ContactCheckResult tw_contact_check(int n, const BindingProfile& binding,
                                    const NumericConfig& cfg);

}  // namespace obk
