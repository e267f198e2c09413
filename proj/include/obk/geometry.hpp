#pragma once

// Numeric differential geometry on the coordinate model
//   T*S^n = { (x, y) in R^{n+1} x R^{n+1} : |x| = 1, x.y = 0 },
// plus a generic manifold/chart interface reused by the binding model:
// exact canonical forms, finite-difference pullbacks and exterior
// derivatives, and full antisymmetrized wedge evaluation.

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <vector>

#include "obk/words.hpp"

namespace obk {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct PointTS {
  int n = 1;
  Vec x, y;  // each of length n+1

  Vec stacked() const;
  static PointTS from_stacked(int n, const Vec& s);
  // Throws unless | |x|-1 |, |x.y| <= 1e-12 (and |y| <= 1 + 1e-12 when
  // disk is true).
  void validate(bool disk = true) const;
};

struct TangentTS {
  Vec u, v;

  Vec stacked() const;
  static TangentTS from_stacked(const Vec& s);
};

// Retraction onto the constraint set: x is normalized, y is replaced by its
// component orthogonal to x. Throws on x = 0.
PointTS project(int n, const Vec& x, const Vec& y);

// Exact differential of the retraction at ambient (x, y) applied to (xi, eta).
Vec project_differential(const Vec& x, const Vec& y, const Vec& xi, const Vec& eta);

// Deterministic seeded sampler: points roughly uniform over the unit disk
// bundle, two tangent vectors satisfying the linearized constraints.
struct SampleTS {
  PointTS p;
  TangentTS t1, t2;
};
std::vector<SampleTS> sample(int n, std::uint64_t seed, int count);

// Canonical one-form lambda = sum y_i dx_i and its exact exterior derivative
// with the orientation convention dlambda = sum dy_i ^ dx_i.
double lambda_eval(const PointTS& p, const TangentTS& t);
double dlambda_eval(const PointTS& p, const TangentTS& t1, const TangentTS& t2);

// A chart: stacked ambient coordinates with a retraction onto the model
// manifold and its exact differential.
struct Manifold {
  int ambient_dim = 0;
  std::function<Vec(const Vec&)> retract;
  std::function<Vec(const Vec&, const Vec&)> d_retract;  // (point, vector)
};

Manifold tstar_sphere_model(int n);

// Trivial chart on R^dim (identity retraction); for forms living in flat
// coordinates such as the disk factor of the binding region.
Manifold flat_model(int dim);

// A smooth map between ambient models. `check_seed` registration draws
// seeded samples and verifies constraint preservation within 1e-9.
struct AmbientMap {
  int n_src = 1, n_dst = 1;
  Manifold src, dst;
  std::function<Vec(const Vec&)> eval;
  std::function<Vec(const Vec&, const Vec&)> d_eval;  // optional exact derivative

  Vec operator()(const Vec& p) const { return eval(p); }
};

AmbientMap make_tstar_map(int n_src, int n_dst, std::function<Vec(const Vec&)> eval,
                          std::function<Vec(const Vec&, const Vec&)> d_eval = nullptr,
                          std::uint64_t check_seed = 1);

struct PullbackStats {
  double max_error = 0.0;
  int samples = 0;
  int resampled = 0;  // differencing left the chart and was retried
};

// max |phi^*(dlambda_dst) - dlambda_src| over the samples, pushing tangents
// through phi by central differences of step h along retracted curves.
PullbackStats pullback_error(const AmbientMap& map, const std::vector<SampleTS>& samples,
                             double h);

// Same for the canonical 1-form against a supplied exact 1-form difference:
// max |(phi^* lambda - lambda)(t) - witness(p, t)|.
PullbackStats pullback_one_form_error(
    const AmbientMap& map, const std::vector<SampleTS>& samples, double h,
    const std::function<double(const PointTS&, const TangentTS&)>& witness);

// A differential form of fixed degree on a model manifold, evaluated on
// ambient tangent vectors.
struct FormField {
  int degree = 1;
  std::function<double(const Vec& point, const std::vector<Vec>& tangents)> eval;
};

// Full antisymmetrized wedge product of the given forms (degrees summing to
// the basis size) evaluated on the basis. Throws on a degenerate basis
// (Gram determinant below 1e-12).
double volume_eval(const std::vector<FormField>& forms, const Vec& point,
                   const std::vector<Vec>& basis);

// Finite-difference exterior derivative of a form on the given manifold;
// O(h^2) on smooth inputs.
FormField numeric_d(const FormField& form, const Manifold& m, double h);

// Deterministic RNG utilities shared by the samplers (splitmix-seeded
// mersenne twister with a hand-rolled Box-Muller gaussian).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
  double uniform();   // [0, 1)
  double gaussian();  // standard normal
  Vec gaussian_vec(int dim);

 private:
  std::uint64_t next();
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace obk
