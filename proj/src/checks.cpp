#include "obk/checks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace obk {

void NumericConfig::validate() const {
  if (samples < 1) throw Error("config: samples must be positive");
  if (h <= 0) throw Error("config: finite-difference step must be positive");
  if (tol_pullback <= 0 || tol_exactness <= 0 || tol_equality <= 0)
    throw Error("config: tolerances must be positive");
  if (grid_r < 2 || grid_ang < 1) throw Error("config: grid too small");
  if (r_min <= 0 || r_min >= 1) throw Error("config: r_min must lie in (0,1)");
  if (eps <= 0 || eps > 1 || delta <= 0 || delta > 1)
    throw Error("config: eps, delta must lie in (0,1]");
  if (p0_policy != "m0/2")
    throw Error("config: the only supported ambient support policy is \"m0/2\"");
}

NumericConfig config_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  NumericConfig cfg;
  cfg.samples = j.value("samples", cfg.samples);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.h = j.value("h", cfg.h);
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    cfg.tol_pullback = t.value("pullback", cfg.tol_pullback);
    cfg.tol_exactness = t.value("exactness", cfg.tol_exactness);
    cfg.tol_equality = t.value("equality", cfg.tol_equality);
  }
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    cfg.grid_r = g.value("r", cfg.grid_r);
    cfg.grid_ang = g.value("ang", cfg.grid_ang);
    cfg.r_min = g.value("r_min", cfg.r_min);
  }
  cfg.eps = j.value("eps", cfg.eps);
  cfg.delta = j.value("delta", cfg.delta);
  cfg.p0_policy = j.value("p0_policy", cfg.p0_policy);
  cfg.validate();
  return cfg;
}

std::string config_to_json(const NumericConfig& cfg) {
  nlohmann::json j;
  j["samples"] = cfg.samples;
  j["seed"] = cfg.seed;
  j["h"] = cfg.h;
  j["tolerances"] = {{"pullback", cfg.tol_pullback},
                     {"exactness", cfg.tol_exactness},
                     {"equality", cfg.tol_equality}};
  j["grid"] = {{"r", cfg.grid_r}, {"ang", cfg.grid_ang}, {"r_min", cfg.r_min}};
  j["eps"] = cfg.eps;
  j["delta"] = cfg.delta;
  j["p0_policy"] = cfg.p0_policy;
  return j.dump(2);
}

namespace {

// Differencing must resolve the profile's length scale; below the default
// support the step shrinks proportionally.
double step_for(double h, double p0) { return h * std::min(1.0, 2.0 * p0); }

}  // namespace

std::vector<SampleTS> twist_check_samples(int n, std::uint64_t seed, int count, double p0,
                                          double h) {
  if (count < 2) return sample(n, seed, count);
  int edge = std::max(1, count / 10);
  std::vector<SampleTS> out = sample(n, seed, count - edge);
  // Stratum hugging the support radius: profile defects (a jump at p0, a
  // kink) are invisible to uniform sampling at differencing scale h.
  Rng rng(seed ^ 0x5eedULL);
  std::vector<SampleTS> extra = sample(n, seed + 1, edge);
  for (auto& s : extra) {
    double target = p0 + rng.gaussian() * 3.0 * h;
    target = std::clamp(target, 0.05, 1.0);
    if (s.p.y.norm() < 1e-9) continue;
    s.p.y *= target / s.p.y.norm();
    out.push_back(s);
  }
  return out;
}

PullbackStats check_twist_symplectic(int n, const TwistProfile& profile,
                                     const NumericConfig& cfg) {
  cfg.validate();
  AmbientMap tau = dehn_twist_map(n, profile);
  double h = step_for(cfg.h, profile.p0);
  auto samples = twist_check_samples(n, cfg.seed, cfg.samples, profile.p0, h);
  return pullback_error(tau, samples, h);
}

namespace {

// Adaptive Simpson quadrature, plenty for the smooth profile integrands.
double simpson(const std::function<double(double)>& f, double a, double b, int depth,
               double fa, double fm, double fb, double whole) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 1e-12)
    return left + right + (left + right - whole) / 15.0;
  return simpson(f, a, m, depth - 1, fa, flm, fm, left) +
         simpson(f, m, b, depth - 1, fm, frm, fb, right);
}

double integrate(const std::function<double(double)>& f, double a, double b) {
  if (b <= a) return 0.0;
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(f, a, b, 24, fa, fm, fb, whole);
}

}  // namespace

WitnessResult exactness_witness(int n, const TwistProfile& profile, const NumericConfig& cfg) {
  cfg.validate();
  profile.validate();
  TwistProfile p = profile;
  auto g = [p](double s) { return p.eval(s); };

  WitnessResult result;
  result.h_of_s = [p, g](double s) {
    double cap = std::min(s, p.p0);  // g vanishes past p0
    return s * p.eval(s) - integrate(g, 0.0, cap);
  };

  AmbientMap tau = dehn_twist_map(n, profile);
  double h = step_for(cfg.h, profile.p0);
  auto samples = twist_check_samples(n, cfg.seed, cfg.samples, profile.p0, h);
  auto witness = [&profile](const PointTS& pt, const TangentTS& t) {
    return profile.deriv(pt.y.norm()) * pt.y.dot(t.v);
  };
  PullbackStats stats = pullback_one_form_error(tau, samples, h, witness);
  result.residual = stats.max_error;
  result.samples = stats.samples;
  return result;
}

DistanceResult check_distance_bound(int n, long long k, const CutoffProfile& cutoff,
                                    const NumericConfig& cfg) {
  cfg.validate();
  cutoff.validate();
  DistanceResult res;
  res.bound = 0.5 * std::min(cutoff.eps, cutoff.delta);

  TwistProfile twist{k, 0.5};
  AmbientMap image = embedded_twist_map(1.0, cutoff, n, twist);

  auto image_distance = [&](const Vec& p) {
    Vec q = image.eval(p);
    PointTS img = PointTS::from_stacked(n + 1, q);
    double dx = img.x.norm() - 1.0;
    return std::sqrt(dx * dx + img.y.squaredNorm());
  };

  double best = std::numeric_limits<double>::infinity();
  Vec best_point;
  for (const auto& s : sample(n, cfg.seed, cfg.samples)) {
    double d = image_distance(s.p.stacked());
    if (d < best) {
      best = d;
      best_point = s.p.stacked();
    }
  }

  // Refine in the fiber radius around the best sample (the twist preserves
  // |y| and the embedding depends on it only through |y|).
  PointTS bp = PointTS::from_stacked(n, best_point);
  double rho = bp.y.norm();
  if (rho > 1e-9) {
    Vec dir = bp.y / rho;
    auto at_radius = [&](double s) {
      PointTS q{n, bp.x, (s * dir).eval()};
      return image_distance(q.stacked());
    };
    double lo = std::max(0.0, rho - 0.2), hi = std::min(1.0, rho + 0.2);
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    for (int it = 0; it < 80; ++it) {
      if (at_radius(c) < at_radius(d))
        b = d;
      else
        a = c;
      c = b - phi * (b - a);
      d = a + phi * (b - a);
    }
    best = std::min(best, at_radius(0.5 * (a + b)));
  }
  res.measured = best;
  return res;
}

DisjointResult check_support_disjoint(int n, long long k, long long l,
                                      const CutoffProfile& cutoff, double ambient_p0,
                                      const NumericConfig& cfg) {
  cfg.validate();
  cutoff.validate();
  if (ambient_p0 <= 0) throw Error("ambient twist support must be positive");

  TwistProfile source_twist{k, 0.5};
  AmbientMap image = embedded_twist_map(1.0, cutoff, n, source_twist);
  TwistProfile ambient{l - k, ambient_p0};
  AmbientMap big = dehn_twist_map(n + 1, ambient);

  DisjointResult res;
  res.ok = true;
  for (const auto& s : sample(n, cfg.seed, cfg.samples)) {
    Vec q = image.eval(s.p.stacked());
    Vec moved = big.eval(q);
    double disp = (moved - q).norm();
    if (disp > res.max_displacement) res.max_displacement = disp;
    if (disp > cfg.tol_equality && res.ok) {
      res.ok = false;
      std::ostringstream os;
      os << "sample with |y| = " << s.p.y.norm() << " displaced by " << disp;
      res.witness = os.str();
    }
  }
  return res;
}

namespace {

// Binding region dV x D^2 as ambient (w in R^{2n}, r, t) with w on the unit
// sphere; the D^2 factor uses literal polar coordinates, valid for r > 0.
struct BindingModel {
  int n = 1;  // dV = S^{2n-1}
  int ambient() const { return 2 * n + 2; }

  double alpha(const Vec& w, const Vec& omega) const {
    double v = w(0) * omega(1) - w(1) * omega(0);
    if (n == 2) v += w(2) * omega(3) - w(3) * omega(2);
    return v;
  }
  double dalpha(const Vec&, const Vec& o, const Vec& e) const {
    if (n == 1) return 0.0;
    return 2.0 * ((o(0) * e(1) - o(1) * e(0)) + (o(2) * e(3) - o(3) * e(2)));
  }

  // Oriented tangent frame: sphere frame, then d/dr, d/dt.
  std::vector<Vec> frame(const Vec& w) const {
    std::vector<Vec> out;
    auto lift = [&](std::initializer_list<double> sphere_part) {
      Vec v = Vec::Zero(ambient());
      int i = 0;
      for (double c : sphere_part) v(i++) = c;
      return v;
    };
    if (n == 1) {
      out.push_back(lift({-w(1), w(0)}));
    } else {
      out.push_back(lift({-w(1), w(0), w(3), -w(2)}));   // w * i
      out.push_back(lift({-w(2), -w(3), w(0), w(1)}));   // w * j
      out.push_back(lift({-w(3), w(2), -w(1), w(0)}));   // w * k
    }
    Vec er = Vec::Zero(ambient());
    er(2 * n) = 1.0;
    Vec et = Vec::Zero(ambient());
    et(2 * n + 1) = 1.0;
    out.push_back(er);
    out.push_back(et);
    return out;
  }
};

}  // namespace

ContactCheckResult tw_contact_check(int n, const BindingProfile& binding,
                                    const NumericConfig& cfg) {
  cfg.validate();
  if (n != 1 && n != 2) throw Error("binding contact check supports n = 1, 2 only");
  BindingModel model{n};

  FormField beta{1, [&](const Vec& p, const std::vector<Vec>& ts) {
                   double r = p(2 * n);
                   Vec w = p.head(2 * n);
                   Vec o = ts[0].head(2 * n);
                   return binding.h1(r) * model.alpha(w, o) + binding.h2(r) * ts[0](2 * n + 1);
                 }};
  FormField dbeta{2, [&](const Vec& p, const std::vector<Vec>& ts) {
                    double r = p(2 * n);
                    Vec w = p.head(2 * n);
                    Vec o = ts[0].head(2 * n), e = ts[1].head(2 * n);
                    double o_r = ts[0](2 * n), e_r = ts[1](2 * n);
                    double o_t = ts[0](2 * n + 1), e_t = ts[1](2 * n + 1);
                    double v = binding.h1_deriv(r) *
                               (o_r * model.alpha(w, e) - e_r * model.alpha(w, o));
                    v += binding.h1(r) * model.dalpha(w, o, e);
                    v += binding.h2_deriv(r) * (o_r * e_t - e_r * o_t);
                    return v;
                  }};

  std::vector<FormField> stack{beta};
  for (int i = 0; i < n; ++i) stack.push_back(dbeta);

  ContactCheckResult res;
  res.min_volume = std::numeric_limits<double>::infinity();
  res.min_reduced = std::numeric_limits<double>::infinity();
  res.signs_agree = true;

  Rng rng(cfg.seed);
  std::vector<Vec> sphere_points;
  for (int j = 0; j < cfg.grid_ang; ++j) {
    Vec w;
    if (n == 1) {
      double th = 2.0 * M_PI * j / cfg.grid_ang;
      w = Vec(2);
      w << std::cos(th), std::sin(th);
    } else {
      w = rng.gaussian_vec(4);
      while (w.norm() < 1e-8) w = rng.gaussian_vec(4);
      w.normalize();
    }
    sphere_points.push_back(w);
  }

  for (int i = 0; i < cfg.grid_r; ++i) {
    double r = cfg.r_min + (1.0 - cfg.r_min) * i / (cfg.grid_r - 1);
    double reduced = std::pow(binding.h1(r), n - 1) *
                     (binding.h1(r) * binding.h2_deriv(r) - binding.h1_deriv(r) * binding.h2(r));
    for (int j = 0; j < cfg.grid_ang; ++j) {
      Vec p = Vec::Zero(model.ambient());
      p.head(2 * n) = sphere_points[j];
      p(2 * n) = r;
      p(2 * n + 1) = 2.0 * M_PI * j / cfg.grid_ang;
      double vol = volume_eval(stack, p, model.frame(sphere_points[j]));
      if (vol < res.min_volume) {
        res.min_volume = vol;
        std::ostringstream os;
        os << "r = " << r << ", angular index " << j;
        res.worst_location = os.str();
      }
      res.min_reduced = std::min(res.min_reduced, reduced);
      if ((vol > 0) != (reduced > 0)) res.signs_agree = false;
    }
  }

  double overlap = 0.0;
  for (int i = 0; i < cfg.grid_r; ++i) {
    double r = 0.5 + 0.5 * i / (cfg.grid_r - 1);
    overlap = std::max(overlap, std::abs(binding.h1(r) - std::exp(0.5 - r)) +
                                    std::abs(binding.h2(r) - 1.0));
  }
  res.overlap_error = overlap;
  return res;
}

}  // namespace obk
