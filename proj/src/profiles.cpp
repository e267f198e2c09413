#include "obk/profiles.hpp"

#include <cmath>

namespace obk {

double bump(double u) {
  u = std::abs(u);
  if (u >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

double bump_deriv(double u) {
  double a = std::abs(u);
  if (a >= 1.0) return 0.0;
  double w = 1.0 - u * u;
  return bump(u) * (-2.0 * u / (w * w));
}

namespace {

double flat_exp(double u) { return u <= 0.0 ? 0.0 : std::exp(-1.0 / u); }
double flat_exp_deriv(double u) { return u <= 0.0 ? 0.0 : flat_exp(u) / (u * u); }

}  // namespace

double smoothstep(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  double f = flat_exp(u), g = flat_exp(1.0 - u);
  return f / (f + g);
}

double smoothstep_deriv(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  double f = flat_exp(u), g = flat_exp(1.0 - u);
  double fp = flat_exp_deriv(u), gp = -flat_exp_deriv(1.0 - u);
  double s = f + g;
  return (fp * s - f * (fp + gp)) / (s * s);
}

double TwistProfile::eval(double s) const {
  if (s >= p0) return 0.0;
  return static_cast<double>(k) * M_PI * bump(s / p0) * (1.0 - s / (4.0 * p0));
}

double TwistProfile::deriv(double s) const {
  if (s >= p0) return 0.0;
  double kpi = static_cast<double>(k) * M_PI;
  return kpi * (bump_deriv(s / p0) / p0 * (1.0 - s / (4.0 * p0)) -
                bump(s / p0) / (4.0 * p0));
}

void TwistProfile::validate() const {
  if (p0 <= 0.0) throw Error("twist profile needs positive support radius");
}

double CutoffProfile::eval(double s) const { return eps * bump(s / delta); }

double CutoffProfile::deriv(double s) const { return eps * bump_deriv(s / delta) / delta; }

void CutoffProfile::validate() const {
  if (eps <= 0.0 || eps > 1.0 || delta <= 0.0 || delta > 1.0)
    throw Error("cutoff profile needs eps, delta in (0, 1]");
  if (!(eval(delta / 2.0) > eps / 2.0))
    throw Error("cutoff profile must satisfy g(delta/2) > eps/2");
}

namespace {

constexpr double kBridgeLo = 0.25;
constexpr double kBridgeHi = 0.5;

double bridge_t(double r) { return (r - kBridgeLo) / (kBridgeHi - kBridgeLo); }

double std_h1(double r) {
  if (r <= kBridgeLo) return 1.0;
  double s = smoothstep(bridge_t(r));  // 1 from kBridgeHi on
  return std::exp(s * (0.5 - r));
}

double std_h1_deriv(double r) {
  if (r <= kBridgeLo) return 0.0;
  double t = bridge_t(r);
  double s = smoothstep(t);
  double sp = smoothstep_deriv(t) / (kBridgeHi - kBridgeLo);
  double psi = s * (0.5 - r);
  double dpsi = sp * (0.5 - r) - s;
  return std::exp(psi) * dpsi;
}

double std_h2(double r) {
  if (r <= kBridgeLo) return r * r;
  if (r >= kBridgeHi) return 1.0;
  double s = smoothstep(bridge_t(r));
  return r * r + s * (1.0 - r * r);
}

double std_h2_deriv(double r) {
  if (r <= kBridgeLo) return 2.0 * r;
  if (r >= kBridgeHi) return 0.0;
  double t = bridge_t(r);
  double s = smoothstep(t);
  double sp = smoothstep_deriv(t) / (kBridgeHi - kBridgeLo);
  return 2.0 * r * (1.0 - s) + sp * (1.0 - r * r);
}

}  // namespace

BindingProfile BindingProfile::standard() {
  return BindingProfile{std_h1, std_h1_deriv, std_h2, std_h2_deriv};
}

void BindingProfile::validate() const {
  if (std::abs(h1(0.0) - 1.0) > 1e-15 || std::abs(h2(0.1) - 0.01) > 1e-15)
    throw Error("binding profile near-axis behavior broken");
  for (double r : {0.5, 0.6, 0.75, 0.9, 1.0}) {
    if (std::abs(h1(r) - std::exp(0.5 - r)) > 1e-12)
      throw Error("binding profile h1 must equal e^{1/2-r} on [1/2,1]");
    if (std::abs(h2(r) - 1.0) > 1e-12)
      throw Error("binding profile h2 must equal 1 on [1/2,1]");
  }
  for (double r = 1e-3; r <= 1.0; r += 1e-3) {
    if (h1(r) <= 0.0) throw Error("binding profile h1 must stay positive");
    if (h1(r) * h2_deriv(r) - h1_deriv(r) * h2(r) <= 0.0)
      throw Error("binding profile violates h1 h2' - h1' h2 > 0");
  }
}

}  // namespace obk
