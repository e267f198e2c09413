#include "obk/maps.hpp"

#include <cmath>

namespace obk {

namespace {

Vec twist_point(int n, const TwistProfile& profile, const Vec& s) {
  Vec x = s.head(n + 1), y = s.tail(n + 1);
  double rho = y.norm();
  Vec out(2 * (n + 1));
  if (rho < 1e-300) {
    double sign = profile.k % 2 == 0 ? 1.0 : -1.0;
    out << sign * x, y;
    return out;
  }
  if (rho >= profile.p0) {  // outside the support: exactly the identity
    out << x, y;
    return out;
  }
  double t = profile.eval(rho);
  double c = std::cos(t), sn = std::sin(t);
  Vec nx = c * x + (sn / rho) * y;
  Vec ny = -rho * sn * x + c * y;
  out << nx, ny;
  return out;
}

// Exact differential of the twist away from the zero section, for
// cross-checking the finite-difference pushforward.
Vec twist_differential(int n, const TwistProfile& profile, const Vec& s, const Vec& w) {
  Vec x = s.head(n + 1), y = s.tail(n + 1);
  Vec u = w.head(n + 1), v = w.tail(n + 1);
  double rho = y.norm();
  Vec out(2 * (n + 1));
  if (rho >= profile.p0 || rho < 1e-12) {
    if (rho < 1e-12) throw Error("twist differential is not available on the zero section");
    out << u, v;
    return out;
  }
  double t = profile.eval(rho);
  double c = std::cos(t), sn = std::sin(t);
  double drho = y.dot(v) / rho;
  double dt = profile.deriv(rho) * drho;
  // d(c x) = -sn dt x + c u ;  d((sn/rho) y) = (c dt/rho - sn drho/rho^2) y + (sn/rho) v
  Vec dx = -sn * dt * x + c * u + (c * dt / rho - sn * drho / (rho * rho)) * y + (sn / rho) * v;
  Vec dy = -(drho * sn + rho * c * dt) * x - rho * sn * u + (-sn * dt) * y + c * v;
  out << dx, dy;
  return out;
}

}  // namespace

AmbientMap dehn_twist_map(int n, const TwistProfile& profile) {
  profile.validate();
  auto eval = [n, profile](const Vec& s) { return twist_point(n, profile, s); };
  auto deriv = [n, profile](const Vec& s, const Vec& w) {
    return twist_differential(n, profile, s, w);
  };
  return make_tstar_map(n, n, eval, deriv);
}

AmbientMap embedding_map(double t, const CutoffProfile& cutoff, int n) {
  cutoff.validate();
  auto eval = [t, cutoff, n](const Vec& s) {
    Vec x = s.head(n + 1), y = s.tail(n + 1);
    Vec out(2 * (n + 2));
    out.head(n + 1) = x;
    out(n + 1) = 0.0;
    out.segment(n + 2, n + 1) = y;
    out(2 * n + 3) = t * cutoff.eval(y.norm());
    return out;
  };
  auto deriv = [t, cutoff, n](const Vec& s, const Vec& w) {
    Vec y = s.tail(n + 1);
    Vec u = w.head(n + 1), v = w.tail(n + 1);
    double rho = y.norm();
    Vec out = Vec::Zero(2 * (n + 2));
    out.head(n + 1) = u;
    out.segment(n + 2, n + 1) = v;
    out(2 * n + 3) = rho < 1e-12 ? 0.0 : t * cutoff.deriv(rho) * y.dot(v) / rho;
    return out;
  };
  return make_tstar_map(n, n + 1, eval, deriv);
}

AmbientMap embedded_twist_map(double t, const CutoffProfile& cutoff, int n,
                              const TwistProfile& twist) {
  AmbientMap tw = dehn_twist_map(n, twist);
  AmbientMap jt = embedding_map(t, cutoff, n);
  auto eval = [tw, jt](const Vec& s) { return jt.eval(tw.eval(s)); };
  return make_tstar_map(n, n + 1, eval);
}

}  // namespace obk
