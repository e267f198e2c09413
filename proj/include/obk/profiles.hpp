#pragma once

// Concrete profile functions behind the twist, embedding and binding
// constructions. All are built from the C-infinity bump
//   chi(u) = exp(1 - 1/(1-u^2)) on [0,1), 0 beyond,
// and the flat-ended smoothstep f(u)/(f(u)+f(1-u)) with f(u) = exp(-1/u).

#include <functional>

#include "obk/words.hpp"

namespace obk {

double bump(double u);             // chi as above; bump(0)=1, supported in [0,1)
double bump_deriv(double u);       // d chi / du
double smoothstep(double u);       // 0 for u<=0, 1 for u>=1, flat at both ends
double smoothstep_deriv(double u);

// Twist angle profile: g_k(0) = k*pi, g_k'(0) < 0 for k > 0, supported in
// [0, p0], monotone in between. Realized as k*pi * chi(s/p0) * (1 - s/(4 p0)).
struct TwistProfile {
  long long k = 1;
  double p0 = 0.5;

  double eval(double s) const;
  double deriv(double s) const;
  void validate() const;  // throws on nonsensical parameters
};

// Isotopy cutoff: g(0) = eps, supported in [0, delta], g(delta/2) > eps/2.
// Realized as eps * chi(s/delta).
struct CutoffProfile {
  double eps = 0.2;
  double delta = 0.2;

  double eval(double s) const;
  double deriv(double s) const;
  void validate() const;
};

// Binding form coefficients on r in [0,1]. The standard profile has
//   h1 = 1 on [0,1/4], bridged so that h1 = e^{1/2-r} on [1/2,1];
//   h2 = r^2 on [0,1/4], bridged monotonically to 1 on [1/2,1].
// The function fields are replaceable (the contact check must be able to
// reject a broken profile).
struct BindingProfile {
  std::function<double(double)> h1, h1_deriv, h2, h2_deriv;

  static BindingProfile standard();
  void validate() const;  // spot-checks the stated boundary behaviors
};

}  // namespace obk
