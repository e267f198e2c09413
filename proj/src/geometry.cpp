#include "obk/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace obk {

Vec PointTS::stacked() const {
  Vec s(x.size() + y.size());
  s << x, y;
  return s;
}

PointTS PointTS::from_stacked(int n, const Vec& s) {
  PointTS p;
  p.n = n;
  p.x = s.head(n + 1);
  p.y = s.tail(n + 1);
  return p;
}

void PointTS::validate(bool disk) const {
  if (x.size() != n + 1 || y.size() != n + 1) throw Error("point has wrong dimensions");
  if (std::abs(x.norm() - 1.0) > 1e-12) throw Error("point violates |x| = 1");
  if (std::abs(x.dot(y)) > 1e-12) throw Error("point violates x.y = 0");
  if (disk && y.norm() > 1.0 + 1e-12) throw Error("point leaves the unit disk bundle");
}

Vec TangentTS::stacked() const {
  Vec s(u.size() + v.size());
  s << u, v;
  return s;
}

TangentTS TangentTS::from_stacked(const Vec& s) {
  TangentTS t;
  auto half = s.size() / 2;
  t.u = s.head(half);
  t.v = s.tail(half);
  return t;
}

PointTS project(int n, const Vec& x, const Vec& y) {
  double r = x.norm();
  if (r < 1e-14) throw Error("cannot project: |x| = 0");
  PointTS p;
  p.n = n;
  p.x = x / r;
  p.y = y - p.x.dot(y) * p.x;
  return p;
}

Vec project_differential(const Vec& x, const Vec& y, const Vec& xi, const Vec& eta) {
  double r = x.norm();
  if (r < 1e-14) throw Error("cannot differentiate projection at |x| = 0");
  Vec xh = x / r;
  Vec dxh = (xi - xh.dot(xi) * xh) / r;
  // y' = y - (xh.y) xh
  double a = xh.dot(y);
  double da = dxh.dot(y) + xh.dot(eta);
  Vec dy = eta - da * xh - a * dxh;
  Vec out(x.size() * 2);
  out << dxh, dy;
  return out;
}

std::uint64_t Rng::next() {
  // splitmix64
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0);
}

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  while (u1 <= 1e-300) u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

Vec Rng::gaussian_vec(int dim) {
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = gaussian();
  return v;
}

std::vector<SampleTS> sample(int n, std::uint64_t seed, int count) {
  if (count < 1) throw Error("sample count must be at least 1");
  Rng rng(seed);
  std::vector<SampleTS> out;
  out.reserve(count);
  while (static_cast<int>(out.size()) < count) {
    Vec x = rng.gaussian_vec(n + 1);
    if (x.norm() < 1e-8) continue;
    x.normalize();
    Vec y = rng.gaussian_vec(n + 1);
    y -= x.dot(y) * x;
    double r = std::pow(rng.uniform(), 1.0 / n);
    if (y.norm() > 1e-12)
      y *= r / y.norm();
    else
      y.setZero();

    auto tangent = [&]() {
      Vec u = rng.gaussian_vec(n + 1);
      u -= x.dot(u) * x;
      Vec v = rng.gaussian_vec(n + 1);
      v -= (x.dot(v) + u.dot(y)) * x;
      TangentTS t{u, v};
      double norm = t.stacked().norm();  // unit tangents: dlambda is bilinear,
      if (norm > 1e-12) {                // so the checks lose nothing
        t.u /= norm;
        t.v /= norm;
      }
      return t;
    };
    SampleTS s;
    s.p = PointTS{n, x, y};
    s.t1 = tangent();
    s.t2 = tangent();
    out.push_back(std::move(s));
  }
  return out;
}

double lambda_eval(const PointTS& p, const TangentTS& t) { return p.y.dot(t.u); }

double dlambda_eval(const PointTS&, const TangentTS& t1, const TangentTS& t2) {
  return t1.v.dot(t2.u) - t2.v.dot(t1.u);
}

Manifold tstar_sphere_model(int n) {
  Manifold m;
  m.ambient_dim = 2 * (n + 1);
  m.retract = [n](const Vec& s) {
    PointTS p = project(n, s.head(n + 1), s.tail(n + 1));
    return p.stacked();
  };
  m.d_retract = [n](const Vec& s, const Vec& w) {
    return project_differential(s.head(n + 1), s.tail(n + 1), w.head(n + 1), w.tail(n + 1));
  };
  return m;
}

Manifold flat_model(int dim) {
  Manifold m;
  m.ambient_dim = dim;
  m.retract = [](const Vec& s) { return s; };
  m.d_retract = [](const Vec&, const Vec& w) { return w; };
  return m;
}

AmbientMap make_tstar_map(int n_src, int n_dst, std::function<Vec(const Vec&)> eval,
                          std::function<Vec(const Vec&, const Vec&)> d_eval,
                          std::uint64_t check_seed) {
  AmbientMap map;
  map.n_src = n_src;
  map.n_dst = n_dst;
  map.src = tstar_sphere_model(n_src);
  map.dst = tstar_sphere_model(n_dst);
  map.eval = std::move(eval);
  map.d_eval = std::move(d_eval);

  for (const auto& s : sample(n_src, check_seed, 32)) {
    Vec q = map.eval(s.p.stacked());
    PointTS img = PointTS::from_stacked(n_dst, q);
    if (std::abs(img.x.norm() - 1.0) > 1e-9 || std::abs(img.x.dot(img.y)) > 1e-9)
      throw Error("ambient map does not preserve the model constraints");
  }
  return map;
}

namespace {

// Pushforward of a tangent by central differences along the retracted curve
// s -> phi(retract(p + s d)), taken at steps h and h/2 and Richardson
// combined. The direction is normalized first and the result scaled back;
// pushforwards are linear, and this keeps the truncation error independent
// of the tangent magnitude.
Vec push_tangent(const AmbientMap& map, const Vec& p, const Vec& t, double h, int& resampled) {
  double nt = t.norm();
  if (nt < 1e-300) return Vec::Zero(map.dst.ambient_dim);
  Vec d = t / nt;
  auto diff = [&](double step) {
    Vec plus = map.eval(map.src.retract(p + step * d));
    Vec minus = map.eval(map.src.retract(p - step * d));
    return ((plus - minus) / (2.0 * step)).eval();
  };
  try {
    Vec d1 = diff(h);
    Vec d2 = diff(0.5 * h);
    return nt * (4.0 * d2 - d1) / 3.0;
  } catch (const Error&) {
    ++resampled;
    return nt * diff(0.25 * h);
  }
}

}  // namespace

PullbackStats pullback_error(const AmbientMap& map, const std::vector<SampleTS>& samples,
                             double h) {
  if (h <= 0) throw Error("finite-difference step must be positive");
  PullbackStats stats;
  for (const auto& s : samples) {
    Vec p = s.p.stacked();
    double src = dlambda_eval(s.p, s.t1, s.t2);
    Vec q = map.eval(p);
    PointTS img = PointTS::from_stacked(map.n_dst, q);
    TangentTS u1 = TangentTS::from_stacked(
        push_tangent(map, p, s.t1.stacked(), h, stats.resampled));
    TangentTS u2 = TangentTS::from_stacked(
        push_tangent(map, p, s.t2.stacked(), h, stats.resampled));
    double dst = dlambda_eval(img, u1, u2);
    stats.max_error = std::max(stats.max_error, std::abs(dst - src));
    ++stats.samples;
  }
  return stats;
}

PullbackStats pullback_one_form_error(
    const AmbientMap& map, const std::vector<SampleTS>& samples, double h,
    const std::function<double(const PointTS&, const TangentTS&)>& witness) {
  if (h <= 0) throw Error("finite-difference step must be positive");
  PullbackStats stats;
  for (const auto& s : samples) {
    Vec p = s.p.stacked();
    for (const TangentTS* t : {&s.t1, &s.t2}) {
      Vec q = map.eval(p);
      PointTS img = PointTS::from_stacked(map.n_dst, q);
      TangentTS pushed = TangentTS::from_stacked(
          push_tangent(map, p, t->stacked(), h, stats.resampled));
      double pulled = lambda_eval(img, pushed) - lambda_eval(s.p, *t);
      stats.max_error = std::max(stats.max_error, std::abs(pulled - witness(s.p, *t)));
    }
    ++stats.samples;
  }
  return stats;
}

namespace {

void permutations_signed(int n, const std::function<void(const std::vector<int>&, int)>& visit) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  // iterate in lexicographic order, tracking parity by inversion count
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inv;
    visit(perm, inv % 2 == 0 ? 1 : -1);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

double factorial(int k) {
  double f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

double volume_eval(const std::vector<FormField>& forms, const Vec& point,
                   const std::vector<Vec>& basis) {
  int total = 0;
  for (const auto& f : forms) total += f.degree;
  if (total != static_cast<int>(basis.size()))
    throw Error("form degrees must sum to the number of basis vectors");

  Mat gram(basis.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) gram(i, j) = basis[i].dot(basis[j]);
  if (std::abs(gram.determinant()) < 1e-12) throw Error("degenerate tangent basis");

  double denom = 1;
  for (const auto& f : forms) denom *= factorial(f.degree);

  double sum = 0.0;
  permutations_signed(total, [&](const std::vector<int>& perm, int sign) {
    double prod = sign;
    int at = 0;
    for (const auto& f : forms) {
      std::vector<Vec> args;
      args.reserve(f.degree);
      for (int j = 0; j < f.degree; ++j) args.push_back(basis[perm[at + j]]);
      prod *= f.eval(point, args);
      if (prod == 0.0) break;
      at += f.degree;
    }
    sum += prod;
  });
  return sum / denom;
}

FormField numeric_d(const FormField& form, const Manifold& m, double h) {
  if (h <= 0) throw Error("finite-difference step must be positive");
  FormField out;
  out.degree = form.degree + 1;
  out.eval = [form, m, h](const Vec& p, const std::vector<Vec>& ts) {
    if (static_cast<int>(ts.size()) != form.degree + 1)
      throw Error("numeric_d: wrong number of tangents");
    // Ambient-extension formula: extend the form off the manifold via the
    // retraction (p -> form(retract p, d retract .)), extend the tangents as
    // constant fields, and take the alternating sum of directional
    // derivatives; constant extensions have vanishing brackets.
    auto extended = [&](const Vec& q, const std::vector<Vec>& args) {
      Vec base = m.retract(q);
      std::vector<Vec> proj;
      proj.reserve(args.size());
      for (const auto& a : args) proj.push_back(m.d_retract(q, a));
      return form.eval(base, proj);
    };
    double total = 0.0;
    for (int i = 0; i <= form.degree; ++i) {
      std::vector<Vec> rest;
      rest.reserve(form.degree);
      for (int j = 0; j <= form.degree; ++j)
        if (j != i) rest.push_back(ts[j]);
      double plus = extended(p + h * ts[i], rest);
      double minus = extended(p - h * ts[i], rest);
      double deriv = (plus - minus) / (2.0 * h);
      total += (i % 2 == 0 ? 1.0 : -1.0) * deriv;
    }
    return total;
  };
  return out;
}

}  // namespace obk
