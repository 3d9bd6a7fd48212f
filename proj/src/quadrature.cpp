#include "zfree/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace zfree {

namespace {

// Gauss-Kronrod 7-15 nodes/weights (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b;
  cplx value;
  double err;
  bool operator<(const Segment& o) const { return err < o.err; }
};

Segment gk15(const Integrand& f, const Weight& w, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  auto eval = [&](double t) -> cplx {
    cplx v = f(t) * weight_factor(w, t);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw QuadratureError("integrand not finite at t=" + std::to_string(t));
    return v;
  };
  cplx resk = 0.0, resg = 0.0;
  double resabs = 0.0;
  for (int j = 0; j < 8; ++j) {
    const double x = h * kXgk[j];
    cplx f1 = eval(c - x);
    cplx f2 = (j == 7) ? f1 : eval(c + x);
    cplx s = (j == 7) ? f1 : f1 + f2;
    resk += kWgk[j] * s;
    resabs += kWgk[j] * (std::abs(f1) + (j == 7 ? 0.0 : std::abs(f2)));
    if (j % 2 == 1) resg += kWg[j / 2] * s;
  }
  resk *= h;
  resg *= h;
  resabs *= std::abs(h);
  double err = std::abs(resk - resg);
  // QUADPACK-style sharpening of the raw |K-G| estimate.
  if (err != 0.0 && resabs != 0.0) {
    const double scale = std::pow(200.0 * err / resabs, 1.5);
    err = resabs * std::min(1.0, scale);
  }
  err = std::max(err, 50.0 * 1e-300);
  err = std::max(err, std::abs(resk) * 5e-16);
  return {a, b, resk, err};
}

}  // namespace

double weight_factor(const Weight& w, double t) {
  switch (w.kind) {
    case WeightKind::none:
      return 1.0;
    case WeightKind::inv_t_1p2r:
      return std::pow(t, -(1.0 + 2.0 * w.param));
    case WeightKind::inv_t_1m2s0:
      return std::pow(t, -(1.0 - 2.0 * w.param));
  }
  return 1.0;
}

CertifiedValue integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec,
                         const std::vector<double>& breakpoints, const Weight& w) {
  spec.validate();
  if (!(b > a)) {
    if (b == a) return CertifiedValue(0.0);
    throw DomainError("integrate: requires a <= b");
  }

  std::vector<double> pts;
  pts.push_back(a);
  for (double p : breakpoints)
    if (p > a && p < b) pts.push_back(p);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::priority_queue<Segment> heap;
  cplx total = 0.0;
  double toterr = 0.0;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    Segment s = gk15(f, w, pts[i], pts[i + 1]);
    total += s.value;
    toterr += s.err;
    heap.push(s);
  }

  int splits = 0;
  while (toterr > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (splits >= spec.max_subdivisions)
      throw QuadratureError("integrate: max_subdivisions exhausted, err=" + std::to_string(toterr));
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // interval at machine resolution; accept its estimate as-is
      heap.push({worst.a, worst.b, worst.value, 0.0});
      toterr -= worst.err;
      continue;
    }
    Segment l = gk15(f, w, worst.a, mid);
    Segment r = gk15(f, w, mid, worst.b);
    total += l.value + r.value - worst.value;
    toterr += l.err + r.err - worst.err;
    heap.push(l);
    heap.push(r);
    ++splits;
  }
  return {total, toterr};
}

CertifiedValue integrate_to_inf(const Integrand& f, double a, double cutoff,
                                const QuadratureSpec& spec, const TailEnvelope& env,
                                const std::vector<double>& breakpoints, const Weight& w) {
  spec.validate();
  if (!(cutoff > a)) throw DomainError("integrate_to_inf: cutoff must exceed lower limit");

  if (spec.tail_cutoff_strategy == TailStrategy::bound_driven) {
    if (!(env.power < -1.0)) throw DomainError("integrate_to_inf: envelope power must be < -1");
    CertifiedValue head = integrate(f, a, cutoff, spec, breakpoints, w);
    const double tail = env.coeff * std::pow(cutoff, env.power + 1.0) / (-env.power - 1.0);
    return {head.value, head.err + tail};
  }

  // geometric: keep doubling the cutoff until the marginal block is small,
  // then charge the extrapolated geometric remainder to err.
  CertifiedValue acc = integrate(f, a, cutoff, spec, breakpoints, w);
  double lo = cutoff;
  double last = std::abs(acc.value) + acc.err;
  for (int k = 0; k < 60; ++k) {
    const double hi = 2.0 * lo;
    std::vector<double> bp;
    for (double p : breakpoints)
      if (p > lo && p < hi) bp.push_back(p);
    CertifiedValue block = integrate(f, lo, hi, spec, bp, w);
    acc = acc + block;
    const double bmag = std::abs(block.value) + block.err;
    if (bmag < std::max(spec.abs_tol, spec.rel_tol * std::abs(acc.value)) / 4.0) {
      // remaining blocks bounded by geometric continuation of the decay
      double ratio = last > 0 ? bmag / last : 0.5;
      ratio = std::min(ratio, 0.75);
      return {acc.value, acc.err + bmag * ratio / (1.0 - ratio)};
    }
    last = bmag;
    lo = hi;
  }
  throw QuadratureError("integrate_to_inf: geometric tail did not converge");
}

CertifiedValue integrate_singular_origin(const Integrand& f, double length, double beta,
                                         const QuadratureSpec& spec) {
  if (!(beta >= 0.0) || !(beta < 1.0))
    throw DomainError("integrate_singular_origin: need 0 <= beta < 1");
  if (!(length > 0.0)) {
    if (length == 0.0) return CertifiedValue(0.0);
    throw DomainError("integrate_singular_origin: length >= 0 required");
  }
  if (beta == 0.0) return integrate(f, 0.0, length, spec);
  const double g = 1.0 / (1.0 - beta);
  const double ub = std::pow(length, 1.0 - beta);
  Integrand sub = [&, g](double u) -> cplx {
    if (u <= 0.0) return 0.0;
    const double x = std::pow(u, g);
    return f(x) * g * std::pow(u, g - 1.0);
  };
  return integrate(sub, 0.0, ub, spec);
}

CertifiedValue integrate_left_singular(const Integrand& f, double a, double b, double beta,
                                       const QuadratureSpec& spec) {
  if (!(b > a)) {
    if (b == a) return CertifiedValue(0.0);
    throw DomainError("integrate_left_singular: requires a <= b");
  }
  Integrand shift = [&f, a](double x) { return f(a + x); };
  return integrate_singular_origin(shift, b - a, beta, spec);
}

CertifiedValue integrate_right_singular(const Integrand& f, double a, double b, double beta,
                                        const QuadratureSpec& spec) {
  if (!(b > a)) {
    if (b == a) return CertifiedValue(0.0);
    throw DomainError("integrate_right_singular: requires a <= b");
  }
  Integrand flip = [&f, b](double x) { return f(b - x); };
  return integrate_singular_origin(flip, b - a, beta, spec);
}

}  // namespace zfree
