#include "zfree/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zfree/specfun.hpp"

namespace zfree {

namespace {

constexpr double kPi = std::numbers::pi;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// True when sigma1 is one of the nonpositive integers for which the
// coefficient sum of the zeta model telescopes into Faulhaber power sums.
bool has_faulhaber_path(const SeriesModel& model) {
  if (model.name != "zeta") return false;
  const double s1 = model.sigma1;
  const double k = -s1;
  return k >= 0.0 && k <= 4.0 && std::floor(k) == k;
}

// S_j(N) = sum_{n=1}^N n^j, j <= 4.
double power_sum(int j, double N) {
  switch (j) {
    case 0: return N;
    case 1: return N * (N + 1) / 2.0;
    case 2: return N * (N + 1) * (2 * N + 1) / 6.0;
    case 3: { const double t = N * (N + 1) / 2.0; return t * t; }
    case 4: return N * (N + 1) * (2 * N + 1) * (3 * N * N + 3 * N - 1) / 30.0;
    default: throw DomainError("power_sum: j out of range");
  }
}

// sum_{n=1}^{N} (1 - n/u)^k expanded binomially into power sums.
double faulhaber_phi_sum(int k, double u, double N) {
  double total = 0.0;
  double sign = 1.0;
  double upow = 1.0;
  for (int j = 0; j <= k; ++j) {
    total += sign * binomial(k, j) * power_sum(j, N) / upow;
    sign = -sign;
    upow *= u;
  }
  return total;
}

}  // namespace

void SeriesModel::validate() const {
  if (m_L < 1 || m_L > 8) throw DomainError("SeriesModel: m_L must be in [1, 8]");
  if (!(sigma1 < 0.5)) throw DomainError("SeriesModel: sigma1 < 1/2 required");
  if (!(r0 > sigma0)) throw DomainError("SeriesModel: r0 > sigma0 required");
  if (static_cast<int>(laurent_p.size()) != m_L)
    throw DomainError("SeriesModel: laurent_p must have m_L entries");
  if (std::abs(laurent_p.back()) == 0.0)
    throw DomainError("SeriesModel: leading Laurent coefficient must be nonzero");
  if (!coeff || !L_eval || !phi_hat_eval) throw DomainError("SeriesModel: missing callbacks");
  if (!(psi_tail_cutoff > 1.0)) throw DomainError("SeriesModel: psi_tail_cutoff > 1 required");
}

SeriesModel zeta_model(double sigma1) {
  if (!(sigma1 < 0.5)) throw DomainError("zeta_model: sigma1 < 1/2 required");
  SeriesModel m;
  m.name = "zeta";
  m.coeff = [](long long) { return cplx(1.0, 0.0); };
  m.m_L = 1;
  m.sigma0 = 0.0;
  m.r0 = 0.5;
  m.sigma1 = sigma1;
  m.L_eval = [](cplx s) { return zeta(s); };
  m.phi_hat_eval = [sigma1](cplx s) { return phi_hat(s, sigma1); };
  m.laurent_p = {cplx(1.0 / (1.0 - sigma1), 0.0)};
  // With the Faulhaber fast path psi costs O(1), so a long head integral is
  // affordable; the generic path sums n < u terms per evaluation.
  m.psi_tail_cutoff = has_faulhaber_path(m) ? 1e5 : 2000.0;
  return m;
}

void Sequence::validate() const {
  if (alpha.empty() || alpha.size() != c.size())
    throw DomainError("Sequence: alpha and c must be nonempty and equal-length");
  for (double a : alpha)
    if (!(a > 0.0) || !(a <= 1.0)) throw DomainError("Sequence: alpha_j in (0, 1] required");
}

double Sequence::abs_c_sum() const {
  double s = 0.0;
  for (const cplx& v : c) s += std::abs(v);
  return s;
}

Sequence concat(const Sequence& a, const Sequence& b) {
  Sequence out = a;
  out.alpha.insert(out.alpha.end(), b.alpha.begin(), b.alpha.end());
  out.c.insert(out.c.end(), b.c.begin(), b.c.end());
  return out;
}

PolyP poly_P(const SeriesModel& model) {
  PolyP P{model.laurent_p};
  P.validate();
  return P;
}

cplx psi_residue_term(const SeriesModel& model, double u) {
  if (!(u > 0.0)) throw DomainError("psi_residue_term: u > 0 required");
  const double x = std::log(u);
  cplx poly = 0.0;
  double xp = 1.0;
  for (int k = 0; k < model.m_L; ++k) {
    poly += model.laurent_p[static_cast<std::size_t>(k)] * xp;
    xp *= x;
  }
  return u * poly;
}

CertifiedValue psi(const SeriesModel& model, double u) {
  if (!(u > 0.0) || !std::isfinite(u)) throw DomainError("psi: u > 0 required");
  const cplx res = psi_residue_term(model, u);
  if (u <= 1.0) return {res, 1e-15 * std::abs(res)};

  const double N = std::ceil(u) - 1.0;  // number of terms n < u
  double sum_abs = 0.0;
  cplx sum = 0.0;
  if (has_faulhaber_path(model)) {
    const int k = static_cast<int>(-model.sigma1);
    sum = faulhaber_phi_sum(k, u, N);
    sum_abs = std::abs(sum) + power_sum(0, N);  // crude scale for roundoff
  } else {
    const long long Ni = static_cast<long long>(N);
    for (long long n = 1; n <= Ni; ++n) {
      const double t = static_cast<double>(n) / u;
      if (!(t < 1.0)) continue;  // guards u exactly integral
      const double phi = std::pow(1.0 - t, -model.sigma1);
      sum += model.coeff(n) * phi;
      sum_abs += std::abs(model.coeff(n)) * phi;
    }
  }
  const cplx v = res - sum;
  const double err = 1e-15 * (std::abs(res) + sum_abs) * (1.0 + std::log2(N + 2.0));
  return {v, err};
}

CertifiedValue psi_offset(const SeriesModel& model, long long n, double delta) {
  if (n < 1) throw DomainError("psi_offset: n >= 1 required");
  if (!(delta > 0.0) || !(delta <= 1.0)) throw DomainError("psi_offset: delta in (0,1] required");
  const double u = static_cast<double>(n) + delta;
  if (model.sigma1 <= 0.0) return psi(model, u);
  const cplx res = psi_residue_term(model, u);
  cplx sum = 0.0;
  double sum_abs = 0.0;
  for (long long k = 1; k < n; ++k) {
    const double gap = static_cast<double>(n - k) + delta;
    const double phi = std::pow(gap / u, -model.sigma1);
    sum += model.coeff(k) * phi;
    sum_abs += std::abs(model.coeff(k)) * phi;
  }
  const double phin = std::pow(delta / u, -model.sigma1);
  sum += model.coeff(n) * phin;
  sum_abs += std::abs(model.coeff(n)) * phin;
  const cplx v = res - sum;
  const double err = 1e-15 * (std::abs(res) + sum_abs) * (1.0 + std::log2(static_cast<double>(n) + 2.0));
  return {v, err};
}

cplx psi_dilated_offset(const SeriesModel& model, double alpha, double b, double x) {
  const double t = b - x;
  if (!(t > 0.0)) throw DomainError("psi_dilated_offset: offset exceeds endpoint");
  const double q = alpha / b;
  const double n = std::round(q);
  if (model.sigma1 > 0.0 && n >= 1.0 && std::abs(q - n) < 1e-6 * n) {
    // b is the spike abscissa alpha/n up to one rounding, which can leave the
    // true singularity a sub-ulp distance inside the interval.  Measure the
    // distance from the endpoint itself so the quadrature sees the spike
    // exactly at x = 0; this perturbs alpha by at most one ulp of n*b, far
    // below any quadrature tolerance.
    const double delta = n * x / t;
    if (delta > 0.0 && delta <= 1.0)
      return psi_offset(model, static_cast<long long>(n), delta).value;
  }
  return psi(model, alpha / t).value;
}

double zeta_C_sigma1(double sigma1) {
  if (!(sigma1 < 0.5)) throw DomainError("zeta_C_sigma1: sigma1 < 1/2 required");
  const double eps1 = (sigma1 > 0.0) ? 1.0 : (sigma1 < 0.0 ? -1.0 : 0.0);
  const double om = 1.0 - sigma1;
  return 1.0 / (1.0 - 2.0 * sigma1) + 1.0 / (om * om * (3.0 - 2.0 * sigma1)) + eps1 / (om * om);
}

double psi_norm_r_bound(const SeriesModel& model, double r) {
  if (model.name != "zeta") throw DomainError("psi_norm_r_bound: closed form available for the zeta model only");
  if (!(r > model.sigma1) || !(r < 1.0)) throw DomainError("psi_norm_r_bound: sigma1 < r < 1 required");
  const double s1 = model.sigma1;
  const CertifiedValue z = zeta(cplx(1.0 + 2.0 * (r - s1), 0.0));
  const double inner = 1.0 / (2.0 * r) + zeta_C_sigma1(s1) * (z.real() + z.err);
  return std::sqrt(inner);
}

namespace {

// One interval of the psi-norm integrand: int_n^{n+1} |psi(u)|^2 u^{-1-2r} du,
// spike-aware when sigma1 > 0.
CertifiedValue psi_sq_interval(const SeriesModel& model, double r, long long n,
                               const QuadratureSpec& spec) {
  const double a = static_cast<double>(n);
  if (model.sigma1 > 0.0) {
    auto fx = [&](double x) -> cplx {
      const cplx v = psi_offset(model, n, x).value;
      return std::norm(v) * std::pow(a + x, -1.0 - 2.0 * r);
    };
    return integrate_singular_origin(fx, 1.0, 2.0 * model.sigma1, spec);
  }
  auto f = [&](double t) -> cplx {
    const cplx v = psi(model, t).value;
    return std::norm(v) * std::pow(t, -1.0 - 2.0 * r);
  };
  return integrate(f, a, a + 1.0, spec);
}

// Tail int_T^inf |psi(u)|^2 u^{-1-2r} du.  The per-interval integrals decay
// like C n^p with the known exponent p = max(2 sigma1, 0) - 1 - 2r (the
// spike profile is asymptotically self-similar with amplitude u^{sigma1});
// C is estimated from a window of computed intervals at T and the remainder
// sum over n >= T is evaluated by Euler-Maclaurin.  The spread of C over
// the window funds the error bound.
// Models sum_{n >= T} I_n where I_n = interval(n) satisfies
// I_n = n^p (c0 + c1 n^{-q} + O(n^{-2q})); fits c0, c1 over a strided window
// and sums the powers by Euler-Maclaurin.
CertifiedValue window_tail(double p, double q, long long T,
                           const std::function<CertifiedValue(long long)>& interval) {
  const double dT = static_cast<double>(T);
  constexpr int kWindow = 12;
  const long long stride = std::max<long long>(1, T / 64);
  double xs[kWindow], ys[kWindow];
  double quad_err = 0.0;
  for (int k = 0; k < kWindow; ++k) {
    const long long n = T + stride * k;
    const CertifiedValue I = interval(n);
    const double np = std::pow(static_cast<double>(n), p);
    xs[k] = std::pow(static_cast<double>(n), -q) - std::pow(dT, -q);  // centered for conditioning
    ys[k] = I.real() / np;
    quad_err += I.err / np;
  }
  double sx = 0.0, sxx = 0.0, sy = 0.0, sxy = 0.0;
  for (int k = 0; k < kWindow; ++k) {
    sx += xs[k];
    sxx += xs[k] * xs[k];
    sy += ys[k];
    sxy += xs[k] * ys[k];
  }
  const double det = kWindow * sxx - sx * sx;
  const double c1 = (kWindow * sxy - sx * sy) / det;
  const double cT = (sy - c1 * sx) / kWindow;  // fitted value of c0 + c1 T^{-q}
  const double c0 = cT - c1 * std::pow(dT, -q);
  double resid = 0.0;
  for (int k = 0; k < kWindow; ++k) resid = std::max(resid, std::abs(ys[k] - cT - c1 * xs[k]));
  // sum_{n >= T} n^q by Euler-Maclaurin (q < -1)
  auto em_sum = [&](double q) {
    return std::pow(dT, q + 1.0) / (-q - 1.0) + 0.5 * std::pow(dT, q) +
           q * std::pow(dT, q - 1.0) / 12.0;
  };
  const double S0 = em_sum(p);
  const double value = c0 * S0 + c1 * em_sum(p - q);
  // Error budget: fit spread and quadrature error over the whole sum, the
  // full magnitude of the first correction as a proxy for the unmodelled
  // higher-order terms, and the Euler-Maclaurin remainder.
  const double err = (2.0 * resid + quad_err) * S0 + std::abs(c1) * em_sum(p - q) +
                     std::abs(p) * std::pow(dT, p - 1.0);
  return {cplx(value, 0.0), err};
}

CertifiedValue psi_sq_tail(const SeriesModel& model, double r, long long T,
                           const QuadratureSpec& spec) {
  const double p = std::max(2.0 * model.sigma1, 0.0) - 1.0 - 2.0 * r;
  const double q = (model.sigma1 > 0.0) ? 2.0 * model.sigma1 : 1.0;
  return window_tail(p, q, T, [&](long long n) { return psi_sq_interval(model, r, n, spec); });
}

// Interval integral of the full dilation sum, int_n^{n+1} |sum_j c_j
// psi(alpha_j u)|^2 u^{-1-2r} du, for sigma1 <= 0 only (each psi factor is
// bounded; interior points where alpha_j u crosses an integer are kinks, so
// they become segment endpoints).
CertifiedValue f_sq_interval(const SeriesModel& model, const Sequence& A, double r, long long n,
                             const QuadratureSpec& spec) {
  const double a = static_cast<double>(n);
  std::vector<double> pts{a, a + 1.0};
  for (double alpha : A.alpha)
    for (double k = std::ceil(alpha * a); k <= alpha * (a + 1.0); k += 1.0) {
      const double u = k / alpha;
      if (u > a && u < a + 1.0) pts.push_back(u);
    }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double x, double y) { return std::abs(x - y) < 1e-13; }),
            pts.end());
  auto g = [&](double u) -> cplx {
    cplx sum = 0.0;
    for (int j = 0; j < A.length(); ++j)
      sum += A.c[static_cast<std::size_t>(j)] *
             psi(model, A.alpha[static_cast<std::size_t>(j)] * u).value;
    return std::norm(sum) * std::pow(u, -1.0 - 2.0 * r);
  };
  CertifiedValue total(0.0);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) total = total + integrate(g, pts[i], pts[i + 1], spec);
  return total;
}

}  // namespace

CertifiedValue psi_norm_r(const SeriesModel& model, double r, const QuadratureSpec& spec) {
  model.validate();
  spec.validate();
  if (!(r > std::max(model.sigma0, model.sigma1)) || !(r < 1.0)) throw DomainError("psi_norm_r: max(sigma0, sigma1) < r < 1 required");
  const long long Ti = static_cast<long long>(model.psi_tail_cutoff);

  // Head: integrate interval by interval so each integer singularity/kink
  // sits at a segment endpoint; the singular (sigma1 > 0) path works in the
  // offset from the spike to keep relative precision there.
  CertifiedValue head(0.0);
  for (long long n = 1; n < Ti; ++n) head = head + psi_sq_interval(model, r, n, spec);

  const CertifiedValue total = head + psi_sq_tail(model, r, Ti, spec);
  const double val = std::sqrt(std::max(0.0, total.real()));
  const double err = (val > 0.0) ? total.err / (2.0 * val) : std::sqrt(total.err);
  return {cplx(val, 0.0), err};
}

double psi1_norm(const SeriesModel& model, double r) {
  if (!(r < 1.0)) throw DomainError("psi1_norm: r < 1 required");
  const double a = 2.0 - 2.0 * r;
  cplx total = 0.0;
  for (int i = 0; i < model.m_L; ++i)
    for (int j = 0; j < model.m_L; ++j) {
      const int n = i + j;
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      total += model.laurent_p[static_cast<std::size_t>(i)] *
               std::conj(model.laurent_p[static_cast<std::size_t>(j)]) * sign * factorial(n) /
               std::pow(a, n + 1);
    }
  return std::sqrt(std::max(0.0, total.real()));
}

double P_norm2(const PolyP& P) {
  cplx total = 0.0;
  for (int i = 0; i < P.m(); ++i)
    for (int j = 0; j < P.m(); ++j) {
      const int n = i + j;
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      total += P.p[static_cast<std::size_t>(i)] * std::conj(P.p[static_cast<std::size_t>(j)]) *
               sign * factorial(n) / std::pow(2.0, n + 1);
    }
  return std::sqrt(std::max(0.0, total.real()));
}

CertifiedValue f_A(const SeriesModel& model, const Sequence& A, double r, double t) {
  A.validate();
  if (!(t > 0.0)) throw DomainError("f_A: t > 0 required");
  CertifiedValue sum(0.0);
  for (int j = 0; j < A.length(); ++j)
    sum = sum + A.c[static_cast<std::size_t>(j)] * psi(model, A.alpha[static_cast<std::size_t>(j)] / t);
  const double scale = std::pow(t, r - model.sigma0);
  return scale * sum;
}

namespace {

// Coefficients d_l of the log-polynomial with
// f_{A,r}(t) = t^{r - sigma0 - 1} sum_l d_l (log t)^l for t > max alpha_j.
std::vector<cplx> f_A_log_poly(const SeriesModel& model, const Sequence& A) {
  std::vector<cplx> d(static_cast<std::size_t>(model.m_L), 0.0);
  for (int j = 0; j < A.length(); ++j) {
    const double a = A.alpha[static_cast<std::size_t>(j)];
    const cplx ca = A.c[static_cast<std::size_t>(j)] * a;
    const double la = std::log(a);
    for (int k = 0; k < model.m_L; ++k) {
      const cplx pk = model.laurent_p[static_cast<std::size_t>(k)];
      for (int l = k; l >= 0; --l) {
        const double sign = (l % 2 == 0) ? 1.0 : -1.0;
        d[static_cast<std::size_t>(l)] += ca * pk * binomial(k, l) * sign *
                                          std::pow(la, static_cast<double>(k - l));
      }
    }
  }
  return d;
}

}  // namespace

CertifiedValue f_A_norm(const SeriesModel& model, const Sequence& A, double r,
                        const QuadratureSpec& spec) {
  model.validate();
  A.validate();
  spec.validate();
  if (!(r > std::max(model.sigma0, model.sigma1)) || !(r < 1.0)) throw DomainError("f_A_norm: max(sigma0, sigma1) < r < 1 required");

  // Exact piece over (amax, inf): there every psi argument is < 1 so f is a
  // log-polynomial times a power; the integrals reduce to
  // int_1^inf (log t)^n t^{2r-3} dt = n!/(2-2r)^{n+1} after rescaling by amax.
  const double amax = *std::max_element(A.alpha.begin(), A.alpha.end());
  const std::vector<cplx> d0 = f_A_log_poly(model, A);
  // Shift by log(amax): f = (t')^{r-s0-1} amax^{r-s0-1} sum d'_l (log t')^l
  // with t' = t/amax and d'_l = sum_{k>=l} d0_k C(k,l) (log amax)^{k-l}.
  const double lam = std::log(amax);
  std::vector<cplx> d(d0.size(), 0.0);
  for (std::size_t l = 0; l < d.size(); ++l)
    for (std::size_t k = l; k < d.size(); ++k)
      d[l] += d0[k] * binomial(static_cast<int>(k), static_cast<int>(l)) *
              std::pow(lam, static_cast<double>(k - l));
  const double aa = 2.0 - 2.0 * r;
  cplx exact = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j)
      exact += d[i] * std::conj(d[j]) * factorial(static_cast<int>(i + j)) /
               std::pow(aa, static_cast<double>(i + j) + 1.0);
  const double head_exact = std::pow(amax, 2.0 * r - 2.0) * exact.real();

  // Quadrature piece over (eps, amax]: breakpoints at every alpha_j/n that
  // lands in range (psi kinks/singularities), right-endpoint singular when
  // sigma1 > 0.
  const double nmax = (model.sigma1 > 0.0) ? 800.0 : 4000.0;
  double eps = amax;
  for (double a : A.alpha) eps = std::min(eps, a / nmax);
  std::vector<double> pts;
  for (double a : A.alpha)
    for (double n = 1.0; a / n > eps; n += 1.0) {
      const double p = a / n;
      if (p < amax) pts.push_back(p);
    }
  pts.push_back(eps);
  pts.push_back(amax);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double x, double y) { return std::abs(x - y) < 1e-14; }),
            pts.end());
  CertifiedValue mid(0.0);
  const double beta = 2.0 * model.sigma1;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i];
    const double b = pts[i + 1];
    CertifiedValue piece;
    if (beta > 0.0) {
      // Work in the offset x = b - t so the distance to the spike at the
      // right endpoint stays exact down to x ~ 0.
      auto fx = [&](double x) -> cplx {
        const double t = b - x;
        cplx sum = 0.0;
        for (int j = 0; j < A.length(); ++j)
          sum += A.c[static_cast<std::size_t>(j)] *
                 psi_dilated_offset(model, A.alpha[static_cast<std::size_t>(j)], b, x);
        const double scale = std::pow(t, r - model.sigma0);
        return std::norm(scale * sum) * std::pow(t, 2.0 * model.sigma0 - 1.0);
      };
      piece = integrate_singular_origin(fx, b - a, beta, spec);
    } else {
      auto f2 = [&](double t) -> cplx {
        const cplx v = f_A(model, A, r, t).value;
        return std::norm(v) * std::pow(t, 2.0 * model.sigma0 - 1.0);
      };
      piece = integrate(f2, a, b, spec);
    }
    mid = mid + piece;
  }

  // Tail over (0, eps]: the sigma0 powers cancel, leaving
  //   int_0^eps t^{2r-1} |sum_j c_j psi(alpha_j / t)|^2 dt.
  // Substituting u = alpha_j / t turns each diagonal term into
  //   |c_j|^2 alpha_j^{2r} int_{alpha_j/eps}^inf |psi(u)|^2 u^{-1-2r} du,
  // which the modelled tail handles; cross terms are folded into the error
  // budget via Cauchy-Schwarz.
  const std::size_t nA = A.alpha.size();
  std::vector<double> diag(nA, 0.0);
  double tail_val = 0.0;
  double tail_err = 0.0;
  if (model.sigma1 <= 0.0) {
    // Bounded psi factors: substitute u = 1/t and model the full sum,
    // keeping the cross terms in the value.
    const double u0 = 1.0 / eps;
    const long long T = static_cast<long long>(std::ceil(u0 - 1e-9));
    CertifiedValue part(0.0);
    if (static_cast<double>(T) > u0 + 1e-13) {
      std::vector<double> cuts{u0, static_cast<double>(T)};
      for (double alpha : A.alpha)
        for (double k = std::ceil(alpha * u0); k <= alpha * T; k += 1.0) {
          const double u = k / alpha;
          if (u > u0 && u < static_cast<double>(T)) cuts.push_back(u);
        }
      std::sort(cuts.begin(), cuts.end());
      auto g = [&](double u) -> cplx {
        cplx sum = 0.0;
        for (int j = 0; j < A.length(); ++j)
          sum += A.c[static_cast<std::size_t>(j)] *
                 psi(model, A.alpha[static_cast<std::size_t>(j)] * u).value;
        return std::norm(sum) * std::pow(u, -1.0 - 2.0 * r);
      };
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        if (cuts[i + 1] - cuts[i] > 1e-13) part = part + integrate(g, cuts[i], cuts[i + 1], spec);
    }
    const CertifiedValue modelled =
        part + window_tail(-1.0 - 2.0 * r, 1.0, T,
                           [&](long long n) { return f_sq_interval(model, A, r, n, spec); });
    tail_val = std::max(0.0, modelled.real());
    tail_err = modelled.err;
  } else
  for (std::size_t j = 0; j < nA; ++j) {
    const double a = A.alpha[j];
    const double cj2 = std::norm(A.c[j]);
    const double u0 = a / eps;
    const long long T = static_cast<long long>(std::ceil(u0 - 1e-9));
    CertifiedValue part(0.0);
    const long long n = T - 1;
    const double x0 = u0 - static_cast<double>(n);
    // Partial interval [u0, T) when alpha_j / eps is not an integer; the spike
    // sits at x = 0, so integrating in the offset from u0 > n stays regular.
    if (x0 < 1.0 - 1e-9) {
      if (model.sigma1 > 0.0) {
        auto fx = [&](double x) -> cplx {
          const cplx v = psi_offset(model, n, x).value;
          return std::norm(v) * std::pow(static_cast<double>(n) + x, -1.0 - 2.0 * r);
        };
        part = integrate(fx, x0, 1.0, spec);
      } else {
        auto f2 = [&](double u) -> cplx {
          const cplx v = psi(model, u).value;
          return std::norm(v) * std::pow(u, -1.0 - 2.0 * r);
        };
        part = integrate(f2, u0, static_cast<double>(T), spec);
      }
    }
    const CertifiedValue Tj = psi_sq_tail(model, r, T, spec) + part;
    diag[j] = std::pow(a, 2.0 * r) * std::max(0.0, Tj.real());
    tail_val += cj2 * diag[j];
    tail_err += cj2 * std::pow(a, 2.0 * r) * Tj.err;
  }
  for (std::size_t i = 0; i < nA; ++i)
    for (std::size_t j = 0; j < nA; ++j)
      if (i != j)
        tail_err += std::abs(A.c[i]) * std::abs(A.c[j]) * std::sqrt(diag[i] * diag[j]);
  const CertifiedValue tail(cplx(tail_val, 0.0), tail_err);

  const CertifiedValue total = CertifiedValue(cplx(head_exact, 0.0), 1e-14 * std::abs(head_exact)) + mid + tail;
  const double val = std::sqrt(std::max(0.0, total.real()));
  const double err = (val > 0.0) ? total.err / (2.0 * val) : std::sqrt(total.err);
  return {cplx(val, 0.0), err};
}

double f_A_norm_bound(const SeriesModel& model, const Sequence& A, double r) {
  A.validate();
  const double psi1 = psi1_norm(model, r);
  const double psir = psi_norm_r_bound(model, r);
  double total = 0.0;
  for (int j = 0; j < A.length(); ++j)
    total += std::abs(A.c[static_cast<std::size_t>(j)]) *
             std::pow(A.alpha[static_cast<std::size_t>(j)], r) * (psi1 + psir);
  return total;
}

cplx g_A(const Sequence& A, cplx s) {
  A.validate();
  cplx total = 0.0;
  for (int j = 0; j < A.length(); ++j)
    total += A.c[static_cast<std::size_t>(j)] *
             std::pow(cplx(A.alpha[static_cast<std::size_t>(j)], 0.0), s);
  return total;
}

cplx blaschke(cplx lambda, double r, cplx s) {
  const cplx den = s + std::conj(lambda) - 2.0 * r;
  if (std::abs(den) < 1e-300) throw DomainError("blaschke: pole at s = 2r - conj(lambda)");
  return (s - lambda) / den;
}

cplx kernel(cplx lambda, double r, cplx s) {
  const cplx den = s - 2.0 * r + std::conj(lambda);
  if (std::abs(den) < 1e-300) throw DomainError("kernel: pole");
  return 1.0 / (2.0 * kPi * den);
}

double kernel_norm(cplx lambda, double r) {
  if (!(lambda.real() > r)) throw DomainError("kernel_norm: Re lambda > r required");
  return 1.0 / std::sqrt(4.0 * kPi * (lambda.real() - r));
}

std::vector<cplx> u_r_lambda_Q(const SeriesModel& model, double r, cplx lambda) {
  const int m = model.m_L;
  const cplx A = cplx(2.0 - 2.0 * r, 0.0);
  const cplx B = cplx(r + model.sigma0 - 1.0, 0.0) - std::conj(lambda);
  if (std::abs(B) < 1e-300) throw DomainError("u_r_lambda: conj(lambda) = r + sigma0 - 1 degenerate");
  const cplx q = A / B;
  std::vector<cplx> Q(static_cast<std::size_t>(m), 0.0);
  for (int l = 0; l < m; ++l) {
    cplx inner = 0.0;
    for (int k = 0; k <= m - 1 - l; ++k)
      inner += binomial(m, k) * std::pow(q, static_cast<double>(m - k));
    const double sign = (l % 2 == 0) ? 1.0 : -1.0;
    Q[static_cast<std::size_t>(l)] = inner * sign * std::pow(B, static_cast<double>(l)) / factorial(l);
  }
  return Q;
}

cplx u_r_lambda(const SeriesModel& model, double r, cplx lambda, double t) {
  if (!(t > 0.0)) throw DomainError("u_r_lambda: t > 0 required");
  const cplx A = cplx(2.0 - 2.0 * r, 0.0);
  const cplx B = cplx(r + model.sigma0 - 1.0, 0.0) - std::conj(lambda);
  if (std::abs(B) < 1e-300) throw DomainError("u_r_lambda: degenerate B");
  if (t <= 1.0) {
    const cplx base = std::pow(cplx(1.0, 0.0) + A / B, static_cast<double>(model.m_L));
    return base * std::pow(cplx(t, 0.0), std::conj(lambda) - 2.0 * model.sigma0);
  }
  const std::vector<cplx> Q = u_r_lambda_Q(model, r, lambda);
  const double x = std::log(t);
  cplx poly = 0.0;
  double xp = 1.0;
  for (const cplx& ql : Q) {
    poly += ql * xp;
    xp *= x;
  }
  return poly * std::pow(t, r - model.sigma0 - 1.0);
}

double mellin_u_check(const SeriesModel& model, double r, cplx lambda, cplx s) {
  const double s0 = model.sigma0;
  if (!(s.real() > 2.0 * s0 - lambda.real()) || !(s.real() < 1.0 + s0 - r))
    throw DomainError("mellin_u_check: s outside the convergence strip");
  const cplx A = cplx(2.0 - 2.0 * r, 0.0);
  const cplx B = cplx(r + s0 - 1.0, 0.0) - std::conj(lambda);
  // Closed-form Mellin transform of u_{r,lambda}, branch by branch.
  cplx uhat = std::pow(cplx(1.0, 0.0) + A / B, static_cast<double>(model.m_L)) /
              (s + std::conj(lambda) - 2.0 * s0);
  const std::vector<cplx> Q = u_r_lambda_Q(model, r, lambda);
  const cplx w = cplx(1.0 + s0 - r, 0.0) - s;
  for (std::size_t l = 0; l < Q.size(); ++l)
    uhat += Q[l] * factorial(static_cast<int>(l)) / std::pow(w, static_cast<double>(l) + 1.0);
  // Target: 2 pi k_{lambda,sigma0}(s) / b_{1,r}(s + r - sigma0)^{m_L}.
  const cplx target = 2.0 * kPi * kernel(lambda, s0, s) /
                      std::pow(blaschke(cplx(1.0, 0.0), r, s + r - s0), static_cast<double>(model.m_L));
  return std::abs(uhat - target);
}

AdmissibilityReport admissibility(const Sequence& A, int m, double tol) {
  A.validate();
  if (m < 1) throw DomainError("admissibility: m >= 1 required");
  if (!(tol >= 0.0)) throw DomainError("admissibility: tol >= 0 required");
  AdmissibilityReport rep;
  rep.tol = tol;
  rep.is_admissible = true;
  for (int k = 0; k < m; ++k) {
    cplx mom = 0.0;
    for (int j = 0; j < A.length(); ++j) {
      const double a = A.alpha[static_cast<std::size_t>(j)];
      mom += A.c[static_cast<std::size_t>(j)] * a * std::pow(std::log(a), static_cast<double>(k));
    }
    rep.moments.push_back(mom);
    if (std::abs(mom) > tol) rep.is_admissible = false;
  }
  return rep;
}

CertifiedValue mellin_psi_transform(const SeriesModel& model, cplx s, const QuadratureSpec& spec) {
  model.validate();
  spec.validate();
  if (!(s.real() > 0.0) || !(s.real() < 1.0))
    throw DomainError("mellin_psi_transform: 0 < Re s < 1 required");

  // (0,1]: psi is on the residue branch, so the integral is exact:
  // int_0^1 u^{-s} (log u)^k du = (-1)^k k!/(1-s)^{k+1}.
  cplx head = 0.0;
  for (int k = 0; k < model.m_L; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    head += model.laurent_p[static_cast<std::size_t>(k)] * sign * factorial(k) /
            std::pow(cplx(1.0, 0.0) - s, static_cast<double>(k) + 1.0);
  }
  CertifiedValue total(head, 1e-14 * std::abs(head));

  // [1, V]: integer-aligned piecewise quadrature.
  const double V = has_faulhaber_path(model) ? 20000.0 : 1000.0;
  const double beta = model.sigma1;  // |psi| ~ (u - n)^{-sigma1} at each integer
  for (double n = 1.0; n < V; n += 1.0) {
    CertifiedValue piece;
    if (beta > 0.0) {
      const long long ni = static_cast<long long>(n);
      auto fx = [&](double x) -> cplx {
        return psi_offset(model, ni, x).value * std::pow(cplx(n + x, 0.0), -s - 1.0);
      };
      piece = integrate_singular_origin(fx, 1.0, beta, spec);
    } else {
      auto f = [&](double u) -> cplx {
        return psi(model, u).value * std::pow(cplx(u, 0.0), -s - 1.0);
      };
      piece = integrate(f, n, n + 1.0, spec);
    }
    total = total + piece;
  }

  // Tail: psi = mean + oscillation, mean over one period measured at V;
  // the mean contributes psibar V^{-s}/s exactly, the zero-mean remainder
  // is bounded by parts (its antiderivative stays bounded over a period).
  const CertifiedValue mean_int =
      integrate([&](double u) { return psi(model, u).value; }, V, V + 1.0, spec);
  const cplx psibar = mean_int.value;
  const cplx tail = psibar * std::pow(cplx(V, 0.0), -s) / s;
  double osc = 0.0;
  for (double u = V + 0.015625; u < V + 1.0; u += 0.0625)
    osc = std::max(osc, std::abs(psi(model, u).value - psibar));
  const double a = s.real();
  const double tail_err = osc * std::pow(V, -a - 1.0) * (1.0 + std::abs(s + cplx(1.0, 0.0)) / (a + 1.0)) +
                          mean_int.err * std::pow(V, -a) / std::abs(s);
  return total + CertifiedValue(tail, tail_err);
}

double mellin_psi_check(const SeriesModel& model, cplx s, const QuadratureSpec& spec) {
  const CertifiedValue lhs = mellin_psi_transform(model, s, spec);
  const CertifiedValue rhs = model.L_eval(s) * model.phi_hat_eval(s);
  return std::abs(lhs.value + rhs.value);
}

CertifiedValue H_eval(const SeriesModel& model, cplx s) {
  if (std::abs(s - cplx(1.0, 0.0)) < 1e-10)
    throw DomainError("H_eval: s too close to the pole at 1 for stable cancellation");
  CertifiedValue pole(0.0);
  for (int k = 0; k < model.m_L; ++k) {
    const cplx term = factorial(k) * model.laurent_p[static_cast<std::size_t>(k)] /
                      std::pow(s - cplx(1.0, 0.0), static_cast<double>(k) + 1.0);
    pole = pole + CertifiedValue(term, 1e-15 * std::abs(term));
  }
  return pole - model.L_eval(s) * model.phi_hat_eval(s);
}

}  // namespace zfree
