#include "zfree/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <unordered_map>
#include <vector>

namespace zfree {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Lanczos coefficients, g = 607/128, 15 terms (Godfrey).  Relative error of
// the rational part is below 1e-14 on Re z >= 0.5.
constexpr double kLanczosG = 4.7421875;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5};

// Gamma on Re z >= 0.5 (no pole checks here).
cplx gamma_lanczos(cplx z) {
  const cplx x = z - 1.0;
  cplx a = kLanczos[0];
  for (int k = 1; k < 15; ++k) a += kLanczos[k] / (x + static_cast<double>(k));
  const cplx t = x + kLanczosG + 0.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

// Borwein acceleration coefficients d_0..d_n for a given n.
const std::vector<double>& borwein_d(int n) {
  static std::mutex mu;
  static std::unordered_map<int, std::vector<double>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<double> d(n + 1);
  // d_k = n * sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
  double term = 1.0;  // i = 0 term
  double sum = term;
  d[0] = sum;
  for (int k = 1; k <= n; ++k) {
    const double i = k;
    term *= 4.0 * (n + i - 1.0) * (n - i + 1.0) / ((2.0 * i) * (2.0 * i - 1.0));
    sum += term;
    d[k] = sum;
  }
  return cache.emplace(n, std::move(d)).first->second;
}

// Euler-Maclaurin zeta, used near the zeros of 1 - 2^{1-s} where the eta
// route loses accuracy.  B_{2k}/(2k)! for k = 1..10.
constexpr double kB2kOver2kFact[10] = {
    8.3333333333333333333e-02,  -1.3888888888888888889e-03, 3.3068783068783068783e-05,
    -8.2671957671957671958e-07, 2.0876756987868098979e-08,  -5.2841901386874931848e-10,
    1.3382536530684678833e-11,  -3.3896802963225828668e-13, 8.5860620562778445641e-15,
    -2.1748686985580618730e-16};

CertifiedValue zeta_euler_maclaurin(cplx s) {
  const int N = std::max(25, static_cast<int>(std::ceil(1.5 * std::abs(s.imag()))) + 10);
  cplx sum = 0.0;
  for (int n = 1; n < N; ++n) sum += std::pow(static_cast<double>(n), -s);
  const double dN = N;
  const cplx Nms = std::pow(dN, -s);
  sum += dN * Nms / (s - 1.0);  // N^{1-s}/(s-1)
  sum += 0.5 * Nms;
  cplx poch = s;  // s(s+1)...(s+2k-2)
  double Npow = 1.0 / dN;
  cplx corr = 0.0, last = 0.0;
  for (int k = 1; k <= 10; ++k) {
    last = kB2kOver2kFact[k - 1] * poch * Nms * Npow;
    corr += last;
    poch *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
    Npow /= dN * dN;
  }
  // truncation error is bounded by the size of the first omitted term times
  // |s+2K-1|/(Re s + 2K - 1)
  const double tailfac = std::abs(s + 21.0) / std::max(1.0, s.real() + 21.0);
  const double trunc = std::abs(last) * tailfac;
  const cplx v = sum + corr;
  return {v, trunc + 1e-15 * (std::abs(v) + N * 1.0 / std::max(1.0, s.real()))};
}

}  // namespace

CertifiedValue gamma(cplx s) {
  // pole detection: distance to the nearest nonpositive integer
  if (s.imag() == 0.0 || std::abs(s.imag()) < 1e-14) {
    const double re = s.real();
    if (re <= 0.5) {
      const double nearest = std::round(re);
      if (nearest <= 0.0 && std::hypot(re - nearest, s.imag()) < 1e-14)
        throw PoleError("gamma: pole at nonpositive integer");
    }
  }
  if (s.real() >= 0.5) {
    const cplx v = gamma_lanczos(s);
    return {v, 1e-13 * std::abs(v)};
  }
  // upward recurrence: Gamma(s) = Gamma(s+k) / (s (s+1) ... (s+k-1))
  const int k = static_cast<int>(std::ceil(0.5 - s.real()));
  cplx prod = 1.0;
  for (int j = 0; j < k; ++j) prod *= (s + static_cast<double>(j));
  if (std::abs(prod) == 0.0) throw PoleError("gamma: pole at nonpositive integer");
  const cplx v = gamma_lanczos(s + static_cast<double>(k)) / prod;
  return {v, (1e-13 + 3e-16 * k) * std::abs(v)};
}

CertifiedValue zeta(cplx s) {
  if (std::abs(s - 1.0) < 1e-14) throw PoleError("zeta: pole at s=1");
  const cplx den = 1.0 - std::pow(2.0, 1.0 - s);
  const double dabs = std::abs(den);
  if (dabs < 0.05) return zeta_euler_maclaurin(s);

  const double t = std::abs(s.imag());
  // remainder bound ~ 3 (1+2|t|) e^{pi|t|/2} / ((3+sqrt 8)^n |1-2^{1-s}|)
  const double log10target = 14.0 + std::log10(3.0 * (1.0 + 2.0 * t)) +
                             (kPi / 2.0) * t / std::log(10.0) - std::log10(dabs);
  int n = static_cast<int>(std::ceil(log10target / 0.76555)) + 8;
  n = std::clamp(n, 20, 400);

  const std::vector<double>& d = borwein_d(n);
  cplx sum = 0.0;
  double sign = 1.0;
  for (int k = 0; k < n; ++k) {
    sum += sign * (d[k] - d[n]) * std::pow(static_cast<double>(k + 1), -s);
    sign = -sign;
  }
  const cplx v = -sum / (d[n] * den);
  // computed in log space: exp(pi t / 2) and (3+sqrt 8)^n both overflow
  // individually long before their ratio does
  const double log_trunc = std::log(3.0 * (1.0 + 2.0 * t)) + kPi * t / 2.0 -
                           n * std::log(3.0 + std::sqrt(8.0)) - std::log(dabs);
  const double trunc = std::exp(std::min(log_trunc, 700.0));
  const double round = 1e-15 * n / dabs;  // cancellation is relative to d_n
  return {v, trunc + round + 1e-15 * std::abs(v)};
}

CertifiedValue phi_hat(cplx s, double sigma1) {
  if (!(s.real() > 0.0)) throw DomainError("phi_hat: requires Re s > 0");
  if (!(sigma1 < 0.5)) throw DomainError("phi_hat: requires sigma1 < 1/2");
  return gamma(s) * gamma(cplx(1.0 - sigma1)) / gamma(s + (1.0 - sigma1));
}

}  // namespace zfree
