#include "zfree/linalg.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace zfree {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

void PolyP::validate() const {
  if (p.empty()) throw DomainError("PolyP: empty coefficient vector");
  if (std::abs(p.back()) < 1e-14 * std::max(1.0, inf_norm()))
    throw DomainError("PolyP: leading residue coefficient p_{m-1} is (numerically) zero");
}

double PolyP::inf_norm() const {
  double n = 0.0;
  for (const cplx& c : p) n = std::max(n, std::abs(c));
  return n;
}

std::vector<std::vector<std::int64_t>> pascal_matrix(int m) {
  if (m < 1 || m > kMaxPascalSize) throw DomainError("pascal_matrix: 1 <= m <= 12");
  std::vector<std::vector<std::int64_t>> a(m, std::vector<std::int64_t>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      a[i][j] = static_cast<std::int64_t>(binomial(i + j, i));
  return a;
}

CertifiedValue pascal_min_eigenvalue(int m) {
  if (m < 1 || m > kMaxPascalSize) throw DomainError("pascal_min_eigenvalue: 1 <= m <= 12");
  auto a = pascal_matrix(m);
  Eigen::MatrixXd A(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) A(i, j) = static_cast<double>(a[i][j]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  const double mu_max = es.eigenvalues()(m - 1);
  const double mu_min_direct = es.eigenvalues()(0);
  // palindromic characteristic polynomial: mu_min = 1/mu_max exactly
  const double mu_min = 1.0 / mu_max;
  const double err = std::abs(mu_min - mu_min_direct) + 8.0 * 1e-16 * mu_min;
  return {cplx(mu_min), err};
}

std::vector<__int128> pascal_char_poly(int m) {
  if (m < 1 || m > 8) throw DomainError("pascal_char_poly: exact arithmetic supported for m <= 8");
  auto a = pascal_matrix(m);
  using Mat = std::vector<std::vector<__int128>>;
  Mat A(m, std::vector<__int128>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) A[i][j] = a[i][j];
  // Faddeev-LeVerrier: c_m = 1, M_1 = A, c_{m-k} = -tr(A M_k)/k
  std::vector<__int128> c(m + 1, 0);
  c[m] = 1;
  Mat M(m, std::vector<__int128>(m, 0));
  for (int i = 0; i < m; ++i) M[i][i] = 1;
  for (int k = 1; k <= m; ++k) {
    Mat AM(m, std::vector<__int128>(m, 0));
    for (int i = 0; i < m; ++i)
      for (int l = 0; l < m; ++l)
        for (int j = 0; j < m; ++j) AM[i][j] += A[i][l] * M[l][j];
    __int128 tr = 0;
    for (int i = 0; i < m; ++i) tr += AM[i][i];
    c[m - k] = -tr / k;
    M = AM;
    for (int i = 0; i < m; ++i) M[i][i] += c[m - k];
  }
  return c;
}

QuadBound pascal_quadratic_lower_bound(const std::vector<cplx>& z, double a) {
  const int m = static_cast<int>(z.size());
  if (m < 1 || m > kMaxPascalSize) throw DomainError("pascal_quadratic_lower_bound: 1 <= m <= 12");
  if (!(a >= 1e-6)) throw DomainError("pascal_quadratic_lower_bound: a >= 1e-6 required");
  double lhs = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const double sij = factorial(i + j) / (factorial(i) * factorial(j) * std::pow(a, i + j + 1));
      lhs += (std::conj(z[i]) * z[j]).real() * sij;
    }
  const double mu = pascal_min_eigenvalue(m).real();
  double rhs = 0.0;
  for (int j = 0; j < m; ++j) rhs += std::norm(z[j]) / std::pow(a, 2 * j + 1);
  rhs *= mu;
  return {lhs, rhs};
}

XiValue xi_of_P(const PolyP& P) {
  P.validate();
  const int m = P.m();
  const double pm = std::abs(P.p.back());
  if (m == 1) return {1.0 / pm, 1.0 / pm, false};
  const double q = P.inf_norm() / pm;
  // proof form: (1/|p_{m-1}|) (1 + sum_{j=1}^{m-1} m^{j-1} q^j)
  double s = 0.0;
  for (int j = 1; j <= m - 1; ++j) s += std::pow(static_cast<double>(m), j - 1) * std::pow(q, j);
  const double proof = (1.0 + s) / pm;
  // display form: (1/|p_{m-1}|) (1 + q ((mq)^{m-2} - 1)/(mq - 1)), with the
  // finite-geometric-sum limit at mq = 1
  const double mq = m * q;
  double geo;
  if (std::abs(mq - 1.0) < 1e-12)
    geo = static_cast<double>(m - 2);
  else
    geo = (std::pow(mq, m - 2) - 1.0) / (mq - 1.0);
  const double display = (1.0 + q * geo) / pm;
  const bool disc = std::abs(proof - display) > 1e-9 * std::max(proof, display);
  return {proof, display, disc};
}

TriangularSolution solve_triangular(const PolyP& P, const std::vector<cplx>& beta) {
  P.validate();
  const int m = P.m();
  if (static_cast<int>(beta.size()) != m) throw DomainError("solve_triangular: size mismatch");
  std::vector<cplx> y(m);
  for (int k = 0; k < m; ++k) {
    cplx acc = beta[k];
    for (int i = 0; i < k; ++i) acc -= binomial(i + m - 1 - k, i) * P.p[i + m - 1 - k] * y[i];
    y[k] = acc / (binomial(m - 1, k) * P.p[m - 1]);
  }
  return {std::move(y), xi_of_P(P)};
}

double VandermondeInverse::entry(int i, int j) const {
  return static_cast<double>(num[i][j]) / static_cast<double>(den[i][j]);
}

VandermondeInverse vandermonde_inverse(int m) {
  if (m < 1 || m > kMaxPascalSize) throw DomainError("vandermonde_inverse: 1 <= m <= 12");
  VandermondeInverse W;
  W.m = m;
  W.num.assign(m, std::vector<std::int64_t>(m, 0));
  W.den.assign(m, std::vector<std::int64_t>(m, 1));
  for (int i = 1; i <= m; ++i) {
    // elementary symmetric polynomials of (1,...,m) with i omitted:
    // coefficients of prod_{k != i} (x + k)
    std::vector<std::int64_t> e(m, 0);
    e[0] = 1;
    int cnt = 0;
    for (int k = 1; k <= m; ++k) {
      if (k == i) continue;
      ++cnt;
      for (int d = cnt; d >= 1; --d) e[d] = e[d] + k * e[d - 1];
    }
    // denominator prod_{k != i} (i - k) = (-1)^{m-i} (i-1)! (m-i)!
    std::int64_t dden = 1;
    for (int k = 1; k <= m; ++k)
      if (k != i) dden *= (i - k);
    for (int j = 1; j <= m; ++j) {
      const std::int64_t numer = ((m - j) % 2 == 0 ? 1 : -1) * e[m - j];
      W.num[i - 1][j - 1] = numer;
      W.den[i - 1][j - 1] = dden;
    }
  }
  return W;
}

VandermondeSolution solve_vandermonde(const std::vector<cplx>& y) {
  const int m = static_cast<int>(y.size());
  if (m < 1) throw DomainError("solve_vandermonde: m >= 1");
  if (m > kMaxPascalSize) throw DomainError("solve_vandermonde: m <= 12");
  const VandermondeInverse W = vandermonde_inverse(m);
  std::vector<cplx> x(m, 0.0);
  double ymax = 0.0;
  for (int j = 0; j < m; ++j) ymax = std::max(ymax, std::abs(y[j]));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) x[i] += W.entry(i, j) * y[j];
  const double bound = ((m - 1) * std::pow(2.0, m) + 1.0) * ymax;
  return {std::move(x), bound};
}

}  // namespace zfree
