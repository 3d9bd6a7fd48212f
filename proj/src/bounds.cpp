#include "zfree/bounds.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "zfree/linalg.hpp"

namespace zfree {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Coefficients (in x = log t) of psi_1(a/t) / (a/t), i.e. of
// sum_k p_k (log a - x)^k.
std::vector<cplx> residue_log_coeffs(const SeriesModel& model, double a) {
  std::vector<cplx> u(static_cast<std::size_t>(model.m_L), 0.0);
  const double la = std::log(a);
  for (int k = 0; k < model.m_L; ++k)
    for (int l = 0; l <= k; ++l) {
      const double sign = (l % 2 == 0) ? 1.0 : -1.0;
      u[static_cast<std::size_t>(l)] += model.laurent_p[static_cast<std::size_t>(k)] *
                                        binomial(k, l) * sign *
                                        std::pow(la, static_cast<double>(k - l));
    }
  return u;
}

// int_a^inf (log t)^n t^{2r-3} dt, a >= 1 (t = a t' rescaling).
double log_power_tail(int n, double a, double r) {
  const double la = std::log(a);
  const double aa = 2.0 - 2.0 * r;
  double total = 0.0;
  for (int i = 0; i <= n; ++i)
    total += binomial(n, i) * std::pow(la, static_cast<double>(n - i)) * factorial(i) /
             std::pow(aa, i + 1);
  return std::pow(a, 2.0 * r - 2.0) * total;
}

// int_a^inf (sum_l d_l (log t)^l) t^{2r-3} dt.
cplx log_poly_tail(const std::vector<cplx>& d, double a, double r) {
  cplx total = 0.0;
  for (std::size_t l = 0; l < d.size(); ++l)
    total += d[l] * log_power_tail(static_cast<int>(l), a, r);
  return total;
}

std::vector<cplx> conv(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

std::vector<cplx> conj_vec(std::vector<cplx> v) {
  for (cplx& x : v) x = std::conj(x);
  return v;
}

// Breakpoints alpha/n inside (eps, hi) where psi(alpha/t) is non-smooth,
// merged over the given alphas, with eps and hi appended.
std::vector<double> psi_breakpoints(const std::vector<double>& alphas, double eps, double hi) {
  std::vector<double> pts{eps, hi};
  for (double a : alphas)
    for (double n = 1.0; a / n > eps; n += 1.0) {
      const double p = a / n;
      if (p > eps && p < hi) pts.push_back(p);
    }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double x, double y) { return std::abs(x - y) < 1e-14; }),
            pts.end());
  return pts;
}

// Piecewise quadrature over the sorted points; each subinterval's right
// endpoint is a potential psi spike, singular of order beta. The integrand
// receives (b, x) with t = b - x so it sees the exact distance to the spike.
CertifiedValue piecewise(const std::function<cplx(double, double)>& f,
                         const std::vector<double>& pts, double beta,
                         const QuadratureSpec& spec) {
  CertifiedValue total(0.0);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i];
    const double b = pts[i + 1];
    auto fx = [&](double x) { return f(b, x); };
    total = total + ((beta > 0.0) ? integrate_singular_origin(fx, b - a, beta, spec)
                                  : integrate(fx, 0.0, b - a, spec));
  }
  return total;
}

// Empirical sup of |g| sampled on (lo, hi].
double sampled_sup(const std::function<double(double)>& g, double lo, double hi, int n) {
  double M = 0.0;
  for (int i = 1; i <= n; ++i) M = std::max(M, g(lo + (hi - lo) * i / n));
  return M;
}

// Quadrature resolution per dilation: generous when psi is cheap and
// smooth, tighter budget when sigma1 > 0 makes every interval singular.
double breakpoint_floor(const SeriesModel& model, const std::vector<double>& alphas) {
  const double nmax = (model.sigma1 > 0.0) ? 150.0 : 2000.0;
  double eps = 1.0;
  for (double a : alphas) eps = std::min(eps, a);
  return eps / nmax;
}

}  // namespace

double E_of_r(double r, int m) {
  if (!(r < 1.0)) throw DomainError("E_of_r: r < 1 required");
  if (m < 1) throw DomainError("E_of_r: m >= 1 required");
  const double x = (2.0 - 2.0 * r) * (2.0 - 2.0 * r);
  double sum = 1.0;
  double term = 1.0;
  for (int k = 1; k < 300; ++k) {
    term *= x / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-16 * sum) break;
  }
  return std::sqrt(2.0 * sum);
}

double Lambda_m_r(int m, double r, double P_norm2, double psi_norm_r) {
  if (m < 1) throw DomainError("Lambda_m_r: m >= 1 required");
  if (!(r < 1.0)) throw DomainError("Lambda_m_r: r < 1 required");
  if (!(P_norm2 >= 0.0) || !(psi_norm_r >= 0.0))
    throw DomainError("Lambda_m_r: norms must be nonnegative");
  const double count = (m - 1) * std::pow(2.0, m) + 1.0;
  const double growth = std::max(std::exp(static_cast<double>(m)), std::exp((1.0 - r) * m));
  return count * growth * std::sqrt(P_norm2 * P_norm2 + psi_norm_r * psi_norm_r);
}

ComparisonFactor theta_psi_r(const SeriesModel& model, double r, PsiNormMode mode,
                             const QuadratureSpec& spec) {
  model.validate();
  if (!(r > std::max(model.sigma0, model.sigma1)) || !(r < 1.0)) throw DomainError("theta_psi_r: max(sigma0, sigma1) < r < 1 required");
  const PolyP P = poly_P(model);
  const double pn = P_norm2(P);
  const double psin = (mode == PsiNormMode::paper_bound)
                          ? psi_norm_r_bound(model, r)
                          : psi_norm_r(model, r, spec).real();
  ComparisonFactor out;
  out.r = r;
  out.components.xi = xi_of_P(P).value();
  out.components.E = E_of_r(r, model.m_L);
  out.components.Lambda = Lambda_m_r(model.m_L, r, pn, psin);
  out.components.mu_m = pascal_min_eigenvalue(model.m_L).real();
  out.theta = out.components.xi * out.components.E * out.components.Lambda /
              std::sqrt(out.components.mu_m);
  out.factor = 1.0 + out.theta * std::sqrt(1.0 - r);
  return out;
}

Sequence complete_to_admissible(const Sequence& A, int m) {
  A.validate();
  if (m < 1) throw DomainError("complete_to_admissible: m >= 1 required");
  // Moments y_k = sum_j c_j alpha_j (log alpha_j)^k, k = 0..m-1.
  std::vector<cplx> y(static_cast<std::size_t>(m), 0.0);
  for (int j = 0; j < A.length(); ++j) {
    const double a = A.alpha[static_cast<std::size_t>(j)];
    const double la = std::log(a);
    double lp = 1.0;
    for (int k = 0; k < m; ++k) {
      y[static_cast<std::size_t>(k)] += A.c[static_cast<std::size_t>(j)] * a * lp;
      lp *= la;
    }
  }
  // With alpha'_j = e^{-j}, the completion moments are sum_j x_j (-j)^k
  // where x_j = c'_j alpha'_j; requiring them to equal -y_k gives the
  // Vandermonde system sum_j j^{i-1} x_j = (-1)^i y_{i-1}.
  std::vector<cplx> rhs(static_cast<std::size_t>(m));
  for (int i = 1; i <= m; ++i)
    rhs[static_cast<std::size_t>(i - 1)] = ((i % 2 == 0) ? 1.0 : -1.0) * y[static_cast<std::size_t>(i - 1)];
  const VandermondeSolution sol = solve_vandermonde(rhs);
  Sequence out;
  for (int j = 1; j <= m; ++j) {
    const double aj = std::exp(-static_cast<double>(j));
    out.alpha.push_back(aj);
    out.c.push_back(sol.x[static_cast<std::size_t>(j - 1)] / aj);
  }
  return out;
}

CertifiedValue psi_pair_inner(const SeriesModel& model, double r, double ai, double aj,
                              const QuadratureSpec& spec) {
  model.validate();
  spec.validate();
  if (!(ai > 0.0) || !(ai <= 1.0) || !(aj > 0.0) || !(aj <= 1.0))
    throw DomainError("psi_pair_inner: dilations in (0,1] required");
  const double amax = std::max(ai, aj);

  // Exact tail over (amax, inf): both factors are on the residue branch.
  std::vector<cplx> ui = residue_log_coeffs(model, ai);
  const std::vector<cplx> uj = conj_vec(residue_log_coeffs(model, aj));
  const cplx exact = ai * aj * log_poly_tail(conv(ui, uj), amax, r);

  // Quadrature over (eps, amax] against the psi spike map.
  const double eps = breakpoint_floor(model, {ai, aj});
  auto f = [&](double b, double x) -> cplx {
    return psi_dilated_offset(model, ai, b, x) *
           std::conj(psi_dilated_offset(model, aj, b, x)) * std::pow(b - x, 2.0 * r - 1.0);
  };
  const CertifiedValue mid =
      piecewise(f, psi_breakpoints({ai, aj}, eps, amax), 2.0 * model.sigma1, spec);

  // Envelope tail over (0, eps]: |psi(a/t) psi(b/t)| <= M there, sampled.
  const double M = sampled_sup(
      [&](double t) { return std::abs(psi(model, ai / t).value * psi(model, aj / t).value); },
      eps / 3.0, eps, 32);
  const double tail_bound = 2.0 * M * std::pow(eps, 2.0 * r) / (2.0 * r);
  const CertifiedValue tail(cplx(tail_bound / 2.0, 0.0), tail_bound / 2.0 + tail_bound / 4.0);

  return CertifiedValue(exact, 1e-14 * std::abs(exact)) + mid + tail;
}

namespace {

// <target, e_i> where e_i(t) = psi(alpha_i/t) t^{r-sigma0}, plus ||target||^2.
struct TargetData {
  std::vector<cplx> beta;
  double norm2 = 0.0;
  double err = 0.0;
};

TargetData target_inner_products(const SeriesModel& model, double r, const DistanceTarget& target,
                                 const std::vector<double>& grid, const QuadratureSpec& spec,
                                 const std::function<CertifiedValue(double, double)>& pair) {
  const double s0 = model.sigma0;
  TargetData out;
  const int n = static_cast<int>(grid.size());
  out.beta.assign(static_cast<std::size_t>(n), 0.0);

  if (target.kind == DistanceTarget::Kind::f_sequence) {
    target.A.validate();
    for (int i = 0; i < n; ++i) {
      CertifiedValue b(0.0);
      for (int j = 0; j < target.A.length(); ++j)
        b = b + target.A.c[static_cast<std::size_t>(j)] *
                    pair(target.A.alpha[static_cast<std::size_t>(j)], grid[static_cast<std::size_t>(i)]);
      out.beta[static_cast<std::size_t>(i)] = b.value;
      out.err += b.err;
    }
    CertifiedValue n2(0.0);
    for (int i = 0; i < target.A.length(); ++i)
      for (int j = 0; j < target.A.length(); ++j)
        n2 = n2 + target.A.c[static_cast<std::size_t>(i)] *
                      std::conj(target.A.c[static_cast<std::size_t>(j)]) *
                      pair(target.A.alpha[static_cast<std::size_t>(i)],
                           target.A.alpha[static_cast<std::size_t>(j)]);
    out.norm2 = n2.real();
    out.err += n2.err;
    return out;
  }

  const cplx lambda = target.lambda;
  if (!(lambda.real() > s0)) throw DomainError("distance_upper_bound: Re lambda > sigma0 required");

  // Common piece: I_i = int_0^1 conj(psi(alpha_i/t)) t^{conj(lambda)+r-sigma0-1} dt.
  std::vector<cplx> base(static_cast<std::size_t>(n), 0.0);
  double base_err = 0.0;
  const double eps = breakpoint_floor(model, grid);
  const cplx expo = std::conj(lambda) + (r - s0 - 1.0);
  for (int i = 0; i < n; ++i) {
    const double a = grid[static_cast<std::size_t>(i)];
    auto f = [&](double b, double x) -> cplx {
      return std::conj(psi_dilated_offset(model, a, b, x)) * std::pow(cplx(b - x, 0.0), expo);
    };
    const CertifiedValue mid =
        piecewise(f, psi_breakpoints({a}, eps, 1.0), model.sigma1, spec);
    const double M = sampled_sup([&](double t) { return std::abs(psi(model, a / t).value); },
                                 eps / 3.0, eps, 32);
    const double p = lambda.real() + r - s0;
    const double tail_bound = M * std::pow(eps, p) / p;
    base[static_cast<std::size_t>(i)] = mid.value;
    base_err += mid.err + tail_bound;
  }

  if (target.kind == DistanceTarget::Kind::w_lambda) {
    for (int i = 0; i < n; ++i) out.beta[static_cast<std::size_t>(i)] = base[static_cast<std::size_t>(i)];
    out.norm2 = 1.0 / (2.0 * (lambda.real() - s0));
    out.err = base_err;
    return out;
  }

  // u_{r,lambda}: scaled w-piece on (0,1] plus a closed-form piece on (1,inf).
  const cplx A = cplx(2.0 - 2.0 * r, 0.0);
  const cplx B = cplx(r + s0 - 1.0, 0.0) - std::conj(lambda);
  const cplx lead = std::pow(cplx(1.0, 0.0) + A / B, static_cast<double>(model.m_L));
  const std::vector<cplx> Q = u_r_lambda_Q(model, r, lambda);
  for (int i = 0; i < n; ++i) {
    const double a = grid[static_cast<std::size_t>(i)];
    const std::vector<cplx> ua = conj_vec(residue_log_coeffs(model, a));
    const cplx upper = a * log_poly_tail(conv(Q, ua), 1.0, r);
    out.beta[static_cast<std::size_t>(i)] = lead * base[static_cast<std::size_t>(i)] + upper;
  }
  out.err = std::abs(lead) * base_err;
  // ||u||^2 = |lead|^2/(2(Re lambda - s0)) + sum_{i,j} Q_i conj(Q_j) (i+j)!/(2-2r)^{i+j+1}.
  double n2 = std::norm(lead) / (2.0 * (lambda.real() - s0));
  cplx qq = 0.0;
  for (std::size_t i = 0; i < Q.size(); ++i)
    for (std::size_t j = 0; j < Q.size(); ++j)
      qq += Q[i] * std::conj(Q[j]) * factorial(static_cast<int>(i + j)) /
            std::pow(2.0 - 2.0 * r, static_cast<double>(i + j) + 1.0);
  out.norm2 = n2 + qq.real();
  return out;
}

}  // namespace

DistanceResult distance_upper_bound(const SeriesModel& model, double r,
                                    const DistanceTarget& target,
                                    const std::vector<double>& grid,
                                    DistanceConstraint constraint, const QuadratureSpec& spec) {
  model.validate();
  spec.validate();
  if (grid.empty()) throw DomainError("distance_upper_bound: empty grid");
  for (double a : grid)
    if (!(a > 0.0) || !(a <= 1.0)) throw DomainError("distance_upper_bound: grid values in (0,1]");
  std::vector<double> sorted = grid;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end(), [](double x, double y) {
        return std::abs(x - y) < 1e-14;
      }) != sorted.end())
    throw DomainError("distance_upper_bound: grid values must be distinct");
  if (!(r > std::max(model.sigma0, model.sigma1)) || !(r < 1.0)) throw DomainError("distance_upper_bound: max(sigma0, sigma1) < r < 1 required");

  const int n = static_cast<int>(grid.size());
  DistanceResult out;

  // Gram matrix; pair integrals stored for reuse by f_sequence targets.
  Eigen::MatrixXcd G(n, n);
  double gram_err = 0.0;
  std::vector<std::vector<CertifiedValue>> store(static_cast<std::size_t>(n),
                                                 std::vector<CertifiedValue>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const CertifiedValue g =
          psi_pair_inner(model, r, grid[static_cast<std::size_t>(i)], grid[static_cast<std::size_t>(j)], spec);
      store[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = g;
      G(i, j) = g.value;
      G(j, i) = std::conj(g.value);
      gram_err += (i == j ? 1.0 : 2.0) * g.err;
    }
  auto pair_lookup = [&](double a, double b) -> CertifiedValue {
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        if ((grid[static_cast<std::size_t>(i)] == a && grid[static_cast<std::size_t>(j)] == b) ||
            (grid[static_cast<std::size_t>(i)] == b && grid[static_cast<std::size_t>(j)] == a)) {
          CertifiedValue g = store[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
          if (grid[static_cast<std::size_t>(i)] == b && a != b) g.value = std::conj(g.value);
          return g;
        }
    return psi_pair_inner(model, r, a, b, spec);
  };

  const TargetData td = target_inner_products(model, r, target, grid, spec, pair_lookup);
  Eigen::VectorXcd beta(n);
  for (int i = 0; i < n; ++i) beta(i) = td.beta[static_cast<std::size_t>(i)];

  // Optional admissibility constraints: sum_j c_j alpha_j (log alpha_j)^k = 0.
  Eigen::MatrixXcd N = Eigen::MatrixXcd::Identity(n, n);
  if (constraint == DistanceConstraint::admissible) {
    const int m = model.m_L;
    Eigen::MatrixXcd C(m, n);
    for (int k = 0; k < m; ++k)
      for (int j = 0; j < n; ++j) {
        const double a = grid[static_cast<std::size_t>(j)];
        C(k, j) = a * std::pow(std::log(a), static_cast<double>(k));
      }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(C);
    const int rank = static_cast<int>(cod.rank());
    if (rank >= n) throw DomainError("distance_upper_bound: constraints leave no feasible direction");
    // Nullspace basis from the SVD right singular vectors of C.
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(C, Eigen::ComputeFullV);
    N = svd.matrixV().rightCols(n - rank);
  }

  const Eigen::MatrixXcd Gr = N.adjoint() * G * N;
  const Eigen::VectorXcd br = N.adjoint() * beta;

  // Condition estimate on the Hermitian part.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((Gr + Gr.adjoint()) / 2.0);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double emax = ev.maxCoeff();
  double reg = 0.0;
  const double emin = ev.minCoeff();
  if (emin <= 0.0 || emax / emin > 1e12) {
    reg = 1e-14 * Gr.real().trace() + 1e-300;
    out.regularized = true;
  }
  const double cond = (emin + reg > 0.0) ? (emax + reg) / (emin + reg)
                                         : std::numeric_limits<double>::infinity();
  if (!(cond < 1e16)) throw NumericError("distance_upper_bound: Gram matrix numerically singular");
  out.gram_condition = cond;

  Eigen::MatrixXcd Grr = Gr + reg * Eigen::MatrixXcd::Identity(Gr.rows(), Gr.cols());
  Eigen::VectorXcd z = Grr.ldlt().solve(br);
  Eigen::VectorXcd c = N * z;

  // Objective re-evaluated at c: any c gives a true upper bound.
  const cplx quad = (c.adjoint() * G * c)(0, 0);
  const cplx cross = (c.adjoint() * beta)(0, 0);
  const double obj2 = td.norm2 - 2.0 * cross.real() + quad.real();
  out.value = std::sqrt(std::max(0.0, obj2));
  out.c.assign(c.data(), c.data() + n);
  out.quadrature_err = gram_err + td.err;
  return out;
}

}  // namespace zfree
