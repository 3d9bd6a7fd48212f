// End-to-end acceptance checks.  Each criterion prints exactly one
// PASS/FAIL line; the process exits nonzero if any criterion fails.

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "zfree/bounds.hpp"
#include "zfree/cli.hpp"
#include "zfree/discs.hpp"
#include "zfree/linalg.hpp"
#include "zfree/model.hpp"
#include "zfree/specfun.hpp"

using zfree::cplx;

namespace {

int g_failures = 0;

void report(int criterion, const char* name, bool pass, const std::string& detail) {
  std::printf("%s criterion %2d (%s): %s\n", pass ? "PASS" : "FAIL", criterion, name,
              detail.c_str());
  if (!pass) ++g_failures;
}

std::mt19937 rng(20260826u);
double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
cplx rand_box() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. Headline reproduction: center within 1e-4 of 1/2 + 50i, radius in
//    [1.44e-5, 1.54e-5], under 10 seconds.
void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<const char*> argv{"zfree", "certify-zeta", "--lambda", "0.01+50i",
                                "--r",   "0.49",         "--sigma1", "0.4",
                                "--mode", "paper_bound"};
  std::ostringstream out, err;
  const int code = zfree::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  const double dt = seconds_since(t0);
  double cre = 0.0, cim = 0.0, radius = 0.0;
  // pull the three fields out of the JSON document
  const std::string s = out.str();
  auto field = [&](const char* key) -> double {
    const std::size_t p = s.find(std::string("\"") + key + "\":");
    return (p == std::string::npos) ? std::nan("") : std::stod(s.substr(s.find(':', p) + 1));
  };
  cre = field("center_re");
  cim = field("center_im");
  radius = field("radius");
  const bool pass = code == 0 && std::abs(cre - 0.5) < 1e-4 && std::abs(cim - 50.0) < 1e-4 &&
                    radius >= 1.44e-5 && radius <= 1.54e-5 && dt < 10.0;
  std::ostringstream d;
  d << "center=" << cre << "+" << cim << "i radius=" << radius << " time=" << dt << "s";
  report(1, "headline disc", pass, d.str());
}

// 2. Pascal eigenvalues and bounds.
void criterion_2() {
  bool pass = true;
  const double oracle[] = {1.0, (3.0 - std::sqrt(5.0)) / 2.0, 4.0 - std::sqrt(15.0)};
  double worst = 0.0;
  for (int m = 1; m <= 3; ++m) {
    const double res = std::abs(zfree::pascal_min_eigenvalue(m).real() - oracle[m - 1]);
    worst = std::max(worst, res);
    pass = pass && res < 1e-12;
  }
  for (int m = 1; m <= 12; ++m) {
    const zfree::CertifiedValue mu = zfree::pascal_min_eigenvalue(m);
    pass = pass && mu.real() >= 3.0 / (std::pow(4.0, m) - 1.0) - mu.err - 1e-12;
  }
  for (int m = 1; m <= 8; ++m) {
    const std::vector<__int128> cp = zfree::pascal_char_poly(m);
    for (int k = 0; k <= m; ++k) {
      const __int128 mirror = (m % 2 == 0) ? cp[static_cast<std::size_t>(m - k)]
                                           : -cp[static_cast<std::size_t>(m - k)];
      pass = pass && cp[static_cast<std::size_t>(k)] == mirror;
    }
  }
  std::ostringstream d;
  d << "worst eigenvalue residual " << worst;
  report(2, "pascal eigenvalues", pass, d.str());
}

// 3. Vandermonde identity and solution bound.
void criterion_3() {
  bool pass = true;
  for (int m = 1; m <= 8; ++m) {
    const zfree::VandermondeInverse W = zfree::vandermonde_inverse(m);
    // sum over rows of (row / den_row) must equal (m-1)2^m + 1; each row sum
    // is divisible by its denominator.
    __int128 acc = 0;
    bool divisible = true;
    for (int i = 0; i < m; ++i) {
      __int128 row = 0;
      const long long den = std::llabs(W.den[static_cast<std::size_t>(i)][0]);
      for (int j = 0; j < m; ++j)
        row += std::llabs(W.num[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      divisible = divisible && (row % den == 0);
      acc += row / den;
    }
    pass = pass && divisible && acc == static_cast<__int128>((m - 1)) * (1LL << m) + 1;
  }
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const int m = 1 + static_cast<int>(uniform(0.0, 7.999));
    std::vector<cplx> y(static_cast<std::size_t>(m));
    for (cplx& v : y) v = rand_box();
    const zfree::VandermondeSolution sol = zfree::solve_vandermonde(y);
    double xsum = 0.0;
    for (const cplx& x : sol.x) xsum += std::abs(x);
    worst = std::max(worst, xsum - sol.bound);
    pass = pass && xsum <= sol.bound + 1e-9;
  }
  std::ostringstream d;
  d << "worst bound slack " << worst;
  report(3, "vandermonde identity", pass, d.str());
}

// 4. Pascal quadratic form inequality against its integral.
void criterion_4() {
  bool pass = true;
  double worst_rel = 0.0;
  const zfree::QuadratureSpec spec;
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + static_cast<int>(uniform(0.0, 5.999));
    const double a = uniform(0.2, 3.0);
    std::vector<cplx> z(static_cast<std::size_t>(m));
    for (cplx& v : z) v = rand_box();
    const zfree::QuadBound qb = zfree::pascal_quadratic_lower_bound(z, a);
    pass = pass && qb.lhs >= qb.rhs - 1e-10 * std::max(1.0, qb.lhs);
    auto f = [&](double t) -> cplx {
      cplx p = 0.0;
      double tj = 1.0, fact = 1.0;
      for (int j = 0; j < m; ++j) {
        p += z[static_cast<std::size_t>(j)] * tj / fact;
        tj *= t;
        fact *= (j + 1.0);
      }
      return std::norm(p) * std::exp(-a * t);
    };
    const double cutoff = (2.0 * m + 60.0) / a;
    const double env = 10.0 * m * m * std::pow(cutoff, 2.0 * m + 2.0) * std::exp(-a * cutoff / 2.0);
    const double numeric = zfree::integrate_to_inf(f, 0.0, cutoff, spec, {env, -2.0}).real();
    const double rel = std::abs(numeric - qb.lhs) / std::max(1.0, qb.lhs);
    worst_rel = std::max(worst_rel, rel);
    pass = pass && rel < 1e-8;
  }
  // equality at the minimal eigenvector
  for (int m = 1; m <= 6; ++m) {
    Eigen::MatrixXd A(m, m);
    const auto P = zfree::pascal_matrix(m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        A(i, j) = static_cast<double>(P[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    std::vector<cplx> z(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) z[static_cast<std::size_t>(j)] = es.eigenvectors().col(0)(j);
    const zfree::QuadBound qb = zfree::pascal_quadratic_lower_bound(z, 1.0);
    pass = pass && std::abs(qb.lhs - qb.rhs) < 1e-8 * std::max(1.0, qb.lhs);
  }
  std::ostringstream d;
  d << "worst quadrature mismatch " << worst_rel;
  report(4, "pascal quadratic form", pass, d.str());
}

// 5. Triangular solver bound.
void criterion_5() {
  bool pass = true;
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const int m = 1 + static_cast<int>(uniform(0.0, 5.999));
    zfree::PolyP P;
    P.p.resize(static_cast<std::size_t>(m));
    for (cplx& v : P.p) v = rand_box();
    if (std::abs(P.p.back()) < 0.1) P.p.back() += cplx(0.5, 0.5);
    std::vector<cplx> beta(static_cast<std::size_t>(m));
    double bsum = 0.0;
    for (cplx& v : beta) {
      v = rand_box();
      bsum += std::abs(v);
    }
    const zfree::TriangularSolution sol = zfree::solve_triangular(P, beta);
    double ymax = 0.0;
    for (const cplx& v : sol.y) ymax = std::max(ymax, std::abs(v));
    worst = std::max(worst, ymax - sol.xi.value() * bsum);
    pass = pass && ymax <= sol.xi.value() * bsum + 1e-9;
  }
  std::ostringstream d;
  d << "worst bound slack " << worst;
  report(5, "triangular solver", pass, d.str());
}

// 6. Admissible completion.
void criterion_6() {
  bool pass = true;
  const zfree::SeriesModel model = zfree::zeta_model(0.4);
  double worst_moment = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + static_cast<int>(uniform(0.0, 3.999));
    zfree::Sequence A;
    const int n = 1 + static_cast<int>(uniform(0.0, 2.999));
    for (int j = 0; j < n; ++j) {
      A.alpha.push_back(uniform(0.05, 1.0));
      A.c.push_back(rand_box());
    }
    const zfree::Sequence Ap = zfree::complete_to_admissible(A, m);
    const zfree::Sequence AA = zfree::concat(A, Ap);
    for (const cplx& mom : zfree::admissibility(AA, m, 1e-10).moments) {
      worst_moment = std::max(worst_moment, std::abs(mom));
      pass = pass && std::abs(mom) < 1e-10;
    }
    double csum = 0.0;
    for (int j = 0; j < Ap.length(); ++j)
      csum += std::abs(Ap.c[static_cast<std::size_t>(j)]) * Ap.alpha[static_cast<std::size_t>(j)];
    double mmax = 0.0;
    for (const cplx& mom : zfree::admissibility(A, m, 1e300).moments)
      mmax = std::max(mmax, std::abs(mom));
    pass = pass && csum <= ((m - 1.0) * std::pow(2.0, m) + 1.0) * mmax + 1e-9;
    if (m == model.m_L) {
      for (double t : {1.5, 3.0, 10.0})
        pass = pass && std::abs(zfree::f_A(model, AA, 0.49, t).value) < 1e-10 * AA.abs_c_sum();
    }
  }
  std::ostringstream d;
  d << "worst residual moment " << worst_moment;
  report(6, "admissible completion", pass, d.str());
}

// 7. Mellin identities within the runtime budget.
void criterion_7() {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  const zfree::SeriesModel model = zfree::zeta_model(-2.0);
  const zfree::QuadratureSpec spec;
  double worst_psi = 0.0;
  // The psi-transform identity lifts to f_{A,r}: the transform of the
  // dilated sum is g_A(s) times the single-psi transform, so the residual
  // scales by |g_A(s)| for each sequence A.
  const zfree::Sequence A1{{1.0}, {cplx(1.0, 0.0)}};
  const zfree::Sequence A2{{1.0, 0.5}, {cplx(1.0, 0.0), cplx(0.0, 2.0)}};
  for (const cplx s : {cplx(0.6, 0.0), cplx(0.75, 0.0)}) {
    const double base = zfree::mellin_psi_check(model, s, spec);
    for (const zfree::Sequence& A : {A1, A2}) {
      const double res = std::abs(zfree::g_A(A, s)) * base;
      worst_psi = std::max(worst_psi, res);
      pass = pass && res < 1e-6;
    }
  }
  double worst_u = 0.0;
  for (const cplx s : {cplx(0.1, 0.3), cplx(0.1, -0.3), cplx(-0.2, 0.0)}) {
    const double res = zfree::mellin_u_check(model, 0.6, cplx(1.0, 2.0), s);
    worst_u = std::max(worst_u, res);
    pass = pass && res < 1e-8;
  }
  const double dt = seconds_since(t0);
  pass = pass && dt < 60.0;
  std::ostringstream d;
  d << "psi residual " << worst_psi << " u residual " << worst_u << " time=" << dt << "s";
  report(7, "mellin identities", pass, d.str());
}

// 8. Special functions.
void criterion_8() {
  bool pass = true;
  const double pi = std::numbers::pi;
  pass = pass && std::abs(zfree::zeta(cplx(2.0, 0.0)).value - pi * pi / 6.0) < 1e-10;
  pass = pass && std::abs(zfree::zeta(cplx(0.0, 0.0)).value - cplx(-0.5, 0.0)) < 1e-10;
  pass = pass && std::abs(zfree::gamma(cplx(0.5, 0.0)).value - std::sqrt(pi)) < 1e-12;
  for (int trial = 0; trial < 40; ++trial) {
    const cplx s(uniform(0.1, 3.0), uniform(-20.0, 20.0));
    const cplx rec = zfree::gamma(s + cplx(1.0)).value - s * zfree::gamma(s).value;
    pass = pass && std::abs(rec) < 1e-10 * std::abs(zfree::gamma(s + cplx(1.0)).value);
    const cplx refl = zfree::gamma(s).value * zfree::gamma(cplx(1.0) - s).value -
                      pi / std::sin(pi * s);
    pass = pass && std::abs(refl) < 1e-10 * std::abs(pi / std::sin(pi * s));
  }
  report(8, "special functions", pass, pass ? "zeta/gamma identities hold" : "identity violated");
}

// 9. Norm bound consistency.
void criterion_9() {
  const zfree::SeriesModel model = zfree::zeta_model(0.4);
  const double r = 0.49;
  const zfree::CertifiedValue quad = zfree::psi_norm_r(model, r, {});
  const double bound = zfree::psi_norm_r_bound(model, r);
  bool pass = quad.real() > 0.0 && quad.real() <= bound + quad.err;

  // boundary-line norm equality on one admissible configuration
  const zfree::SeriesModel m2 = zfree::zeta_model(-2.0);
  const double r2 = 0.6;
  const zfree::Sequence A{{1.0, std::exp(-1.0)}, {cplx(1.0, 0.0), cplx(-std::exp(1.0), 0.0)}};
  const double lhs2 = std::pow(zfree::f_A_norm(m2, A, r2, {}).real(), 2.0);
  auto boundary = [&](double t) -> cplx {
    const cplx s(r2, t);
    const cplx v =
        zfree::zeta(s).value * zfree::phi_hat(s, m2.sigma1).value * zfree::g_A(A, s);
    return std::norm(v);
  };
  zfree::QuadratureSpec spec;
  spec.rel_tol = 1e-9;
  const double rhs2 = (1.0 / std::numbers::pi) *
                      zfree::integrate_to_inf(boundary, 0.0, 400.0, spec, {1e6, -5.0}).real();
  const double rel = std::abs(lhs2 - rhs2) / rhs2;
  pass = pass && rel < 1e-4;
  std::ostringstream d;
  d << "quad " << quad.real() << " <= bound " << bound << ", norm-equality rel err " << rel;
  report(9, "norm bound consistency", pass, d.str());
}

// 10. Disc geometry.
void criterion_10() {
  bool pass = true;
  zfree::PseudoDisc pd;
  pd.lambda = cplx(0.01, 50.0);
  pd.R = 7.482075055527e-4;
  pd.shift = 0.49;
  const zfree::EuclideanDisc e = zfree::pseudo_to_euclidean(pd);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const cplx w = pd.R * std::polar(1.0, 2.0 * std::numbers::pi * k / 20.0);
    const cplx mu = (pd.lambda + w * (std::conj(pd.lambda))) / (1.0 - w);
    const double res = std::abs(std::abs(mu + pd.shift - e.center) - e.radius);
    worst = std::max(worst, res);
    pass = pass && res < 1e-12;
  }
  const zfree::PseudoDisc a = zfree::zeta_F(cplx(0.01, 50.0), 0.49, 0.4);
  const zfree::PseudoDisc b = zfree::prop61_radius(
      zfree::zeta_model(0.4), zfree::Sequence{{1.0}, {cplx(1.0, 0.0)}}, 0.49, cplx(0.01, 50.0));
  pass = pass && std::abs(a.R - b.R) < 1e-12;
  std::ostringstream d;
  d << "worst boundary residual " << worst << ", |F - prop61| = " << std::abs(a.R - b.R);
  report(10, "disc geometry", pass, d.str());
}

// 11. Theta factor behavior on a coarse r grid.
void criterion_11() {
  const zfree::SeriesModel model = zfree::zeta_model(0.4);
  bool pass = true;
  double prev = std::numeric_limits<double>::infinity();
  double first_excess = 0.0, last_excess = 0.0;
  const double rs[] = {0.5, 0.7, 0.9, 0.99};
  for (double r : rs) {
    const zfree::ComparisonFactor cf =
        zfree::theta_psi_r(model, r, zfree::PsiNormMode::paper_bound);
    pass = pass && cf.theta > 0.0 && cf.theta <= prev * (1.0 + 1e-12);
    const double excess = cf.theta * std::sqrt(1.0 - r);
    if (r == rs[0]) first_excess = excess;
    last_excess = excess;
    prev = cf.theta;
  }
  pass = pass && last_excess < first_excess / 10.0;
  std::ostringstream d;
  d << "theta sqrt(1-r): " << first_excess << " -> " << last_excess;
  report(11, "theta factor behavior", pass, d.str());
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 11 criteria passed\n");
  return 0;
}
