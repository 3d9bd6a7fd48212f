#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support/oracles.hpp"
#include "zfree/model.hpp"
#include "zfree/specfun.hpp"

using zfree::cplx;

namespace {

// Brute-force psi for the zeta model: u p_0 - sum_{n<u} (1 - n/u)^{-sigma1}.
cplx psi_brute(double sigma1, double u) {
  cplx v = u / (1.0 - sigma1);
  for (long long n = 1; n < static_cast<long long>(std::ceil(u)); ++n)
    v -= std::pow(1.0 - n / u, -sigma1);
  return v;
}

}  // namespace

TEST_CASE("psi on the residue branch is exact") {
  const zfree::SeriesModel model = zfree::zeta_model(0.4);
  for (double u : {0.1, 0.5, 0.99, 1.0}) {
    const zfree::CertifiedValue p = zfree::psi(model, u);
    CHECK(std::abs(p.value - cplx(u / 0.6, 0.0)) < 1e-14);
  }
}

TEST_CASE("psi equals the fractional part when sigma1 = 0") {
  const zfree::SeriesModel model = zfree::zeta_model(0.0);
  for (double u : {2.5, 7.25, 100.125}) {
    const zfree::CertifiedValue p = zfree::psi(model, u);
    CHECK(std::abs(p.value - cplx(u - std::floor(u), 0.0)) < 1e-10 * u);
  }
}

TEST_CASE("psi fast path matches brute-force summation") {
  for (double s1 : {-2.0, -1.0, 0.4}) {
    const zfree::SeriesModel model = zfree::zeta_model(s1);
    for (double u : {3.7, 37.3, 501.2}) {
      const zfree::CertifiedValue p = zfree::psi(model, u);
      const cplx ref = psi_brute(s1, u);
      CHECK(std::abs(p.value - ref) < 1e-9 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("psi_offset agrees with psi away from the spike") {
  const zfree::SeriesModel model = zfree::zeta_model(0.4);
  for (long long n : {1LL, 5LL, 42LL}) {
    for (double d : {0.25, 0.5, 0.9}) {
      const cplx a = zfree::psi_offset(model, n, d).value;
      const cplx b = zfree::psi(model, static_cast<double>(n) + d).value;
      CHECK(std::abs(a - b) < 1e-11 * std::max(1.0, std::abs(b)));
    }
  }
  // near the spike the offset form follows the (delta/u)^{-sigma1} law
  const double tiny = 1e-12;
  const cplx near = zfree::psi_offset(model, 3, tiny).value;
  const double lead = std::pow(tiny / 3.0, -0.4);
  CHECK(std::abs(near + lead) < 0.05 * lead);  // spike term dominates, negative
}

TEST_CASE("psi norm quadrature stays below the closed-form bound") {
  const zfree::SeriesModel model = zfree::zeta_model(0.4);
  const double r = 0.49;
  const zfree::CertifiedValue quad = zfree::psi_norm_r(model, r, {});
  const double bound = zfree::psi_norm_r_bound(model, r);
  CHECK(quad.real() > 0.0);
  CHECK(quad.real() <= bound + quad.err);
  // and the bound's formula: sqrt(1/(2r) + C(sigma1) zeta(1+2r-2sigma1))
  const double expected = std::sqrt(
      1.0 / (2.0 * r) +
      zfree::zeta_C_sigma1(0.4) * zfree::zeta(cplx(1.0 + 2.0 * r - 0.8, 0.0)).real());
  CHECK(bound == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("C(sigma1) closed form") {
  // 1/(1-2s) + 1/((1-s)^2 (3-2s)) + sign(s)/(1-s)^2
  const double s = 0.4;
  const double expected = 1.0 / 0.2 + 1.0 / (0.36 * 2.2) + 1.0 / 0.36;
  CHECK(zfree::zeta_C_sigma1(s) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(zfree::zeta_C_sigma1(0.0) == doctest::Approx(1.0 + 1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("psi1 and P norms against hand closed forms (m=1)") {
  const zfree::SeriesModel model = zfree::zeta_model(0.4);
  const double r = 0.49;
  const double p0 = 1.0 / 0.6;
  CHECK(zfree::psi1_norm(model, r) == doctest::Approx(p0 / std::sqrt(2.0 - 2.0 * r)).epsilon(1e-12));
  CHECK(zfree::P_norm2(zfree::poly_P(model)) == doctest::Approx(p0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("kernel norm matches the reproducing identity at lambda") {
  // <k,k> = k(lambda): ||k||^2 = 1/(4 pi (Re lambda - r)) = k_{lambda,r}(lambda)
  const cplx lambda(0.8, 3.0);
  const double r = 0.49;
  const double n = zfree::kernel_norm(lambda, r);
  CHECK(n * n == doctest::Approx(zfree::kernel(lambda, r, lambda).real()).epsilon(1e-13));
}

TEST_CASE("blaschke factor has modulus one on the boundary line") {
  const cplx lambda(1.0, 0.0);
  const double r = 0.49;
  for (double t : {-20.0, -1.0, 0.5, 7.0, 300.0})
    CHECK(std::abs(zfree::blaschke(lambda, r, cplx(r, t))) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("mellin transform of psi matches -L phi_hat in the strip") {
  const zfree::SeriesModel model = zfree::zeta_model(-2.0);
  CHECK(zfree::mellin_psi_check(model, cplx(0.6, 0.0), {}) < 1e-6);
  CHECK(zfree::mellin_psi_check(model, cplx(0.75, 0.0), {}) < 1e-6);
  CHECK(zfree::mellin_psi_check(model, cplx(0.4, 0.5), {}) < 1e-6);
}

TEST_CASE("mellin transform of u_r_lambda matches the kernel form") {
  const zfree::SeriesModel model = zfree::zeta_model(-2.0);
  const double r = 0.6;
  const cplx lambda(1.0, 2.0);
  for (cplx s : {cplx(0.1, 0.3), cplx(0.1, -0.3), cplx(-0.2, 0.0)})
    CHECK(zfree::mellin_u_check(model, r, lambda, s) < 1e-8);
}

TEST_CASE("f_A quadrature norm respects the coefficient bound") {
  const zfree::SeriesModel model = zfree::zeta_model(-2.0);
  const zfree::Sequence A{{1.0, 0.5}, {cplx(1.0, 0.0), cplx(0.0, 2.0)}};
  const double r = 0.6;
  const zfree::CertifiedValue quad = zfree::f_A_norm(model, A, r, {});
  CHECK(quad.real() > 0.0);
  CHECK(quad.real() <= zfree::f_A_norm_bound(model, A, r) + quad.err);
}

TEST_CASE("admissibility report on a known admissible pair") {
  const zfree::Sequence A{{1.0, std::exp(-1.0)}, {cplx(1.0, 0.0), cplx(-std::exp(1.0), 0.0)}};
  const zfree::AdmissibilityReport rep = zfree::admissibility(A, 1, 1e-12);
  REQUIRE(rep.moments.size() == 1);
  CHECK(std::abs(rep.moments[0]) < 1e-12);
  CHECK(rep.is_admissible);
}

TEST_CASE("H_eval is regular across s = 1") {
  const zfree::SeriesModel model = zfree::zeta_model(0.4);
  const cplx a = zfree::H_eval(model, cplx(1.0 + 1e-5, 0.0)).value;
  const cplx b = zfree::H_eval(model, cplx(1.0 - 1e-5, 0.0)).value;
  CHECK(std::abs(a - b) < 1e-3 * std::max(1.0, std::abs(a)));
}
