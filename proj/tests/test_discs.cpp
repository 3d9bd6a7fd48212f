#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support/oracles.hpp"
#include "zfree/discs.hpp"
#include "zfree/specfun.hpp"

using zfree::cplx;

TEST_CASE("pseudo-disc boundary maps onto the euclidean circle") {
  zfree::PseudoDisc d;
  d.lambda = cplx(0.01, 50.0);
  d.R = 7.482075055527e-4;
  d.sigma0 = 0.0;
  d.shift = 0.49;
  const zfree::EuclideanDisc e = zfree::pseudo_to_euclidean(d);
  REQUIRE(!e.halfplane);
  for (int k = 0; k < 20; ++k) {
    const double th = 2.0 * std::numbers::pi * k / 20.0;
    const cplx w = d.R * std::polar(1.0, th);
    // boundary point: (mu - lambda)/(mu + conj(lambda) - 2 sigma0) = w
    const cplx mu = (d.lambda + w * (std::conj(d.lambda) - 2.0 * d.sigma0)) / (1.0 - w);
    CHECK(std::abs(std::abs(mu + d.shift - e.center) - e.radius) < 1e-12);
  }
}

TEST_CASE("headline disc values") {
  zfree::ZetaFBreakdown br;
  const zfree::PseudoDisc d = zfree::zeta_F(cplx(0.01, 50.0), 0.49, 0.4, &br);
  // reference values frozen from an independent multiprecision evaluation
  CHECK(std::abs(d.R - 7.48207505552790e-4) < 1e-12);
  const zfree::EuclideanDisc e = zfree::pseudo_to_euclidean(d);
  CHECK(std::abs(e.center - cplx(0.500000011196, 50.0)) < 1e-9);
  CHECK(std::abs(e.radius - 1.4964158488e-5) < 1e-12);
  CHECK(br.eval_err < 1e-10);
  CHECK(br.R == doctest::Approx(d.R));
}

TEST_CASE("zeta_F coincides with the general radius at the trivial sequence") {
  const cplx lambda(0.01, 50.0);
  const double r = 0.49, s1 = 0.4;
  const zfree::SeriesModel model = zfree::zeta_model(s1);
  const zfree::Sequence A{{1.0}, {cplx(1.0, 0.0)}};
  const zfree::PseudoDisc a = zfree::zeta_F(lambda, r, s1);
  const zfree::PseudoDisc b = zfree::prop61_radius(model, A, r, lambda);
  CHECK(std::abs(a.R - b.R) < 1e-12);
}

TEST_CASE("quadrature norm sharpens the closed-form radius") {
  // The closed-form denominator bound overestimates ||f||, so evaluating the
  // norm by quadrature must certify a disc at least as large.
  const cplx lambda(0.01, 50.0);
  const double r = 0.49, s1 = 0.4;
  const zfree::SeriesModel model = zfree::zeta_model(s1);
  const zfree::Sequence A{{1.0}, {cplx(1.0, 0.0)}};
  const zfree::PseudoDisc closed = zfree::zeta_F(lambda, r, s1);
  const zfree::PseudoDisc quad =
      zfree::prop61_radius(model, A, r, lambda, zfree::HNormMode::quadrature);
  CHECK(quad.R >= closed.R);
  const double rq = zfree::pseudo_to_euclidean(quad).radius;
  const double rc = zfree::pseudo_to_euclidean(closed).radius;
  CHECK(rq >= rc);
}

TEST_CASE("radius collapses near a zeta zero") {
  // lambda + r on the critical line at the height of the first zero: the
  // certified radius is driven by |zeta| and shrinks by far more than 10x.
  const double r = 0.49, s1 = 0.4;
  const zfree::PseudoDisc away = zfree::zeta_F(cplx(0.01, 50.0), r, s1);
  const zfree::PseudoDisc near = zfree::zeta_F(cplx(0.01, 14.134725), r, s1);
  CHECK(near.R * 10.0 < away.R);
}

TEST_CASE("zeta does not vanish inside the certified disc") {
  const zfree::EuclideanDisc e =
      zfree::pseudo_to_euclidean(zfree::zeta_F(cplx(0.01, 50.0), 0.49, 0.4));
  for (int k = 0; k < 100; ++k) {
    const double rho = e.radius * std::sqrt(oracle::uniform(0.0, 1.0));
    const cplx s = e.center + rho * std::polar(1.0, oracle::uniform(0.0, 2.0 * std::numbers::pi));
    CHECK(std::abs(zfree::zeta(s).value) > 1e-6);
  }
}

TEST_CASE("distance-driven radii match the closed formula") {
  const cplx lambda(0.01, 50.0);
  const double delta = 0.1;
  const zfree::PseudoDisc d = zfree::thm62_disc(delta, 0.49, lambda, 0.0);
  CHECK(d.R == doctest::Approx(std::sqrt(1.0 - 2.0 * 0.01 * delta * delta)).epsilon(1e-14));
  // a large distance bound collapses the disc to nothing
  const zfree::PseudoDisc z = zfree::thm62_disc(100.0, 0.49, cplx(1.0, 0.0), 0.0);
  CHECK(z.R == 0.0);
}

TEST_CASE("pseudo radius at or above one yields the half-plane variant") {
  zfree::PseudoDisc d;
  d.lambda = cplx(2.0, 0.0);
  d.R = 1.0;
  d.sigma0 = 0.0;
  d.shift = 0.49;
  const zfree::EuclideanDisc e = zfree::pseudo_to_euclidean(d);
  CHECK(e.halfplane);
}

TEST_CASE("certificate labels round-trip") {
  CHECK(zfree::to_string(zfree::DiscCertificate::zeta_F) == "zeta_F");
  CHECK(zfree::to_string(zfree::DiscCertificate::prop61) == "prop61");
  CHECK(zfree::to_string(zfree::DiscCertificate::thm62) == "thm62");
  CHECK(zfree::to_string(zfree::DiscCertificate::thm21sharp) == "thm21sharp");
}
