#ifndef ZFREE_DISCS_HPP
#define ZFREE_DISCS_HPP

#include <map>
#include <string>

#include "zfree/model.hpp"

namespace zfree {

enum class DiscCertificate { prop61, thm62, thm21sharp, zeta_F };

std::string to_string(DiscCertificate c);

// A pseudo-hyperbolic disc |(mu - lambda)/(mu + conj(lambda) - 2 sigma0)| < R
// in the s-plane, to be translated by `shift` (= r - sigma0) into the
// original variable.
struct PseudoDisc {
  cplx lambda{1.0, 0.0};
  double R = 0.0;
  double sigma0 = 0.0;
  double shift = 0.0;
  bool clipped = false;  // true when a raw R > 1 was clipped to 1

  void validate() const;
};

struct EuclideanDisc {
  cplx center{0.0, 0.0};
  double radius = 0.0;
  bool halfplane = false;  // R >= 1: the region is the half-plane Re s > sigma0 + shift
  DiscCertificate certified_by = DiscCertificate::zeta_F;
  double R = 0.0;
  std::map<std::string, double> inputs;  // parameter and error provenance
};

// Euclidean geometry of a pseudo-hyperbolic disc: center
// shift + (a + R^2 (a - 2 sigma0))/(1 - R^2) + i b, radius
// 2 R (a - sigma0)/(1 - R^2), with a = Re lambda, b = Im lambda.
// R >= 1 yields the halfplane variant.
EuclideanDisc pseudo_to_euclidean(const PseudoDisc& d, DiscCertificate cert = DiscCertificate::zeta_F);

enum class HNormMode { closed_form_bound, quadrature };

// R = sqrt(4 pi (Re lambda - sigma0)) |h_{A,r}(lambda)| / ||h_{A,r}||, with
// h_{A,r}(s) = -(2 pi)^{-1/2} (L phihat g_A b_{1,r}^{m_L})(s + r - sigma0)
// and ||h_{A,r}|| = ||f_{A,r}|| taken either from the closed-form upper
// bound (default, conservative) or from quadrature (sharper).
PseudoDisc prop61_radius(const SeriesModel& model, const Sequence& A, double r, cplx lambda,
                         HNormMode mode = HNormMode::closed_form_bound,
                         const QuadratureSpec& spec = {});

// Numerator/denominator breakdown of the closed-form zeta radius, kept for
// CLI reporting.
struct ZetaFBreakdown {
  double R = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
  double C_r_sigma1 = 0.0;
  double psi1_norm = 0.0;
  double eval_err = 0.0;  // propagated special-function error on R
};

// Closed-form zeta specialization
//   F(lambda,r,sigma1) = sqrt(2 Re lambda)
//     |Gamma(lambda+r) Gamma(1-sigma1) zeta(lambda+r) (lambda+r-1)|
//     / ((C(r,sigma1) + 1/((1-sigma1) sqrt(2-2r))) |Gamma(lambda+r+1-sigma1) (lambda-r+1)|).
PseudoDisc zeta_F(cplx lambda, double r, double sigma1, ZetaFBreakdown* breakdown = nullptr);

// R = sqrt(max(0, 1 - 2 (Re lambda - sigma0) delta_upper^2)); valid for any
// upper bound delta_upper on the true distance.
PseudoDisc thm62_disc(double delta_upper, double r, cplx lambda, double sigma0);

// Same formula fed by the constrained distance upper bound.
PseudoDisc thm21_sharp_disc(double d_sharp_upper, double r, cplx lambda, double sigma0);

}  // namespace zfree

#endif
