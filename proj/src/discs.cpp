#include "zfree/discs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "zfree/specfun.hpp"

namespace zfree {

namespace {
constexpr double kPi = std::numbers::pi;

PseudoDisc make_pseudo(double R_raw, cplx lambda, double sigma0, double shift) {
  PseudoDisc d;
  d.lambda = lambda;
  d.sigma0 = sigma0;
  d.shift = shift;
  if (R_raw > 1.0) {
    d.R = 1.0;
    d.clipped = true;
  } else {
    d.R = std::max(0.0, R_raw);
  }
  return d;
}
}  // namespace

std::string to_string(DiscCertificate c) {
  switch (c) {
    case DiscCertificate::prop61: return "prop61";
    case DiscCertificate::thm62: return "thm62";
    case DiscCertificate::thm21sharp: return "thm21sharp";
    case DiscCertificate::zeta_F: return "zeta_F";
  }
  return "unknown";
}

void PseudoDisc::validate() const {
  if (!(lambda.real() > sigma0)) throw DomainError("PseudoDisc: Re lambda > sigma0 required");
  if (!(R >= 0.0) || !(R <= 1.0)) throw DomainError("PseudoDisc: R in [0,1] required");
}

EuclideanDisc pseudo_to_euclidean(const PseudoDisc& d, DiscCertificate cert) {
  d.validate();
  EuclideanDisc out;
  out.certified_by = cert;
  out.R = d.R;
  out.inputs["lambda_re"] = d.lambda.real();
  out.inputs["lambda_im"] = d.lambda.imag();
  out.inputs["sigma0"] = d.sigma0;
  out.inputs["shift"] = d.shift;
  out.inputs["R"] = d.R;
  const double a = d.lambda.real();
  const double b = d.lambda.imag();
  if (d.R >= 1.0) {
    out.halfplane = true;
    out.center = cplx(d.sigma0 + d.shift, 0.0);
    out.radius = std::numeric_limits<double>::infinity();
    return out;
  }
  const double R2 = d.R * d.R;
  out.center = cplx(d.shift + (a + R2 * (a - 2.0 * d.sigma0)) / (1.0 - R2), b);
  out.radius = 2.0 * d.R * (a - d.sigma0) / (1.0 - R2);
  return out;
}

PseudoDisc prop61_radius(const SeriesModel& model, const Sequence& A, double r, cplx lambda,
                         HNormMode mode, const QuadratureSpec& spec) {
  model.validate();
  A.validate();
  if (!(lambda.real() > model.sigma0)) throw DomainError("prop61_radius: Re lambda > sigma0 required");
  if (!(r > std::max(model.sigma0, model.sigma1)) || !(r < 1.0)) throw DomainError("prop61_radius: max(sigma0, sigma1) < r < 1 required");
  if (A.abs_c_sum() == 0.0) throw DomainError("prop61_radius: all coefficients vanish");

  const cplx s = lambda + (r - model.sigma0);
  const CertifiedValue L = model.L_eval(s);
  const CertifiedValue ph = model.phi_hat_eval(s);
  const cplx b1r = std::pow(blaschke(cplx(1.0, 0.0), r, s), static_cast<double>(model.m_L));
  const cplx h = -(1.0 / std::sqrt(2.0 * kPi)) * L.value * ph.value * g_A(A, s) * b1r;

  const double hnorm = (mode == HNormMode::closed_form_bound)
                           ? f_A_norm_bound(model, A, r)
                           : f_A_norm(model, A, r, spec).real();
  if (!(hnorm > 0.0)) throw NumericError("prop61_radius: vanishing norm");
  const double R = std::sqrt(4.0 * kPi * (lambda.real() - model.sigma0)) * std::abs(h) / hnorm;
  return make_pseudo(R, lambda, model.sigma0, r - model.sigma0);
}

PseudoDisc zeta_F(cplx lambda, double r, double sigma1, ZetaFBreakdown* breakdown) {
  if (!(sigma1 < 0.5)) throw DomainError("zeta_F: sigma1 < 1/2 required");
  if (!(r > std::max(0.0, sigma1)) || !(r < 1.0))
    throw DomainError("zeta_F: max(0, sigma1) < r < 1 required");
  if (!(lambda.real() > 0.0)) throw DomainError("zeta_F: Re lambda > 0 required");

  const cplx s = lambda + r;
  const CertifiedValue g1 = gamma(s);
  const CertifiedValue g2 = gamma(cplx(1.0 - sigma1, 0.0));
  const CertifiedValue g3 = gamma(s + (1.0 - sigma1));
  const CertifiedValue z = zeta(s);

  const double C_r = std::sqrt(1.0 / (2.0 * r) +
                               zeta_C_sigma1(sigma1) * zeta(cplx(1.0 + 2.0 * (r - sigma1), 0.0)).real());
  const double psi1 = 1.0 / ((1.0 - sigma1) * std::sqrt(2.0 - 2.0 * r));

  const CertifiedValue num_c = g1 * g2 * z * CertifiedValue(s - cplx(1.0, 0.0));
  const CertifiedValue den_c = g3 * CertifiedValue(lambda - r + 1.0);
  const double num = std::sqrt(2.0 * lambda.real()) * num_c.abs();
  const double den = (C_r + psi1) * den_c.abs();
  if (!(den > 0.0)) throw NumericError("zeta_F: vanishing denominator");
  const double R = num / den;

  if (breakdown) {
    breakdown->R = std::min(1.0, R);
    breakdown->numerator = num;
    breakdown->denominator = den;
    breakdown->C_r_sigma1 = C_r;
    breakdown->psi1_norm = psi1;
    // First-order relative error through the quotient of certified factors.
    const double rel = (num_c.abs() > 0.0 ? num_c.err / num_c.abs() : 0.0) +
                       den_c.err / den_c.abs();
    breakdown->eval_err = R * rel;
  }
  return make_pseudo(R, lambda, 0.0, r);
}

PseudoDisc thm62_disc(double delta_upper, double r, cplx lambda, double sigma0) {
  if (!(delta_upper >= 0.0)) throw DomainError("thm62_disc: delta_upper >= 0 required");
  if (!(lambda.real() > sigma0)) throw DomainError("thm62_disc: Re lambda > sigma0 required");
  const double rad = 1.0 - 2.0 * (lambda.real() - sigma0) * delta_upper * delta_upper;
  const double R = std::sqrt(std::max(0.0, rad));
  return make_pseudo(R, lambda, sigma0, r - sigma0);
}

PseudoDisc thm21_sharp_disc(double d_sharp_upper, double r, cplx lambda, double sigma0) {
  return thm62_disc(d_sharp_upper, r, lambda, sigma0);
}

}  // namespace zfree
