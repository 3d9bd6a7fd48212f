#ifndef ZFREE_QUADRATURE_HPP
#define ZFREE_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "zfree/certified.hpp"

namespace zfree {

using Integrand = std::function<cplx(double)>;

enum class TailStrategy { geometric, bound_driven };

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_subdivisions = 4000;
  TailStrategy tail_cutoff_strategy = TailStrategy::bound_driven;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("QuadratureSpec: tolerances must be > 0");
    if (max_subdivisions < 1) throw DomainError("QuadratureSpec: max_subdivisions >= 1");
  }
};

// Measure weights of the ambient L^2 spaces.  `param` is r for inv_t_1p2r
// and sigma0 for inv_t_1m2s0.
enum class WeightKind { none, inv_t_1p2r, inv_t_1m2s0 };
struct Weight {
  WeightKind kind = WeightKind::none;
  double param = 0.0;
};
double weight_factor(const Weight& w, double t);

// Adaptive Gauss-Kronrod (7-15) over [a,b].  `breakpoints` are interior
// points where the integrand is non-smooth; the initial segmentation splits
// there.  err bounds the accumulated local Kronrod estimates.
CertifiedValue integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec,
                         const std::vector<double>& breakpoints = {},
                         const Weight& w = {});

// Decay envelope |f(t) * weight(t)| <= coeff * t^power for t >= cutoff
// (caller-supplied; power < -1 required so the tail converges).
struct TailEnvelope {
  double coeff = 0.0;
  double power = -2.0;
};

// Integral over [a, +inf): finite head up to `cutoff` plus a certified tail
// bound from the envelope (bound_driven), or geometric cutoff doubling until
// the marginal contribution is negligible (geometric; err from the observed
// geometric decay, not rigorous).
CertifiedValue integrate_to_inf(const Integrand& f, double a, double cutoff,
                                const QuadratureSpec& spec, const TailEnvelope& env,
                                const std::vector<double>& breakpoints = {},
                                const Weight& w = {});

// Integral over (0, length] of f(x) with an integrable algebraic
// singularity x^{-beta}, 0 <= beta < 1, at the origin, via the flattening
// substitution x = u^{1/(1-beta)}.  The integrand receives the offset x
// itself, so callers can keep full relative precision near the singularity
// (forming t = b - x first and recovering x from t cannot).
CertifiedValue integrate_singular_origin(const Integrand& f, double length, double beta,
                                         const QuadratureSpec& spec);

// Integral of f over [a,b] where f carries an integrable algebraic
// singularity (t-a)^{-beta}, 0 <= beta < 1, at the left endpoint.  Uses the
// flattening substitution t = a + u^{1/(1-beta)}.
CertifiedValue integrate_left_singular(const Integrand& f, double a, double b, double beta,
                                       const QuadratureSpec& spec);

// Same with the singularity (b-t)^{-beta} at the right endpoint.
CertifiedValue integrate_right_singular(const Integrand& f, double a, double b, double beta,
                                        const QuadratureSpec& spec);

}  // namespace zfree

#endif
