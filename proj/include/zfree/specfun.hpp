#ifndef ZFREE_SPECFUN_HPP
#define ZFREE_SPECFUN_HPP

#include "zfree/certified.hpp"

namespace zfree {

// Gamma(s) for s not a nonpositive integer.  Lanczos rational approximation
// (~1e-13 relative in the shifted regime) with upward recurrence for
// Re s < 0.5.
CertifiedValue gamma(cplx s);

// Riemann zeta via the accelerated alternating series (Borwein), valid for
// Re s > 0 with analytic-continuation factor 1/(1-2^{1-s}); an internal
// Euler-Maclaurin path takes over near the zeros of 1-2^{1-s}.
CertifiedValue zeta(cplx s);

// Mellin transform of phi(t) = (1-t)^{-sigma1} chi_(0,1)(t):
//   phi_hat(s) = Gamma(s) Gamma(1-sigma1) / Gamma(1+s-sigma1),
// for Re s > 0, sigma1 < 1/2.
CertifiedValue phi_hat(cplx s, double sigma1);

}  // namespace zfree

#endif
