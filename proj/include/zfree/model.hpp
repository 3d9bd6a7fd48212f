#ifndef ZFREE_MODEL_HPP
#define ZFREE_MODEL_HPP

#include <functional>
#include <string>
#include <vector>

#include "zfree/linalg.hpp"
#include "zfree/quadrature.hpp"

namespace zfree {

// A Dirichlet series L(s) = sum a_n n^{-s} with a unique pole of order m_L
// at s = 1, paired with the test function phi(t) = (1-t)^{-sigma1} on (0,1).
// L_eval carries the meromorphic continuation (a Dirichlet sum is not valid
// in the critical strip).  Immutable after construction.
struct SeriesModel {
  std::string name;
  std::function<cplx(long long)> coeff;  // a(n)
  int m_L = 1;
  double sigma0 = 0.0;
  double r0 = 0.5;
  double sigma1 = 0.4;
  std::function<CertifiedValue(cplx)> L_eval;
  std::function<CertifiedValue(cplx)> phi_hat_eval;
  std::vector<cplx> laurent_p;  // (p_0,...,p_{m_L-1}) of L(s) phi_hat(s) at s=1
  double psi_tail_cutoff = 1e5;  // truncation point for the |psi|^2 tail

  void validate() const;
};

// Builtin Riemann zeta model: sigma0 = 0, m_L = 1, r0 = 1/2, a(n) = 1.
SeriesModel zeta_model(double sigma1 = 0.4);

// Dilation/coefficient data A = (alpha, c), 0 < alpha_j <= 1.
struct Sequence {
  std::vector<double> alpha;
  std::vector<cplx> c;

  int length() const { return static_cast<int>(alpha.size()); }
  void validate() const;
  double abs_c_sum() const;
};

// Concatenation A + A'.
Sequence concat(const Sequence& a, const Sequence& b);

struct AdmissibilityReport {
  std::vector<cplx> moments;  // sum_j c_j alpha_j (log alpha_j)^k, k < m
  bool is_admissible = false;
  double tol = 0.0;
};

// The residue polynomial P = (p_0,...,p_{m_L-1}).
PolyP poly_P(const SeriesModel& model);

// psi(u) = res(L(s) phi_hat(s) u^s, s=1) - sum_{n<u} a_n phi(n/u).
// For u <= 1 the sum is empty and psi(u) = u sum p_k (log u)^k.
CertifiedValue psi(const SeriesModel& model, double u);

// Residue term alone: psi_1(u) = u sum p_k (log u)^k, any u > 0.
cplx psi_residue_term(const SeriesModel& model, double u);

// psi(n + delta) for integer n >= 1 and 0 < delta <= 1, with the singular
// n-th term phi(n/u) = (delta/u)^{-sigma1} computed from delta directly.
// Needed for quadrature next to the spikes when sigma1 > 0, where forming
// u = n + delta first and re-deriving delta loses all relative precision.
CertifiedValue psi_offset(const SeriesModel& model, long long n, double delta);

// psi(alpha/(b - x)) evaluated spike-aware: when b is (up to rounding) a
// spike abscissa alpha/n, the offset from the singularity is computed
// exactly from x.  Intended for integrands parameterized by the offset x
// from the right endpoint b of a quadrature subinterval.
cplx psi_dilated_offset(const SeriesModel& model, double alpha, double b, double x);

// ||psi||_r = (int_1^inf |psi(t)|^2 dt/t^{1+2r})^{1/2} by quadrature with a
// certified (empirical-envelope) tail.  r0 <= r < 1.
CertifiedValue psi_norm_r(const SeriesModel& model, double r, const QuadratureSpec& spec);

// Closed-form upper bound for the zeta model:
//   ||psi||_r^2 <= 1/(2r) + C(sigma1) zeta(1+2(r-sigma1)).
double psi_norm_r_bound(const SeriesModel& model, double r);
double zeta_C_sigma1(double sigma1);

// ||psi_1||_{L^2((0,1), du/u^{1+2r})} in closed form.
double psi1_norm(const SeriesModel& model, double r);

// ||P||_2 = (int_0^1 |sum p_i (log u)^i|^2 u du)^{1/2}, closed form.
double P_norm2(const PolyP& P);

// f_{A,r}(t) = t^{r-sigma0} sum_j c_j psi(alpha_j / t).
CertifiedValue f_A(const SeriesModel& model, const Sequence& A, double r, double t);

// ||f_{A,r}|| in L^2((0,inf), dt/t^{1-2sigma0}) by quadrature (exact closed
// form on t > 1 where all dilated arguments are below 1).
CertifiedValue f_A_norm(const SeriesModel& model, const Sequence& A, double r,
                        const QuadratureSpec& spec);

// Paper upper bound sum_j |c_j| alpha_j^r (||psi_1|| + ||psi||_r-bound).
double f_A_norm_bound(const SeriesModel& model, const Sequence& A, double r);

// g_A(s) = sum_j c_j alpha_j^s.
cplx g_A(const Sequence& A, cplx s);

// Elementary Blaschke factor b_{lambda,r}(s) = (s-lambda)/(s+conj(lambda)-2r).
cplx blaschke(cplx lambda, double r, cplx s);

// Reproducing kernel k_{lambda,r}(s) = 1/(2pi (s-2r+conj(lambda)))
// and its H^2 norm (4pi(Re lambda - r))^{-1/2}.
cplx kernel(cplx lambda, double r, cplx s);
double kernel_norm(cplx lambda, double r);

// u_{r,lambda}: (1+A/B)^{m_L} t^{conj(lambda)-2sigma0} on (0,1],
// Q_{r,lambda}(log t) t^{r-sigma0-1} on (1,inf), with A = 2-2r and
// B = r+sigma0-1-conj(lambda).
cplx u_r_lambda(const SeriesModel& model, double r, cplx lambda, double t);

// Coefficients of Q_{r,lambda} (degree m_L - 1).
std::vector<cplx> u_r_lambda_Q(const SeriesModel& model, double r, cplx lambda);

// |u_hat(s) - 2pi k_{lambda,sigma0}(s)/b_{1,r}^{m_L}(s+r-sigma0)| with
// u_hat evaluated branchwise in closed form.  Valid in the strip
// 2sigma0 - Re lambda < Re s < 1 + sigma0 - r.
double mellin_u_check(const SeriesModel& model, double r, cplx lambda, cplx s);

AdmissibilityReport admissibility(const Sequence& A, int m, double tol);

// int_0^inf psi(1/t) t^{s-1} dt = int_0^inf psi(u) u^{-s-1} du for
// 0 < Re s < 1: exact residue-branch piece on (0,1], per-interval quadrature
// up to an integer cutoff, and a mean-value tail with an
// integration-by-parts error budget for the oscillating remainder.
CertifiedValue mellin_psi_transform(const SeriesModel& model, cplx s, const QuadratureSpec& spec);

// Residual |mellin_psi_transform(s) + L(s) phi_hat(s)|.
double mellin_psi_check(const SeriesModel& model, cplx s, const QuadratureSpec& spec);

// H(s) = sum k! p_k/(s-1)^{k+1} - L(s) phi_hat(s), the analytic part of the
// pole decomposition.
CertifiedValue H_eval(const SeriesModel& model, cplx s);

}  // namespace zfree

#endif
