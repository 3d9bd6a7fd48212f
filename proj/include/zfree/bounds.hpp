#ifndef ZFREE_BOUNDS_HPP
#define ZFREE_BOUNDS_HPP

#include <vector>

#include "zfree/model.hpp"

namespace zfree {

// E(r) = (2 sum_k (2-2r)^{2k}/(k!)^2)^{1/2}.  The series is entire; it is
// truncated when a term drops below 1e-16 of the partial sum.  `m` is
// accepted for interface parity and does not enter the series.
double E_of_r(double r, int m = 1);

// Lambda(m,r) = ((m-1)2^m + 1) max(e^m, e^{(1-r)m}) (||P||_2^2 + ||psi||_r^2)^{1/2}.
double Lambda_m_r(int m, double r, double P_norm2, double psi_norm_r);

struct ComparisonFactor {
  double r = 0.0;
  double theta = 0.0;
  double factor = 1.0;  // 1 + theta * sqrt(1-r)
  struct Components {
    double xi = 0.0;
    double E = 0.0;
    double Lambda = 0.0;
    double mu_m = 0.0;
  } components;
};

enum class PsiNormMode { quadrature, paper_bound };

// theta(psi,r) = xi(P) E(r) Lambda(m,r) / sqrt(mu_m) and the comparison
// factor 1 + theta sqrt(1-r).  ||psi||_r comes from quadrature by default;
// paper_bound substitutes the closed-form upper bound (zeta model only).
ComparisonFactor theta_psi_r(const SeriesModel& model, double r,
                             PsiNormMode mode = PsiNormMode::quadrature,
                             const QuadratureSpec& spec = {});

// Admissible completion: A' = (alpha'_j = e^{-j}, c'_j) such that the
// concatenation A + A' is m-admissible, with sum |c'_j alpha'_j| bounded by
// ((m-1)2^m + 1) max_k |moment_k(A)|.
Sequence complete_to_admissible(const Sequence& A, int m);

struct DistanceTarget {
  enum class Kind { w_lambda, u_r_lambda, f_sequence } kind = Kind::w_lambda;
  cplx lambda{1.0, 0.0};
  Sequence A;  // for f_sequence only

  static DistanceTarget w(cplx lambda) { return {Kind::w_lambda, lambda, {}}; }
  static DistanceTarget u(cplx lambda) { return {Kind::u_r_lambda, lambda, {}}; }
  static DistanceTarget f(Sequence A) { return {Kind::f_sequence, cplx(1.0, 0.0), std::move(A)}; }
};

enum class DistanceConstraint { none, admissible };

struct DistanceResult {
  double value = 0.0;          // upper bound on the distance
  std::vector<cplx> c;         // optimal coefficients over the grid
  double gram_condition = 0.0;
  bool regularized = false;
  double quadrature_err = 0.0;  // accumulated Gram/moment quadrature bounds
};

// Finite-span distance upper bound: minimizes
//   || sum_j c_j psi(alpha_j/t) t^{r-sigma0} - target ||
// in L^2((0,inf), dt/t^{1-2 sigma0}) over the grid span, by normal
// equations on certified Gram entries.  Returned value is the objective
// re-evaluated at the returned c, hence always a true upper bound.
DistanceResult distance_upper_bound(const SeriesModel& model, double r,
                                    const DistanceTarget& target,
                                    const std::vector<double>& grid,
                                    DistanceConstraint constraint = DistanceConstraint::none,
                                    const QuadratureSpec& spec = {});

// <psi(alpha_i/.) t^{r-s0}, psi(alpha_j/.) t^{r-s0}> in the weighted space;
// exposed for Gram positivity tests.
CertifiedValue psi_pair_inner(const SeriesModel& model, double r, double ai, double aj,
                              const QuadratureSpec& spec = {});

}  // namespace zfree

#endif
