#ifndef ZFREE_LINALG_HPP
#define ZFREE_LINALG_HPP

#include <cstdint>
#include <vector>

#include "zfree/certified.hpp"

namespace zfree {

// Residue-polynomial coefficients (p_0,...,p_{m-1}) of the pole of
// L(s) phi_hat(s) at s = 1; the last coefficient is required nonzero.
struct PolyP {
  std::vector<cplx> p;

  int m() const { return static_cast<int>(p.size()); }
  void validate() const;
  double inf_norm() const;
};

inline constexpr int kMaxPascalSize = 12;

// Pascal matrix A_{i,j} = C(i+j, i), 0 <= i,j <= m-1, as exact integers.
std::vector<std::vector<std::int64_t>> pascal_matrix(int m);

// Lowest eigenvalue of the Pascal matrix, computed as 1/mu_max (the
// characteristic polynomial is palindromic) with the direct eigensolver
// value as a cross-check folded into err.  1 <= m <= 12.
CertifiedValue pascal_min_eigenvalue(int m);

// Characteristic polynomial det(XI - A^(m)) coefficients, exact integers,
// constant term first.  m <= 8.
std::vector<__int128> pascal_char_poly(int m);

// Both sides of the Pascal quadratic lower bound
//   int_0^inf |sum z_j t^j/j!|^2 e^{-at} dt >= mu_m sum a^{-2j-1} |z_j|^2,
// the left side in closed form as a Hermitian form.
struct QuadBound {
  double lhs;
  double rhs;
};
QuadBound pascal_quadratic_lower_bound(const std::vector<cplx>& z, double a);

// xi(P) of the triangular-system lemma.  `proof_sum` evaluates
// (1/|p_{m-1}|)(1 + sum_{j=1}^{m-1} m^{j-1} q^j); `display` evaluates the
// closed geometric form as printed (removable singularity at mq = 1 handled
// by its limit).  The two differ for m >= 3; proof_sum is the value used.
struct XiValue {
  double proof_sum;
  double display;
  bool discrepant;
  double value() const { return proof_sum; }
};
XiValue xi_of_P(const PolyP& P);

// Solves beta_k = sum_{i=0}^k C(i+m-1-k, i) p_{i+m-1-k} y_i by forward
// substitution and returns xi(P) alongside.
struct TriangularSolution {
  std::vector<cplx> y;
  XiValue xi;
};
TriangularSolution solve_triangular(const PolyP& P, const std::vector<cplx>& beta);

// Explicit inverse of the Vandermonde matrix V_{i,j} = j^{i-1}
// (1 <= i,j <= m), built from elementary symmetric polynomials in exact
// integer arithmetic.  num[i][j]/den[i][j] are exact; |num/den| summed over
// all entries equals (m-1)2^m + 1.
struct VandermondeInverse {
  int m;
  std::vector<std::vector<std::int64_t>> num;
  std::vector<std::vector<std::int64_t>> den;
  double entry(int i, int j) const;  // 0-based
};
VandermondeInverse vandermonde_inverse(int m);

// Solution of sum_j j^{i-1} x_j = y_i together with the lemma bound
// ((m-1)2^m + 1) max |y_j| on sum |x_i|.
struct VandermondeSolution {
  std::vector<cplx> x;
  double bound;
};
VandermondeSolution solve_vandermonde(const std::vector<cplx>& y);

double binomial(int n, int k);

}  // namespace zfree

#endif
