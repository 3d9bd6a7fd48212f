#ifndef ZFREE_CERTIFIED_HPP
#define ZFREE_CERTIFIED_HPP

#include <cmath>
#include <complex>

#include "zfree/errors.hpp"

namespace zfree {

using cplx = std::complex<double>;

// A numeric result paired with an absolute error bound.  Arithmetic
// propagates the bounds by first-order worst-case rules: errs add under
// +/-, and |a|*err_b + |b|*err_a (plus the cross term) under *.
struct CertifiedValue {
  cplx value{0.0, 0.0};
  double err = 0.0;

  CertifiedValue() = default;
  CertifiedValue(cplx v, double e) : value(v), err(e) {
    if (!(e >= 0.0) || !std::isfinite(e)) throw DomainError("CertifiedValue: err must be finite and >= 0");
  }
  explicit CertifiedValue(double v) : value(v, 0.0), err(0.0) {}
  explicit CertifiedValue(cplx v) : value(v), err(0.0) {}

  double real() const { return value.real(); }
  double imag() const { return value.imag(); }
  double abs() const { return std::abs(value); }
};

inline CertifiedValue operator+(const CertifiedValue& a, const CertifiedValue& b) {
  return {a.value + b.value, a.err + b.err};
}
inline CertifiedValue operator-(const CertifiedValue& a, const CertifiedValue& b) {
  return {a.value - b.value, a.err + b.err};
}
inline CertifiedValue operator-(const CertifiedValue& a) { return {-a.value, a.err}; }
inline CertifiedValue operator*(const CertifiedValue& a, const CertifiedValue& b) {
  return {a.value * b.value, std::abs(a.value) * b.err + std::abs(b.value) * a.err + a.err * b.err};
}
inline CertifiedValue operator*(double c, const CertifiedValue& a) {
  return {c * a.value, std::abs(c) * a.err};
}
inline CertifiedValue operator*(cplx c, const CertifiedValue& a) {
  return {c * a.value, std::abs(c) * a.err};
}
inline CertifiedValue operator/(const CertifiedValue& a, const CertifiedValue& b) {
  const double babs = std::abs(b.value);
  if (babs <= b.err) throw NumericError("CertifiedValue: division by a value whose bound contains 0");
  const cplx v = a.value / b.value;
  // |a/b - a'/b'| <= err_a/|b| + (|a|/|b|) err_b/(|b|-err_b); evaluated as
  // a product of ratios so |b|^2 never underflows
  const double e = a.err / babs + (std::abs(a.value) / babs) * (b.err / (babs - b.err));
  return {v, e};
}

}  // namespace zfree

#endif
