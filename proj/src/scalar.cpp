#include "mcmv/scalar.hpp"

#include <algorithm>
#include <cmath>

#include "mcmv/errors.hpp"

namespace mcmv {

DiskPoint::DiskPoint(cplx v) : v_(v) {
  if (!(std::abs(v) < 1.0 - kDiskMargin))
    throw DomainError("point is not inside the unit disk");
}

double DiskPoint::rho() const { return eta(v_); }

Mat2 Mat2::adjoint() const {
  return {std::conj(m11), std::conj(m21), std::conj(m12), std::conj(m22)};
}

Mat2 Mat2::inverse() const {
  const cplx d = det();
  if (d == 0.0) throw NumericError("singular 2x2 matrix");
  return {m22 / d, -m12 / d, -m21 / d, m11 / d};
}

double Mat2::max_abs() const {
  return std::max({std::abs(m11), std::abs(m12), std::abs(m21), std::abs(m22)});
}

Mat2 Mat2::operator*(const Mat2& o) const {
  return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
          m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
}

Mat2 Mat2::operator+(const Mat2& o) const {
  return {m11 + o.m11, m12 + o.m12, m21 + o.m21, m22 + o.m22};
}

Mat2 Mat2::operator-(const Mat2& o) const {
  return {m11 - o.m11, m12 - o.m12, m21 - o.m21, m22 - o.m22};
}

Mat2 Mat2::operator*(cplx s) const { return {m11 * s, m12 * s, m21 * s, m22 * s}; }

cplx blaschke(cplx w, cplx z) {
  const cplx den = 1.0 - std::conj(w) * z;
  if (den == 0.0) throw PoleError("Blaschke factor evaluated at its pole");
  return (z - w) / den;
}

cplx blaschke_derivative(cplx w, cplx z) {
  const cplx den = 1.0 - std::conj(w) * z;
  if (den == 0.0) throw PoleError("Blaschke factor evaluated at its pole");
  return (1.0 - std::norm(w)) / (den * den);
}

cplx reflect(cplx z) {
  if (z == 0.0) throw DomainError("reflection of 0 is the point at infinity");
  return 1.0 / std::conj(z);
}

double eta(cplx z) { return std::sqrt(1.0 - std::norm(z)); }

Mat2 u_matrix(cplx a) {
  const double r = eta(a);
  if (!(r > 0.0)) throw DomainError("U(a) needs |a| < 1");
  return {1.0 / r, a / r, std::conj(a) / r, 1.0 / r};
}

Projective moebius(const Mat2& m, Projective f) {
  cplx num, den;
  if (f.infinite) {
    num = m.m11;
    den = m.m21;
  } else {
    num = m.m11 * f.value + m.m12;
    den = m.m21 * f.value + m.m22;
  }
  if (num == 0.0 && den == 0.0) throw NumericError("indeterminate 0/0 in Moebius action");
  if (den == 0.0) return Projective::infinity();
  return Projective::finite(num / den);
}

cplx moebius(const Mat2& m, cplx f) {
  const Projective r = moebius(m, Projective::finite(f));
  if (r.infinite) throw PoleError("Moebius action hits infinity");
  return r.value;
}

std::pair<Projective, Projective> fixed_points(const Mat2& m) {
  const cplx a = m.m21, b = m.m22 - m.m11, c = -m.m12;
  const double scale = std::max(1.0, m.max_abs()) * 1e-14;
  if (std::abs(a) <= scale && std::abs(b) <= scale && std::abs(c) <= scale)
    throw NumericError("every point is fixed: matrix is a multiple of the identity");
  if (a == 0.0) {
    if (b == 0.0) return {Projective::infinity(), Projective::infinity()};
    return {Projective::finite(-c / b), Projective::infinity()};
  }
  const cplx s = std::sqrt(b * b - 4.0 * a * c);
  const cplx q = std::real(std::conj(b) * s) >= 0.0 ? -0.5 * (b + s) : -0.5 * (b - s);
  if (q == 0.0) return {Projective::finite(0.0), Projective::finite(0.0)};
  return {Projective::finite(q / a), Projective::finite(c / q)};
}

double j_defect(const Mat2& m) {
  const Mat2 d = Mat2::j() - m.adjoint() * Mat2::j() * m;
  const double p = 0.5 * std::real(d.m11 + d.m22);
  const double q = 0.5 * std::real(d.m11 - d.m22);
  return p - std::sqrt(q * q + std::norm(d.m12));
}

bool is_j_unitary(const Mat2& m, double tol) {
  const Mat2 d = Mat2::j() - m.adjoint() * Mat2::j() * m;
  return d.max_abs() <= tol * std::max(1.0, m.max_abs() * m.max_abs());
}

bool is_j_contractive(const Mat2& m, double tol) {
  return j_defect(m) >= -tol * std::max(1.0, m.max_abs() * m.max_abs());
}

} // namespace mcmv
