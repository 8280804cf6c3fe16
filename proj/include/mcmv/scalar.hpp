#pragma once

#include <complex>
#include <utility>

namespace mcmv {

using cplx = std::complex<double>;

inline constexpr double kDiskMargin = 1e-12;

// A point of the open unit disk, kept at least kDiskMargin away from the circle.
class DiskPoint {
public:
  DiskPoint() = default;
  DiskPoint(cplx v);
  DiskPoint(double v) : DiskPoint(cplx(v, 0.0)) {}

  cplx value() const { return v_; }
  operator cplx() const { return v_; }
  double rho() const;

private:
  cplx v_{0.0, 0.0};
};

struct Mat2 {
  cplx m11{1.0}, m12{0.0}, m21{0.0}, m22{1.0};

  static Mat2 identity() { return {}; }
  static Mat2 diag(cplx a, cplx b) { return {a, 0.0, 0.0, b}; }
  static Mat2 j() { return diag(1.0, -1.0); }

  cplx det() const { return m11 * m22 - m12 * m21; }
  cplx trace() const { return m11 + m22; }
  Mat2 adjoint() const;
  Mat2 inverse() const;
  double max_abs() const;

  Mat2 operator*(const Mat2& o) const;
  Mat2 operator+(const Mat2& o) const;
  Mat2 operator-(const Mat2& o) const;
  Mat2 operator*(cplx s) const;
};

// Point of the Riemann sphere with an explicit tag for infinity.
struct Projective {
  cplx value{0.0, 0.0};
  bool infinite = false;

  static Projective finite(cplx v) { return {v, false}; }
  static Projective infinity() { return {cplx(0.0, 0.0), true}; }
};

// b_w(z) = (z - w)/(1 - conj(w) z).
cplx blaschke(cplx w, cplx z);
cplx blaschke_derivative(cplx w, cplx z);

// 1/conj(z).
cplx reflect(cplx z);

// sqrt(1 - |z|^2).
double eta(cplx z);

// (1/rho) [[1, a], [conj a, 1]].
Mat2 u_matrix(cplx a);

// (m11 f + m12)/(m21 f + m22) on the Riemann sphere.
Projective moebius(const Mat2& m, Projective f);
cplx moebius(const Mat2& m, cplx f);

// Roots of m21 F^2 + (m22 - m11) F - m12 = 0, i.e. fixed points of moebius(m, .).
std::pair<Projective, Projective> fixed_points(const Mat2& m);

// Smallest eigenvalue of the Hermitian matrix j - m* j m.
double j_defect(const Mat2& m);
bool is_j_unitary(const Mat2& m, double tol = 1e-12);
bool is_j_contractive(const Mat2& m, double tol = 1e-12);

} // namespace mcmv
