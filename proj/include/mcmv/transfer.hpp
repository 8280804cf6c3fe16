#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "mcmv/mcmv.hpp"

namespace mcmv {

// Pole sequence zeta_k = (D_0)_{kk} used by the rational recurrences.
std::vector<cplx> orf_poles(const PoleVector& z, int count);

class MonodromyEvaluator {
public:
  MonodromyEvaluator(VerblunskySequence seq, PoleVector z);

  const VerblunskySequence& sequence() const { return seq_; }
  const PoleVector& poles() const { return z_; }
  int n() const { return z_.n(); }
  int period() const { return 2 * z_.n(); }
  cplx zeta(int k) const { return zeta_[k]; }

  // U(a_0) diag(b_{zeta_1},1) U(a_1) ... U(a_{p-1}) diag(b_{zeta_p},1) diag(e^{-i theta}, e^{i theta}).
  Mat2 monodromy(cplx z) const;
  Mat2 monodromy_derivative(cplx z) const;
  // B(z) = z prod_{j>=1} b_{z_j}(z).
  cplx b(cplx z) const;
  cplx b_derivative(cplx z) const;
  cplx discriminant(cplx z) const;
  cplx discriminant_derivative(cplx z) const;
  // d/dt of Delta(e^{it}); real for a real-on-the-circle discriminant.
  double discriminant_dt(double t) const;
  double discriminant_on_circle(double t) const;

  // U(-conj a_{p-1}) diag(b_{zeta_{p-1}},1) ... U(-conj a_0) diag(b_{zeta_0},1).
  Mat2 w_matrix(cplx z) const;
  Mat2 w_theta(cplx z) const;
  // Y_0 diag(b_{zeta_0},1) U(a_0) ... diag(b_{zeta_{p-1}},1) U(a_{p-1}) Y_0^{-1}.
  Mat2 m_matrix(cplx z) const;
  Mat2 m_theta(cplx z) const;

  // u = 2 (M_theta)_{21} / B, v = ((M_theta)_{11} - (M_theta)_{22}) / B.
  std::pair<cplx, cplx> uv(cplx z) const;

private:
  VerblunskySequence seq_;
  PoleVector z_;
  std::vector<cplx> zeta_;
};

Mat2 y0_matrix();
// [[cos theta, i sin theta], [i sin theta, cos theta]].
Mat2 rotation_matrix(double theta);

struct OrfState {
  int k = 0;
  cplx phi, phi_star, psi, psi_star;
  Mat2 frame() const { return {psi, phi, -psi_star, phi_star}; }
};

// States k = 0..steps of the first and second kind rational recurrences with
// pole sequence `zeta` (needs steps + 1 entries).
std::vector<OrfState> orf_recurrence(const VerblunskySequence& seq, const std::vector<cplx>& zeta,
                                     cplx x, int steps);

// (M11 F1 + M12)/(M21 F1 + M22).
cplx coefficient_stripping(cplx f1, const Mat2& m);

struct SchurResult {
  std::vector<cplx> parameters;
  bool terminated = false; // reached |a_k| ~ 1 (finite Blaschke product)
};

// Schur parameters a_k = f_k(0), z f_{k+1} = (f_k - a_k)/(1 - conj(a_k) f_k).
// Values at 0 are obtained as circle means of the iterates, so f is only sampled
// on |z| = radius.
SchurResult schur_algorithm(const std::function<cplx(cplx)>& f, int steps, double radius = 0.75,
                            int nodes = 256, double stop_tol = 1e-9);
// Inverse continued fraction with zero tail.
cplx schur_from_parameters(const std::vector<cplx>& params, cplx z);

// Bernstein-Szego density w.r.t. dt/2pi:
// (1 - |zeta_k|^2)/|e^{it} - zeta_k|^2 / |phi*_k(e^{it})|^2.
double bernstein_szego_density(const VerblunskySequence& seq, const PoleVector& z, int k, double t);

} // namespace mcmv
