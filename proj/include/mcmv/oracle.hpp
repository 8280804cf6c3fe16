#pragma once

#include <Eigen/Dense>
#include <functional>
#include <utility>
#include <vector>

#include "mcmv/mcmv.hpp"

namespace mcmv {

// Absolutely continuous part density(t) dt/2pi on counterclockwise arcs plus atoms (t, weight).
struct QuadratureMeasure {
  std::vector<std::pair<double, double>> arcs;
  std::function<double(double)> density;
  std::vector<std::pair<double, double>> atoms;

  static QuadratureMeasure lebesgue();

  // Nodes e^{it} and weights for `per_arc` cosine-substituted Gauss-Legendre nodes per arc,
  // atoms appended.
  std::pair<std::vector<cplx>, std::vector<double>> nodes(int per_arc) const;
};

// int f conj(g) dnu, doubling the node count until the relative change is below tol.
cplx inner_product(const std::function<cplx(cplx)>& f, const std::function<cplx(cplx)>& g,
                   const QuadratureMeasure& m, double tol = 1e-10);

// Orthonormalization of B_0 = 1, B_k = prod_{j<=k} b_{zeta_j} (zeta = D_0 diagonal), with
// phases fixed so that the rational Szego recurrence holds.
class OrfFamily {
public:
  OrfFamily(const QuadratureMeasure& m, const PoleVector& z, int count);

  int size() const { return static_cast<int>(zeta_.size()) - 1; }
  cplx phi(int k, cplx x) const;
  cplx phi_star(int k, cplx x) const;
  // a_k = -conj(phi_{k+1}(zeta_k)/phi*_{k+1}(zeta_k)), k = 0..size()-1.
  std::vector<cplx> recovered_coefficients() const;
  const Eigen::MatrixXcd& gram() const { return gram_; }

private:
  cplx basis(int j, cplx x) const;
  cplx tail(int j, int k, cplx x) const;

  std::vector<cplx> zeta_;
  Eigen::MatrixXcd gram_;
  Eigen::MatrixXcd coef_; // phi_k = sum_j coef(k, j) B_j
};

OrfFamily gram_schmidt_orf(const QuadratureMeasure& m, const PoleVector& z, int count);

// Orthonormalization of 1, B_1^*, B_1, B_2^*, B_2, ... (B_k^* = 1/B_k on the circle).
// Row k of the returned matrix holds the coefficients of chi_k in that basis.
struct AlternatingFamily {
  std::vector<cplx> zeta;
  Eigen::MatrixXcd coef;
  cplx chi(int k, cplx x) const;
};
AlternatingFamily gram_schmidt_alternating(const QuadratureMeasure& m, const PoleVector& z, int count);

// Eigenvalues of a small unitary matrix: Hessenberg reduction, Hyman determinant
// ratio, Aberth iteration, then Rayleigh refinement against the matrix itself.
std::vector<cplx> dense_unitary_eigs(const Eigen::MatrixXcd& a);

// A restricted to K-periodic vectors: the (K 2n) x (K 2n) matrix with wraparound entries.
Eigen::MatrixXcd periodic_closure(const VerblunskySequence& seq, const PoleVector& z, int periods);

struct FloquetReport {
  std::vector<cplx> eigenvalues;
  double max_unimodular_error = 0.0;
  double max_band_violation = 0.0; // max(|Im Delta|, |Re Delta| - 2, 0)
  double max_gap_depth = 0.0;      // deepest eigenvalue angle inside an open gap
};

FloquetReport floquet_crosscheck(const VerblunskySequence& seq, const PoleVector& z, int periods,
                                 const std::function<cplx(cplx)>& discriminant,
                                 const std::vector<std::pair<double, double>>& gaps);

} // namespace mcmv
