#pragma once

#include <utility>
#include <vector>

#include "mcmv/mcmv.hpp"

namespace mcmv {

// E_R = [0, inf) minus the open gaps (a_j, b_j), 0 < a_1 < b_1 < a_2 < ...
class RealSlitSet {
public:
  explicit RealSlitSet(std::vector<std::pair<double, double>> gaps = {});

  int genus() const { return static_cast<int>(gaps_.size()); }
  const std::vector<std::pair<double, double>>& gaps() const { return gaps_; }
  bool in_set(double x) const;

private:
  std::vector<std::pair<double, double>> gaps_;
};

// H(z) = (1/sqrt(-z)) prod sqrt((z - a_j)/(z - b_j)), Nevanlinna branch.
cplx h_eval(const RealSlitSet& e, cplx z);
// Boundary value H(x + i0).
cplx h_boundary(const RealSlitSet& e, double x);

// w_{z0}(z) = ((z - z0)/(z - conj z0)) (H(z) - H(conj z0))/(H(z) + H(z0)).
cplx ahlfors_eval(const RealSlitSet& e, cplx z0, cplx z);
cplx ahlfors_boundary(const RealSlitSet& e, cplx z0, double x);

// The g zeros of w_{z0} other than z0 (lower half-plane when Im z0 > 0).
std::vector<cplx> ahlfors_zeros(const RealSlitSet& e, cplx z0);

// w_{z0} w_{conj z0} + 1/(w_{z0} w_{conj z0}).
cplx delta_real_eval(const RealSlitSet& e, cplx z0, cplx z);
double delta_real_boundary(const RealSlitSet& e, cplx z0, double x);

struct RealCriticalPoint {
  double x;
  double value;
  bool in_gap;
};

// One critical point per gap (including the negative half-line) and one per band
// (including [b_g, inf)), ordered by location.
std::vector<RealCriticalPoint> critical_points(const RealSlitSet& e, cplx z0);

// g + 1 disjoint closed arcs [start, end] on the circle, counterclockwise and sorted by start.
// A single arc of length 2 pi is the whole circle.
class CircleArcSet {
public:
  explicit CircleArcSet(std::vector<std::pair<double, double>> arcs);
  static CircleArcSet full_circle();

  int genus() const { return static_cast<int>(arcs_.size()) - 1; }
  bool is_full_circle() const { return full_; }
  const std::vector<std::pair<double, double>>& arcs() const { return arcs_; }

private:
  std::vector<std::pair<double, double>> arcs_;
  bool full_ = false;
};

// m(z) = kappa (z - lambda^+)/(z - lambda^-): disk onto the upper half-plane, the
// first arc start to 0 and the last arc end to infinity.
class CayleyMap {
public:
  explicit CayleyMap(const CircleArcSet& set);

  cplx operator()(cplx z) const;
  cplx inverse(cplx s) const;
  // Images of the arcs minus the first and last endpoint.
  const RealSlitSet& real_set() const { return real_; }
  cplx z0() const { return (*this)(0.0); }

private:
  cplx lp_, lm_, kappa_;
  RealSlitSet real_;
};

// Circle-side Ahlfors function at z0 transported through the Cayley map.
cplx circle_ahlfors_eval(const CircleArcSet& set, cplx z0, cplx z);

// Delta_E(z) = w_0 w_inf + 1/(w_0 w_inf).
cplx generalized_discriminant(const CircleArcSet& set, cplx z);

// {0, z_1, ..., z_g}: poles of Delta_E in the disk, 0 first, then increasing argument.
PoleVector pole_vector_of_set(const CircleArcSet& set, double collide_tol = 1e-8);

} // namespace mcmv
