#pragma once

#include <vector>

#include "mcmv/transfer.hpp"

namespace mcmv {

// Counterclockwise arc [start, end] of angles; start in [0, 2pi), end >= start
// (end may exceed 2pi when the arc wraps through angle 0).
struct Arc {
  double start = 0.0;
  double end = 0.0;

  double length() const { return end - start; }
  double mid() const { return 0.5 * (start + end); }
  bool contains(double t, double pad = 0.0) const;
};

double wrap_angle(double t);

struct CriticalPoint {
  double t;
  double value;
};

struct BandDecomposition {
  std::vector<Arc> bands;
  // Open gaps, each traversed from lambda^- (start) to lambda^+ (end).
  std::vector<Arc> gaps;
  std::vector<double> closed_gaps;
  std::vector<CriticalPoint> critical_points;
  double edge_tolerance = 0.0;

  bool full_circle() const { return gaps.empty(); }
  int open_gaps() const { return static_cast<int>(gaps.size()); }
};

// Scans d/dt Delta(e^{it}) on `grid` points, refines the p critical points and
// the band edges between consecutive critical points.
BandDecomposition bands_from_discriminant(const MonodromyEvaluator& ev, int grid = 2048,
                                          double closed_tol = 1e-9);

// F_+(z): fixed point of M_theta with positive real part (z in the disk).
cplx caratheodory_eval(const MonodromyEvaluator& ev, cplx z);
// F_-(z) = -(the other fixed point).
cplx caratheodory_minus(const MonodromyEvaluator& ev, cplx z);

// Boundary value at e^{it} of the branch of sqrt(Delta^2 - 4) equal to u F_+ - v inside.
cplx boundary_sqrt(const MonodromyEvaluator& ev, const BandDecomposition& bd, double t);

struct UvReport {
  int samples = 0;
  double max_im_v = 0.0;
  double max_re_u = 0.0;
};
UvReport uv_boundary_check(const MonodromyEvaluator& ev, int samples);

struct DivisorPoint {
  int gap = 0;
  double x = 0.0;
  int epsilon = 1;
  bool at_edge = false;
};
std::vector<DivisorPoint> divisor_extract(const MonodromyEvaluator& ev, const BandDecomposition& bd);

// sqrt(4 - Delta^2)/|u| with respect to dt/2pi; zero off the bands.
double ac_density(const MonodromyEvaluator& ev, double t);
// sqrt|Delta^2 - 4| / |du/dt| at an epsilon = +1 divisor point; 0 for epsilon = -1.
double point_mass(const MonodromyEvaluator& ev, const DivisorPoint& p);

struct PointMass {
  double t;
  double weight;
};

struct SpectralMeasure {
  std::vector<Arc> pieces; // bands split at closed gaps
  std::vector<PointMass> masses;
  double ac_mass = 0.0;
  double total() const;
};
SpectralMeasure spectral_measure(const MonodromyEvaluator& ev, const BandDecomposition& bd,
                                 double tol = 1e-13);
// (1/2pi) int over the arc of ac_density, cosine substitution + Gauss-Legendre with doubling.
double integrate_ac(const MonodromyEvaluator& ev, const Arc& arc, double tol = 1e-13);

// (1/p) log|B| + (1/p) log|lambda_max|, lambda^2 - Delta lambda + 1 = 0.
double lyapunov(const MonodromyEvaluator& ev, cplx z);

struct QuadraticIrrationality {
  std::vector<cplx> a, b, c; // ascending coefficients
  cplx residual(cplx f, cplx z) const;
};
QuadraticIrrationality quadratic_irrationality(const MonodromyEvaluator& ev);

struct RhReport {
  int band_samples = 0;
  int gap_samples = 0;
  double max_band_residual = 0.0;
  double min_gap_margin = 0.0;
};
RhReport riemann_hilbert_check(const MonodromyEvaluator& ev, const BandDecomposition& bd,
                               int band_samples = 50, int gap_samples = 50);

} // namespace mcmv
