#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "mcmv/transfer.hpp"

namespace mcmv {

struct SuitableTerm {
  cplx pole;
  std::vector<cplx> coeffs; // c_{i} multiplying b_pole^{i}, i = 1..m
};

// c + sum_j sum_i (c_ij b_{z_j}^i + conj(c_ij) b_{z_j}^{-i}).
struct SuitableRational {
  double c = 0.0;
  std::vector<SuitableTerm> terms;

  cplx eval(cplx z) const;
  int max_power() const;
  double max_coefficient() const;
};

// Coefficients of f from circle means of f(b_{z_j}^{-1}(w)) w^i around each pole;
// the constant is fixed at the reference point e^{0.123 i}. Throws NumericError if
// the reconstruction misses f by more than check_tol on 200 circle samples.
SuitableRational partial_fractions(const std::function<cplx(cplx)>& f,
                                   const std::vector<std::pair<cplx, int>>& poles,
                                   double check_tol = 1e-10);
SuitableRational partial_fractions(const MonodromyEvaluator& ev, double check_tol = 1e-10);

// r(A) on [lo, hi)^2 with b^{-1} = b^*. margin < 0 picks a safe default.
BandedWindow rational_of_operator(const SuitableRational& r, const VerblunskySequence& seq,
                                  const PoleVector& z, long lo, long hi, int margin = -1);

struct DiagonalDeviation {
  int offset;
  double max_abs;
};

struct MagicReport {
  double max_deviation = 0.0;
  std::vector<DiagonalDeviation> per_diagonal;
  double tol = 0.0;
  bool pass = false;
  SuitableRational discriminant;
};

// max |Delta_A(A) - (S^{2n} + S^{-2n})| over [lo, hi)^2, Delta_A from the base period.
MagicReport magic_check(const VerblunskySequence& seq, const PoleVector& z, long lo, long hi,
                        double tol = 1e-9);

struct VanishingReport {
  double operator_norm = 0.0;     // max |r(A)_ij| on the window
  SuitableRational recovered;      // coefficients read back from r(A)
  double coefficient_error = 0.0;  // against the input coefficients
  double max_recovered = 0.0;
  int outermost_offset = 0;        // largest |j - i| with a nonzero entry
  cplx outermost_entry = 0.0;      // r(A)_{i, i + offset} at the first such row
  long outermost_row = 0;
  bool pass = false;
};

// Reads the coefficients of r back from the window r(A) by least squares over the
// operators I, b_{z_j}(A)^i, b_{z_j}(A)^{*i}; small r(A) forces small coefficients.
VanishingReport suitable_vanishing_check(const SuitableRational& r, const VerblunskySequence& seq,
                                         const PoleVector& z, long lo, long hi, double tol = 1e-8);

} // namespace mcmv
