#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "mcmv/cmv.hpp"

namespace mcmv {

// z_0 = 0, z_1, ..., z_{n-1} in the disk.
class PoleVector {
public:
  PoleVector(std::vector<cplx> points);
  static PoleVector origin() { return PoleVector({cplx(0.0)}); }

  int n() const { return static_cast<int>(pts_.size()); }
  cplx operator[](int j) const { return pts_[j]; }
  const std::vector<cplx>& points() const { return pts_; }

  // Distinct values with multiplicities, in order of first appearance.
  std::vector<std::pair<cplx, int>> distinct(double tol = 1e-12) const;
  bool all_distinct(double tol = 1e-12) const;

private:
  std::vector<cplx> pts_;
};

// Entry i of the 2n-periodic diagonal D_0 = diag{..., z_{n-1}, z_0 | z_0, z_1, z_1, ...}.
cplx d0_entry(const PoleVector& z, long i);
// Entry i of D_j = (1 - z_j D_0^*)^{-1} (D_0 - z_j).
cplx dj_entry(const PoleVector& z, int j, long i);
// Entry i of the unimodular diagonal V_j.
cplx vj_entry(const PoleVector& z, int j, long i);
// Entry i of the phase diagonal Lambda(theta).
cplx lambda_entry(int n, double theta, long i);

using Diagonal = std::function<cplx(long)>;

// eta_D (1 + C D^*)^{-1} (D + C) eta_D^{-1} restricted to [lo, hi)^2. The CMV window
// is taken over [lo - margin, hi + margin) with margin >= period, rounded
// outward to multiples of `align_period` shifted by `align_offset`.
BandedWindow operator_moebius_banded(const VerblunskySequence& seq, const Diagonal& d, long lo,
                                     long hi, int align_period, long align_offset, int margin);

// A = Lambda(theta)^* b_{-D_0}(C) Lambda(theta) on [lo, hi)^2.
BandedWindow mcmv_window(const VerblunskySequence& seq, const PoleVector& z, long lo, long hi);

// b_{z_j}(A) = Lambda^* V_j b_{-D_j}(C) V_j Lambda on [lo, hi)^2.
BandedWindow blaschke_of_mcmv(const VerblunskySequence& seq, const PoleVector& z, int j, long lo,
                              long hi);

// (1 - conj(w) A)^{-1} (A - w) by a dense solve on an enlarged window.
BandedWindow blaschke_direct(const VerblunskySequence& seq, const PoleVector& z, cplx w, long lo,
                             long hi, int margin);

struct StructureViolation {
  long row, col;
  double magnitude;
};

struct StructureReport {
  int block_size = 0;
  long origin = 0;
  long first_block = 0;
  std::vector<StructureViolation> violations;
  // u^i: column 0 of block (i+1) seen from block row i; v^i: last column of block (i-1).
  std::vector<Eigen::VectorXcd> upper_vectors;
  std::vector<Eigen::VectorXcd> lower_vectors;
  // Outermost coupling entries A_{origin + i 2n, origin + (i+1) 2n} per block row.
  std::vector<cplx> corner_entries;

  bool ok() const { return violations.empty(); }
};

// Checks the block CMV pattern with blocks of size 2n starting at `origin` (mod 2n).
StructureReport structure_report(const BandedWindow& a, int n, long origin = 0,
                                 double tol = 1e-12);

// Closed-form value of the (0, 2n) entry of b_{-D_0}(C) from the product formula.
cplx corner_entry_moebius(const VerblunskySequence& seq, const PoleVector& z);
// Closed-form b_{z_k}(A)_{2k, 2(n+k)} from the inverse-trace product formula
// (k = 0 gives A_{0, 2n}).
cplx corner_entry(const VerblunskySequence& seq, const PoleVector& z, int k);

} // namespace mcmv
