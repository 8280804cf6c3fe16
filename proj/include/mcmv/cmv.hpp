#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "mcmv/scalar.hpp"

namespace mcmv {

// One period block a_0..a_{2n-1} and a phase theta; a_{k+2n} = e^{-2 i theta} a_k.
// Individual indices can be overridden to build non-periodic test sequences.
class VerblunskySequence {
public:
  VerblunskySequence(std::vector<cplx> block, double theta = 0.0);

  cplx a(long k) const;
  double rho(long k) const { return eta(a(k)); }
  cplx operator()(long k) const { return a(k); }

  int period() const { return static_cast<int>(block_.size()); }
  int n() const { return period() / 2; }
  double theta() const { return theta_; }
  const std::vector<cplx>& block() const { return block_; }
  bool periodic() const { return overrides_.empty(); }

  VerblunskySequence with_override(long k, cplx value) const;
  // Sequence k -> a_{k+s}.
  VerblunskySequence shifted(long s) const;

private:
  std::vector<cplx> block_;
  double theta_;
  std::map<long, cplx> overrides_;
  long shift_ = 0;
};

// Entries C_ij for absolute i in [row_offset, row_offset + rows()),
// j in [col_offset, col_offset + cols()). Entries within `margin` of a window
// edge may be affected by truncation and are not trusted.
struct BandedWindow {
  long row_offset = 0;
  long col_offset = 0;
  int bandwidth = 0;
  int margin = 0;
  Eigen::MatrixXcd entries;

  long rows() const { return entries.rows(); }
  long cols() const { return entries.cols(); }
  long row_end() const { return row_offset + rows(); }
  long col_end() const { return col_offset + cols(); }
  bool contains(long i, long j) const {
    return i >= row_offset && i < row_end() && j >= col_offset && j < col_end();
  }
  cplx at(long i, long j) const { return entries(i - row_offset, j - col_offset); }
  cplx& at(long i, long j) { return entries(i - row_offset, j - col_offset); }
  bool trusted_row(long i) const { return i >= row_offset + margin && i < row_end() - margin; }

  // Square sub-window [lo, hi) x [lo, hi); must lie inside this window.
  BandedWindow sub(long lo, long hi) const;
};

// [[conj a, rho], [rho, -a]].
Mat2 theta_block(cplx a);

// Single entry of C = L M.
cplx cmv_entry(const VerblunskySequence& seq, long i, long j);
cplx l_entry(const VerblunskySequence& seq, long i, long j);
cplx m_entry(const VerblunskySequence& seq, long i, long j);

// Window of the whole-line CMV matrix over [row_lo, row_hi) x [col_lo, col_hi).
BandedWindow cmv_window(const VerblunskySequence& seq, long row_lo, long row_hi, long col_lo,
                        long col_hi);
BandedWindow cmv_window(const VerblunskySequence& seq, long lo, long hi);
BandedWindow l_window(const VerblunskySequence& seq, long lo, long hi);
BandedWindow m_window(const VerblunskySequence& seq, long lo, long hi);

// Upper-left size x size corner of the half-line CMV matrix (a_{-1} = -1).
BandedWindow halfline_cmv(const VerblunskySequence& seq, int size);

} // namespace mcmv
