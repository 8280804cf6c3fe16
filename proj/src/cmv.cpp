#include "mcmv/cmv.hpp"

#include <cmath>
#include <functional>

#include "mcmv/errors.hpp"

namespace mcmv {

namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long floor_mod(long a, long b) { return a - b * floor_div(a, b); }

using Coeff = std::function<cplx(long)>;

// Entry (i, j) of the block diagonal sum of Theta_k over k of the given parity,
// block k sitting at rows/columns {k, k+1}.
cplx theta_sum_entry(const Coeff& a, long parity, long i, long j) {
  const long k = (floor_mod(i, 2) == parity) ? i : i - 1;
  if (j != k && j != k + 1) return 0.0;
  const Mat2 t = theta_block(a(k));
  if (i == k) return j == k ? t.m11 : t.m12;
  return j == k ? t.m21 : t.m22;
}

cplx product_entry(const Coeff& a, long i, long j) {
  cplx s = 0.0;
  for (long k = i - 1; k <= i + 1; ++k) {
    const cplx l = theta_sum_entry(a, 0, i, k);
    if (l != 0.0) s += l * theta_sum_entry(a, 1, k, j);
  }
  return s;
}

BandedWindow fill(long row_lo, long row_hi, long col_lo, long col_hi, int bandwidth,
                  const std::function<cplx(long, long)>& f) {
  if (row_hi < row_lo || col_hi < col_lo) throw DomainError("inverted window range");
  BandedWindow w;
  w.row_offset = row_lo;
  w.col_offset = col_lo;
  w.bandwidth = bandwidth;
  w.margin = bandwidth;
  w.entries = Eigen::MatrixXcd::Zero(row_hi - row_lo, col_hi - col_lo);
  for (long i = row_lo; i < row_hi; ++i)
    for (long j = std::max(col_lo, i - bandwidth); j < std::min(col_hi, i + bandwidth + 1); ++j)
      w.at(i, j) = f(i, j);
  return w;
}

} // namespace

VerblunskySequence::VerblunskySequence(std::vector<cplx> block, double theta)
    : block_(std::move(block)), theta_(theta) {
  if (block_.empty() || block_.size() % 2 != 0)
    throw DomainError("period block must have even positive length");
  for (const cplx& v : block_) DiskPoint check(v);
  if (!std::isfinite(theta_)) throw DomainError("phase must be finite");
}

cplx VerblunskySequence::a(long k) const {
  const long m = k + shift_;
  if (!overrides_.empty()) {
    auto it = overrides_.find(m);
    if (it != overrides_.end()) return it->second;
  }
  const long p = period();
  const long q = floor_div(m, p);
  const long r = m - q * p;
  if (q == 0) return block_[r];
  return std::polar(1.0, -2.0 * theta_ * static_cast<double>(q)) * block_[r];
}

VerblunskySequence VerblunskySequence::with_override(long k, cplx value) const {
  DiskPoint check(value);
  VerblunskySequence s = *this;
  s.overrides_[k + shift_] = value;
  return s;
}

VerblunskySequence VerblunskySequence::shifted(long s) const {
  VerblunskySequence r = *this;
  r.shift_ += s;
  return r;
}

BandedWindow BandedWindow::sub(long lo, long hi) const {
  if (!contains(lo, lo) || !contains(hi - 1, hi - 1)) throw DomainError("sub-window out of range");
  BandedWindow w;
  w.row_offset = w.col_offset = lo;
  w.bandwidth = bandwidth;
  w.margin = 0;
  w.entries = entries.block(lo - row_offset, lo - col_offset, hi - lo, hi - lo);
  return w;
}

Mat2 theta_block(cplx a) {
  const double r = eta(a);
  return {std::conj(a), r, r, -a};
}

cplx l_entry(const VerblunskySequence& seq, long i, long j) {
  return theta_sum_entry([&](long k) { return seq.a(k); }, 0, i, j);
}

cplx m_entry(const VerblunskySequence& seq, long i, long j) {
  return theta_sum_entry([&](long k) { return seq.a(k); }, 1, i, j);
}

cplx cmv_entry(const VerblunskySequence& seq, long i, long j) {
  return product_entry([&](long k) { return seq.a(k); }, i, j);
}

BandedWindow cmv_window(const VerblunskySequence& seq, long row_lo, long row_hi, long col_lo,
                        long col_hi) {
  return fill(row_lo, row_hi, col_lo, col_hi, 2,
              [&](long i, long j) { return cmv_entry(seq, i, j); });
}

BandedWindow cmv_window(const VerblunskySequence& seq, long lo, long hi) {
  return cmv_window(seq, lo, hi, lo, hi);
}

BandedWindow l_window(const VerblunskySequence& seq, long lo, long hi) {
  return fill(lo, hi, lo, hi, 1, [&](long i, long j) { return l_entry(seq, i, j); });
}

BandedWindow m_window(const VerblunskySequence& seq, long lo, long hi) {
  return fill(lo, hi, lo, hi, 1, [&](long i, long j) { return m_entry(seq, i, j); });
}

BandedWindow halfline_cmv(const VerblunskySequence& seq, int size) {
  if (size <= 0 || size % 2 != 0) throw DomainError("half-line truncation size must be even");
  const Coeff a = [&](long k) { return k == -1 ? cplx(-1.0) : seq.a(k); };
  BandedWindow w = fill(0, size, 0, size, 2, [&](long i, long j) { return product_entry(a, i, j); });
  w.margin = 0;
  return w;
}

} // namespace mcmv
