#include "mcmv/mcmv.hpp"

#include <cmath>

#include "mcmv/errors.hpp"

namespace mcmv {

namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long floor_mod(long a, long b) { return a - b * floor_div(a, b); }

void check_index(const PoleVector& z, int j) {
  if (j < 0 || j >= z.n()) throw DomainError("pole index not in the pole vector");
}

} // namespace

PoleVector::PoleVector(std::vector<cplx> points) : pts_(std::move(points)) {
  if (pts_.empty()) throw DomainError("pole vector must be nonempty");
  if (pts_[0] != 0.0) throw DomainError("first pole must be exactly 0");
  for (const cplx& p : pts_) DiskPoint check(p);
}

std::vector<std::pair<cplx, int>> PoleVector::distinct(double tol) const {
  std::vector<std::pair<cplx, int>> out;
  for (const cplx& p : pts_) {
    bool found = false;
    for (auto& [q, m] : out)
      if (std::abs(p - q) <= tol) {
        ++m;
        found = true;
        break;
      }
    if (!found) out.emplace_back(p, 1);
  }
  return out;
}

bool PoleVector::all_distinct(double tol) const {
  return static_cast<int>(distinct(tol).size()) == n();
}

cplx d0_entry(const PoleVector& z, long i) {
  const long p = 2L * z.n();
  const long r = floor_mod(i, p);
  if (r == 0 || r == p - 1) return z[0];
  return z[static_cast<int>((r + 1) / 2)];
}

cplx dj_entry(const PoleVector& z, int j, long i) {
  check_index(z, j);
  const cplx d = d0_entry(z, i);
  return (d - z[j]) / (1.0 - z[j] * std::conj(d));
}

cplx vj_entry(const PoleVector& z, int j, long i) {
  check_index(z, j);
  const cplx w = 1.0 - std::conj(z[j]) * d0_entry(z, i);
  return std::conj(w) / std::abs(w);
}

cplx lambda_entry(int n, double theta, long i) {
  const long k = floor_div(i, 2L * n);
  const double s = (floor_mod(i, 2) == 0) ? 1.0 : -1.0;
  return std::polar(1.0, s * static_cast<double>(k) * theta);
}

BandedWindow operator_moebius_banded(const VerblunskySequence& seq, const Diagonal& d, long lo,
                                     long hi, int align_period, long align_offset, int margin) {
  if (hi <= lo) throw DomainError("empty or inverted window range");
  if (margin < align_period) throw DomainError("margin must cover at least one period");
  const long big_lo =
      align_offset + align_period * floor_div(lo - margin - align_offset, align_period);
  const long big_hi =
      align_offset + align_period * (floor_div(hi + margin - align_offset - 1, align_period) + 1);
  const long size = big_hi - big_lo;

  const BandedWindow c = cmv_window(seq, big_lo, big_hi);
  Eigen::VectorXcd dv(size);
  Eigen::VectorXd et(size);
  for (long i = 0; i < size; ++i) {
    dv(i) = d(big_lo + i);
    if (!(std::abs(dv(i)) < 1.0)) throw DomainError("diagonal entry outside the disk");
    et(i) = eta(dv(i));
  }
  Eigen::MatrixXcd lhs = c.entries * dv.conjugate().asDiagonal();
  lhs.diagonal().array() += 1.0;
  Eigen::MatrixXcd rhs = c.entries;
  rhs.diagonal() += dv;

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(lhs);
  if (!(lu.rcond() > 1e-13)) throw NumericError("singular solve in operator Moebius transform");
  Eigen::MatrixXcd x = lu.solve(rhs);
  x = et.asDiagonal() * x * et.cwiseInverse().asDiagonal();

  BandedWindow out;
  out.row_offset = out.col_offset = lo;
  out.bandwidth = align_period;
  out.margin = 0;
  out.entries = x.block(lo - big_lo, lo - big_lo, hi - lo, hi - lo);
  return out;
}

namespace {

void conjugate_by_phase(BandedWindow& w, int n, double theta) {
  if (theta == 0.0) return;
  for (long i = w.row_offset; i < w.row_end(); ++i)
    for (long j = w.col_offset; j < w.col_end(); ++j)
      w.at(i, j) *= std::conj(lambda_entry(n, theta, i)) * lambda_entry(n, theta, j);
}

void check_sizes(const VerblunskySequence& seq, const PoleVector& z) {
  if (seq.n() != z.n()) throw DomainError("period of the sequence does not match the pole vector");
}

} // namespace

BandedWindow mcmv_window(const VerblunskySequence& seq, const PoleVector& z, long lo, long hi) {
  check_sizes(seq, z);
  const int p = 2 * z.n();
  BandedWindow w = operator_moebius_banded(
      seq, [&](long i) { return d0_entry(z, i); }, lo, hi, p, 0, p);
  conjugate_by_phase(w, z.n(), seq.theta());
  return w;
}

BandedWindow blaschke_of_mcmv(const VerblunskySequence& seq, const PoleVector& z, int j, long lo,
                              long hi) {
  check_sizes(seq, z);
  check_index(z, j);
  const int p = 2 * z.n();
  BandedWindow w = operator_moebius_banded(
      seq, [&](long i) { return dj_entry(z, j, i); }, lo, hi, p, 2L * j, p);
  for (long r = w.row_offset; r < w.row_end(); ++r)
    for (long c = w.col_offset; c < w.col_end(); ++c)
      w.at(r, c) *= vj_entry(z, j, r) * vj_entry(z, j, c);
  conjugate_by_phase(w, z.n(), seq.theta());
  return w;
}

BandedWindow blaschke_direct(const VerblunskySequence& seq, const PoleVector& z, cplx w, long lo,
                             long hi, int margin) {
  DiskPoint check(w);
  const BandedWindow a = mcmv_window(seq, z, lo - margin, hi + margin);
  const long size = a.rows();
  Eigen::MatrixXcd lhs = -std::conj(w) * a.entries;
  lhs.diagonal().array() += 1.0;
  Eigen::MatrixXcd rhs = a.entries;
  rhs.diagonal().array() -= w;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(lhs);
  Eigen::MatrixXcd x = lu.solve(rhs);
  BandedWindow out;
  out.row_offset = out.col_offset = lo;
  out.bandwidth = static_cast<int>(size);
  out.margin = 0;
  out.entries = x.block(margin, margin, hi - lo, hi - lo);
  return out;
}

StructureReport structure_report(const BandedWindow& a, int n, long origin, double tol) {
  StructureReport rep;
  const long bs = 2L * n;
  rep.block_size = static_cast<int>(bs);
  rep.origin = origin;
  for (long i = a.row_offset; i < a.row_end(); ++i) {
    const long bi = floor_div(i - origin, bs);
    for (long j = a.col_offset; j < a.col_end(); ++j) {
      const long bj = floor_div(j - origin, bs);
      const long rj = j - origin - bj * bs;
      const bool allowed =
          (bi == bj) || (bj == bi + 1 && rj == 0) || (bj == bi - 1 && rj == bs - 1);
      const double m = std::abs(a.at(i, j));
      if (!allowed && m > tol) rep.violations.push_back({i, j, m});
    }
  }
  const long lo = std::max(a.row_offset, a.col_offset);
  const long hi = std::min(a.row_end(), a.col_end());
  const long b0 = floor_div(lo - origin - 1, bs) + 1;
  rep.first_block = b0 + 1;
  for (long b = b0 + 1;; ++b) {
    const long start = origin + b * bs;
    if (start + 2 * bs > hi) break;
    Eigen::VectorXcd u(bs), v(bs);
    for (long r = 0; r < bs; ++r) {
      u(r) = a.at(start + r, start + bs);
      v(r) = a.at(start + r, start - 1);
    }
    rep.upper_vectors.push_back(u);
    rep.lower_vectors.push_back(v);
    rep.corner_entries.push_back(a.at(start, start + bs));
  }
  return rep;
}

cplx corner_entry_moebius(const VerblunskySequence& seq, const PoleVector& z) {
  if (!z.all_distinct()) throw DomainError("corner formula needs distinct poles");
  const int n = z.n();
  auto apply = [](const Mat2& m, cplx& x, cplx& y) {
    const cplx nx = m.m11 * x + m.m12 * y;
    const cplx ny = m.m21 * x + m.m22 * y;
    x = nx;
    y = ny;
  };
  cplx x = 1.0, y = 0.0;
  apply(u_matrix(-std::conj(seq.a(0))), x, y);
  for (int j = 1; j < n; ++j) {
    const cplx zc = std::conj(z[j]);
    apply(Mat2::diag(-1.0 / zc, 1.0), x, y);
    apply(u_matrix(-std::conj(seq.a(2 * j - 1))), x, y);
    apply(Mat2::diag(1.0, -zc), x, y);
    apply(u_matrix(-std::conj(seq.a(2 * j))), x, y);
  }
  return seq.rho(2L * n - 1) / x;
}

cplx corner_entry(const VerblunskySequence& seq, const PoleVector& z, int k) {
  check_sizes(seq, z);
  check_index(z, k);
  if (!z.all_distinct()) throw DomainError("corner formula needs distinct poles");
  const int n = z.n();
  const Mat2 p = Mat2::diag(1.0, 0.0);
  Mat2 m = p * u_matrix(seq.a(2L * k));
  for (int s = 1; s < n; ++s) {
    const cplx beta = -1.0 / std::conj(dj_entry(z, k, 2L * k + 2L * s - 1));
    m = m * Mat2::diag(beta, 1.0) * u_matrix(seq.a(2L * k + 2L * s - 1)) *
        Mat2::diag(1.0, 1.0 / beta) * u_matrix(seq.a(2L * k + 2L * s));
  }
  m = m * p * u_matrix(seq.a(2L * k + 2L * n - 1));
  return std::polar(1.0, seq.theta()) / m.trace();
}

} // namespace mcmv
