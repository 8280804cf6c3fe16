#include "mcmv/magic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mcmv/errors.hpp"

namespace mcmv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int pole_index(const PoleVector& z, cplx pole) {
  for (int j = 0; j < z.n(); ++j)
    if (std::abs(z[j] - pole) <= 1e-12) return j;
  throw DomainError("pole not in the pole vector");
}

// b_{z_j}(A)^i, i = 1..m, on [lo, hi)^2.
std::vector<Eigen::MatrixXcd> blaschke_powers(const VerblunskySequence& seq, const PoleVector& z,
                                              cplx pole, int m, long lo, long hi) {
  const BandedWindow b = blaschke_of_mcmv(seq, z, pole_index(z, pole), lo, hi);
  std::vector<Eigen::MatrixXcd> out{b.entries};
  for (int i = 1; i < m; ++i) out.push_back(out.back() * b.entries);
  return out;
}

} // namespace

cplx SuitableRational::eval(cplx z) const {
  cplx s = c;
  for (const SuitableTerm& t : terms) {
    const cplx b = blaschke(t.pole, z);
    if (b == 0.0) throw PoleError("rational function evaluated at a pole");
    cplx bp = 1.0;
    for (const cplx& ci : t.coeffs) {
      bp *= b;
      s += ci * bp + std::conj(ci) / bp;
    }
  }
  return s;
}

int SuitableRational::max_power() const {
  int m = 0;
  for (const SuitableTerm& t : terms) m = std::max(m, static_cast<int>(t.coeffs.size()));
  return m;
}

double SuitableRational::max_coefficient() const {
  double m = std::abs(c);
  for (const SuitableTerm& t : terms)
    for (const cplx& ci : t.coeffs) m = std::max(m, std::abs(ci));
  return m;
}

SuitableRational partial_fractions(const std::function<cplx(cplx)>& f,
                                   const std::vector<std::pair<cplx, int>>& poles, double check_tol) {
  constexpr int kNodes = 128;
  SuitableRational r;
  for (const auto& [zj, mult] : poles) {
    double rad = 1.0;
    for (const auto& [zk, mk] : poles)
      if (zk != zj) rad = std::min(rad, std::abs(blaschke(zj, zk)));
    rad *= 0.5;
    std::vector<cplx> means(mult, 0.0);
    for (int k = 0; k < kNodes; ++k) {
      const cplx w = std::polar(rad, kTwoPi * k / kNodes);
      const cplx g = f((w + zj) / (1.0 + std::conj(zj) * w));
      cplx wp = 1.0;
      for (int i = 0; i < mult; ++i) {
        wp *= w;
        means[i] += g * wp;
      }
    }
    SuitableTerm t{zj, {}};
    for (const cplx& m : means) t.coeffs.push_back(std::conj(m / static_cast<double>(kNodes)));
    r.terms.push_back(t);
  }
  const cplx ref = std::polar(1.0, 0.123);
  r.c = std::real(f(ref) - r.eval(ref));

  double err = 0.0, scale = 1.0;
  for (int k = 0; k < 200; ++k) {
    const cplx x = std::polar(1.0, kTwoPi * (k + 0.5) / 200);
    const cplx fx = f(x);
    scale = std::max(scale, std::abs(fx));
    err = std::max(err, std::abs(fx - r.eval(x)));
  }
  if (err > check_tol * scale)
    throw NumericError("partial fraction reconstruction failed (error " + std::to_string(err) + ")");
  return r;
}

SuitableRational partial_fractions(const MonodromyEvaluator& ev, double check_tol) {
  return partial_fractions([&](cplx x) { return ev.discriminant(x); }, ev.poles().distinct(), check_tol);
}

BandedWindow rational_of_operator(const SuitableRational& r, const VerblunskySequence& seq,
                                  const PoleVector& z, long lo, long hi, int margin) {
  if (hi <= lo) throw DomainError("empty or inverted window range");
  const int p = 2 * z.n();
  const int m = r.max_power();
  const int needed = p * (m + 1);
  if (margin < 0) margin = (p + 2) * (m + 1) + p;
  if (margin < needed) throw DomainError("margin too small for the requested powers");
  const long big_lo = lo - margin, big_hi = hi + margin;
  const long size = big_hi - big_lo;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(size, size) * r.c;
  for (const SuitableTerm& t : r.terms) {
    const auto powers = blaschke_powers(seq, z, t.pole, static_cast<int>(t.coeffs.size()), big_lo, big_hi);
    for (std::size_t i = 0; i < t.coeffs.size(); ++i)
      acc += t.coeffs[i] * powers[i] + std::conj(t.coeffs[i]) * powers[i].adjoint();
  }
  BandedWindow out;
  out.row_offset = out.col_offset = lo;
  out.bandwidth = p * std::max(m, 1);
  out.entries = acc.block(margin, margin, hi - lo, hi - lo);
  return out;
}

MagicReport magic_check(const VerblunskySequence& seq, const PoleVector& z, long lo, long hi, double tol) {
  const MonodromyEvaluator ev(seq, z);
  MagicReport rep;
  rep.tol = tol;
  rep.discriminant = partial_fractions(ev);
  BandedWindow w = rational_of_operator(rep.discriminant, seq, z, lo, hi);
  const long p = 2L * z.n();
  for (long i = lo; i < hi; ++i)
    for (long j : {i - p, i + p})
      if (w.contains(i, j)) w.at(i, j) -= 1.0;

  const int reach = w.bandwidth + 1;
  for (int d = -reach; d <= reach; ++d) {
    double m = 0.0;
    for (long i = lo; i < hi; ++i)
      if (w.contains(i, i + d)) m = std::max(m, std::abs(w.at(i, i + d)));
    rep.per_diagonal.push_back({d, m});
  }
  rep.max_deviation = w.entries.cwiseAbs().maxCoeff();
  rep.pass = rep.max_deviation < tol;
  return rep;
}

VanishingReport suitable_vanishing_check(const SuitableRational& r, const VerblunskySequence& seq,
                                         const PoleVector& z, long lo, long hi, double tol) {
  VanishingReport rep;
  const BandedWindow rw = rational_of_operator(r, seq, z, lo, hi);
  rep.operator_norm = rw.entries.cwiseAbs().maxCoeff();
  const long n = hi - lo;

  for (int d = static_cast<int>(n) - 1; d > 0 && rep.outermost_offset == 0; --d)
    for (long i = lo; i + d < hi; ++i)
      if (std::abs(rw.at(i, i + d)) > 1e-12 * std::max(1.0, rep.operator_norm)) {
        rep.outermost_offset = d;
        rep.outermost_entry = rw.at(i, i + d);
        rep.outermost_row = i;
        break;
      }

  // Basis operators on a window large enough for the highest power.
  const int p = 2 * z.n();
  int m = 1;
  for (const auto& [pole, mult] : z.distinct()) m = std::max(m, mult);
  m = std::max(m, r.max_power());
  const int margin = (p + 2) * (m + 1) + p;
  std::vector<Eigen::MatrixXcd> basis{Eigen::MatrixXcd::Identity(n, n)};
  std::vector<std::pair<cplx, int>> layout;
  for (const auto& [pole, mult] : z.distinct()) {
    int mj = mult;
    for (const SuitableTerm& t : r.terms)
      if (std::abs(t.pole - pole) <= 1e-12) mj = std::max(mj, static_cast<int>(t.coeffs.size()));
    const auto powers = blaschke_powers(seq, z, pole, mj, lo - margin, hi + margin);
    for (int i = 0; i < mj; ++i) {
      basis.push_back(powers[i].block(margin, margin, n, n));
      basis.push_back(powers[i].adjoint().block(margin, margin, n, n));
    }
    layout.emplace_back(pole, mj);
  }
  Eigen::MatrixXcd design(n * n, static_cast<long>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k)
    design.col(static_cast<long>(k)) = Eigen::Map<const Eigen::VectorXcd>(basis[k].data(), n * n);
  const Eigen::VectorXcd rhs = Eigen::Map<const Eigen::VectorXcd>(rw.entries.data(), n * n);
  const Eigen::VectorXcd coef = design.colPivHouseholderQr().solve(rhs);

  rep.recovered.c = std::real(coef(0));
  rep.coefficient_error = std::abs(coef(0) - r.c);
  rep.max_recovered = std::abs(coef(0));
  long k = 1;
  for (const auto& [pole, mj] : layout) {
    SuitableTerm t{pole, {}};
    const SuitableTerm* given = nullptr;
    for (const SuitableTerm& g : r.terms)
      if (std::abs(g.pole - pole) <= 1e-12) given = &g;
    for (int i = 0; i < mj; ++i, k += 2) {
      const cplx want = (given && i < static_cast<int>(given->coeffs.size())) ? given->coeffs[i] : 0.0;
      t.coeffs.push_back(coef(k));
      rep.coefficient_error = std::max({rep.coefficient_error, std::abs(coef(k) - want),
                                        std::abs(coef(k + 1) - std::conj(want))});
      rep.max_recovered = std::max({rep.max_recovered, std::abs(coef(k)), std::abs(coef(k + 1))});
    }
    rep.recovered.terms.push_back(t);
  }
  rep.pass = rep.coefficient_error <= tol * std::max(1.0, r.max_coefficient());
  return rep;
}

} // namespace mcmv
