#include "mcmv/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mcmv/errors.hpp"
#include "mcmv/numerics.hpp"

namespace mcmv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::MatrixXcd cholesky_inverse(const Eigen::MatrixXcd& g) {
  Eigen::LLT<Eigen::MatrixXcd> llt(g);
  if (llt.info() != Eigen::Success) throw NumericError("Gram matrix is not positive definite");
  const Eigen::MatrixXcd l = llt.matrixL();
  for (long i = 0; i < l.rows(); ++i)
    if (std::real(l(i, i)) < 1e-10) throw NumericError("rank-deficient Gram matrix");
  return l.triangularView<Eigen::Lower>().solve(Eigen::MatrixXcd::Identity(g.rows(), g.cols()));
}

// Gram matrix of `funcs` under m, doubling nodes until entries settle.
Eigen::MatrixXcd gram_matrix(const QuadratureMeasure& m, int count,
                             const std::function<cplx(int, cplx)>& funcs) {
  auto build = [&](int per_arc) {
    const auto [x, w] = m.nodes(per_arc);
    Eigen::MatrixXcd v(count, static_cast<long>(x.size()));
    for (long q = 0; q < v.cols(); ++q)
      for (int k = 0; k < count; ++k) v(k, q) = funcs(k, x[q]);
    Eigen::MatrixXcd vw = v;
    for (long q = 0; q < v.cols(); ++q) vw.col(q) *= w[q];
    return Eigen::MatrixXcd(vw * v.adjoint());
  };
  Eigen::MatrixXcd prev = build(64);
  for (int per_arc = 128; per_arc <= 8192; per_arc *= 2) {
    Eigen::MatrixXcd cur = build(per_arc);
    if ((cur - prev).cwiseAbs().maxCoeff() < 1e-13) return cur;
    prev = std::move(cur);
  }
  throw NumericError("Gram matrix quadrature did not converge");
}

} // namespace

QuadratureMeasure QuadratureMeasure::lebesgue() {
  return {{{0.0, kTwoPi}}, [](double) { return 1.0; }, {}};
}

std::pair<std::vector<cplx>, std::vector<double>> QuadratureMeasure::nodes(int per_arc) const {
  const auto [x, w] = gauss_legendre(per_arc);
  std::vector<cplx> pts;
  std::vector<double> wts;
  for (const auto& [a, b] : arcs) {
    const double len = b - a;
    for (int i = 0; i < per_arc; ++i) {
      const double phi = 0.5 * std::numbers::pi * (x[i] + 1.0);
      const double t = a + 0.5 * len * (1.0 - std::cos(phi));
      pts.push_back(std::polar(1.0, t));
      wts.push_back(w[i] * 0.25 * std::numbers::pi * len * std::sin(phi) * density(t) / kTwoPi);
    }
  }
  for (const auto& [t, wt] : atoms) {
    pts.push_back(std::polar(1.0, t));
    wts.push_back(wt);
  }
  return {pts, wts};
}

cplx inner_product(const std::function<cplx(cplx)>& f, const std::function<cplx(cplx)>& g,
                   const QuadratureMeasure& m, double tol) {
  auto rule = [&](int per_arc) {
    const auto [x, w] = m.nodes(per_arc);
    cplx s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * f(x[i]) * std::conj(g(x[i]));
    return s;
  };
  cplx prev = rule(32);
  for (int n = 64; n <= 8192; n *= 2) {
    const cplx cur = rule(n);
    if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  throw NumericError("inner product quadrature did not converge");
}

OrfFamily::OrfFamily(const QuadratureMeasure& m, const PoleVector& z, int count) {
  if (count < 1) throw DomainError("need at least one function");
  for (int k = 0; k <= count; ++k) zeta_.push_back(d0_entry(z, k));
  gram_ = gram_matrix(m, count + 1, [this](int k, cplx x) { return basis(k, x); });
  coef_ = cholesky_inverse(gram_);

  // phi -> c phi turns phi* into conj(c) phi*; fix c so that
  // arg phi*_{k+1}(zeta_k) = arg phi*_k(zeta_k) - arg(1 - conj(zeta_{k+1}) zeta_k).
  for (int k = 0; k < count; ++k) {
    const cplx zk = zeta_[k];
    const double target = std::arg(phi_star(k, zk)) - std::arg(1.0 - std::conj(zeta_[k + 1]) * zk);
    const double raw = std::arg(phi_star(k + 1, zk));
    coef_.row(k + 1) *= std::polar(1.0, -(target - raw));
  }
}

cplx OrfFamily::basis(int j, cplx x) const {
  cplx r = 1.0;
  for (int i = 1; i <= j; ++i) r *= blaschke(zeta_[i], x);
  return r;
}

cplx OrfFamily::tail(int j, int k, cplx x) const {
  cplx r = 1.0;
  for (int i = j + 1; i <= k; ++i) r *= blaschke(zeta_[i], x);
  return r;
}

cplx OrfFamily::phi(int k, cplx x) const {
  cplx s = 0.0;
  for (int j = 0; j <= k; ++j) s += coef_(k, j) * basis(j, x);
  return s;
}

cplx OrfFamily::phi_star(int k, cplx x) const {
  cplx s = 0.0;
  for (int j = 0; j <= k; ++j) s += std::conj(coef_(k, j)) * tail(j, k, x);
  return s;
}

std::vector<cplx> OrfFamily::recovered_coefficients() const {
  std::vector<cplx> out;
  for (int k = 0; k < size(); ++k) {
    const cplx zk = zeta_[k];
    out.push_back(-std::conj(phi(k + 1, zk) / phi_star(k + 1, zk)));
  }
  return out;
}

OrfFamily gram_schmidt_orf(const QuadratureMeasure& m, const PoleVector& z, int count) {
  return OrfFamily(m, z, count);
}

namespace {

cplx alternating_basis(const std::vector<cplx>& zeta, int j, cplx x) {
  if (j == 0) return 1.0;
  const int k = (j + 1) / 2;
  cplx b = 1.0;
  for (int i = 1; i <= k; ++i) b *= blaschke(zeta[i], x);
  return (j % 2 == 1) ? 1.0 / b : b;
}

} // namespace

cplx AlternatingFamily::chi(int k, cplx x) const {
  cplx s = 0.0;
  for (int j = 0; j <= k; ++j) s += coef(k, j) * alternating_basis(zeta, j, x);
  return s;
}

AlternatingFamily gram_schmidt_alternating(const QuadratureMeasure& m, const PoleVector& z, int count) {
  if (count < 1) throw DomainError("need at least one function");
  AlternatingFamily fam;
  for (int k = 0; k <= (count + 1) / 2; ++k) fam.zeta.push_back(d0_entry(z, k));
  const Eigen::MatrixXcd g =
      gram_matrix(m, count, [&](int j, cplx x) { return alternating_basis(fam.zeta, j, x); });
  fam.coef = cholesky_inverse(g);
  return fam;
}

namespace {

// Newton ratio det(H - lambda)/det(H - lambda)' for an unreduced Hessenberg block.
cplx hyman_ratio(const Eigen::MatrixXcd& h, cplx lambda) {
  const long d = h.rows();
  std::vector<cplx> x(d, 0.0), dx(d, 0.0);
  x[d - 1] = 1.0;
  auto entry = [&](long i, long j) { return i == j ? h(i, j) - lambda : h(i, j); };
  for (long i = d - 1; i >= 1; --i) {
    cplx s = 0.0, ds = -x[i];
    for (long j = i; j < d; ++j) {
      s += entry(i, j) * x[j];
      ds += entry(i, j) * dx[j];
    }
    x[i - 1] = -s / h(i, i - 1);
    dx[i - 1] = -ds / h(i, i - 1);
    if (std::abs(x[i - 1]) > 1e100 || std::abs(dx[i - 1]) > 1e100)
      for (long j = 0; j < d; ++j) {
        x[j] *= 1e-100;
        dx[j] *= 1e-100;
      }
  }
  cplx a = 0.0, da = -x[0];
  for (long j = 0; j < d; ++j) {
    a += entry(0, j) * x[j];
    da += entry(0, j) * dx[j];
  }
  return a / da;
}

cplx rayleigh_refine(const Eigen::MatrixXcd& a, cplx lambda) {
  const long n = a.rows();
  Eigen::VectorXcd y(n);
  for (long i = 0; i < n; ++i) y(i) = cplx(1.0, 0.37 * static_cast<double>(i + 1));
  y.normalize();
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a - lambda * Eigen::MatrixXcd::Identity(n, n));
  for (int it = 0; it < 2; ++it) {
    Eigen::VectorXcd next = lu.solve(y);
    if (!next.allFinite() || next.norm() == 0.0) return lambda;
    y = next.normalized();
  }
  return y.dot(a * y);
}

} // namespace

std::vector<cplx> dense_unitary_eigs(const Eigen::MatrixXcd& a) {
  const long n = a.rows();
  if (n != a.cols()) throw DomainError("matrix must be square");
  if (n > 64) throw DomainError("dense eigen oracle is limited to 64 x 64");
  if (n == 0) return {};
  if ((a.adjoint() * a - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10)
    throw DomainError("matrix is not unitary");

  const Eigen::MatrixXcd h = Eigen::HessenbergDecomposition<Eigen::MatrixXcd>(a).matrixH();
  std::vector<cplx> out;
  long start = 0;
  for (long i = 1; i <= n; ++i) {
    if (i < n && std::abs(h(i, i - 1)) > 1e-14) continue;
    const long d = i - start;
    const Eigen::MatrixXcd blk = h.block(start, start, d, d);
    if (d == 1) {
      out.push_back(blk(0, 0));
    } else {
      std::vector<cplx> init(d);
      for (long k = 0; k < d; ++k)
        init[k] = std::polar(1.0 + 0.02 * static_cast<double>(k % 3 - 1), kTwoPi * k / d + 0.3);
      for (const cplx& r : aberth([&](cplx x) { return hyman_ratio(blk, x); }, init, 1e-7, 500))
        out.push_back(r);
    }
    start = i;
  }
  for (cplx& l : out) l = rayleigh_refine(a, l);
  std::sort(out.begin(), out.end(), [](cplx x, cplx y) { return std::arg(x) < std::arg(y); });
  return out;
}

Eigen::MatrixXcd periodic_closure(const VerblunskySequence& seq, const PoleVector& z, int periods) {
  if (!seq.periodic()) throw DomainError("closure needs a phase-periodic sequence");
  const long p = 2L * z.n();
  const long size = periods * p;
  const long bw = p;
  if (size <= 2 * bw) throw DomainError("wraparound blocks overlap; use at least three periods");
  const BandedWindow w = mcmv_window(seq, z, -bw, size + bw);
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(size, size);
  for (long i = 0; i < size; ++i)
    for (long j = i - bw; j <= i + bw; ++j) c(i, ((j % size) + size) % size) += w.at(i, j);
  return c;
}

FloquetReport floquet_crosscheck(const VerblunskySequence& seq, const PoleVector& z, int periods,
                                 const std::function<cplx(cplx)>& discriminant,
                                 const std::vector<std::pair<double, double>>& gaps) {
  FloquetReport rep;
  rep.eigenvalues = dense_unitary_eigs(periodic_closure(seq, z, periods));
  for (const cplx& l : rep.eigenvalues) {
    rep.max_unimodular_error = std::max(rep.max_unimodular_error, std::abs(std::abs(l) - 1.0));
    const cplx d = discriminant(l);
    rep.max_band_violation =
        std::max({rep.max_band_violation, std::abs(std::imag(d)), std::abs(std::real(d)) - 2.0});
    double t = std::arg(l);
    if (t < 0.0) t += kTwoPi;
    for (const auto& [s, e] : gaps) {
      const double u = t < s ? t + kTwoPi : t;
      if (u > s && u < e) rep.max_gap_depth = std::max(rep.max_gap_depth, std::min(u - s, e - u));
    }
  }
  return rep;
}

} // namespace mcmv
