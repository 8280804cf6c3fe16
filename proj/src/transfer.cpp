#include "mcmv/transfer.hpp"

#include <cmath>
#include <numbers>

#include "mcmv/errors.hpp"

namespace mcmv {

namespace {

Mat2 bdiag(cplx w, cplx z) { return Mat2::diag(blaschke(w, z), 1.0); }

} // namespace

std::vector<cplx> orf_poles(const PoleVector& z, int count) {
  std::vector<cplx> out(count);
  for (int k = 0; k < count; ++k) out[k] = d0_entry(z, k);
  return out;
}

MonodromyEvaluator::MonodromyEvaluator(VerblunskySequence seq, PoleVector z)
    : seq_(std::move(seq)), z_(std::move(z)) {
  if (seq_.n() != z_.n()) throw DomainError("period of the sequence does not match the pole vector");
  zeta_ = orf_poles(z_, period() + 1);
}

Mat2 MonodromyEvaluator::monodromy(cplx z) const {
  Mat2 t;
  for (int k = 0; k < period(); ++k) t = t * u_matrix(seq_.a(k)) * bdiag(zeta_[k + 1], z);
  const double th = seq_.theta();
  return t * Mat2::diag(std::polar(1.0, -th), std::polar(1.0, th));
}

Mat2 MonodromyEvaluator::monodromy_derivative(cplx z) const {
  const int p = period();
  std::vector<Mat2> prefix(p + 1);
  for (int k = 0; k < p; ++k) prefix[k + 1] = prefix[k] * u_matrix(seq_.a(k)) * bdiag(zeta_[k + 1], z);
  const double th = seq_.theta();
  Mat2 suffix = Mat2::diag(std::polar(1.0, -th), std::polar(1.0, th));
  Mat2 d{0.0, 0.0, 0.0, 0.0};
  for (int k = p - 1; k >= 0; --k) {
    const Mat2 left = prefix[k] * u_matrix(seq_.a(k));
    d = d + left * Mat2::diag(blaschke_derivative(zeta_[k + 1], z), 0.0) * suffix;
    suffix = bdiag(zeta_[k + 1], z) * suffix;
    suffix = u_matrix(seq_.a(k)) * suffix;
  }
  return d;
}

cplx MonodromyEvaluator::b(cplx z) const {
  cplx r = z;
  for (int j = 1; j < n(); ++j) r *= blaschke(z_[j], z);
  return r;
}

cplx MonodromyEvaluator::b_derivative(cplx z) const {
  std::vector<cplx> f(n()), df(n());
  f[0] = z;
  df[0] = 1.0;
  for (int j = 1; j < n(); ++j) {
    f[j] = blaschke(z_[j], z);
    df[j] = blaschke_derivative(z_[j], z);
  }
  cplx s = 0.0;
  for (int i = 0; i < n(); ++i) {
    cplx term = df[i];
    for (int j = 0; j < n(); ++j)
      if (j != i) term *= f[j];
    s += term;
  }
  return s;
}

cplx MonodromyEvaluator::discriminant(cplx z) const {
  const cplx bz = b(z);
  if (bz == 0.0) throw PoleError("discriminant evaluated at a pole");
  return monodromy(z).trace() / bz;
}

cplx MonodromyEvaluator::discriminant_derivative(cplx z) const {
  const cplx bz = b(z);
  if (bz == 0.0) throw PoleError("discriminant evaluated at a pole");
  const cplx tr = monodromy(z).trace();
  const cplx dtr = monodromy_derivative(z).trace();
  return (dtr * bz - tr * b_derivative(z)) / (bz * bz);
}

double MonodromyEvaluator::discriminant_dt(double t) const {
  const cplx z = std::polar(1.0, t);
  return std::real(cplx(0.0, 1.0) * z * discriminant_derivative(z));
}

double MonodromyEvaluator::discriminant_on_circle(double t) const {
  return std::real(discriminant(std::polar(1.0, t)));
}

Mat2 MonodromyEvaluator::w_matrix(cplx z) const {
  Mat2 w;
  for (int k = 0; k < period(); ++k) w = u_matrix(-std::conj(seq_.a(k))) * bdiag(zeta_[k], z) * w;
  return w;
}

Mat2 MonodromyEvaluator::w_theta(cplx z) const {
  const double th = seq_.theta();
  return Mat2::diag(std::polar(1.0, -th), std::polar(1.0, th)) * w_matrix(z);
}

Mat2 y0_matrix() { return {1.0, 1.0, -1.0, 1.0}; }

Mat2 rotation_matrix(double theta) {
  const cplx is(0.0, std::sin(theta));
  return {std::cos(theta), is, is, std::cos(theta)};
}

Mat2 MonodromyEvaluator::m_matrix(cplx z) const {
  Mat2 m = y0_matrix();
  for (int k = 0; k < period(); ++k) m = m * bdiag(zeta_[k], z) * u_matrix(seq_.a(k));
  return m * y0_matrix().inverse();
}

Mat2 MonodromyEvaluator::m_theta(cplx z) const { return m_matrix(z) * rotation_matrix(seq_.theta()); }

std::pair<cplx, cplx> MonodromyEvaluator::uv(cplx z) const {
  const cplx bz = b(z);
  if (bz == 0.0) throw PoleError("u, v evaluated at a zero of B");
  const Mat2 m = m_theta(z);
  return {2.0 * m.m21 / bz, (m.m11 - m.m22) / bz};
}

std::vector<OrfState> orf_recurrence(const VerblunskySequence& seq, const std::vector<cplx>& zeta,
                                     cplx x, int steps) {
  if (steps < 0 || static_cast<int>(zeta.size()) < steps + 1)
    throw DomainError("pole sequence too short for the requested steps");
  std::vector<OrfState> out;
  out.reserve(steps + 1);
  Mat2 y = y0_matrix();
  auto push = [&](int k) { out.push_back({k, y.m12, y.m22, y.m11, -y.m21}); };
  push(0);
  for (int k = 0; k < steps; ++k) {
    const cplx den = 1.0 - std::conj(zeta[k + 1]) * x;
    if (den == 0.0) throw PoleError("recurrence evaluated at a reflected pole");
    const cplx pref = (1.0 - std::conj(zeta[k]) * x) / den * (eta(zeta[k + 1]) / eta(zeta[k]));
    y = u_matrix(-std::conj(seq.a(k))) * bdiag(zeta[k], x) * y * pref;
    push(k + 1);
  }
  return out;
}

cplx coefficient_stripping(cplx f1, const Mat2& m) {
  const cplx den = m.m21 * f1 + m.m22;
  if (den == 0.0) throw NumericError("degenerate denominator in coefficient stripping");
  return (m.m11 * f1 + m.m12) / den;
}

SchurResult schur_algorithm(const std::function<cplx(cplx)>& f, int steps, double radius, int nodes,
                            double stop_tol) {
  if (!(radius > 0.0 && radius < 1.0) || nodes < 8) throw DomainError("bad sampling circle");
  std::vector<cplx> zs(nodes), vals(nodes);
  for (int m = 0; m < nodes; ++m) {
    zs[m] = std::polar(radius, 2.0 * std::numbers::pi * m / nodes);
    vals[m] = f(zs[m]);
  }
  SchurResult res;
  for (int k = 0; k < steps; ++k) {
    cplx a = 0.0;
    for (const cplx& v : vals) a += v;
    a /= static_cast<double>(nodes);
    res.parameters.push_back(a);
    if (std::abs(a) > 1.0 - stop_tol) {
      res.terminated = true;
      break;
    }
    for (int m = 0; m < nodes; ++m) vals[m] = (vals[m] - a) / (zs[m] * (1.0 - std::conj(a) * vals[m]));
  }
  return res;
}

cplx schur_from_parameters(const std::vector<cplx>& params, cplx z) {
  cplx f = 0.0;
  for (auto it = params.rbegin(); it != params.rend(); ++it)
    f = (z * f + *it) / (1.0 + std::conj(*it) * z * f);
  return f;
}

double bernstein_szego_density(const VerblunskySequence& seq, const PoleVector& z, int k, double t) {
  const std::vector<cplx> zeta = orf_poles(z, k + 1);
  const cplx x = std::polar(1.0, t);
  const OrfState s = orf_recurrence(seq, zeta, x, k).back();
  return (1.0 - std::norm(zeta[k])) / std::norm(x - zeta[k]) / std::norm(s.phi_star);
}

} // namespace mcmv
