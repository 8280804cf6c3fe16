#include "mcmv/ahlfors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mcmv/errors.hpp"
#include "mcmv/numerics.hpp"

namespace mcmv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool near(cplx z, double p) { return std::abs(z - p) <= 1e-14 * std::max(1.0, std::abs(p)); }

// sqrt(q) for real q approached with Im q -> 0^- .
cplx sqrt_from_below(double q) { return q >= 0.0 ? cplx(std::sqrt(q), 0.0) : cplx(0.0, -std::sqrt(-q)); }

} // namespace

RealSlitSet::RealSlitSet(std::vector<std::pair<double, double>> gaps) : gaps_(std::move(gaps)) {
  double prev = 0.0;
  for (const auto& [a, b] : gaps_) {
    if (!(a > prev && b > a) || !std::isfinite(b))
      throw DomainError("gaps must be ordered, disjoint and positive");
    prev = b;
  }
}

bool RealSlitSet::in_set(double x) const {
  if (x < 0.0) return false;
  for (const auto& [a, b] : gaps_)
    if (x > a && x < b) return false;
  return true;
}

cplx h_eval(const RealSlitSet& e, cplx z) {
  if (near(z, 0.0)) throw PoleError("H evaluated at a branch point");
  cplx r = 1.0 / std::sqrt(-z);
  for (const auto& [a, b] : e.gaps()) {
    if (near(z, a) || near(z, b)) throw PoleError("H evaluated at a branch point");
    r *= std::sqrt((z - a) / (z - b));
  }
  return r;
}

cplx h_boundary(const RealSlitSet& e, double x) {
  if (x == 0.0) throw PoleError("H evaluated at a branch point");
  cplx r = 1.0 / sqrt_from_below(-x);
  for (const auto& [a, b] : e.gaps()) {
    if (x == a || x == b) throw PoleError("H evaluated at a branch point");
    // Im((x + i0 - a)/(x + i0 - b)) has the sign of a - b < 0.
    r *= sqrt_from_below((x - a) / (x - b));
  }
  return r;
}

namespace {

cplx ahlfors_from_h(cplx h, cplx h0, cplx z, cplx z0) {
  const cplx den = h + h0;
  if (den == 0.0) throw PoleError("Ahlfors function evaluated at a pole");
  const cplx zb = std::conj(z0);
  const cplx lead = std::imag(z0) == 0.0 ? cplx(1.0) : (z - z0) / (z - zb);
  return lead * (h - std::conj(h0)) / den;
}

cplx psi(cplx h, cplx h0) {
  const cplx hb = std::conj(h0);
  const cplx den = (h + h0) * (h + hb);
  if (den == 0.0) throw PoleError("discriminant evaluated at a pole");
  return (h - h0) * (h - hb) / den;
}

} // namespace

cplx ahlfors_eval(const RealSlitSet& e, cplx z0, cplx z) {
  if (std::imag(z0) != 0.0 && std::abs(z - std::conj(z0)) < 1e-14 * std::max(1.0, std::abs(z0)))
    throw PoleError("Ahlfors function evaluated at the reflected base point");
  return ahlfors_from_h(h_eval(e, z), h_eval(e, z0), z, z0);
}

cplx ahlfors_boundary(const RealSlitSet& e, cplx z0, double x) {
  return ahlfors_from_h(h_boundary(e, x), h_eval(e, z0), cplx(x, 0.0), z0);
}

std::vector<cplx> ahlfors_zeros(const RealSlitSet& e, cplx z0) {
  if (!(std::imag(z0) > 0.0)) throw DomainError("base point must lie in the upper half-plane");
  const int g = e.genus();
  if (g == 0) return {};
  const cplx h0 = h_eval(e, z0);
  const cplx c = std::conj(h0) * std::conj(h0);
  // prod (z - a_j) + c z prod (z - b_j) = 0 <=> H(z)^2 = conj(H(z0))^2.
  std::vector<cplx> pa{1.0}, pb{0.0, c};
  for (const auto& [a, b] : e.gaps()) {
    pa = polynomial_mul(pa, {-a, 1.0});
    pb = polynomial_mul(pb, {-b, 1.0});
  }
  std::vector<cplx> poly(pb.size(), 0.0);
  for (std::size_t i = 0; i < pa.size(); ++i) poly[i] += pa[i];
  for (std::size_t i = 0; i < pb.size(); ++i) poly[i] += pb[i];
  std::vector<cplx> dpoly(poly.size() - 1);
  for (std::size_t i = 1; i < poly.size(); ++i) dpoly[i - 1] = static_cast<double>(i) * poly[i];

  std::vector<cplx> roots = polynomial_roots(poly);
  const cplx zb = std::conj(z0);
  auto closest = std::min_element(roots.begin(), roots.end(),
                                  [&](cplx x, cplx y) { return std::abs(x - zb) < std::abs(y - zb); });
  if (std::abs(*closest - zb) > 1e-6 * std::max(1.0, std::abs(z0)))
    throw NumericError("reflected base point is not a root");
  roots.erase(closest);

  std::vector<cplx> out;
  for (cplx r : roots) {
    for (int it = 0; it < 3; ++it) {
      const cplx d = polynomial_eval(dpoly, r);
      if (d == 0.0) break;
      r -= polynomial_eval(poly, r) / d;
    }
    if (std::abs(h_eval(e, r) - std::conj(h0)) <= 1e-6 * std::abs(h0)) out.push_back(r);
  }
  if (static_cast<int>(out.size()) != g)
    throw NumericError("Ahlfors zero count " + std::to_string(out.size()) + " differs from genus " +
                       std::to_string(g));
  std::sort(out.begin(), out.end(), [](cplx x, cplx y) { return std::real(x) < std::real(y); });
  return out;
}

cplx delta_real_eval(const RealSlitSet& e, cplx z0, cplx z) {
  const cplx w = psi(h_eval(e, z), h_eval(e, z0));
  if (w == 0.0) throw PoleError("discriminant evaluated at a pole");
  return w + 1.0 / w;
}

double delta_real_boundary(const RealSlitSet& e, cplx z0, double x) {
  const cplx w = psi(h_boundary(e, x), h_eval(e, z0));
  if (w == 0.0) throw PoleError("discriminant evaluated at a pole");
  return std::real(w + 1.0 / w);
}

std::vector<RealCriticalPoint> critical_points(const RealSlitSet& e, cplx z0) {
  const double level = std::abs(h_eval(e, z0));
  std::vector<RealCriticalPoint> out;
  // In gaps H is positive and runs over (0, inf); on bands H = i y with y over (0, inf).
  auto solve = [&](const std::function<double(double)>& x_of, double s_lo, double s_hi, bool gap) {
    auto f = [&](double s) {
      const cplx h = h_boundary(e, x_of(s));
      return (gap ? std::real(h) : std::imag(h)) - level;
    };
    const double fa = f(s_lo), fb = f(s_hi);
    if ((fa > 0.0) == (fb > 0.0)) throw NumericError("critical point is not bracketed");
    const double x = x_of(find_root(f, s_lo, s_hi, fa, fb));
    out.push_back({x, delta_real_boundary(e, z0, x), gap});
  };
  constexpr double kLog = 60.0, kEps = 1e-13;
  solve([](double s) { return -std::exp(-s); }, -kLog, kLog, true);
  const auto& gaps = e.gaps();
  double lo = 0.0;
  for (const auto& [a, b] : gaps) {
    solve([lo, a](double s) { return lo + (a - lo) * s; }, kEps, 1.0 - kEps, false);
    solve([a, b](double s) { return a + (b - a) * s; }, kEps, 1.0 - kEps, true);
    lo = b;
  }
  if (lo == 0.0)
    solve([](double s) { return std::exp(s); }, -kLog, kLog, false);
  else
    solve([lo](double s) { return lo * (1.0 + std::exp(s)); }, -30.0, kLog, false);
  return out;
}

CircleArcSet::CircleArcSet(std::vector<std::pair<double, double>> arcs) {
  if (arcs.empty()) throw DomainError("arc set is empty");
  for (auto& [s, t] : arcs) {
    if (!(t > s)) throw DomainError("arcs must have positive length");
    const double len = t - s;
    s = std::fmod(s, kTwoPi);
    if (s < 0.0) s += kTwoPi;
    t = s + len;
  }
  if (arcs.size() == 1 && arcs[0].second - arcs[0].first >= kTwoPi - 1e-14) {
    arcs_ = {{0.0, kTwoPi}};
    full_ = true;
    return;
  }
  std::sort(arcs.begin(), arcs.end());
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const double next = i + 1 < arcs.size() ? arcs[i + 1].first : arcs[0].first + kTwoPi;
    if (!(arcs[i].second < next)) throw DomainError("arcs must be disjoint");
  }
  arcs_ = std::move(arcs);
}

CircleArcSet CircleArcSet::full_circle() { return CircleArcSet({{0.0, kTwoPi}}); }

CayleyMap::CayleyMap(const CircleArcSet& set) {
  if (set.is_full_circle()) throw DomainError("the full circle has no Cayley normalization");
  const auto& arcs = set.arcs();
  lp_ = std::polar(1.0, arcs.front().first);
  lm_ = std::polar(1.0, arcs.back().second);
  const cplx zs = std::polar(1.0, 0.5 * (arcs.front().first + arcs.front().second));
  const cplx q = (zs - lp_) / (zs - lm_);
  kappa_ = std::abs(q) / q;
  std::vector<std::pair<double, double>> gaps;
  for (std::size_t i = 0; i + 1 < arcs.size(); ++i)
    gaps.emplace_back(std::real((*this)(std::polar(1.0, arcs[i].second))),
                      std::real((*this)(std::polar(1.0, arcs[i + 1].first))));
  real_ = RealSlitSet(gaps);
}

cplx CayleyMap::operator()(cplx z) const {
  if (z == lm_) throw PoleError("Cayley map evaluated at its pole");
  return kappa_ * (z - lp_) / (z - lm_);
}

cplx CayleyMap::inverse(cplx s) const {
  if (s == kappa_) throw PoleError("inverse Cayley map evaluated at its pole");
  return (s * lm_ - kappa_ * lp_) / (s - kappa_);
}

cplx circle_ahlfors_eval(const CircleArcSet& set, cplx z0, cplx z) {
  if (set.is_full_circle()) {
    if (std::abs(z0) < 1.0) return blaschke(z0, z);
    return std::conj(blaschke(reflect(z0), reflect(z)));
  }
  const CayleyMap m(set);
  return ahlfors_eval(m.real_set(), m(z0), m(z));
}

cplx generalized_discriminant(const CircleArcSet& set, cplx z) {
  if (set.is_full_circle()) {
    if (z == 0.0) throw PoleError("discriminant evaluated at a pole");
    return z + 1.0 / z;
  }
  const CayleyMap m(set);
  return delta_real_eval(m.real_set(), m.z0(), m(z));
}

PoleVector pole_vector_of_set(const CircleArcSet& set, double collide_tol) {
  if (set.is_full_circle()) return PoleVector::origin();
  const CayleyMap m(set);
  std::vector<cplx> pts;
  for (cplx r : ahlfors_zeros(m.real_set(), m.z0())) pts.push_back(m.inverse(std::conj(r)));
  std::sort(pts.begin(), pts.end(), [](cplx x, cplx y) { return std::arg(x) < std::arg(y); });
  pts.insert(pts.begin(), 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (std::abs(pts[i] - pts[j]) < collide_tol) throw NumericError("poles of the discriminant collide");
  return PoleVector(pts);
}

} // namespace mcmv
