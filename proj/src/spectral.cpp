#include "mcmv/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mcmv/errors.hpp"
#include "mcmv/numerics.hpp"

namespace mcmv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cplx on_circle(double t) { return std::polar(1.0, t); }

double unwrap_after(double t, double ref) {
  while (t < ref) t += kTwoPi;
  while (t >= ref + kTwoPi) t -= kTwoPi;
  return t;
}

} // namespace

double wrap_angle(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

bool Arc::contains(double t, double pad) const {
  const double u = unwrap_after(t, start);
  return u >= start + pad && u <= end - pad;
}

BandDecomposition bands_from_discriminant(const MonodromyEvaluator& ev, int grid, double closed_tol) {
  if (grid < 8) throw DomainError("grid too small");
  const int p = ev.period();
  auto g = [&](double t) { return ev.discriminant_dt(t); };
  auto delta = [&](double t) { return ev.discriminant_on_circle(t); };

  std::vector<double> ts(grid), gs(grid);
  for (int k = 0; k < grid; ++k) {
    ts[k] = kTwoPi * k / grid;
    gs[k] = g(ts[k]);
  }
  std::vector<double> crit;
  for (int k = 0; k < grid; ++k) {
    const int k1 = (k + 1) % grid;
    const double t1 = (k1 == 0) ? kTwoPi : ts[k1];
    if (gs[k] == 0.0) {
      crit.push_back(ts[k]);
    } else if (gs[k1] != 0.0 && (gs[k] > 0.0) != (gs[k1] > 0.0)) {
      crit.push_back(wrap_angle(find_root(g, ts[k], t1, gs[k], gs[k1])));
    }
  }
  if (static_cast<int>(crit.size()) != p)
    throw NumericError("grid too coarse: found " + std::to_string(crit.size()) +
                       " critical points, expected " + std::to_string(p));
  std::sort(crit.begin(), crit.end());

  BandDecomposition bd;
  bd.edge_tolerance = 1e-12;
  for (double c : crit) bd.critical_points.push_back({c, delta(c)});

  for (int i = 0; i < p; ++i) {
    const CriticalPoint& c = bd.critical_points[i];
    if (std::abs(c.value) - 2.0 <= closed_tol) {
      bd.closed_gaps.push_back(c.t);
      continue;
    }
    const double level = c.value > 0.0 ? 2.0 : -2.0;
    auto h = [&](double t) { return delta(t) - level; };
    double prev = bd.critical_points[(i + p - 1) % p].t;
    double next = bd.critical_points[(i + 1) % p].t;
    if (p == 1) {
      prev = c.t - kTwoPi;
      next = c.t + kTwoPi;
    }
    if (prev >= c.t) prev -= kTwoPi;
    if (next <= c.t) next += kTwoPi;
    const double left = find_root(h, prev, c.t);
    const double right = find_root(h, c.t, next);
    Arc gap;
    gap.start = wrap_angle(left);
    gap.end = unwrap_after(right, gap.start);
    bd.gaps.push_back(gap);
  }
  std::sort(bd.gaps.begin(), bd.gaps.end(), [](const Arc& a, const Arc& b) { return a.start < b.start; });
  if (bd.gaps.empty()) {
    bd.bands.push_back({0.0, kTwoPi});
  } else {
    const std::size_t m = bd.gaps.size();
    for (std::size_t i = 0; i < m; ++i) {
      Arc band;
      band.start = wrap_angle(bd.gaps[i].end);
      band.end = unwrap_after(bd.gaps[(i + 1) % m].start, band.start);
      bd.bands.push_back(band);
    }
    std::sort(bd.bands.begin(), bd.bands.end(),
              [](const Arc& a, const Arc& b) { return a.start < b.start; });
  }
  return bd;
}

namespace {

std::pair<cplx, cplx> caratheodory_pair(const MonodromyEvaluator& ev, cplx z) {
  const auto [r1, r2] = fixed_points(ev.m_theta(z));
  if (r1.infinite || r2.infinite) throw PoleError("Caratheodory function has a pole here");
  if (std::real(r1.value) >= std::real(r2.value)) return {r1.value, r2.value};
  return {r2.value, r1.value};
}

} // namespace

cplx caratheodory_eval(const MonodromyEvaluator& ev, cplx z) { return caratheodory_pair(ev, z).first; }

cplx caratheodory_minus(const MonodromyEvaluator& ev, cplx z) {
  return -caratheodory_pair(ev, z).second;
}

cplx boundary_sqrt(const MonodromyEvaluator& ev, const BandDecomposition& bd, double t) {
  const double d = ev.discriminant_on_circle(t);
  const double q = d * d - 4.0;
  if (q <= 0.0 || bd.gaps.empty()) {
    const cplx s0(0.0, std::sqrt(std::max(0.0, -q)));
    const cplx u = ev.uv(on_circle(t)).first;
    if (u == 0.0) return s0;
    return std::real(s0 / u) >= 0.0 ? s0 : -s0;
  }
  const Arc* gap = nullptr;
  double best = 1e300;
  for (const Arc& a : bd.gaps) {
    if (a.contains(t)) {
      gap = &a;
      break;
    }
    const double dist = std::min(std::abs(wrap_angle(t - a.start + std::numbers::pi) - std::numbers::pi),
                                 std::abs(wrap_angle(t - a.end + std::numbers::pi) - std::numbers::pi));
    if (dist < best) {
      best = dist;
      gap = &a;
    }
  }
  const double tm = gap->mid();
  const double dm = ev.discriminant_on_circle(tm);
  const cplx zin = std::polar(1.0 - 1e-4, tm);
  const auto [u, v] = ev.uv(zin);
  const cplx sref = u * caratheodory_eval(ev, zin) - v;
  const double sign = std::real(sref) * std::sqrt(dm * dm - 4.0) >= 0.0 ? 1.0 : -1.0;
  return sign * std::sqrt(q);
}

UvReport uv_boundary_check(const MonodromyEvaluator& ev, int samples) {
  UvReport r;
  r.samples = samples;
  for (int k = 0; k < samples; ++k) {
    const double t = kTwoPi * (k + 0.37) / samples;
    const auto [u, v] = ev.uv(on_circle(t));
    r.max_im_v = std::max(r.max_im_v, std::abs(std::imag(v)));
    r.max_re_u = std::max(r.max_re_u, std::abs(std::real(u)));
  }
  return r;
}

namespace {

double u_imag(const MonodromyEvaluator& ev, double t) { return std::imag(ev.uv(on_circle(t)).first); }

} // namespace

std::vector<DivisorPoint> divisor_extract(const MonodromyEvaluator& ev, const BandDecomposition& bd) {
  std::vector<DivisorPoint> out;
  constexpr int kScan = 64;
  for (std::size_t j = 0; j < bd.gaps.size(); ++j) {
    const Arc& gap = bd.gaps[j];
    auto f = [&](double t) { return u_imag(ev, t); };
    std::vector<double> ts(kScan + 1), fs(kScan + 1);
    for (int k = 0; k <= kScan; ++k) {
      ts[k] = gap.start + gap.length() * k / kScan;
      fs[k] = f(ts[k]);
    }
    double scale = 0.0;
    for (double v : fs) scale = std::max(scale, std::abs(v));
    const double edge_tol = 1e-9 * std::max(scale, 1e-300);
    DivisorPoint dp;
    dp.gap = static_cast<int>(j);
    int count = 0;
    for (int k = 0; k < kScan; ++k) {
      if ((fs[k] > 0.0) != (fs[k + 1] > 0.0) && fs[k] != 0.0 && fs[k + 1] != 0.0) {
        dp.x = find_root(f, ts[k], ts[k + 1], fs[k], fs[k + 1]);
        ++count;
      } else if (fs[k + 1] == 0.0 && k + 1 < kScan) {
        dp.x = ts[k + 1];
        ++count;
      }
    }
    if (count == 0) {
      if (std::abs(fs[0]) <= edge_tol) {
        dp.x = gap.start;
        dp.at_edge = true;
      } else if (std::abs(fs[kScan]) <= edge_tol) {
        dp.x = gap.end;
        dp.at_edge = true;
      } else {
        throw NumericError("no zero of u found in an open gap");
      }
    } else if (count > 1) {
      throw NumericError("more than one zero of u in an open gap");
    }
    if (std::min(dp.x - gap.start, gap.end - dp.x) < 1e-9) dp.at_edge = true;
    dp.x = wrap_angle(dp.x);
    if (dp.at_edge) {
      dp.epsilon = 1;
    } else {
      const cplx s = boundary_sqrt(ev, bd, dp.x);
      const cplx v = ev.uv(on_circle(dp.x)).second;
      dp.epsilon = std::abs(v + s) >= std::abs(v - s) ? 1 : -1;
    }
    out.push_back(dp);
  }
  return out;
}

double ac_density(const MonodromyEvaluator& ev, double t) {
  // 4 - Delta^2 = -(v^2 + u w), w = 2 (M_theta)_12 / B: every term vanishes at a closed
  // gap, so this keeps relative accuracy there where 4 - Delta^2 from the trace does not.
  const cplx z = on_circle(t);
  const cplx bz = ev.b(z);
  const Mat2 m = ev.m_theta(z);
  const cplx u = 2.0 * m.m21 / bz, v = (m.m11 - m.m22) / bz, w = 2.0 * m.m12 / bz;
  const double q = -std::real(v * v + u * w);
  if (q <= 0.0) return 0.0;
  return std::sqrt(q) / std::abs(u);
}

double point_mass(const MonodromyEvaluator& ev, const DivisorPoint& p) {
  if (p.epsilon != 1 || p.at_edge) return 0.0;
  auto u = [&](double t) { return ev.uv(on_circle(t)).first; };
  auto centered = [&](double h) { return (u(p.x + h) - u(p.x - h)) / (2.0 * h); };
  constexpr double h = 1e-3;
  const cplx d1 = centered(h), d2 = centered(h / 2.0), d3 = centered(h / 4.0);
  const cplx r1 = (4.0 * d2 - d1) / 3.0, r2 = (4.0 * d3 - d2) / 3.0;
  const cplx du = (16.0 * r2 - r1) / 15.0;
  const double d = ev.discriminant_on_circle(p.x);
  return std::sqrt(std::abs(d * d - 4.0)) / std::abs(du);
}

double SpectralMeasure::total() const {
  double s = ac_mass;
  for (const PointMass& m : masses) s += m.weight;
  return s;
}

double integrate_ac(const MonodromyEvaluator& ev, const Arc& arc, double tol) {
  const double len = arc.length();
  auto rule = [&](int n) {
    const auto [x, w] = gauss_legendre(n);
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      const double phi = 0.5 * std::numbers::pi * (x[i] + 1.0);
      const double t = arc.start + 0.5 * len * (1.0 - std::cos(phi));
      s += w[i] * ac_density(ev, t) * 0.5 * len * std::sin(phi);
    }
    return 0.5 * std::numbers::pi * s / kTwoPi;
  };
  double prev = rule(16);
  for (int n = 32; n <= 8192; n *= 2) {
    const double cur = rule(n);
    if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  throw NumericError("band quadrature did not converge");
}

SpectralMeasure spectral_measure(const MonodromyEvaluator& ev, const BandDecomposition& bd, double tol) {
  SpectralMeasure m;
  for (const Arc& band : bd.bands) {
    std::vector<double> cuts;
    for (double c : bd.closed_gaps)
      if (band.contains(c, 1e-12)) cuts.push_back(unwrap_after(c, band.start));
    std::sort(cuts.begin(), cuts.end());
    double s = band.start;
    for (double c : cuts) {
      m.pieces.push_back({s, c});
      s = c;
    }
    m.pieces.push_back({s, band.end});
  }
  for (Arc& a : m.pieces) {
    const double len = a.length();
    a.start = wrap_angle(a.start);
    a.end = a.start + len;
  }
  for (const Arc& a : m.pieces) m.ac_mass += integrate_ac(ev, a, tol);
  for (const DivisorPoint& p : divisor_extract(ev, bd)) {
    const double w = point_mass(ev, p);
    if (w > 0.0) m.masses.push_back({p.x, w});
  }
  return m;
}

double lyapunov(const MonodromyEvaluator& ev, cplx z) {
  const cplx d = ev.discriminant(z);
  const cplx s = std::sqrt(d * d - 4.0);
  const cplx l1 = 0.5 * (d + s), l2 = 0.5 * (d - s);
  const double big = std::max(std::abs(l1), std::abs(l2));
  return (std::log(std::abs(ev.b(z))) + std::log(big)) / ev.period();
}

cplx QuadraticIrrationality::residual(cplx f, cplx z) const {
  return polynomial_eval(a, z) * f * f + polynomial_eval(b, z) * f + polynomial_eval(c, z);
}

QuadraticIrrationality quadratic_irrationality(const MonodromyEvaluator& ev) {
  using Poly = std::vector<cplx>;
  struct PMat {
    Poly m11, m12, m21, m22;
  };
  auto add = [](const Poly& x, const Poly& y) {
    Poly r(std::max(x.size(), y.size()), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) r[i] += x[i];
    for (std::size_t i = 0; i < y.size(); ++i) r[i] += y[i];
    return r;
  };
  auto mul = [&](const PMat& x, const PMat& y) {
    return PMat{add(polynomial_mul(x.m11, y.m11), polynomial_mul(x.m12, y.m21)),
                add(polynomial_mul(x.m11, y.m12), polynomial_mul(x.m12, y.m22)),
                add(polynomial_mul(x.m21, y.m11), polynomial_mul(x.m22, y.m21)),
                add(polynomial_mul(x.m21, y.m12), polynomial_mul(x.m22, y.m22))};
  };
  auto constant = [](const Mat2& m) { return PMat{{m.m11}, {m.m12}, {m.m21}, {m.m22}}; };
  PMat acc = constant(y0_matrix());
  const VerblunskySequence& seq = ev.sequence();
  for (int k = 0; k < ev.period(); ++k) {
    const cplx zk = ev.zeta(k);
    const PMat d{{-zk, 1.0}, {0.0}, {0.0}, {1.0, -std::conj(zk)}};
    acc = mul(mul(acc, d), constant(u_matrix(seq.a(k))));
  }
  acc = mul(acc, constant(y0_matrix().inverse() * rotation_matrix(seq.theta())));
  QuadraticIrrationality q;
  q.a = acc.m21;
  q.b = add(acc.m22, Poly{});
  for (std::size_t i = 0; i < acc.m11.size(); ++i) {
    if (i >= q.b.size()) q.b.resize(i + 1, 0.0);
    q.b[i] -= acc.m11[i];
  }
  q.c = acc.m12;
  for (cplx& x : q.c) x = -x;
  return q;
}

RhReport riemann_hilbert_check(const MonodromyEvaluator& ev, const BandDecomposition& bd,
                               int band_samples, int gap_samples) {
  RhReport r;
  r.min_gap_margin = std::numeric_limits<double>::infinity();
  double band_len = 0.0, gap_len = 0.0;
  for (const Arc& a : bd.bands) band_len += a.length();
  for (const Arc& a : bd.gaps) gap_len += a.length();

  auto zf_plus = [](cplx u, cplx v, cplx s) { return (v + s - u) / (v + s + u); };
  auto f_minus = [](cplx u, cplx v, cplx s) { return (s - v - u) / (s - v + u); };

  for (const Arc& a : bd.bands) {
    const int m = std::max(1, static_cast<int>(std::lround(band_samples * a.length() / band_len)));
    for (int k = 0; k < m; ++k) {
      const double t = wrap_angle(a.start + a.length() * (k + 0.5) / m);
      bool near_closed = false;
      for (double c : bd.closed_gaps)
        if (std::abs(wrap_angle(t - c + std::numbers::pi) - std::numbers::pi) < 1e-6) near_closed = true;
      if (near_closed) continue;
      const auto [u, v] = ev.uv(on_circle(t));
      const cplx s = boundary_sqrt(ev, bd, t);
      const cplx res = f_minus(u, v, s) - std::conj(zf_plus(u, v, s));
      r.max_band_residual = std::max(r.max_band_residual, std::abs(res));
      ++r.band_samples;
    }
  }
  if (bd.gaps.empty()) {
    r.min_gap_margin = 0.0;
    return r;
  }
  const std::vector<DivisorPoint> div = divisor_extract(ev, bd);
  for (std::size_t j = 0; j < bd.gaps.size(); ++j) {
    const Arc& a = bd.gaps[j];
    const int m = std::max(1, static_cast<int>(std::lround(gap_samples * a.length() / gap_len)));
    for (int k = 0; k < m; ++k) {
      const double t = a.start + a.length() * (k + 0.5) / m;
      if (std::abs(unwrap_after(div[j].x, a.start) - t) < 1e-3 * a.length()) continue;
      const auto [u, v] = ev.uv(on_circle(t));
      const cplx s = boundary_sqrt(ev, bd, wrap_angle(t));
      const double margin = std::abs(1.0 - zf_plus(u, v, s) * f_minus(u, v, s));
      r.min_gap_margin = std::min(r.min_gap_margin, margin);
      ++r.gap_samples;
    }
  }
  return r;
}

} // namespace mcmv
