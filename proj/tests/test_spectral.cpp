#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mcmv/spectral.hpp"
#include "support.hpp"

using namespace mcmv;

namespace {

constexpr double kPi = std::numbers::pi;

// (1/p) log of the growth ratio of W_theta(z)^k v after k steps.
double lyapunov_power(const MonodromyEvaluator& ev, cplx z, int k) {
  const Mat2 w = ev.w_theta(z);
  cplx x = 1.0, y = 0.3;
  double growth = 0.0;
  for (int i = 0; i < k; ++i) {
    const cplx nx = w.m11 * x + w.m12 * y, ny = w.m21 * x + w.m22 * y;
    const double s = std::sqrt(std::norm(nx) + std::norm(ny));
    if (i == k - 1) growth = std::log(s);
    x = nx / s;
    y = ny / s;
  }
  return growth / ev.period();
}

cplx circle_mean(const std::function<cplx(cplx)>& f, cplx center, double r) {
  cplx s = 0.0;
  for (int k = 0; k < 128; ++k) s += f(center + std::polar(r, 2 * kPi * k / 128));
  return s / 128.0;
}

} // namespace

TEST_SUITE("spectral") {

TEST_CASE("free case bands, Caratheodory function and density") {
  const MonodromyEvaluator ev(VerblunskySequence({0.0, 0.0}), PoleVector::origin());
  const BandDecomposition bd = bands_from_discriminant(ev);
  CHECK(bd.full_circle());
  CHECK(divisor_extract(ev, bd).empty());
  for (const cplx z : {cplx(0.0), cplx(0.3, 0.4), cplx(-0.8, 0.1)}) CHECK(std::abs(caratheodory_eval(ev, z) - 1.0) < 1e-14);
  for (double t : {0.3, 1.7, 4.4}) CHECK(std::abs(ac_density(ev, t) - 1.0) < 1e-12);
  const SpectralMeasure sm = spectral_measure(ev, bd);
  CHECK(sm.masses.empty());
  CHECK(std::abs(sm.total() - 1.0) < 1e-12);
  for (double t : {0.5, 2.0, 3.5}) {
    const auto [u, v] = ev.uv(std::polar(1.0, t));
    CHECK(std::abs(std::real(u)) < 1e-14);
    CHECK(std::abs(std::imag(v)) < 1e-14);
  }
  const RhReport rh = riemann_hilbert_check(ev, bd);
  CHECK(rh.max_band_residual < 1e-14);
}

TEST_CASE("one-gap band edges") {
  const double a = std::sqrt(0.5);
  const MonodromyEvaluator ev(VerblunskySequence({a, a}), PoleVector::origin());
  const BandDecomposition bd = bands_from_discriminant(ev);
  REQUIRE(bd.open_gaps() == 1);
  REQUIRE(bd.bands.size() == 1);
  CHECK(std::abs(bd.bands[0].start - kPi / 2) < 1e-8);
  CHECK(std::abs(bd.bands[0].end - 3 * kPi / 2) < 1e-8);
  CHECK(divisor_extract(ev, bd).size() == 1);
}

TEST_CASE("band edges and band/gap consistency") {
  testkit::Rng rng;
  for (int i = 0; i < 8; ++i) {
    const auto inst = testkit::random_instance(rng, 1 + i % 3);
    const MonodromyEvaluator ev(inst.seq, inst.z);
    const BandDecomposition bd = bands_from_discriminant(ev);
    CHECK(static_cast<int>(bd.critical_points.size()) == ev.period());
    for (const Arc& g : bd.gaps) {
      CHECK(std::abs(std::abs(ev.discriminant_on_circle(g.start)) - 2.0) < 1e-10);
      CHECK(std::abs(std::abs(ev.discriminant_on_circle(g.end)) - 2.0) < 1e-10);
      for (int k = 1; k < 10; ++k) CHECK(std::abs(ev.discriminant_on_circle(g.start + g.length() * k / 10)) > 2.0);
    }
    for (const Arc& b : bd.bands)
      for (int k = 1; k < 10; ++k) CHECK(std::abs(ev.discriminant_on_circle(b.start + b.length() * k / 10)) <= 2.0 + 1e-12);
  }
}

TEST_CASE("Psi has modulus one exactly on the spectrum") {
  testkit::Rng rng;
  const auto inst = testkit::random_instance(rng, 2);
  const MonodromyEvaluator ev(inst.seq, inst.z);
  const BandDecomposition bd = bands_from_discriminant(ev);
  auto small_root = [](cplx d) {
    const cplx s = std::sqrt(d * d - 4.0);
    const cplx r1 = (d + s) / 2.0, r2 = (d - s) / 2.0;
    return std::min(std::abs(r1), std::abs(r2));
  };
  for (const Arc& b : bd.bands)
    for (int k = 1; k < 8; ++k) CHECK(std::abs(small_root(ev.discriminant(std::polar(1.0, b.start + b.length() * k / 8))) - 1.0) < 1e-7);
  for (const Arc& g : bd.gaps) CHECK(small_root(ev.discriminant(std::polar(1.0, g.mid()))) < 1.0);
  for (int k = 0; k < 20; ++k) {
    const cplx z = rng.annulus(0.05, 0.95);
    bool near_pole = false;
    for (const cplx& p : inst.z.points()) near_pole = near_pole || std::abs(z - p) < 0.05;
    if (!near_pole) CHECK(small_root(ev.discriminant(z)) < 1.0);
  }
}

TEST_CASE("Caratheodory function") {
  testkit::Rng rng;
  for (int i = 0; i < 6; ++i) {
    const auto inst = testkit::random_instance(rng, 1 + i % 3);
    const MonodromyEvaluator ev(inst.seq, inst.z);
    CHECK(std::abs(caratheodory_eval(ev, 0.0) - 1.0) < 1e-12);
    for (int k = 0; k < 20; ++k) {
      const cplx z = rng.disk(0.9);
      const cplx f = caratheodory_eval(ev, z);
      CHECK(std::real(f) > 0.0);
      const auto [r0, r1] = fixed_points(ev.m_theta(z));
      const double d = std::min(r0.infinite ? 1e300 : std::abs(r0.value - f), r1.infinite ? 1e300 : std::abs(r1.value - f));
      CHECK(d < 1e-10 * std::max(1.0, std::abs(f)));
      const auto [u, v] = ev.uv(z);
      // F_+ and -F_- are the two fixed points, whose sum is 2v/u.
      CHECK(std::abs(f - caratheodory_minus(ev, z) - 2.0 * v / u) < 1e-9 * std::max(1.0, std::abs(f)));
    }
  }
}

TEST_CASE("u and v on the circle") {
  testkit::Rng rng;
  for (int i = 0; i < 6; ++i) {
    const auto inst = testkit::random_instance(rng, 1 + i % 3);
    const UvReport r = uv_boundary_check(MonodromyEvaluator(inst.seq, inst.z), 200);
    CHECK(r.max_im_v < 1e-10);
    CHECK(r.max_re_u < 1e-10);
    // The identity is structural: it survives breaking periodicity.
    const UvReport rp = uv_boundary_check(MonodromyEvaluator(inst.seq.with_override(1, 0.5), inst.z), 200);
    CHECK(rp.max_im_v < 1e-10);
    CHECK(rp.max_re_u < 1e-10);
  }
}

TEST_CASE("divisor, point masses and normalization") {
  testkit::Rng rng;
  for (int i = 0; i < 6; ++i) {
    const auto inst = testkit::random_instance(rng, 1 + i % 3);
    const MonodromyEvaluator ev(inst.seq, inst.z);
    const BandDecomposition bd = bands_from_discriminant(ev);
    const auto div = divisor_extract(ev, bd);
    CHECK(static_cast<int>(div.size()) == bd.open_gaps());
    for (const DivisorPoint& d : div) {
      CHECK(std::abs(std::imag(ev.uv(std::polar(1.0, d.x)).first)) < 1e-9);
      if (d.epsilon < 0) {
        CHECK(point_mass(ev, d) == 0.0);
      } else {
        CHECK(point_mass(ev, d) > 0.0);
      }
    }
    for (const Arc& b : bd.bands)
      for (int k = 1; k < 50; ++k) CHECK(ac_density(ev, b.start + b.length() * k / 50) >= 0.0);
    CHECK(std::abs(spectral_measure(ev, bd).total() - 1.0) < 1e-8);
  }
}

TEST_CASE("closed gaps carry no divisor point") {
  const double a = std::sqrt(0.5);
  const MonodromyEvaluator ev(VerblunskySequence({a, a}), PoleVector::origin());
  const BandDecomposition bd = bands_from_discriminant(ev);
  CHECK(bd.closed_gaps.size() == 1);
  CHECK(divisor_extract(ev, bd).size() == 1);
}

TEST_CASE("Lyapunov exponent") {
  testkit::Rng rng;
  for (int i = 0; i < 6; ++i) {
    const auto inst = testkit::random_instance(rng, 1 + i % 3);
    const MonodromyEvaluator ev(inst.seq, inst.z);
    const BandDecomposition bd = bands_from_discriminant(ev);
    for (const Arc& b : bd.bands) CHECK(std::abs(lyapunov(ev, std::polar(1.0, b.mid()))) < 1e-10);
    for (const Arc& g : bd.gaps) CHECK(lyapunov(ev, std::polar(1.0, g.mid())) > 0.0);
    for (int k = 0; k < 5; ++k) {
      const cplx z = rng.annulus(0.3, 0.9);
      CHECK(std::abs(lyapunov(ev, z) - lyapunov_power(ev, z, 64)) < 1e-4);
    }
  }
}

TEST_CASE("quadratic irrationality") {
  const MonodromyEvaluator free(VerblunskySequence({0.0, 0.0}), PoleVector::origin());
  const QuadraticIrrationality q0 = quadratic_irrationality(free);
  for (const cplx z : {cplx(0.1, 0.2), cplx(-0.4, 0.5)}) CHECK(std::abs(q0.residual(1.0, z)) < 1e-14);

  testkit::Rng rng;
  for (int i = 0; i < 6; ++i) {
    const int n = 1 + i % 3;
    const auto inst = testkit::random_instance(rng, n);
    const MonodromyEvaluator ev(inst.seq, inst.z);
    const QuadraticIrrationality q = quadratic_irrationality(ev);
    const int bound = 2 * n + 2 * (n - 1);
    CHECK(static_cast<int>(q.a.size()) - 1 <= bound);
    CHECK(static_cast<int>(q.b.size()) - 1 <= bound);
    CHECK(static_cast<int>(q.c.size()) - 1 <= bound);
    for (int a = 0; a < 10; ++a)
      for (int b = 0; b < 10; ++b) {
        const cplx z = std::polar(0.09 * (a + 0.5), 2 * kPi * b / 10);
        CHECK(std::abs(q.residual(caratheodory_eval(ev, z), z)) < 1e-9);
      }
  }
}

TEST_CASE("Riemann-Hilbert conditions") {
  testkit::Rng rng;
  for (int i = 0; i < 4; ++i) {
    const auto inst = testkit::random_instance(rng, 1 + i % 3);
    const MonodromyEvaluator ev(inst.seq, inst.z);
    const RhReport r = riemann_hilbert_check(ev, bands_from_discriminant(ev));
    CHECK(r.max_band_residual < 1e-8);
    CHECK(r.min_gap_margin > 1e-6);
  }
}

TEST_CASE("residues at reflected poles are conjugate and nonzero") {
  testkit::Rng rng;
  for (int i = 0; i < 10; ++i) {
    const auto inst = testkit::random_instance(rng, 2 + i % 2);
    const MonodromyEvaluator ev(inst.seq, inst.z);
    for (int j = 1; j < inst.z.n(); ++j) {
      const cplx zj = inst.z[j];
      double r = 0.5 * std::abs(zj);
      for (int k = 0; k < inst.z.n(); ++k)
        if (k != j) r = std::min(r, 0.5 * std::abs(inst.z[k] - zj));
      const cplx at_pole = circle_mean([&](cplx w) { return blaschke(zj, w) * ev.discriminant(w); }, zj, r);
      const cplx star = reflect(zj);
      const double rs = 0.5 * std::min(std::abs(star) - 1.0, r);
      const cplx at_star = circle_mean([&](cplx w) { return ev.discriminant(w) / blaschke(zj, w); }, star, rs);
      CHECK(std::abs(at_star - std::conj(at_pole)) < 1e-10 * std::max(1.0, std::abs(at_pole)));
      CHECK(std::abs(at_pole) > 1e-6);
    }
  }
}

}
