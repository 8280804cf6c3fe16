#pragma once

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "mcmv/ahlfors.hpp"
#include "mcmv/magic.hpp"
#include "mcmv/transfer.hpp"

namespace testkit {

using mcmv::cplx;

inline std::uint64_t seed_from_env(std::uint64_t fallback = 20261018) {
  if (const char* s = std::getenv("MCMV_SEED")) {
    try {
      return std::stoull(s);
    } catch (...) {
    }
  }
  return fallback;
}

class Rng {
public:
  explicit Rng(std::uint64_t seed = seed_from_env()) : gen_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<>(lo, hi)(gen_); }
  // Uniform on the disk of radius r.
  cplx disk(double r) { return std::polar(r * std::sqrt(uniform()), uniform(0.0, 2.0 * std::numbers::pi)); }
  cplx annulus(double r0, double r1) { return std::polar(uniform(r0, r1), uniform(0.0, 2.0 * std::numbers::pi)); }

private:
  std::mt19937_64 gen_;
};

struct Instance {
  mcmv::VerblunskySequence seq;
  mcmv::PoleVector z;
};

// Random phase-periodic data: |a_k| <= amax, distinct poles with |z_j| <= zmax.
inline Instance random_instance(Rng& rng, int n, double amax = 0.8, double zmax = 0.5) {
  std::vector<cplx> block(2 * n);
  for (cplx& a : block) a = rng.disk(amax);
  std::vector<cplx> poles{0.0};
  while (static_cast<int>(poles.size()) < n) {
    const cplx c = rng.disk(zmax);
    bool ok = std::abs(c) > 0.1;
    for (const cplx& q : poles) ok = ok && std::abs(c - q) > 0.1;
    if (ok) poles.push_back(c);
  }
  return {mcmv::VerblunskySequence(block, rng.uniform(0.0, 2.0 * std::numbers::pi)), mcmv::PoleVector(poles)};
}

inline double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// Two-arc set whose canonical pole vector has one nonzero pole, and block/phase data
// tuned so that the discriminant of the sequence equals Delta_E.
struct TorusInstance {
  mcmv::CircleArcSet set;
  mcmv::PoleVector z;
  mcmv::VerblunskySequence seq;
  mcmv::SuitableRational delta_e;
  double residual;
};

inline std::vector<double> torus_residual(const std::vector<double>& x, const mcmv::PoleVector& z,
                                          const mcmv::SuitableRational& target) {
  std::vector<cplx> block(4);
  for (int i = 0; i < 4; ++i) block[i] = cplx(x[i], x[4 + i]);
  const mcmv::MonodromyEvaluator ev(mcmv::VerblunskySequence(block, x[8]), z);
  const mcmv::SuitableRational r = mcmv::partial_fractions(ev, 1e-6);
  std::vector<double> out{r.c - target.c};
  for (int j = 0; j < 2; ++j) {
    const cplx d = r.terms[j].coeffs[0] - target.terms[j].coeffs[0];
    out.push_back(std::real(d));
    out.push_back(std::imag(d));
  }
  return out;
}

inline TorusInstance torus_instance() {
  const mcmv::CircleArcSet set({{0.5, 2.4}, {2.9, 5.6}});
  const mcmv::PoleVector z = mcmv::pole_vector_of_set(set);
  const mcmv::SuitableRational target = mcmv::partial_fractions(
      [&](cplx x) { return mcmv::generalized_discriminant(set, x); }, z.distinct());
  std::vector<double> x{3.32333549e-01, 9.00902962e-04, 2.35906837e-01, 2.83776670e-01, 7.53260874e-02,
                        -2.83981793e-01, 2.45901444e-01, 1.08535995e-02, 5.69999954e+00};
  double res = 1.0;
  // Gauss-Newton with minimum-norm steps (5 equations, 9 unknowns).
  for (int it = 0; it < 30; ++it) {
    const std::vector<double> r = torus_residual(x, z, target);
    res = 0.0;
    for (double v : r) res = std::max(res, std::abs(v));
    if (res < 1e-14) break;
    Eigen::MatrixXd jac(5, 9);
    for (int k = 0; k < 9; ++k) {
      const double h = 1e-7;
      std::vector<double> xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      const auto rp = torus_residual(xp, z, target), rm = torus_residual(xm, z, target);
      for (int i = 0; i < 5; ++i) jac(i, k) = (rp[i] - rm[i]) / (2.0 * h);
    }
    Eigen::VectorXd rv(5);
    for (int i = 0; i < 5; ++i) rv(i) = r[i];
    const Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(rv);
    for (int k = 0; k < 9; ++k) x[k] -= step(k);
  }
  std::vector<cplx> block(4);
  for (int i = 0; i < 4; ++i) block[i] = cplx(x[i], x[4 + i]);
  return {set, z, mcmv::VerblunskySequence(block, x[8]), target, res};
}

} // namespace testkit
