#include "mcmv/numerics.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "mcmv/errors.hpp"

namespace mcmv {

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  if (n < 1) throw DomainError("Gauss-Legendre needs at least one node");
  std::vector<double> x(n), w(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (z * p1 - p0) / (z * z - 1.0);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

double find_root(const std::function<double(double)>& f, double a, double b, double tol,
                 int max_iter) {
  return find_root(f, a, b, f(a), f(b), tol, max_iter);
}

double find_root(const std::function<double(double)>& f, double a, double b, double fa, double fb,
                 double tol, int max_iter) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) throw NumericError("root is not bracketed");
  std::uintmax_t iters = static_cast<std::uintmax_t>(max_iter);
  auto stop = [tol](double lo, double hi) { return std::abs(hi - lo) <= tol * std::max(1.0, std::abs(lo)); };
  const auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, stop, iters);
  if (iters >= static_cast<std::uintmax_t>(max_iter) && !stop(r.first, r.second))
    throw NumericError("bracketed root finder did not converge");
  return 0.5 * (r.first + r.second);
}

double find_minimum(const std::function<double(double)>& f, double a, double b, int max_iter) {
  std::uintmax_t iters = static_cast<std::uintmax_t>(max_iter);
  const auto r = boost::math::tools::brent_find_minima(f, a, b, std::numeric_limits<double>::digits / 2,
                                                       iters);
  return r.first;
}

std::vector<cplx> aberth(const std::function<cplx(cplx)>& ratio, std::vector<cplx> z, double tol,
                         int max_iter) {
  const std::size_t d = z.size();
  std::vector<bool> done(d, false);
  for (int it = 0; it < max_iter; ++it) {
    bool all = true;
    for (std::size_t i = 0; i < d; ++i) {
      if (done[i]) continue;
      const cplx r = ratio(z[i]);
      cplx s = 0.0;
      for (std::size_t j = 0; j < d; ++j)
        if (j != i) s += 1.0 / (z[i] - z[j]);
      const cplx step = r / (1.0 - r * s);
      z[i] -= step;
      if (std::abs(step) <= tol * std::max(1.0, std::abs(z[i])))
        done[i] = true;
      else
        all = false;
    }
    if (all) return z;
  }
  throw NumericError("Aberth iteration did not converge");
}

cplx polynomial_eval(const std::vector<cplx>& c, cplx z) {
  cplx s = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * z + *it;
  return s;
}

std::vector<cplx> polynomial_mul(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<cplx> r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

std::vector<cplx> polynomial_roots(const std::vector<cplx>& coeffs) {
  std::vector<cplx> c = coeffs;
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  if (c.size() <= 1) return {};
  const int d = static_cast<int>(c.size()) - 1;
  const double r = std::max(1e-3, std::pow(std::abs(c[0] / c[d]), 1.0 / d));
  std::vector<cplx> init(d);
  for (int k = 0; k < d; ++k) init[k] = std::polar(r, 2.0 * std::numbers::pi * k / d + 0.4);
  auto ratio = [&](cplx z) {
    cplx p = 0.0, dp = 0.0;
    for (int k = d; k >= 0; --k) {
      dp = dp * z + p;
      p = p * z + c[k];
    }
    return p / dp;
  };
  return aberth(ratio, init);
}

} // namespace mcmv
