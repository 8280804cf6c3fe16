#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "mcmv/scalar.hpp"

namespace mcmv {

// Gauss-Legendre nodes and weights on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

// Root of f in [a, b] given f(a) f(b) <= 0.
double find_root(const std::function<double(double)>& f, double a, double b, double tol = 1e-15,
                 int max_iter = 200);
double find_root(const std::function<double(double)>& f, double a, double b, double fa, double fb,
                 double tol = 1e-15, int max_iter = 200);

// Location of the minimum of f on [a, b].
double find_minimum(const std::function<double(double)>& f, double a, double b, int max_iter = 200);

// Simultaneous root refinement. `ratio` returns p(z)/p'(z) (Newton correction).
std::vector<cplx> aberth(const std::function<cplx(cplx)>& ratio, std::vector<cplx> init,
                         double tol = 1e-15, int max_iter = 500);

// Roots of sum_k c[k] z^k (ascending coefficients).
std::vector<cplx> polynomial_roots(const std::vector<cplx>& coeffs);
cplx polynomial_eval(const std::vector<cplx>& coeffs, cplx z);
std::vector<cplx> polynomial_mul(const std::vector<cplx>& a, const std::vector<cplx>& b);

} // namespace mcmv
