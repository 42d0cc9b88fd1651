// Gauss quadrature for Gamma-weighted integrals on (0, inf).

#ifndef PARETO_QUADRATURE_HPP
#define PARETO_QUADRATURE_HPP

#include <cstddef>
#include <functional>
#include <vector>

namespace pareto {

// Nodes and weights for the Gamma(shape, 1) probability weight:
//   integral f(t) t^{shape-1} e^{-t} / Gamma(shape) dt  ~=  sum w_i f(t_i).
// Weights are normalized to sum to 1, so no Gamma(shape) factor ever
// overflows. Exact for polynomials of degree 2*point_count - 1.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

QuadratureRule gamma_quadrature(double shape, std::size_t point_count);

// Evaluates the Gamma(shape,1) expectation of f, doubling the node count
// from 64 until two successive results agree to rel_tol (capped at 4096).
double integrate_gamma(double shape, const std::function<double(double)>& f,
                       double rel_tol = 1e-10);

}  // namespace pareto

#endif
