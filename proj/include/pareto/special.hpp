// Small special-function kit shared by the oracle and the diagnostics:
// regularized incomplete gamma, Poisson pmf/cdf, log-binomial.

#ifndef PARETO_SPECIAL_HPP
#define PARETO_SPECIAL_HPP

#include <cstdint>

namespace pareto {

// Lower and upper regularized incomplete gamma functions P(a,x), Q(a,x),
// P + Q = 1. a > 0, x >= 0.
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

double poisson_pmf(std::uint64_t k, double mean);
// P{Poisson(mean) <= k} and P{Poisson(mean) > k}, evaluated in closed form
// through the incomplete gamma function.
double poisson_cdf(std::uint64_t k, double mean);
double poisson_tail_above(std::uint64_t k, double mean);

// Binomial coefficient C(n, k) as a double (multiplicative evaluation;
// relative error a few ulp times k).
double binomial(std::uint64_t n, std::uint64_t k);

// p-value of a chi-square statistic with df degrees of freedom.
double chi_square_p_value(double statistic, double df);

}  // namespace pareto

#endif
