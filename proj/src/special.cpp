#include "pareto/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pareto {

namespace {

// Lower regularized incomplete gamma by power series; valid for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int i = 0; i < 1000; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16)
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw std::runtime_error("regularized_gamma: series failed to converge");
}

// Upper regularized incomplete gamma by Lentz continued fraction; x >= a + 1.
double gamma_q_continued_fraction(double a, double x) {
    const double tiny = std::numeric_limits<double>::min() / 1e-30;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16)
            return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw std::runtime_error("regularized_gamma: continued fraction failed to converge");
}

}  // namespace

double regularized_gamma_p(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw std::invalid_argument("regularized_gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_continued_fraction(a, x);
}

double regularized_gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw std::invalid_argument("regularized_gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_continued_fraction(a, x);
}

double poisson_pmf(std::uint64_t k, double mean) {
    if (!(mean > 0.0)) throw std::invalid_argument("poisson_pmf: mean must be positive");
    const double kk = static_cast<double>(k);
    return std::exp(kk * std::log(mean) - mean - std::lgamma(kk + 1.0));
}

double poisson_cdf(std::uint64_t k, double mean) {
    return regularized_gamma_q(static_cast<double>(k) + 1.0, mean);
}

double poisson_tail_above(std::uint64_t k, double mean) {
    return regularized_gamma_p(static_cast<double>(k) + 1.0, mean);
}

double binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0.0;
    if (k > n - k) k = n - k;
    double result = 1.0;
    for (std::uint64_t j = 1; j <= k; ++j)
        result *= static_cast<double>(n - k + j) / static_cast<double>(j);
    return result;
}

double chi_square_p_value(double statistic, double df) {
    if (statistic < 0.0 || !(df > 0.0))
        throw std::invalid_argument("chi_square_p_value: bad arguments");
    return regularized_gamma_q(df / 2.0, statistic / 2.0);
}

}  // namespace pareto
