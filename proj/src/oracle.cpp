#include "pareto/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "pareto/quadrature.hpp"

namespace pareto {

namespace {

constexpr double kEuler = 2.718281828459045235360287;

// ---------------------------------------------------------------------------
// Double-double arithmetic for the alternating-sum cross-check. The binomial
// terms cancel down ~17 decimal digits already at n = 60, d = 1; two doubles
// (~31 digits) keep the result trustworthy where one double cannot.

struct DD {
    double hi = 0.0;
    double lo = 0.0;
};

inline DD two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DD quick_two_sum(double a, double b) {  // requires |a| >= |b|
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    return quick_two_sum(s.hi, s.lo + a.lo + b.lo);
}

inline DD dd_sub(DD a, DD b) { return dd_add(a, {-b.hi, -b.lo}); }

inline DD dd_mul(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    return quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline DD dd_mul(DD a, double b) {
    DD p = two_prod(a.hi, b);
    return quick_two_sum(p.hi, p.lo + a.lo * b);
}

inline DD dd_div(DD a, DD b) {
    const double q1 = a.hi / b.hi;
    DD r = dd_sub(a, dd_mul(b, q1));
    const double q2 = r.hi / b.hi;
    r = dd_sub(r, dd_mul(b, q2));
    const double q3 = r.hi / b.hi;
    DD q = quick_two_sum(q1, q2);
    DD s = two_sum(q.hi, q3);
    return quick_two_sum(s.hi, s.lo + q.lo);
}

inline DD dd_div(DD a, double b) {
    const double q1 = a.hi / b;
    DD p = two_prod(q1, b);
    const double r = ((a.hi - p.hi) - p.lo + a.lo) / b;
    return quick_two_sum(q1, r);
}

// ---------------------------------------------------------------------------

double require_log_n(std::uint64_t n, const char* who) {
    if (n < 2) throw std::invalid_argument(std::string(who) + ": n >= 2 required");
    return std::log(static_cast<double>(n));
}

}  // namespace

double critical_dim_star(std::uint64_t n, double c) {
    return 2.0 / std::log(2.0) * require_log_n(n, "critical_dim_star") + c;
}

double critical_dim_starstar(std::uint64_t n, double c) {
    if (n < 3)
        throw std::invalid_argument("critical_dim_starstar: n >= 3 required (log log n > 0)");
    const double log_n = std::log(static_cast<double>(n));
    return kEuler * log_n - 0.5 * std::log(log_n) + c;
}

double implied_offset_star(std::uint64_t n, std::size_t d) {
    return static_cast<double>(d) - critical_dim_star(n, 0.0);
}

double implied_offset_starstar(std::uint64_t n, std::size_t d) {
    return static_cast<double>(d) - critical_dim_starstar(n, 0.0);
}

double box_product_integral(const BoxRegion& box) {
    box.validate();
    double product = 1.0;
    for (const auto& [a, b] : box.bounds) product *= (b * b - a * a) / 2.0;
    return product;
}

double intensity_mass(const BoxRegion& box, std::size_t m, double c) {
    if (m != box.dimension())
        throw std::invalid_argument("intensity_mass: m must equal the box dimension");
    return std::exp2(static_cast<double>(m) - c) * box_product_integral(box);
}

double expected_layer_count(std::uint64_t n, std::size_t d, std::uint64_t r) {
    if (n < 1 || d < 1) throw std::invalid_argument("expected_layer_count: n, d >= 1 required");
    if (r > n - 1) throw std::invalid_argument("expected_layer_count: r exceeds n - 1");
    if (n == 1) return r == 0 ? 1.0 : 0.0;

    const double rr = static_cast<double>(r);
    const double rest = static_cast<double>(n - 1 - r);
    auto integrand = [rr, rest](double t) {
        // e^{-r t} (1 - e^{-t})^{n-1-r}; log-stable at both ends.
        const double log_one_minus =
            (t > 0.6931471805599453) ? std::log1p(-std::exp(-t)) : std::log(-std::expm1(-t));
        return std::exp(-rr * t + rest * log_one_minus);
    };
    const double prefactor = static_cast<double>(n) * binomial(n - 1, r);
    return prefactor * integrate_gamma(static_cast<double>(d), integrand);
}

double expected_nonpareto(std::uint64_t n, std::size_t d) {
    if (n < 1 || d < 1) throw std::invalid_argument("expected_nonpareto: n, d >= 1 required");
    if (n == 1) return 0.0;
    // n E(1 - (1-|X|)^{n-1}) evaluated directly; subtracting E K from n
    // would lose ~log10(n) digits.
    const double rest = static_cast<double>(n - 1);
    auto integrand = [rest](double t) {
        const double log_one_minus =
            (t > 0.6931471805599453) ? std::log1p(-std::exp(-t)) : std::log(-std::expm1(-t));
        return -std::expm1(rest * log_one_minus);
    };
    return static_cast<double>(n) * integrate_gamma(static_cast<double>(d), integrand);
}

double expected_weighted_count(std::uint64_t n, std::size_t d, const BoxRegion& box,
                               std::size_t m) {
    if (m > d) throw std::invalid_argument("expected_weighted_count: m exceeds d");
    if (m != box.dimension())
        throw std::invalid_argument("expected_weighted_count: m must equal the box dimension");
    const double nn = static_cast<double>(n);
    return nn * (nn - 1.0) * std::exp2(static_cast<double>(m) - static_cast<double>(d)) *
           box_product_integral(box);
}

double stirling_factor(std::uint64_t n, std::size_t d) {
    if (d < 1) throw std::invalid_argument("stirling_factor: d >= 1 required");
    const double log_log_n = std::log(require_log_n(n, "stirling_factor"));
    return std::exp(static_cast<double>(d - 1) * log_log_n -
                    std::lgamma(static_cast<double>(d)));
}

double limit_layer_mean(std::uint64_t r, double c) {
    if (r < 2)
        throw std::invalid_argument("limit_layer_mean: r >= 2 required (Gamma argument)");
    const double rr = static_cast<double>(r);
    return std::exp(0.5 - c) / std::sqrt(2.0 * M_PI) * std::tgamma(rr + 1.0 - kEuler) /
           std::tgamma(rr + 1.0);
}

double limit_nonpareto_mean(double c) { return std::exp2(-c); }

AggBound agg_bound(std::uint64_t n, std::size_t d, const BoxRegion& box, std::size_t m) {
    if (n < 2) throw std::invalid_argument("agg_bound: n >= 2 required");
    if (m > d) throw std::invalid_argument("agg_bound: m exceeds d");
    const double nn = static_cast<double>(n);
    const double p =
        std::exp2(static_cast<double>(m) - static_cast<double>(d)) * box_product_integral(box);
    const double dd = static_cast<double>(d);
    AggBound bound;
    bound.b1 = nn * (nn - 1.0) * (4.0 * nn - 6.0) * p * p;
    bound.b2 = nn * (nn - 1.0) * 2.0 * (nn - 2.0) *
               (std::exp(-dd * std::log(3.0)) + std::exp(-dd * std::log(6.0)));
    bound.total = bound.b1 + bound.b2;
    return bound;
}

double alternating_sum_layer_count(std::uint64_t n, std::size_t d, std::uint64_t r) {
    if (n < 1 || d < 1)
        throw std::invalid_argument("alternating_sum_layer_count: n, d >= 1 required");
    if (r > n - 1) throw std::invalid_argument("alternating_sum_layer_count: r exceeds n - 1");
    if (n == 1) return r == 0 ? 1.0 : 0.0;

    const std::uint64_t m = n - 1 - r;
    DD coefficient{1.0, 0.0};  // C(m, k), updated multiplicatively
    DD sum{0.0, 0.0};
    for (std::uint64_t k = 0; k <= m; ++k) {
        DD power{1.0, 0.0};
        const double base = static_cast<double>(r + k + 1);
        for (std::size_t j = 0; j < d; ++j) power = dd_mul(power, base);
        const DD term = dd_div(coefficient, power);
        sum = (k % 2 == 0) ? dd_add(sum, term) : dd_sub(sum, term);
        if (k < m)
            coefficient =
                dd_div(dd_mul(coefficient, static_cast<double>(m - k)), static_cast<double>(k + 1));
    }
    return static_cast<double>(n) * binomial(n - 1, r) * (sum.hi + sum.lo);
}

double expected_layer_count_poissonized(double lambda, std::size_t d, std::uint64_t r) {
    if (!(lambda > 0.0) || d < 1)
        throw std::invalid_argument("expected_layer_count_poissonized: bad arguments");
    const double log_lambda = std::log(lambda);
    const double rr = static_cast<double>(r);
    const double log_r_factorial = std::lgamma(rr + 1.0);
    auto integrand = [=](double t) {
        // P{Poisson(lambda e^{-t}) = r} at the point's box volume e^{-t}.
        return std::exp(rr * (log_lambda - t) - log_r_factorial - lambda * std::exp(-t));
    };
    return lambda * integrate_gamma(static_cast<double>(d), integrand);
}

double expected_nonpareto_poissonized(double lambda, std::size_t d) {
    if (!(lambda > 0.0) || d < 1)
        throw std::invalid_argument("expected_nonpareto_poissonized: bad arguments");
    auto integrand = [lambda](double t) { return -std::expm1(-lambda * std::exp(-t)); };
    return lambda * integrate_gamma(static_cast<double>(d), integrand);
}

double expected_weighted_count_poissonized(double lambda, std::size_t d, const BoxRegion& box,
                                           std::size_t m) {
    if (!(lambda > 0.0)) throw std::invalid_argument("bad lambda");
    if (m > d) throw std::invalid_argument("m exceeds d");
    if (m != box.dimension()) throw std::invalid_argument("m must equal the box dimension");
    return lambda * lambda * std::exp2(static_cast<double>(m) - static_cast<double>(d)) *
           box_product_integral(box);
}

AggBound agg_bound_poissonized(double lambda, std::size_t d, const BoxRegion& box,
                               std::size_t m) {
    if (!(lambda > 0.0)) throw std::invalid_argument("bad lambda");
    if (m > d) throw std::invalid_argument("m exceeds d");
    const double p =
        std::exp2(static_cast<double>(m) - static_cast<double>(d)) * box_product_integral(box);
    const double dd = static_cast<double>(d);
    AggBound bound;
    bound.b1 = lambda * (lambda - 1.0) * (4.0 * lambda - 6.0) * p * p;
    bound.b2 = lambda * (lambda - 1.0) * 2.0 * (lambda - 2.0) *
               (std::exp(-dd * std::log(3.0)) + std::exp(-dd * std::log(6.0)));
    bound.total = bound.b1 + bound.b2;
    return bound;
}

OracleReport oracle_report(std::uint64_t n, std::size_t d, std::uint32_t r_max,
                           const BoxRegion& box, std::size_t m, bool poissonized) {
    OracleReport report;
    report.n = n;
    report.d = d;
    report.r_max = r_max;
    report.poissonized = poissonized;
    report.c_star = n >= 2 ? implied_offset_star(n, d) : 0.0;
    report.c_starstar = n >= 3 ? implied_offset_starstar(n, d) : 0.0;

    const double lambda = static_cast<double>(n);
    if (poissonized) {
        report.expected_pareto = lambda - expected_nonpareto_poissonized(lambda, d);
        report.expected_nonpareto = expected_nonpareto_poissonized(lambda, d);
        for (std::uint32_t r = 1; r <= r_max; ++r)
            report.expected_layers[r] = expected_layer_count_poissonized(lambda, d, r);
        report.expected_weighted = expected_weighted_count_poissonized(lambda, d, box, m);
        report.agg = agg_bound_poissonized(lambda, d, box, m);
    } else {
        report.expected_pareto = expected_layer_count(n, d, 0);
        report.expected_nonpareto = expected_nonpareto(n, d);
        for (std::uint32_t r = 1; r <= r_max && r <= n - 1; ++r)
            report.expected_layers[r] = expected_layer_count(n, d, r);
        report.expected_weighted = expected_weighted_count(n, d, box, m);
        report.agg = n >= 2 ? agg_bound(n, d, box, m) : AggBound{};
    }
    report.limit_mean = n >= 2 ? limit_nonpareto_mean(report.c_star) : 0.0;
    if (n >= 3)
        for (std::uint32_t r = 2; r <= r_max; ++r)
            report.limit_layers[r] = limit_layer_mean(r, report.c_starstar);
    report.stirling = n >= 2 ? stirling_factor(n, d) : 0.0;
    return report;
}

}  // namespace pareto
