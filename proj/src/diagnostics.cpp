#include "pareto/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pareto/oracle.hpp"

namespace pareto {

double tv_distance(const EmpiricalDistribution& emp, double mean) {
    if (emp.total == 0) throw std::invalid_argument("tv_distance: empty distribution");
    if (!(mean > 0.0)) throw std::invalid_argument("tv_distance: mean must be positive");

    const std::uint64_t kmax = emp.max_value();
    double acc = 0.0;
    double observed_pmf_mass = 0.0;
    for (const auto& [value, count] : emp.counts) {
        const double pk = poisson_pmf(value, mean);
        acc += std::fabs(static_cast<double>(count) / static_cast<double>(emp.total) - pk);
        observed_pmf_mass += pk;
    }
    // Values below kmax never observed contribute their full pmf, the
    // Poisson tail above kmax is added in closed form.
    acc += std::max(0.0, poisson_cdf(kmax, mean) - observed_pmf_mass);
    acc += poisson_tail_above(kmax, mean);
    return 0.5 * acc;
}

TestVerdict chi_square_poisson(const EmpiricalDistribution& emp, double mean,
                               double min_expected_cell, double level) {
    TestVerdict v;
    v.name = "chi_square_poisson";
    v.threshold = level;
    if (emp.total == 0) throw std::invalid_argument("chi_square_poisson: empty distribution");
    if (!(mean > 0.0)) {
        v.applicable = false;
        v.details = "non-positive reference mean";
        return v;
    }

    const double total = static_cast<double>(emp.total);
    const std::uint64_t kmax = emp.max_value();
    std::vector<double> expected, observed;
    double e_acc = 0.0, o_acc = 0.0;
    for (std::uint64_t k = 0; k <= kmax; ++k) {
        e_acc += total * poisson_pmf(k, mean);
        auto it = emp.counts.find(k);
        o_acc += (it == emp.counts.end()) ? 0.0 : static_cast<double>(it->second);
        if (e_acc >= min_expected_cell) {
            expected.push_back(e_acc);
            observed.push_back(o_acc);
            e_acc = o_acc = 0.0;
        }
    }
    // Tail cell: everything above kmax (plus any unflushed remainder).
    e_acc += total * poisson_tail_above(kmax, mean);
    if (!expected.empty() && e_acc < min_expected_cell) {
        expected.back() += e_acc;
        observed.back() += o_acc;
    } else {
        expected.push_back(e_acc);
        observed.push_back(o_acc);
    }

    if (expected.size() < 2) {
        v.applicable = false;
        v.details = "fewer than 2 cells after pooling";
        return v;
    }

    double statistic = 0.0;
    for (std::size_t b = 0; b < expected.size(); ++b) {
        const double diff = observed[b] - expected[b];
        statistic += diff * diff / expected[b];
    }
    const double df = static_cast<double>(expected.size() - 1);
    v.statistic = statistic;
    v.p_value = chi_square_p_value(statistic, df);
    v.pass = v.p_value > level;
    std::ostringstream details;
    details << expected.size() << " cells, df=" << df << ", mean=" << mean;
    v.details = details.str();
    return v;
}

TestVerdict ks_projected_marginal(std::vector<double> points) {
    TestVerdict v;
    v.name = "ks_projected_marginal";
    if (points.size() < 10) {
        v.applicable = false;
        v.details = "fewer than 10 pooled points";
        return v;
    }
    std::sort(points.begin(), points.end());
    const double n = static_cast<double>(points.size());
    double d_stat = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double x = points[i];
        if (x < 0.0 || x > 1.0)
            throw std::invalid_argument("ks_projected_marginal: point outside [0,1]");
        const double f = x * x;  // atom-position cdf on [0,1]
        d_stat = std::max(d_stat, f - static_cast<double>(i) / n);
        d_stat = std::max(d_stat, static_cast<double>(i + 1) / n - f);
    }
    v.statistic = d_stat;
    v.threshold = 1.36 / std::sqrt(n);  // asymptotic 5% level
    v.pass = d_stat <= v.threshold;
    std::ostringstream details;
    details << points.size() << " points vs F(x)=x^2";
    v.details = details.str();
    return v;
}

TestVerdict void_probability_check(const std::vector<bool>& void_indicators,
                                   const BoxRegion& box, std::size_t m, double c) {
    TestVerdict v;
    v.name = "void_probability";
    if (void_indicators.size() < 100) {
        v.applicable = false;
        v.details = "fewer than 100 replicates";
        return v;
    }
    const double r = static_cast<double>(void_indicators.size());
    double hits = 0.0;
    for (bool b : void_indicators) hits += b ? 1.0 : 0.0;
    const double phat = hits / r;
    const double target = std::exp(-intensity_mass(box, m, c));

    const double z = 3.0;  // 99.7% Wilson interval
    const double denom = 1.0 + z * z / r;
    const double center = (phat + z * z / (2.0 * r)) / denom;
    const double half =
        z * std::sqrt(phat * (1.0 - phat) / r + z * z / (4.0 * r * r)) / denom;

    v.statistic = phat;
    v.threshold = half;
    v.pass = std::fabs(target - center) <= half * (1.0 + 1e-12) + 1e-15;
    std::ostringstream details;
    details << "target=" << target << " wilson_center=" << center << " halfwidth=" << half;
    v.details = details.str();
    return v;
}

namespace {

template <typename T>
MomentSummary summarize(std::span<const T> values) {
    const std::size_t r = values.size();
    if (r < 2) throw std::invalid_argument("mean_variance_summary: need at least 2 values");
    MomentSummary s;
    s.count = r;
    double acc = 0.0;
    for (T x : values) acc += static_cast<double>(x);
    s.mean = acc / static_cast<double>(r);

    double ss = 0.0;
    for (T x : values) {
        const double y = static_cast<double>(x) - s.mean;
        ss += y * y;
    }
    const double rr = static_cast<double>(r);
    s.variance = ss / (rr - 1.0);
    s.se_mean = std::sqrt(s.variance / rr);

    if (r >= 3) {
        // Leave-one-out variances from centered sufficient statistics.
        double loo_acc = 0.0;
        std::vector<double> loo(r);
        for (std::size_t i = 0; i < r; ++i) {
            const double y = static_cast<double>(values[i]) - s.mean;
            loo[i] = (ss - y * y * rr / (rr - 1.0)) / (rr - 2.0);
            loo_acc += loo[i];
        }
        const double loo_mean = loo_acc / rr;
        double dev = 0.0;
        for (double vi : loo) dev += (vi - loo_mean) * (vi - loo_mean);
        s.se_variance = std::sqrt((rr - 1.0) / rr * dev);
    }
    return s;
}

}  // namespace

MomentSummary mean_variance_summary(std::span<const std::uint32_t> values) {
    return summarize(values);
}

MomentSummary mean_variance_summary(std::span<const double> values) {
    return summarize(values);
}

}  // namespace pareto
