// Statistical verdicts over replicate outputs: empirical distributions,
// total-variation and chi-square comparisons against Poisson laws, KS tests
// against the limiting atom-position law, void-probability checks, and
// moment summaries with jackknife errors.

#ifndef PARETO_DIAGNOSTICS_HPP
#define PARETO_DIAGNOSTICS_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pareto/dominance.hpp"
#include "pareto/special.hpp"

namespace pareto {

struct EmpiricalDistribution {
    std::map<std::uint64_t, std::uint64_t> counts;
    std::uint64_t total = 0;

    void add(std::uint64_t value, std::uint64_t weight = 1) {
        counts[value] += weight;
        total += weight;
    }
    double frequency(std::uint64_t value) const {
        auto it = counts.find(value);
        return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total);
    }
    std::uint64_t max_value() const { return counts.empty() ? 0 : counts.rbegin()->first; }
};

struct TestVerdict {
    std::string name;
    double statistic = 0;
    double threshold = 0;  // decision threshold (or level, see details)
    double p_value = -1;   // < 0 when the test is threshold-based
    bool pass = false;
    bool applicable = true;
    std::string details;
};

// (1/2) sum_k |emp(k)/total - pmf(k)|, with the Poisson tail beyond the
// largest observed value added in closed form. Always in [0, 1].
double tv_distance(const EmpiricalDistribution& emp, double mean);

// Pearson chi-square against Poisson(mean). Cells are pooled upward from 0
// until each expected count reaches min_expected_cell; the last cell absorbs
// the tail. Not applicable with fewer than two pooled cells.
TestVerdict chi_square_poisson(const EmpiricalDistribution& emp, double mean,
                               double min_expected_cell = 5.0, double level = 0.01);

// One-sample KS of pooled projected coordinates against F(x) = x^2 (the
// normalized single-coordinate atom law), asymptotic 5% threshold
// 1.36/sqrt(N). Not applicable with fewer than 10 points.
TestVerdict ks_projected_marginal(std::vector<double> points);

// Wilson 99.7% (z = 3) interval check of the empirical frequency of
// {T(U) = 0} against exp(-intensity_mass(box, m, c)). Not applicable with
// fewer than 100 replicates.
TestVerdict void_probability_check(const std::vector<bool>& void_indicators,
                                   const BoxRegion& box, std::size_t m, double c);

struct MomentSummary {
    std::size_t count = 0;
    double mean = 0;
    double variance = 0;     // unbiased
    double se_mean = 0;      // jackknife standard error of the mean
    double se_variance = 0;  // jackknife standard error of the variance
};

MomentSummary mean_variance_summary(std::span<const std::uint32_t> values);
MomentSummary mean_variance_summary(std::span<const double> values);

}  // namespace pareto

#endif
