#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "pareto/dominance.hpp"
#include "pareto/sampling.hpp"

using namespace pareto;

TEST_CASE("sample_uniform: deterministic, stream-separated, in [0,1)") {
    const auto a = sample_uniform(3, 2, {42, 0});
    const auto b = sample_uniform(3, 2, {42, 0});
    CHECK(a.data() == b.data());  // bit-identical

    const auto c = sample_uniform(3, 2, {42, 1});
    CHECK(a.data() != c.data());

    const auto d = sample_uniform(3, 2, {43, 0});
    CHECK(a.data() != d.data());

    for (double v : a.data()) {
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
    REQUIRE(a.provenance().has_value());
    CHECK(a.provenance()->master_seed == 42);
    CHECK(a.provenance()->replicate_index == 0);
}

TEST_CASE("sample_uniform: empirical mean of 1e6 variates") {
    const auto s = sample_uniform(10000, 100, {7, 0});
    double acc = 0;
    for (double v : s.data()) acc += v;
    const double mean = acc / 1e6;
    CHECK(std::fabs(mean - 0.5) < 0.002);  // 4 sigma is ~0.00115
}

TEST_CASE("sample_uniform: resource budget enforced") {
    CHECK_THROWS_AS((void)sample_uniform(1u << 20, 1u << 10, {1, 0}), resource_error);
    CHECK_THROWS_AS((void)sample_uniform(5, 0, {1, 0}), std::invalid_argument);
}

TEST_CASE("marginal uniformity: per-coordinate KS below the 1% critical value") {
    // Pooled draws across replicates, one KS per coordinate against F(x) = x.
    const std::size_t n = 500, d = 8, reps = 50;
    std::vector<std::vector<double>> per_coord(d);
    for (std::uint32_t rep = 0; rep < reps; ++rep) {
        const auto s = sample_uniform(n, d, {20250808, rep});
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < d; ++k) per_coord[k].push_back(s(i, k));
    }
    for (std::size_t k = 0; k < d; ++k) {
        auto& points = per_coord[k];
        std::sort(points.begin(), points.end());
        const double m = static_cast<double>(points.size());
        double d_stat = 0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            d_stat = std::max(d_stat, points[i] - static_cast<double>(i) / m);
            d_stat = std::max(d_stat, static_cast<double>(i + 1) / m - points[i]);
        }
        CHECK(d_stat < 1.63 / std::sqrt(m));  // 1% critical value
    }
}

TEST_CASE("coupled_samples: slicing equals sample_uniform, dims validated") {
    const auto coupled = coupled_samples(40, {2, 5}, {99, 4});
    const auto direct2 = sample_uniform(40, 2, {99, 4});
    const auto direct5 = sample_uniform(40, 5, {99, 4});
    CHECK(coupled.slice(2).data() == direct2.data());
    CHECK(coupled.slice(5).data() == direct5.data());
    CHECK(coupled.pool.data() == direct5.data());

    CHECK_THROWS_AS((void)coupled_samples(40, {3, 3}, {99, 4}), std::invalid_argument);
    CHECK_THROWS_AS((void)coupled_samples(40, {}, {99, 4}), std::invalid_argument);
}

TEST_CASE("coupled_samples: non-Pareto sets nest across dimensions (2, 5)") {
    for (std::uint32_t rep = 0; rep < 200; ++rep) {
        const auto coupled = coupled_samples(50, {2, 5}, {1234, rep});
        const auto lo = dominance_counts(coupled.slice(2), CountStrategy::sum_pruned);
        const auto hi = dominance_counts(coupled.slice(5), CountStrategy::sum_pruned);
        for (std::size_t i = 0; i < 50; ++i) {
            if (hi.counts[i] > 0) CHECK(lo.counts[i] > 0);
        }
    }
}

TEST_CASE("property: coupling monotonicity over dims (5, 10, 20, 40)") {
    // 1000 coupled replicates: per-index counts never increase with d, hence
    // the non-Pareto sets nest; zero violations expected.
    std::uint64_t violations = 0;
    const std::size_t n = 64;
    const std::vector<std::size_t> dims{5, 10, 20, 40};
    for (std::uint32_t rep = 0; rep < 1000; ++rep) {
        const auto coupled = coupled_samples(n, dims, {5150, rep});
        std::vector<std::uint32_t> prev(n), cur(n);
        for (std::size_t j = 0; j < dims.size(); ++j) {
            detail::dominance_counts_strided(coupled.pool.data().data(), n, dims[j],
                                             dims.back(), CountStrategy::sum_pruned,
                                             cur.data());
            if (j > 0)
                for (std::size_t i = 0; i < n; ++i) violations += cur[i] > prev[i];
            std::swap(prev, cur);
        }
    }
    CHECK(violations == 0);
}

TEST_CASE("sample_poisson: inversion regime moments and determinism") {
    Stream st({808, 0});
    CHECK(sample_poisson(5.0, st) == sample_poisson(5.0, st));  // pure function of the stream
    CHECK_THROWS_AS((void)sample_poisson(0.0, st), std::invalid_argument);
    CHECK_THROWS_AS((void)sample_poisson(-1.0, st), std::invalid_argument);

    // Empirical mean of N over 1e5 draws at lambda = 5 within 5 +- 0.03.
    double acc = 0;
    for (std::uint32_t rep = 0; rep < 100000; ++rep)
        acc += static_cast<double>(sample_poisson(5.0, Stream({606, rep})));
    CHECK(std::fabs(acc / 1e5 - 5.0) < 0.03);
}

TEST_CASE("sample_poisson: chunked regime (lambda > 30) moments") {
    double acc = 0, acc2 = 0;
    const std::uint32_t reps = 20000;
    for (std::uint32_t rep = 0; rep < reps; ++rep) {
        const auto n = static_cast<double>(sample_poisson(100.0, Stream({607, rep})));
        acc += n;
        acc2 += n * n;
    }
    const double mean = acc / reps;
    const double var = acc2 / reps - mean * mean;
    CHECK(std::fabs(mean - 100.0) < 4.0 * std::sqrt(100.0 / reps));
    CHECK(std::fabs(var - 100.0) < 0.05 * 100.0 * 4.0);
}

TEST_CASE("poissonized_sample: degenerate intensity gives an empty, usable sample") {
    const auto s = poissonized_sample(1e-9, 4, {11, 0});
    CHECK(s.size() == 0);
    CHECK(s.dimension() == 4);
    const auto summary = dominance_counts(s, CountStrategy::sum_pruned);
    CHECK(summary.counts.empty());
    const auto stats = box_statistics(s, summary, ProjectionSpec::first_coordinates(1),
                                      BoxRegion::unit_cube(1));
    CHECK(stats.nonpareto_count == 0);
}

TEST_CASE("poissonized_sample: deterministic and coordinates match the fixed-n layout") {
    const auto a = poissonized_sample(12.0, 3, {21, 9});
    const auto b = poissonized_sample(12.0, 3, {21, 9});
    CHECK(a.size() == b.size());
    CHECK(a.data() == b.data());
    if (a.size() > 0) {
        // Point coordinates come from the same slots as a fixed-n sample.
        const auto fixed = sample_uniform(a.size(), 3, {21, 9});
        CHECK(a.data() == fixed.data());
    }
}
