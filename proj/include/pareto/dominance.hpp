// Dominance relations, per-point dominance counts, Pareto flags, layer
// counts, and box-restricted statistics of a sample.
//
// x dominates y (x >= y) iff every coordinate of x is >= the matching
// coordinate of y. D(i) counts the points that point i dominates; point i
// is Pareto-minimal iff D(i) = 0. All functions here are pure and safe to
// call concurrently.

#ifndef PARETO_DOMINANCE_HPP
#define PARETO_DOMINANCE_HPP

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "pareto/sample.hpp"

namespace pareto {

enum class CountStrategy { naive, sum_pruned };

struct DominanceSummary {
    std::vector<std::uint32_t> counts;  // D(i)
    std::vector<bool> pareto;           // counts[i] == 0
};

struct LayerHistogram {
    std::uint64_t pareto_count = 0;                 // points with D(i) = 0
    std::map<std::uint32_t, std::uint64_t> layers;  // r >= 1 -> #points with D(i) = r
};

// Coordinate projection onto k_1 < ... < k_m (zero-based in code; the CLI
// and file formats use one-based indices).
struct ProjectionSpec {
    std::vector<std::uint32_t> indices;

    static ProjectionSpec first_coordinates(std::size_t m);
    std::size_t dimension() const noexcept { return indices.size(); }
    void validate(std::size_t sample_dimension) const;
};

// Axis-aligned box in [0,1]^m with closed bounds a_k <= x_k <= b_k.
struct BoxRegion {
    std::vector<std::pair<double, double>> bounds;

    static BoxRegion unit_cube(std::size_t m);
    std::size_t dimension() const noexcept { return bounds.size(); }
    void validate() const;
    bool contains(std::span<const double> x) const noexcept;
};

struct BoxStatistics {
    std::uint64_t weighted_count = 0;    // sum of D(i) over box hits  (S)
    std::uint64_t nonpareto_count = 0;   // # non-Pareto points in box (T)
    std::vector<std::vector<double>> projected_points;
};

// True iff a >= b coordinatewise; early-exits on the first failing
// coordinate. Dimension mismatch throws std::invalid_argument.
bool dominates(std::span<const double> a, std::span<const double> b);

// counts[i] = #{j != i : X_j <= X_i}. Both strategies return identical
// results; sum_pruned tests only candidates whose coordinate sum does not
// exceed that of i (a necessary condition for domination).
DominanceSummary dominance_counts(const SampleMatrix& sample, CountStrategy strategy);

LayerHistogram layer_histogram(const DominanceSummary& summary);

// S, T, and the projected non-Pareto atoms restricted to the box.
BoxStatistics box_statistics(const SampleMatrix& sample, const DominanceSummary& summary,
                             const ProjectionSpec& proj, const BoxRegion& box);
BoxStatistics box_statistics(const SampleMatrix& sample, const ProjectionSpec& proj,
                             const BoxRegion& box);

namespace detail {
// Row-strided kernel; lets callers slice the leading d columns of a wider
// coordinate pool without copying.
void dominance_counts_strided(const double* data, std::size_t n, std::size_t d,
                              std::size_t stride, CountStrategy strategy,
                              std::uint32_t* out_counts);
}

}  // namespace pareto

#endif
