#include "pareto/dominance.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

namespace pareto {

ProjectionSpec ProjectionSpec::first_coordinates(std::size_t m) {
    ProjectionSpec p;
    p.indices.resize(m);
    std::iota(p.indices.begin(), p.indices.end(), 0u);
    return p;
}

void ProjectionSpec::validate(std::size_t sample_dimension) const {
    if (indices.empty()) throw std::invalid_argument("ProjectionSpec: empty index list");
    for (std::size_t k = 0; k < indices.size(); ++k) {
        if (k > 0 && indices[k] <= indices[k - 1])
            throw std::invalid_argument("ProjectionSpec: indices must be strictly increasing");
        if (indices[k] >= sample_dimension)
            throw std::invalid_argument("ProjectionSpec: index exceeds sample dimension");
    }
}

BoxRegion BoxRegion::unit_cube(std::size_t m) {
    BoxRegion b;
    b.bounds.assign(m, {0.0, 1.0});
    return b;
}

void BoxRegion::validate() const {
    if (bounds.empty()) throw std::invalid_argument("BoxRegion: empty bounds");
    for (const auto& [a, b] : bounds) {
        if (!(a >= 0.0 && a < b && b <= 1.0))
            throw std::invalid_argument("BoxRegion: bounds must satisfy 0 <= a < b <= 1");
    }
}

bool BoxRegion::contains(std::span<const double> x) const noexcept {
    for (std::size_t k = 0; k < bounds.size(); ++k)
        if (x[k] < bounds[k].first || x[k] > bounds[k].second) return false;
    return true;
}

bool dominates(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty())
        throw std::invalid_argument("dominates: dimension mismatch");
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] < b[k]) return false;
    return true;
}

namespace detail {

namespace {

// X_j <= X_i coordinatewise, early exit.
inline bool row_leq(const double* xj, const double* xi, std::size_t d) {
    for (std::size_t k = 0; k < d; ++k)
        if (xj[k] > xi[k]) return false;
    return true;
}

void counts_naive(const double* data, std::size_t n, std::size_t d, std::size_t stride,
                  std::uint32_t* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double* xi = data + i * stride;
        std::uint32_t c = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            c += row_leq(data + j * stride, xi, d);
        }
        out[i] = c;
    }
}

void counts_sum_pruned(const double* data, std::size_t n, std::size_t d, std::size_t stride,
                       std::uint32_t* out) {
    std::vector<double> sums(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* x = data + i * stride;
        double s = 0;
        for (std::size_t k = 0; k < d; ++k) s += x[k];
        sums[i] = s;
    }
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return sums[a] < sums[b]; });

    // Sum-ascending layout. The leading coordinates live in dense columns
    // so the hot prefilter streams through cache branch-free; the remaining
    // coordinates are packed per row for the few candidates that survive.
    constexpr std::size_t kPrefilter = 4;
    const std::size_t lead = std::min(d, kPrefilter);
    const std::size_t tail_width = d - lead;
    std::vector<double> packed_sums(n);
    std::array<std::vector<double>, kPrefilter> cols;
    for (std::size_t k = 0; k < lead; ++k) cols[k].resize(n);
    std::vector<double> tail(n * tail_width);
    for (std::size_t pos = 0; pos < n; ++pos) {
        const double* src = data + order[pos] * stride;
        packed_sums[pos] = sums[order[pos]];
        for (std::size_t k = 0; k < lead; ++k) cols[k][pos] = src[k];
        for (std::size_t k = 0; k < tail_width; ++k) tail[pos * tail_width + k] = src[lead + k];
    }
    const double* c0 = lead > 0 ? cols[0].data() : nullptr;
    const double* c1 = lead > 1 ? cols[1].data() : nullptr;
    const double* c2 = lead > 2 ? cols[2].data() : nullptr;
    const double* c3 = lead > 3 ? cols[3].data() : nullptr;
    std::vector<std::uint32_t> survivors(n);

    // Candidates for position i: every j != i with sum <= sum_i (ties
    // included). upper is the first position with a strictly larger sum.
    std::size_t upper = 0;
    for (std::size_t pos_i = 0; pos_i < n; ++pos_i) {
        const double si = packed_sums[pos_i];
        while (upper < n && packed_sums[upper] <= si) ++upper;
        const double x0 = lead > 0 ? c0[pos_i] : 0.0;
        const double x1 = lead > 1 ? c1[pos_i] : 0.0;
        const double x2 = lead > 2 ? c2[pos_i] : 0.0;
        const double x3 = lead > 3 ? c3[pos_i] : 0.0;
        std::uint32_t count = 0;

        if (d <= kPrefilter) {
            // Fully dense: count branch-free.
            switch (d) {
                case 1:
                    for (std::size_t j = 0; j < upper; ++j)
                        count += (c0[j] <= x0) & (j != pos_i);
                    break;
                case 2:
                    for (std::size_t j = 0; j < upper; ++j)
                        count += (c0[j] <= x0) & (c1[j] <= x1) & (j != pos_i);
                    break;
                case 3:
                    for (std::size_t j = 0; j < upper; ++j)
                        count += (c0[j] <= x0) & (c1[j] <= x1) & (c2[j] <= x2) & (j != pos_i);
                    break;
                default:
                    for (std::size_t j = 0; j < upper; ++j)
                        count += (c0[j] <= x0) & (c1[j] <= x1) & (c2[j] <= x2) &
                                 (c3[j] <= x3) & (j != pos_i);
            }
        } else {
            // Branch-free gather of prefilter survivors, then the tail check.
            std::size_t hits = 0;
            for (std::size_t j = 0; j < upper; ++j) {
                survivors[hits] = static_cast<std::uint32_t>(j);
                hits += (c0[j] <= x0) & (c1[j] <= x1) & (c2[j] <= x2) & (c3[j] <= x3);
            }
            const double* ti = tail.data() + pos_i * tail_width;
            for (std::size_t s = 0; s < hits; ++s) {
                const std::size_t j = survivors[s];
                if (j == pos_i) continue;
                const double* tj = tail.data() + j * tail_width;
                bool leq = true;
                for (std::size_t k = 0; k < tail_width; ++k) {
                    if (tj[k] > ti[k]) {
                        leq = false;
                        break;
                    }
                }
                count += leq;
            }
        }
        out[order[pos_i]] = count;
    }
}

}  // namespace

void dominance_counts_strided(const double* data, std::size_t n, std::size_t d,
                              std::size_t stride, CountStrategy strategy,
                              std::uint32_t* out_counts) {
    if (n == 0) return;
    if (d == 0 || stride < d) throw std::invalid_argument("dominance_counts: bad dimensions");
    if (strategy == CountStrategy::naive)
        counts_naive(data, n, d, stride, out_counts);
    else
        counts_sum_pruned(data, n, d, stride, out_counts);
}

}  // namespace detail

DominanceSummary dominance_counts(const SampleMatrix& sample, CountStrategy strategy) {
    const std::size_t n = sample.size();
    DominanceSummary summary;
    summary.counts.assign(n, 0u);
    if (n > 0)
        detail::dominance_counts_strided(sample.data().data(), n, sample.dimension(),
                                         sample.dimension(), strategy, summary.counts.data());
    summary.pareto.resize(n);
    for (std::size_t i = 0; i < n; ++i) summary.pareto[i] = (summary.counts[i] == 0);
    return summary;
}

LayerHistogram layer_histogram(const DominanceSummary& summary) {
    LayerHistogram h;
    for (std::uint32_t c : summary.counts) {
        if (c == 0)
            ++h.pareto_count;
        else
            ++h.layers[c];
    }
    return h;
}

BoxStatistics box_statistics(const SampleMatrix& sample, const DominanceSummary& summary,
                             const ProjectionSpec& proj, const BoxRegion& box) {
    proj.validate(sample.dimension());
    box.validate();
    if (box.dimension() != proj.dimension())
        throw std::invalid_argument("box_statistics: box and projection dimensions differ");
    if (summary.counts.size() != sample.size())
        throw std::invalid_argument("box_statistics: summary does not match sample");

    const std::size_t m = proj.dimension();
    BoxStatistics stats;
    std::vector<double> projected(m);
    for (std::size_t i = 0; i < sample.size(); ++i) {
        if (summary.counts[i] == 0) continue;
        const auto row = sample.row(i);
        for (std::size_t k = 0; k < m; ++k) projected[k] = row[proj.indices[k]];
        if (!box.contains(projected)) continue;
        stats.weighted_count += summary.counts[i];
        stats.nonpareto_count += 1;
        stats.projected_points.push_back(projected);
    }
    return stats;
}

BoxStatistics box_statistics(const SampleMatrix& sample, const ProjectionSpec& proj,
                             const BoxRegion& box) {
    return box_statistics(sample, dominance_counts(sample, CountStrategy::sum_pruned), proj, box);
}

}  // namespace pareto
