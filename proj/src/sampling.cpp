#include "pareto/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace pareto {

namespace {

// Memory budget: coordinates per sample (1 GiB of doubles).
constexpr std::uint64_t kMaxCoordinates = std::uint64_t{1} << 27;

void check_budget(std::uint64_t n, std::uint64_t d) {
    if (d == 0) throw std::invalid_argument("sample: dimension must be positive");
    if (d > Stream::kMaxDimension) throw std::invalid_argument("sample: dimension too large");
    if (n > Stream::kMaxPoints || n * d > kMaxCoordinates)
        throw resource_error("sample: n*d exceeds the configured memory budget");
}

// Single inversion draw, lambda <= 30; consumes one uniform.
std::uint64_t poisson_inversion(double lambda, double u) {
    double p = std::exp(-lambda);
    double cdf = p;
    std::uint64_t k = 0;
    const std::uint64_t cap =
        static_cast<std::uint64_t>(lambda + 60.0 * std::sqrt(lambda) + 100.0);
    while (u >= cdf && k < cap) {
        ++k;
        p *= lambda / static_cast<double>(k);
        cdf += p;
    }
    return k;
}

}  // namespace

SampleMatrix sample_uniform(std::size_t n, std::size_t d, const StreamSpec& spec) {
    if (n == 0) throw std::invalid_argument("sample_uniform: n must be positive");
    check_budget(n, d);
    Stream stream(spec);
    SampleMatrix sample(n, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < d; ++k) sample(i, k) = stream.coordinate(i, k);
    sample.set_provenance({spec.master_seed, spec.replicate_index});
    return sample;
}

SampleMatrix CoupledSample::slice(std::size_t dim) const {
    SampleMatrix s(n, dim);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < dim; ++k) s(i, k) = pool(i, k);
    if (pool.provenance()) s.set_provenance(*pool.provenance());
    return s;
}

CoupledSample coupled_samples(std::size_t n, std::vector<std::size_t> dims,
                              const StreamSpec& spec) {
    if (dims.empty()) throw std::invalid_argument("coupled_samples: empty dimension list");
    for (std::size_t j = 1; j < dims.size(); ++j)
        if (dims[j] <= dims[j - 1])
            throw std::invalid_argument("coupled_samples: dims must be strictly increasing");
    CoupledSample c;
    c.n = n;
    c.dims = std::move(dims);
    c.pool = sample_uniform(n, c.dims.back(), spec);
    return c;
}

std::uint64_t sample_poisson(double lambda, const Stream& stream) {
    if (!(lambda > 0.0)) throw std::invalid_argument("sample_poisson: lambda must be positive");
    constexpr double kInversionCeiling = 30.0;
    if (lambda <= kInversionCeiling) return poisson_inversion(lambda, stream.aux(0));
    const auto chunks = static_cast<std::uint64_t>(std::ceil(lambda / kInversionCeiling));
    const double per_chunk = lambda / static_cast<double>(chunks);
    std::uint64_t total = 0;
    for (std::uint64_t j = 0; j < chunks; ++j)
        total += poisson_inversion(per_chunk, stream.aux(j));
    return total;
}

SampleMatrix poissonized_sample(double lambda, std::size_t d, const StreamSpec& spec) {
    Stream stream(spec);
    const std::uint64_t drawn = sample_poisson(lambda, stream);
    check_budget(drawn, d);
    SampleMatrix sample(drawn, d);
    for (std::uint64_t i = 0; i < drawn; ++i)
        for (std::size_t k = 0; k < d; ++k) sample(i, k) = stream.coordinate(i, k);
    sample.set_provenance({spec.master_seed, spec.replicate_index});
    return sample;
}

}  // namespace pareto
