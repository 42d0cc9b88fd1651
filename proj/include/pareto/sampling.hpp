// Uniform sample generation on deterministic streams, the dimension-nested
// coupling across dimensions, and the poissonized (random sample size)
// variant.

#ifndef PARETO_SAMPLING_HPP
#define PARETO_SAMPLING_HPP

#include <cstdint>
#include <vector>

#include "pareto/sample.hpp"
#include "pareto/stream.hpp"

namespace pareto {

// Samples sharing one coordinate pool across a list of dimensions
// d_1 < ... < d_L: the dimension-d_j sample is exactly the first d_j
// columns. Under this coupling a point that is non-Pareto in a higher
// dimension is non-Pareto in every lower one.
struct CoupledSample {
    std::size_t n = 0;
    std::vector<std::size_t> dims;
    SampleMatrix pool;  // n x dims.back()

    SampleMatrix slice(std::size_t dim) const;
};

// n*d independent uniforms in [0,1), laid out row-major. Identical output
// for identical StreamSpec on every platform and worker count.
SampleMatrix sample_uniform(std::size_t n, std::size_t d, const StreamSpec& spec);

CoupledSample coupled_samples(std::size_t n, std::vector<std::size_t> dims,
                              const StreamSpec& spec);

// Poisson(lambda) by inversion for lambda <= 30; above that the draw is the
// sum of ceil(lambda/30) independent inversion draws of intensity
// lambda/ceil(lambda/30) (Poisson infinite divisibility), consuming one
// auxiliary uniform per chunk. Fully reproducible.
std::uint64_t sample_poisson(double lambda, const Stream& stream);

// Draws N ~ Poisson(lambda), then N uniform points in [0,1]^d. N may be 0.
SampleMatrix poissonized_sample(double lambda, std::size_t d, const StreamSpec& spec);

}  // namespace pareto

#endif
