#ifndef PARETO_SAMPLE_HPP
#define PARETO_SAMPLE_HPP

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace pareto {

// Thrown when a requested sample exceeds the configured memory budget.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Provenance {
    std::uint64_t master_seed = 0;
    std::uint32_t replicate_index = 0;
};

// n points in [0,1]^d, row-major. n may be zero (empty poissonized draw).
class SampleMatrix {
public:
    SampleMatrix() = default;

    SampleMatrix(std::size_t n, std::size_t d)
        : n_(n), d_(d), coords_(n * d, 0.0) {
        if (d == 0) throw std::invalid_argument("SampleMatrix: dimension must be positive");
    }

    static SampleMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
        SampleMatrix s(rows.size(), rows.size() ? rows.begin()->size() : 1);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != s.d_) throw std::invalid_argument("SampleMatrix: ragged rows");
            std::size_t k = 0;
            for (double v : row) s.coords_[i * s.d_ + k++] = v;
            ++i;
        }
        return s;
    }

    std::size_t size() const noexcept { return n_; }
    std::size_t dimension() const noexcept { return d_; }

    std::span<const double> row(std::size_t i) const noexcept {
        return {coords_.data() + i * d_, d_};
    }

    double operator()(std::size_t i, std::size_t k) const noexcept { return coords_[i * d_ + k]; }
    double& operator()(std::size_t i, std::size_t k) noexcept { return coords_[i * d_ + k]; }

    const std::vector<double>& data() const noexcept { return coords_; }
    std::vector<double>& data() noexcept { return coords_; }

    const std::optional<Provenance>& provenance() const noexcept { return provenance_; }
    void set_provenance(Provenance p) noexcept { provenance_ = p; }

    // Every coordinate must lie in [0,1].
    void validate() const {
        for (double v : coords_)
            if (!(v >= 0.0 && v <= 1.0))
                throw std::invalid_argument("SampleMatrix: coordinate outside [0,1]");
    }

private:
    std::size_t n_ = 0;
    std::size_t d_ = 1;
    std::vector<double> coords_;
    std::optional<Provenance> provenance_;
};

}  // namespace pareto

#endif
