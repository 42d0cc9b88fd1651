// Deterministic, splittable random streams for replicated experiments.
//
// Every random quantity of a replicate is a pure function of
// (master_seed, replicate_index): no generator state is carried between
// draws, so results do not depend on scheduling or worker count.

#ifndef PARETO_STREAM_HPP
#define PARETO_STREAM_HPP

#include <cstdint>

namespace pareto {

// Identifies one replicate's random stream.
struct StreamSpec {
    std::uint64_t master_seed = 0;
    std::uint32_t replicate_index = 0;
};

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// SplitMix64 finalizer (Stafford mix13); bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

}  // namespace detail

// Counter-based generator. The value at slot c is
//
//     mix64(key + (c + 1) * 0x9E3779B97F4A7C15)
//
// with key = mix64(mix64(master_seed) + (replicate_index + 1) * golden).
// Slots are assigned by convention rather than consumed sequentially:
//
//   * coordinate k of sample point i reads slot i * 2^20 + k, so the first
//     d columns of an (n, d')-sample, d' >= d, are bit-identical to the
//     (n, d)-sample -- dimension-nested coupling holds by construction;
//   * auxiliary draws (the poissonized sample size) read slots 2^62, 2^62+1, ...
//
// Coordinates are 53-bit-mantissa uniforms in [0, 1).
class Stream {
public:
    static constexpr std::uint64_t kCoordSlotStride = std::uint64_t{1} << 20;
    static constexpr std::uint64_t kAuxSlotBase = std::uint64_t{1} << 62;
    static constexpr std::uint64_t kMaxDimension = kCoordSlotStride;
    static constexpr std::uint64_t kMaxPoints = (kAuxSlotBase / kCoordSlotStride) - 1;

    explicit Stream(const StreamSpec& spec) noexcept
        : key_(detail::mix64(detail::mix64(spec.master_seed) +
                             (std::uint64_t{spec.replicate_index} + 1) * detail::kGolden)) {}

    std::uint64_t raw(std::uint64_t slot) const noexcept {
        return detail::mix64(key_ + (slot + 1) * detail::kGolden);
    }

    double uniform(std::uint64_t slot) const noexcept {
        return static_cast<double>(raw(slot) >> 11) * 0x1.0p-53;
    }

    // Coordinate k of point i.
    double coordinate(std::uint64_t point, std::uint64_t coord) const noexcept {
        return uniform(point * kCoordSlotStride + coord);
    }

    // j-th auxiliary uniform (reserved slot block).
    double aux(std::uint64_t j) const noexcept { return uniform(kAuxSlotBase + j); }

private:
    std::uint64_t key_;
};

}  // namespace pareto

#endif
