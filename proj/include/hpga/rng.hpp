#ifndef HPGA_RNG_HPP
#define HPGA_RNG_HPP

#include <cstddef>
#include <cstdint>
#include <random>

namespace hpga {

// mt19937_64 output is fixed by the standard; the distributions are not, so
// the conversions below are done by hand to keep seeded runs portable.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Stream for one island: seeded by (master seed, stream id).
    Rng(std::uint64_t seed, std::uint64_t stream) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream),
                          static_cast<std::uint32_t>(stream >> 32), 0x48504741u};
        engine_.seed(seq);
    }

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). Lemire's multiply-shift with rejection.
    std::size_t below(std::size_t bound) {
        if (bound <= 1) return 0;
        const auto b = static_cast<std::uint64_t>(bound);
        const std::uint64_t threshold = (0 - b) % b;
        for (;;) {
            const std::uint64_t x = engine_();
            const unsigned __int128 m = static_cast<unsigned __int128>(x) * b;
            if (static_cast<std::uint64_t>(m) >= threshold) {
                return static_cast<std::size_t>(m >> 64);
            }
        }
    }

    bool bernoulli(double p) { return uniform() < p; }
    bool coin() { return (engine_() >> 63) != 0; }

private:
    std::mt19937_64 engine_;
};

}  // namespace hpga

#endif  // HPGA_RNG_HPP
