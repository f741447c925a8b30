#ifndef BK_RNG_HPP
#define BK_RNG_HPP

#include <complex>
#include <cstdint>

namespace bk {

/// splitmix64; hand-rolled so sampled values are identical across
/// standard libraries and platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::complex<double> box(double half_width) {
        double re = uniform(-half_width, half_width);
        double im = uniform(-half_width, half_width);
        return {re, im};
    }

private:
    std::uint64_t state_;
};

/// Stable per-check sub-seed derived from a run seed and a label.
std::uint64_t derive_seed(std::uint64_t base, const char* label, std::uint64_t index);

}  // namespace bk

#endif
