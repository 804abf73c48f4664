#pragma once

#include <cstdint>

namespace devbound {

// splitmix64; used both as a seed mixer and as the fuzzer's generator so
// that streams are identical across compilers and standard libraries.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {
        // burn a few outputs so nearby seeds decorrelate
        for (int i = 0; i < 4; ++i) splitmix64(state_);
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform integer in [lo, hi] inclusive
    std::uint64_t uniform_index(std::uint64_t lo, std::uint64_t hi) {
        return lo + next_u64() % (hi - lo + 1);
    }

    static std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
        std::uint64_t s = master ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
        splitmix64(s);
        return s;
    }

private:
    std::uint64_t state_;
};

}  // namespace devbound
