#pragma once

#include <cmath>
#include <cstdint>

namespace subfpt {

// splitmix64: seed expander. One 64-bit state word, passes BigCrush on its own;
// used here only to turn (seed, stream index) pairs into xoshiro state.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t s) : state(s) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

// xoshiro256++ (Blackman/Vigna). Chosen over std::mt19937_64 because the
// reproducibility contract is bit-identical output for a fixed seed across
// platforms, which the standard distributions do not guarantee; all variate
// transforms below are therefore hand-rolled too.
class Xoshiro256pp {
  public:
    using result_type = std::uint64_t;

    explicit Xoshiro256pp(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& w : s_) w = sm.next();
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type(0); }

    result_type operator()() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

// One independent stream per replication index: output of a Monte Carlo run is
// then invariant under the worker count, not just reproducible for a fixed one.
inline Xoshiro256pp make_stream(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 sm(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
    return Xoshiro256pp(sm.next());
}

// Uniform on [0,1) with 53 random bits.
inline double uniform01(Xoshiro256pp& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform on (0,1]; safe as a log() argument.
inline double uniform_pos(Xoshiro256pp& rng) {
    return 1.0 - uniform01(rng);
}

// Uniform on the open interval (0,1); safe wherever both endpoints are
// singular (inverse CDFs, the Kanter angle).
inline double uniform_open(Xoshiro256pp& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

inline double exponential(Xoshiro256pp& rng) {
    return -std::log(uniform_pos(rng));
}

// Marsaglia polar method with the spare value cached. Each sampler instance
// must stay private to one replication or the cached spare breaks determinism.
class NormalSampler {
  public:
    double operator()(Xoshiro256pp& rng) {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, q;
        do {
            u = 2.0 * uniform01(rng) - 1.0;
            v = 2.0 * uniform01(rng) - 1.0;
            q = u * u + v * v;
        } while (q >= 1.0 || q == 0.0);
        const double f = std::sqrt(-2.0 * std::log(q) / q);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

  private:
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace subfpt
