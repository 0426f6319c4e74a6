#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "drsubmax/linalg.hpp"

namespace drsubmax {

// splitmix64 step; used both as a seed mixer and for deriving substreams.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic substream seed from a base seed and up to three tags.
inline uint64_t derive_seed(uint64_t base, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
    uint64_t s = splitmix64(base ^ 0x7f4a7c15u);
    s = splitmix64(s ^ a);
    s = splitmix64(s ^ b);
    s = splitmix64(s ^ c);
    return s;
}

// mt19937_64 wrapper with hand-rolled distributions so that draws are
// reproducible independent of the standard library's implementation.
class Rng {
  public:
    explicit Rng(uint64_t seed) : gen_(splitmix64(seed)) {}

    uint64_t next_u64() { return gen_(); }

    // uniform in [0, 1) with 53 random bits
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    // unbiased integer in [0, n)
    uint64_t uniform_int(uint64_t n) {
        if (n <= 1) return 0;
        const uint64_t lim = UINT64_MAX - UINT64_MAX % n;
        uint64_t x = gen_();
        while (x >= lim) x = gen_();
        return x % n;
    }

    // standard normal via Marsaglia's polar method, one spare cached
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    Vec gaussian_vec(int d) {
        Vec out(d);
        for (int i = 0; i < d; ++i) out[i] = gaussian();
        return out;
    }

    // Fisher-Yates
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(uniform_int(i));
            std::swap(v[i - 1], v[j]);
        }
    }

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace drsubmax
