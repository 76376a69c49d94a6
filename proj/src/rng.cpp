#include "stepreg/rng.hpp"

#include <stdexcept>

namespace stepreg {

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
    /* fold the stream index into the seed, then stretch to 256 bits of
     * seed material so distinct (seed, stream) pairs land far apart */
    std::uint64_t s = seed ^ (0xd1b54a32d192ed03ULL * (stream + 1));
    std::uint64_t m0 = split_mix64(s);
    std::uint64_t m1 = split_mix64(s);
    std::uint64_t m2 = split_mix64(s);
    std::uint64_t m3 = split_mix64(s);
    std::seed_seq seq{static_cast<std::uint32_t>(m0), static_cast<std::uint32_t>(m0 >> 32),
                      static_cast<std::uint32_t>(m1), static_cast<std::uint32_t>(m1 >> 32),
                      static_cast<std::uint32_t>(m2), static_cast<std::uint32_t>(m2 >> 32),
                      static_cast<std::uint32_t>(m3), static_cast<std::uint32_t>(m3 >> 32)};
    eng_.seed(seq);
}

double Rng::uniform() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(eng_);
}

double Rng::uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(eng_);
}

double Rng::normal(double sd) {
    return std::normal_distribution<double>(0.0, sd)(eng_);
}

double Rng::gamma(double shape, double scale) {
    return std::gamma_distribution<double>(shape, scale)(eng_);
}

double Rng::beta(double a, double b) {
    double g1 = gamma(a, 1.0);
    double g2 = gamma(b, 1.0);
    return g1 / (g1 + g2);
}

int Rng::uniform_int(int n) {
    if (n < 1) throw std::invalid_argument("uniform_int: n must be >= 1");
    return std::uniform_int_distribution<int>(0, n - 1)(eng_);
}

bool Rng::coin() {
    return std::uniform_int_distribution<int>(0, 1)(eng_) == 1;
}

bool Rng::bernoulli(double p) {
    return uniform() < p;
}

int Rng::poisson(double lambda) {
    return std::poisson_distribution<int>(lambda)(eng_);
}

}  // namespace stepreg
