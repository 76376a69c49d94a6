#pragma once

#include <cstdint>
#include <random>

namespace stepreg {

/* splitmix64 step; used to stretch a user seed into engine seed material */
inline std::uint64_t split_mix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/* Seeded generator. Stream s of seed u is independent of stream t != s,
 * so multi-chain runs derive one Rng per (seed, chain index). */
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    double uniform();                       /* U[0,1) */
    double uniform(double lo, double hi);   /* U[lo,hi) */
    double normal(double sd);               /* mean 0 */
    double gamma(double shape, double scale);
    double beta(double a, double b);
    int uniform_int(int n);                 /* uniform on {0,...,n-1}, n >= 1 */
    bool coin();                            /* fair */
    bool bernoulli(double p);
    int poisson(double lambda);

    std::mt19937_64& engine() { return eng_; }

  private:
    std::mt19937_64 eng_;
};

}  // namespace stepreg
