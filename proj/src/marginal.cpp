#include "stepreg/marginal.hpp"

#include <cassert>
#include <cmath>
#include <limits>

namespace stepreg {

LogWeight LogWeight::zero() {
    return LogWeight{-std::numeric_limits<double>::infinity()};
}

double LogWeight::value() const {
    return std::exp(lg);
}

LogWeight& LogWeight::operator+=(LogWeight o) {
    /* log-sum-exp anchored at the larger term */
    if (lg == -std::numeric_limits<double>::infinity()) {
        lg = o.lg;
        return *this;
    }
    if (o.lg == -std::numeric_limits<double>::infinity()) return *this;
    double hi = lg > o.lg ? lg : o.lg;
    double lo = lg > o.lg ? o.lg : lg;
    lg = hi + std::log1p(std::exp(lo - hi));
    return *this;
}

LogWeight LogWeight::operator+(LogWeight o) const {
    LogWeight r = *this;
    r += o;
    return r;
}

double log_beta_integral(int n1, int n0) {
    assert(n1 >= 0 && n0 >= 0);
    return std::lgamma(n1 + 1.0) + std::lgamma(n0 + 1.0) - std::lgamma(n1 + n0 + 2.0);
}

double log_rho(const IntervalCounts& counts) {
    double s = 0.0;
    for (int j = 0; j < counts.k(); ++j) s += log_beta_integral(counts.n1[j], counts.n0[j]);
    return s;
}

double log_phi(const HierarchyPrior& prior, const IntervalCounts& counts) {
    return prior.log_mass(counts.k()) + log_rho(counts);
}

double posterior_value_mean(int n1, int n0) {
    return (n1 + 1.0) / (n1 + n0 + 2.0);
}

std::vector<double> sample_success_probabilities(const IntervalCounts& counts, Rng& rng) {
    std::vector<double> s(counts.k());
    for (int j = 0; j < counts.k(); ++j) s[j] = rng.beta(counts.n1[j] + 1.0, counts.n0[j] + 1.0);
    return s;
}

}  // namespace stepreg
