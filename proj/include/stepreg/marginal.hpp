#pragma once

#include <vector>

#include "stepreg/changepoint.hpp"
#include "stepreg/prior.hpp"
#include "stepreg/rng.hpp"

namespace stepreg {

/* Nonnegative mass carried as its log; addition is log-sum-exp so sums of
 * many tiny masses keep their relative precision. */
struct LogWeight {
    double lg;  /* -inf encodes zero */

    static LogWeight zero();
    static LogWeight one() { return LogWeight{0.0}; }
    static LogWeight from_log(double l) { return LogWeight{l}; }

    double value() const;

    LogWeight& operator+=(LogWeight o);          /* mass addition */
    LogWeight operator+(LogWeight o) const;
    LogWeight& operator*=(LogWeight o) { lg += o.lg; return *this; }
    LogWeight operator*(LogWeight o) const { return LogWeight{lg + o.lg}; }
    bool operator<(LogWeight o) const { return lg < o.lg; }
};

/* log of n1! n0! / (n1+n0+1)!, the integral of s^n1 (1-s)^n0 over [0,1] */
double log_beta_integral(int n1, int n0);

/* log of the marginal data weight: product of the per-interval integrals */
double log_rho(const IntervalCounts& counts);

/* log of prior mass times marginal weight (posterior up to normalization) */
double log_phi(const HierarchyPrior& prior, const IntervalCounts& counts);

/* posterior mean of an interval's success level: (n1+1)/(n1+n0+2) */
double posterior_value_mean(int n1, int n0);

/* one draw of the per-interval levels: Beta(n1+1, n0+1) independently */
std::vector<double> sample_success_probabilities(const IntervalCounts& counts, Rng& rng);

}  // namespace stepreg
