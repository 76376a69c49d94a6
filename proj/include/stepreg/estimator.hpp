#pragma once

#include <functional>
#include <vector>

#include "stepreg/changepoint.hpp"
#include "stepreg/dataset.hpp"
#include "stepreg/sampler.hpp"

namespace stepreg {

/* evenly spaced values 0, ..., 1 inclusive */
std::vector<double> make_grid(int points);

struct PosteriorMeanCurve {
    std::vector<double> grid;
    std::vector<double> mean;
};

/* Average over recorded states of the interval-wise posterior level means.
 * Levels are never simulated; each interval contributes its closed-form
 * mean, which strictly lowers the estimator's variance. */
PosteriorMeanCurve posterior_mean_curve(const ChainTrace& trace, const LabeledDataset& data,
                                        const std::vector<double>& grid);
PosteriorMeanCurve posterior_mean_curve(const std::vector<ChainTrace>& traces, const LabeledDataset& data,
                                        const std::vector<double>& grid);

struct ModelSizeHistogram {
    std::vector<long> count;  /* index = number of pieces; 0 unused */
    long total = 0;

    void add(int k, long times = 1);
    int mode() const;                  /* smallest maximizer */
    std::vector<double> mass() const;  /* normalized, same indexing */
};

ModelSizeHistogram model_size_histogram(const ChainTrace& trace);
ModelSizeHistogram model_size_histogram(const std::vector<ChainTrace>& traces);

/* (integral of |f-g|^p)^(1/p), integrating node values with the width of
 * each node's surrounding cell (half cells at the ends). Curves must share
 * the grid; callables are sampled on it. */
double lp_distance(const std::vector<double>& grid, const std::vector<double>& f, const std::vector<double>& g,
                   double p);
double lp_distance(const PosteriorMeanCurve& f, const PosteriorMeanCurve& g, double p);
double lp_distance(const PosteriorMeanCurve& f, const std::function<double(double)>& g, double p);

/* KL divergence between Bernoulli(p) and Bernoulli(q); +inf on support
 * mismatch at q in {0,1} */
double bernoulli_kl(double p, double q);

/* Distances between the joint densities on [0,1] x {0,1} induced by two
 * success curves: (x,1) carries f(x) and (x,0) carries 1-f(x). Both are
 * exact, integrating over the merged breakpoints. */
double hellinger_step_densities(const StepFunction& f, const StepFunction& g);
double l1_step_densities(const StepFunction& f, const StepFunction& g);

/* same Hellinger integrand, but on sampled grid values */
double hellinger_on_grid(const std::vector<double>& grid, const std::vector<double>& f,
                         const std::vector<double>& g);

/* e^-lambda lambda^k / k! * k/(k-lambda), an upper bound on the Poisson
 * tail P(K >= k) valid for k > lambda */
double poisson_tail_bound(double lambda, int k);

}  // namespace stepreg
