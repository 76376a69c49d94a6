#pragma once

#include <cmath>
#include <vector>

#include "stepreg/dataset.hpp"
#include "stepreg/estimator.hpp"

namespace stepreg {

/* Regular dyadic alternative: level k carves [0,1] into 2^k equal cells,
 * so the posterior over levels is an exact finite sum. */
struct DyadicPosterior {
    std::vector<double> level_mass;  /* index = level, 0..max_level, renormalized */
    double prior_tail_mass = 0;      /* prior mass beyond max_level */
    PosteriorMeanCurve curve;

    int mode_level() const;
};

/* geometric level prior (1-beta) beta^k on k >= 0, cut at max_level */
std::vector<double> geometric_level_masses(double beta, int max_level);

inline double default_level_beta() {
    return std::exp(-std::pow(2.0, -0.25));
}

/* level_prior holds the prior mass of levels 0..max_level (the vector's
 * length sets max_level); prior_tail is the mass beyond, only reported */
DyadicPosterior dyadic_exact_posterior(const LabeledDataset& data, const std::vector<double>& level_prior,
                                       double prior_tail, const std::vector<double>& grid);

}  // namespace stepreg
