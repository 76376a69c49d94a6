#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "stepreg/changepoint.hpp"
#include "stepreg/estimator.hpp"
#include "stepreg/prior.hpp"
#include "stepreg/rng.hpp"

namespace stepreg {

/* Exact small-instance posterior, computed by summing over occupancy
 * patterns: how many splits land in each gap between neighboring distinct
 * data values (plus the flanking gaps). The marginal data weight is
 * constant on each pattern, and the interval holding a query point only
 * depends on the pattern and on how the splits in the point's own gap
 * fall to its two sides, which integrates in closed form. */
struct ExactPosterior {
    std::vector<double> k_mass;  /* index k-1 for k = 1..k_max, renormalized */
    double prior_tail_mass = 0;  /* prior mass beyond k_max, reported untouched */
    PosteriorMeanCurve curve;
};

ExactPosterior exact_posterior_small(const LabeledDataset& data, const HierarchyPrior& prior, int k_max,
                                     const std::vector<double>& grid);

namespace detail {
struct OccupancyTable;
}

/* Independent exact posterior draws; the pattern table is built once. */
class ExactStateSampler {
  public:
    ExactStateSampler(const LabeledDataset& data, const HierarchyPrior& prior, int k_max);
    ~ExactStateSampler();

    ChangePointState sample(Rng& rng) const;

  private:
    const LabeledDataset* data_;
    std::unique_ptr<detail::OccupancyTable> table_;
};

ChangePointState sample_exact_state(const LabeledDataset& data, const HierarchyPrior& prior, int k_max, Rng& rng);

/* Self-normalized estimate from prior draws reweighted by the marginal
 * data weight; the independent cross-check for the enumeration above.
 * Sigmas are delta-method standard errors of the normalized estimates. */
struct ImportanceEstimate {
    std::vector<double> k_mass;  /* index k-1, up to the largest sampled k */
    std::vector<double> k_sigma;
    PosteriorMeanCurve curve;
    std::vector<double> curve_sigma;
    double ess = 0;  /* (sum w)^2 / sum w^2 */
};

ImportanceEstimate prior_importance_estimate(const LabeledDataset& data, const HierarchyPrior& prior, long draws,
                                             const std::vector<double>& grid, Rng& rng);

}  // namespace stepreg
