#pragma once

#include <cstdint>
#include <vector>

#include "stepreg/rng.hpp"

namespace stepreg {

/* Labeled points in R^d. Cells grow from a chosen subset of the points
 * themselves; every point joins the generator minimizing distance over
 * weight, ties to the earliest generator in the original order. */
class CovariateSet {
  public:
    static CovariateSet from_points(std::vector<std::vector<double>> coords, std::vector<int> labels);

    int n() const { return static_cast<int>(y_.size()); }
    int dim() const { return d_; }
    const double* point(int i) const { return coords_.data() + static_cast<std::size_t>(i) * d_; }
    int y(int i) const { return y_[i]; }
    double dist2(int i, const double* p) const;

  private:
    std::vector<double> coords_;  /* n x d, row-major */
    std::vector<std::uint8_t> y_;
    int d_ = 0;
};

/* Generator subset with weights, plus the induced assignment kept
 * consistent incrementally: per-point generator and squared
 * distance-over-weight ratio, and per-generator label counts. */
struct SubsetState {
    std::vector<std::uint8_t> included;  /* size n; at least one set */
    std::vector<double> weights;         /* size n; all 1 when unweighted */
    std::vector<int> cell;               /* per point: its generator */
    std::vector<double> ratio;           /* per point: dist2 / weight^2 */
    std::vector<int> n1, n0;             /* per generator */
    int k = 0;                           /* number included */

    static SubsetState make(const CovariateSet& cov, std::vector<std::uint8_t> included,
                            std::vector<double> weights = {});
    static SubsetState all_included(const CovariateSet& cov);
};

/* generator index owning an arbitrary location */
int assign_cell(const CovariateSet& cov, const SubsetState& st, const double* p);

/* full reassignment pass; the reference the incremental updates must match */
void recompute_cells(const CovariateSet& cov, SubsetState& st);

/* log of alpha^(k-1) times the per-cell marginal label weights */
double subset_log_posterior(const CovariateSet& cov, const SubsetState& st, double alpha);

struct VoronoiConfig {
    double alpha = 0.5;
    bool weighted = false;
    double gamma = 5.0;           /* weight prior: Gamma(gamma, 1/gamma), mean 1 */
    double weight_step_sd = 0.3;  /* sd of the log-normal weight walk */
    long iterations = 200000;
    long burn_in = -1;  /* negative: iterations / 10 */
    long record_every = 1;
    std::uint64_t seed = 0;

    long resolved_burn_in() const { return burn_in >= 0 ? burn_in : iterations / 10; }
    void validate() const;
};

struct VoronoiStepStats {
    long proposed_flip = 0, accepted_flip = 0;
    long proposed_weight = 0, accepted_weight = 0;
};

/* One step: flip one generator's membership (uniform choice; a flip that
 * would empty the subset proposes the current state), or, in the weighted
 * variant with probability 1/2, walk one included generator's weight.
 * Newly included generators draw their weight from the prior, so both
 * move types accept on the posterior ratio (times the weight prior ratio
 * and walk Jacobian for weight moves). */
bool subset_chain_step(const CovariateSet& cov, SubsetState& st, const VoronoiConfig& cfg, Rng& rng,
                       VoronoiStepStats* stats = nullptr);

struct VoronoiTrace {
    int n = 0;
    int words = 0;  /* 64-bit words per record */
    bool weighted = false;
    std::vector<std::uint64_t> masks;  /* records x words */
    std::vector<double> weights;       /* records x n, weighted runs only */
    VoronoiStepStats stats;

    std::size_t n_records() const { return words == 0 ? 0 : masks.size() / words; }
    void included_of(std::size_t rec, std::vector<std::uint8_t>& out) const;
    int size_of(std::size_t rec) const; /* popcount */
};

VoronoiTrace run_subset_chain(const CovariateSet& cov, const VoronoiConfig& cfg);

/* distribution of the subset size over the recorded states; index k-1 */
std::vector<double> subset_size_mass(const VoronoiTrace& trace);

/* per eval point, the trace average of its cell's posterior label mean */
std::vector<double> voronoi_posterior_mean(const VoronoiTrace& trace, const CovariateSet& cov,
                                           const std::vector<std::vector<double>>& eval_points);

/* full enumeration over all 2^n - 1 unweighted subsets (n <= 15) */
struct VoronoiExact {
    std::vector<double> size_mass;  /* index k-1 for k = 1..n */
    std::vector<double> mean;       /* per eval point */
};

VoronoiExact enumerate_subsets_exact(const CovariateSet& cov, double alpha,
                                     const std::vector<std::vector<double>>& eval_points);

}  // namespace stepreg
