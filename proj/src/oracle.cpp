#include "stepreg/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stepreg/marginal.hpp"

namespace stepreg {

namespace detail {

/* Gap layout over the distinct data values x_(1) < ... < x_(M):
 * gap 0 is [0, x_(1)], gap g is (x_(g), x_(g+1)], gap M is (x_(M), 1].
 * A split at value v cuts group j from a query point above iff it lies in
 * one of the gaps between them, matching the points-fall-right rule. */
struct GapGeometry {
    std::vector<double> distinct;  /* size M */
    std::vector<double> gap_left;  /* size M+1 */
    std::vector<double> width;     /* size M+1 */
    std::vector<int> pre_h, pre_t; /* heads/tails among groups 1..j; size M+1 */

    int M() const { return static_cast<int>(distinct.size()); }

    /* posterior level mean over groups p..q (1-based, inclusive); an empty
     * range is the no-data interval and gives 1/2 */
    double group_mean(int p, int q) const {
        int h = pre_h[q] - pre_h[p - 1];
        int t = pre_t[q] - pre_t[p - 1];
        return (h + 1.0) / (h + t + 2.0);
    }
};

GapGeometry build_geometry(const LabeledDataset& data) {
    GapGeometry g;
    g.pre_h.push_back(0);
    g.pre_t.push_back(0);
    std::size_t i = 0;
    while (i < data.size()) {
        double xv = data.x(i);
        int h = 0, t = 0;
        for (; i < data.size() && data.x(i) == xv; ++i) {
            if (data.y(i)) ++h;
            else ++t;
        }
        g.distinct.push_back(xv);
        g.pre_h.push_back(g.pre_h.back() + h);
        g.pre_t.push_back(g.pre_t.back() + t);
    }
    int M = g.M();
    g.gap_left.resize(M + 1);
    g.width.resize(M + 1);
    for (int j = 0; j <= M; ++j) {
        double left = j == 0 ? 0.0 : g.distinct[j - 1];
        double right = j == M ? 1.0 : g.distinct[j];
        g.gap_left[j] = left;
        g.width[j] = right - left;
    }
    return g;
}

struct OccupancyTable {
    GapGeometry geo;
    int k_max = 0;
    std::vector<int> counts;       /* patterns x (M+1), flattened */
    std::vector<int> pattern_k;    /* pieces for each pattern */
    std::vector<double> log_w;     /* log posterior weight of each pattern */
    std::vector<double> cum_w;     /* scaled cumulative weights, for sampling */
    double log_scale = 0;          /* max log_w */
    double total_w = 0;            /* sum exp(log_w - log_scale) */

    std::size_t n_patterns() const { return pattern_k.size(); }
    const int* pattern(std::size_t p) const { return counts.data() + p * (geo.M() + 1); }
};

namespace {

double composition_budget(int M, int k_max) {
    /* sum over k of C(k-1+M, M) */
    double total = 0.0;
    for (int k = 1; k <= k_max; ++k)
        total += std::exp(std::lgamma(k + M) - std::lgamma(static_cast<double>(k)) - std::lgamma(M + 1.0));
    return total;
}

/* marginal weight of a pattern: one factor per data block, where blocks
 * are the runs of groups not separated by an occupied inner gap */
double pattern_log_rho(const GapGeometry& geo, const int* m) {
    int M = geo.M();
    double acc = 0.0;
    int p = 1;
    for (int gap = 1; gap <= M - 1; ++gap) {
        if (m[gap] > 0) {
            int h = geo.pre_h[gap] - geo.pre_h[p - 1];
            int t = geo.pre_t[gap] - geo.pre_t[p - 1];
            acc += log_beta_integral(h, t);
            p = gap + 1;
        }
    }
    if (M >= 1) {
        int h = geo.pre_h[M] - geo.pre_h[p - 1];
        int t = geo.pre_t[M] - geo.pre_t[p - 1];
        acc += log_beta_integral(h, t);
    }
    return acc;
}

void enumerate_patterns(OccupancyTable& tab, const HierarchyPrior& prior) {
    const GapGeometry& geo = tab.geo;
    int M = geo.M();
    int gaps = M + 1;
    std::vector<int> m(gaps, 0);
    /* multinomial over gaps with the gap widths as cell probabilities;
     * zero-width gaps (duplicate x values) only ever hold zero splits */
    auto emit = [&](int k) {
        double lw = prior.log_mass(k) + std::lgamma(static_cast<double>(k));
        for (int g = 0; g < gaps; ++g) {
            if (m[g] == 0) continue;
            lw += m[g] * std::log(geo.width[g]) - std::lgamma(m[g] + 1.0);
        }
        lw += pattern_log_rho(geo, m.data());
        if (!std::isfinite(lw)) return;
        tab.counts.insert(tab.counts.end(), m.begin(), m.end());
        tab.pattern_k.push_back(k);
        tab.log_w.push_back(lw);
    };
    auto recurse = [&](auto&& self, int gap, int remaining, int k) -> void {
        if (gap == gaps - 1) {
            if (remaining > 0 && geo.width[gap] == 0.0) return;
            m[gap] = remaining;
            emit(k);
            m[gap] = 0;
            return;
        }
        int cap = geo.width[gap] == 0.0 ? 0 : remaining;
        for (int c = 0; c <= cap; ++c) {
            m[gap] = c;
            self(self, gap + 1, remaining - c, k);
        }
        m[gap] = 0;
    };
    for (int k = 1; k <= tab.k_max; ++k) recurse(recurse, 0, k - 1, k);

    if (tab.log_w.empty()) throw std::runtime_error("occupancy enumeration produced no patterns");
    tab.log_scale = *std::max_element(tab.log_w.begin(), tab.log_w.end());
    tab.cum_w.resize(tab.log_w.size());
    double acc = 0.0;
    for (std::size_t p = 0; p < tab.log_w.size(); ++p) {
        acc += std::exp(tab.log_w[p] - tab.log_scale);
        tab.cum_w[p] = acc;
    }
    tab.total_w = acc;
}

OccupancyTable build_table(const LabeledDataset& data, const HierarchyPrior& prior, int k_max) {
    if (data.size() > 8)
        throw std::runtime_error("exact enumeration supports at most 8 data points, got " +
                                 std::to_string(data.size()));
    if (k_max < 1 || k_max > 16) throw std::invalid_argument("exact enumeration: k_max must lie in 1..16");
    OccupancyTable tab;
    tab.geo = build_geometry(data);
    tab.k_max = k_max;
    if (composition_budget(tab.geo.M(), k_max) > 2e6)
        throw std::runtime_error("exact enumeration budget exceeded");
    enumerate_patterns(tab, prior);
    return tab;
}

/* per-pattern interval means around each gap: with t of the g-gap's splits
 * at or below the query point, the point's interval holds the groups back
 * to the nearest occupied inner gap (t = 0), forward to the nearest one
 * (t = all), or no data at all (otherwise) */
struct PatternMeans {
    std::vector<double> s_down, s_up, s_both;

    void compute(const GapGeometry& geo, const int* m) {
        int M = geo.M();
        s_down.assign(M + 1, 0.5);
        s_up.assign(M + 1, 0.5);
        s_both.assign(M + 1, 0.5);
        /* nearest occupied inner gap at or below / at or above each gap;
         * 0 and M double as the "none" sentinels */
        std::vector<int> down(M + 1, 0), up(M + 1, M);
        for (int g = 1; g <= M; ++g) down[g] = (g <= M - 1 && m[g] > 0) ? g : down[g - 1];
        for (int g = M - 1; g >= 0; --g) up[g] = (g >= 1 && m[g] > 0) ? g : (g + 1 <= M ? up[g + 1] : M);
        for (int g = 0; g <= M; ++g) {
            int j_lo = g >= 1 ? down[g - 1] : 0;
            int j_hi = g + 1 <= M ? up[g + 1] : M;
            s_down[g] = geo.group_mean(j_lo + 1, g);
            s_up[g] = geo.group_mean(g + 1, j_hi);
            s_both[g] = geo.group_mean(j_lo + 1, j_hi);
        }
    }
};

}  // namespace

}  // namespace detail

ExactPosterior exact_posterior_small(const LabeledDataset& data, const HierarchyPrior& prior, int k_max,
                                     const std::vector<double>& grid) {
    using namespace detail;
    OccupancyTable tab = build_table(data, prior, k_max);
    const GapGeometry& geo = tab.geo;

    /* gap index and relative offset of each grid point */
    std::vector<int> grid_gap(grid.size());
    std::vector<double> grid_frac(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double u = grid[i];
        if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("exact_posterior_small: grid point outside [0,1]");
        int g = static_cast<int>(std::lower_bound(geo.distinct.begin(), geo.distinct.end(), u) -
                                 geo.distinct.begin());
        grid_gap[i] = g;
        grid_frac[i] = geo.width[g] > 0.0 ? (u - geo.gap_left[g]) / geo.width[g] : 0.0;
    }

    ExactPosterior out;
    out.k_mass.assign(k_max, 0.0);
    out.prior_tail_mass = prior.tail_mass(k_max);
    std::vector<double> curve_acc(grid.size(), 0.0);
    PatternMeans means;
    for (std::size_t p = 0; p < tab.n_patterns(); ++p) {
        double w = std::exp(tab.log_w[p] - tab.log_scale);
        const int* m = tab.pattern(p);
        out.k_mass[tab.pattern_k[p] - 1] += w;
        means.compute(geo, m);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            int g = grid_gap[i];
            int mg = m[g];
            double e;
            if (mg == 0) {
                e = means.s_both[g];
            } else {
                double p_low = std::pow(grid_frac[i], mg);        /* every g-split at or below u */
                double p_high = std::pow(1.0 - grid_frac[i], mg); /* every g-split above u */
                e = p_high * means.s_down[g] + p_low * means.s_up[g] + (1.0 - p_low - p_high) * 0.5;
            }
            curve_acc[i] += w * e;
        }
    }
    for (double& km : out.k_mass) km /= tab.total_w;
    out.curve.grid = grid;
    out.curve.mean.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) out.curve.mean[i] = curve_acc[i] / tab.total_w;
    return out;
}

ExactStateSampler::ExactStateSampler(const LabeledDataset& data, const HierarchyPrior& prior, int k_max)
    : data_(&data), table_(std::make_unique<detail::OccupancyTable>(detail::build_table(data, prior, k_max))) {}

ExactStateSampler::~ExactStateSampler() = default;

ChangePointState ExactStateSampler::sample(Rng& rng) const {
    const detail::OccupancyTable& tab = *table_;
    double u = rng.uniform() * tab.total_w;
    std::size_t p = static_cast<std::size_t>(std::lower_bound(tab.cum_w.begin(), tab.cum_w.end(), u) -
                                             tab.cum_w.begin());
    if (p >= tab.n_patterns()) p = tab.n_patterns() - 1;
    const int* m = tab.pattern(p);
    std::vector<double> splits;
    splits.reserve(tab.pattern_k[p] - 1);
    for (int g = 0; g <= tab.geo.M(); ++g)
        for (int c = 0; c < m[g]; ++c) splits.push_back(tab.geo.gap_left[g] + rng.uniform() * tab.geo.width[g]);
    return ChangePointState::from_splits(*data_, std::move(splits));
}

ChangePointState sample_exact_state(const LabeledDataset& data, const HierarchyPrior& prior, int k_max, Rng& rng) {
    return ExactStateSampler(data, prior, k_max).sample(rng);
}

ImportanceEstimate prior_importance_estimate(const LabeledDataset& data, const HierarchyPrior& prior, long draws,
                                             const std::vector<double>& grid, Rng& rng) {
    if (draws < 1) throw std::invalid_argument("prior_importance_estimate: draws must be >= 1");
    std::size_t G = grid.size();
    if (G < 1) throw std::invalid_argument("prior_importance_estimate: empty grid");

    /* per-point accumulators via range updates: each draw's curve is
     * constant on its intervals, so only the interval edges are touched */
    std::vector<double> dA(G + 1, 0.0), dB(G + 1, 0.0), dC(G + 1, 0.0);
    double W = 0.0, W2 = 0.0;
    std::vector<double> Wk, W2k;

    std::vector<double> splits;
    for (long it = 0; it < draws; ++it) {
        int k = prior.sample(rng);
        splits.resize(k - 1);
        for (double& v : splits) v = rng.uniform();
        std::sort(splits.begin(), splits.end());
        IntervalCounts c = compute_counts(data, splits);
        double w = std::exp(log_rho(c));
        W += w;
        W2 += w * w;
        if (k > static_cast<int>(Wk.size())) {
            Wk.resize(k, 0.0);
            W2k.resize(k, 0.0);
        }
        Wk[k - 1] += w;
        W2k[k - 1] += w * w;
        std::size_t lo = 0;
        for (int j = 0; j < k; ++j) {
            std::size_t hi = j < k - 1 ? static_cast<std::size_t>(std::lower_bound(grid.begin(), grid.end(),
                                                                                   splits[j]) -
                                                                  grid.begin())
                                       : G;
            if (hi > lo) {
                double s = posterior_value_mean(c.n1[j], c.n0[j]);
                dA[lo] += w * s;
                dA[hi] -= w * s;
                dC[lo] += w * w * s;
                dC[hi] -= w * w * s;
                dB[lo] += w * w * s * s;
                dB[hi] -= w * w * s * s;
            }
            lo = hi;
        }
    }
    if (!(W > 0.0)) throw std::runtime_error("prior_importance_estimate: all weights vanished");

    ImportanceEstimate out;
    out.ess = W * W / W2;
    out.k_mass.resize(Wk.size());
    out.k_sigma.resize(Wk.size());
    for (std::size_t i = 0; i < Wk.size(); ++i) {
        double mu = Wk[i] / W;
        out.k_mass[i] = mu;
        double var_num = W2k[i] * (1.0 - 2.0 * mu) + mu * mu * W2;
        out.k_sigma[i] = std::sqrt(std::max(0.0, var_num)) / W;
    }
    out.curve.grid = grid;
    out.curve.mean.resize(G);
    out.curve_sigma.resize(G);
    double A = 0.0, B = 0.0, C = 0.0;
    for (std::size_t i = 0; i < G; ++i) {
        A += dA[i];
        B += dB[i];
        C += dC[i];
        double mu = A / W;
        out.curve.mean[i] = mu;
        double var_num = B - 2.0 * mu * C + mu * mu * W2;
        out.curve_sigma[i] = std::sqrt(std::max(0.0, var_num)) / W;
    }
    return out;
}

}  // namespace stepreg
