#include "stepreg/dyadic.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "stepreg/changepoint.hpp"
#include "stepreg/marginal.hpp"

namespace stepreg {

int DyadicPosterior::mode_level() const {
    int best = 0;
    double best_m = -1.0;
    for (std::size_t l = 0; l < level_mass.size(); ++l)
        if (level_mass[l] > best_m) {
            best = static_cast<int>(l);
            best_m = level_mass[l];
        }
    return best;
}

std::vector<double> geometric_level_masses(double beta, int max_level) {
    if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("level prior: beta must lie in (0,1)");
    if (max_level < 0) throw std::invalid_argument("level prior: max_level must be >= 0");
    std::vector<double> m(max_level + 1);
    for (int l = 0; l <= max_level; ++l) m[l] = (1.0 - beta) * std::pow(beta, l);
    return m;
}

namespace {

/* counts over the 2^level equal cells; cell edges fall right like splits */
IntervalCounts dyadic_counts(const LabeledDataset& data, int level) {
    int cells = 1 << level;
    IntervalCounts c;
    c.n1.resize(cells);
    c.n0.resize(cells);
    std::size_t lo = 0;
    for (int j = 0; j < cells; ++j) {
        std::size_t hi = j + 1 < cells ? data.first_at_or_above(static_cast<double>(j + 1) / cells) : data.size();
        c.n1[j] = data.heads_in(lo, hi);
        c.n0[j] = data.tails_in(lo, hi);
        lo = hi;
    }
    return c;
}

}  // namespace

DyadicPosterior dyadic_exact_posterior(const LabeledDataset& data, const std::vector<double>& level_prior,
                                       double prior_tail, const std::vector<double>& grid) {
    if (level_prior.empty()) throw std::invalid_argument("dyadic posterior: empty level prior");
    int max_level = static_cast<int>(level_prior.size()) - 1;
    if (max_level > 24) throw std::runtime_error("dyadic posterior: level budget exceeded");
    for (double m : level_prior)
        if (!(m >= 0.0)) throw std::invalid_argument("dyadic posterior: negative prior mass");

    std::vector<double> log_w(max_level + 1);
    std::vector<IntervalCounts> counts(max_level + 1);
    for (int l = 0; l <= max_level; ++l) {
        counts[l] = dyadic_counts(data, l);
        log_w[l] = (level_prior[l] > 0.0 ? std::log(level_prior[l]) : -std::numeric_limits<double>::infinity()) +
                   log_rho(counts[l]);
    }
    double scale = *std::max_element(log_w.begin(), log_w.end());
    if (!std::isfinite(scale)) throw std::invalid_argument("dyadic posterior: prior has no support");

    DyadicPosterior out;
    out.prior_tail_mass = prior_tail;
    out.level_mass.resize(max_level + 1);
    double total = 0.0;
    for (int l = 0; l <= max_level; ++l) {
        out.level_mass[l] = std::exp(log_w[l] - scale);
        total += out.level_mass[l];
    }
    for (double& m : out.level_mass) m /= total;

    out.curve.grid = grid;
    out.curve.mean.assign(grid.size(), 0.0);
    for (int l = 0; l <= max_level; ++l) {
        if (out.level_mass[l] == 0.0) continue;
        int cells = 1 << l;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            double u = grid[i];
            if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("dyadic posterior: grid point outside [0,1]");
            int cell = std::min(static_cast<int>(u * cells), cells - 1);
            out.curve.mean[i] += out.level_mass[l] * posterior_value_mean(counts[l].n1[cell], counts[l].n0[cell]);
        }
    }
    return out;
}

}  // namespace stepreg
