#include "stepreg/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stepreg/marginal.hpp"

namespace stepreg {

std::vector<double> make_grid(int points) {
    if (points < 2) throw std::invalid_argument("make_grid: need at least 2 points");
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i) g[i] = static_cast<double>(i) / (points - 1);
    g.back() = 1.0;
    return g;
}

namespace {

void check_grid(const std::vector<double>& grid) {
    if (grid.size() < 2 || !std::is_sorted(grid.begin(), grid.end()))
        throw std::invalid_argument("grid must be ascending with at least 2 points");
}

void accumulate_curve(const ChainTrace& trace, const LabeledDataset& data, const std::vector<double>& grid,
                      std::vector<double>& sums, long& n_records) {
    for (const TraceRecord& rec : trace.records) {
        IntervalCounts c = compute_counts(data, rec.splits);
        std::size_t j = 0;
        std::size_t ns = rec.splits.size();
        for (std::size_t i = 0; i < grid.size(); ++i) {
            while (j < ns && rec.splits[j] <= grid[i]) ++j;
            sums[i] += posterior_value_mean(c.n1[j], c.n0[j]);
        }
        ++n_records;
    }
}

}  // namespace

PosteriorMeanCurve posterior_mean_curve(const ChainTrace& trace, const LabeledDataset& data,
                                        const std::vector<double>& grid) {
    return posterior_mean_curve(std::vector<ChainTrace>{trace}, data, grid);
}

PosteriorMeanCurve posterior_mean_curve(const std::vector<ChainTrace>& traces, const LabeledDataset& data,
                                        const std::vector<double>& grid) {
    check_grid(grid);
    std::vector<double> sums(grid.size(), 0.0);
    long n_records = 0;
    for (const ChainTrace& t : traces) accumulate_curve(t, data, grid, sums, n_records);
    if (n_records == 0) throw std::invalid_argument("posterior_mean_curve: empty trace");
    PosteriorMeanCurve out;
    out.grid = grid;
    out.mean.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) out.mean[i] = sums[i] / n_records;
    return out;
}

void ModelSizeHistogram::add(int k, long times) {
    if (k >= static_cast<int>(count.size())) count.resize(k + 1, 0);
    count[k] += times;
    total += times;
}

int ModelSizeHistogram::mode() const {
    int best = 0;
    long best_n = -1;
    for (std::size_t k = 1; k < count.size(); ++k)
        if (count[k] > best_n) {
            best = static_cast<int>(k);
            best_n = count[k];
        }
    return best;
}

std::vector<double> ModelSizeHistogram::mass() const {
    std::vector<double> m(count.size(), 0.0);
    if (total == 0) return m;
    for (std::size_t k = 0; k < count.size(); ++k) m[k] = static_cast<double>(count[k]) / total;
    return m;
}

ModelSizeHistogram model_size_histogram(const ChainTrace& trace) {
    return model_size_histogram(std::vector<ChainTrace>{trace});
}

ModelSizeHistogram model_size_histogram(const std::vector<ChainTrace>& traces) {
    ModelSizeHistogram h;
    for (const ChainTrace& t : traces)
        for (const TraceRecord& rec : t.records) h.add(static_cast<int>(rec.splits.size()) + 1);
    return h;
}

namespace {

/* width of the cell around each node; half cells at the two ends */
double node_weight(const std::vector<double>& grid, std::size_t i) {
    if (i == 0) return (grid[1] - grid[0]) / 2;
    if (i + 1 == grid.size()) return (grid[i] - grid[i - 1]) / 2;
    return (grid[i + 1] - grid[i - 1]) / 2;
}

}  // namespace

double lp_distance(const std::vector<double>& grid, const std::vector<double>& f, const std::vector<double>& g,
                   double p) {
    check_grid(grid);
    if (f.size() != grid.size() || g.size() != grid.size())
        throw std::invalid_argument("lp_distance: curves must match the grid");
    if (!(p >= 1.0)) throw std::invalid_argument("lp_distance: p must be >= 1");
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        acc += node_weight(grid, i) * std::pow(std::abs(f[i] - g[i]), p);
    return std::pow(acc, 1.0 / p);
}

double lp_distance(const PosteriorMeanCurve& f, const PosteriorMeanCurve& g, double p) {
    if (f.grid != g.grid) throw std::invalid_argument("lp_distance: curves on different grids");
    return lp_distance(f.grid, f.mean, g.mean, p);
}

double lp_distance(const PosteriorMeanCurve& f, const std::function<double(double)>& g, double p) {
    std::vector<double> gv(f.grid.size());
    for (std::size_t i = 0; i < f.grid.size(); ++i) gv[i] = g(f.grid[i]);
    return lp_distance(f.grid, f.mean, gv, p);
}

double bernoulli_kl(double p, double q) {
    if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0)) throw std::domain_error("bernoulli_kl: arguments outside [0,1]");
    constexpr double inf = std::numeric_limits<double>::infinity();
    double t1 = p == 0.0 ? 0.0 : (q == 0.0 ? inf : p * std::log(p / q));
    double t2 = p == 1.0 ? 0.0 : (q == 1.0 ? inf : (1.0 - p) * std::log((1.0 - p) / (1.0 - q)));
    return t1 + t2;
}

namespace {

double sq(double v) {
    return v * v;
}

double hellinger_cell(double fv, double gv) {
    return sq(std::sqrt(fv) - std::sqrt(gv)) + sq(std::sqrt(1.0 - fv) - std::sqrt(1.0 - gv));
}

/* run over the merged constant pieces of two step functions */
template <class Fn>
void merged_pieces(const StepFunction& f, const StepFunction& g, Fn&& fn) {
    std::vector<double> cuts;
    cuts.reserve(f.splits.size() + g.splits.size() + 2);
    cuts.push_back(0.0);
    cuts.insert(cuts.end(), f.splits.begin(), f.splits.end());
    cuts.insert(cuts.end(), g.splits.begin(), g.splits.end());
    cuts.push_back(1.0);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double a = std::max(0.0, cuts[i]);
        double b = std::min(1.0, cuts[i + 1]);
        if (b <= a) continue;
        double mid = (a + b) / 2;
        fn(b - a, f(mid), g(mid));
    }
}

}  // namespace

double hellinger_step_densities(const StepFunction& f, const StepFunction& g) {
    double acc = 0.0;
    merged_pieces(f, g, [&](double w, double fv, double gv) { acc += w * hellinger_cell(fv, gv); });
    return std::sqrt(acc);
}

double l1_step_densities(const StepFunction& f, const StepFunction& g) {
    double acc = 0.0;
    /* both labels contribute |f-g|, hence the factor 2 */
    merged_pieces(f, g, [&](double w, double fv, double gv) { acc += 2.0 * w * std::abs(fv - gv); });
    return acc;
}

double hellinger_on_grid(const std::vector<double>& grid, const std::vector<double>& f,
                         const std::vector<double>& g) {
    check_grid(grid);
    if (f.size() != grid.size() || g.size() != grid.size())
        throw std::invalid_argument("hellinger_on_grid: curves must match the grid");
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) acc += node_weight(grid, i) * hellinger_cell(f[i], g[i]);
    return std::sqrt(acc);
}

double poisson_tail_bound(double lambda, int k) {
    if (!(lambda > 0.0)) throw std::domain_error("poisson_tail_bound: lambda must be positive");
    if (!(k > lambda)) throw std::domain_error("poisson_tail_bound: requires k > lambda");
    double log_pmf = -lambda + k * std::log(lambda) - std::lgamma(k + 1.0);
    return std::exp(log_pmf) * (static_cast<double>(k) / (k - lambda));
}

}  // namespace stepreg
