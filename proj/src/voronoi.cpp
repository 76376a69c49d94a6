#include "stepreg/voronoi.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stepreg/marginal.hpp"

namespace stepreg {

CovariateSet CovariateSet::from_points(std::vector<std::vector<double>> coords, std::vector<int> labels) {
    if (coords.empty()) throw std::invalid_argument("covariate set: no points");
    if (coords.size() != labels.size()) throw std::invalid_argument("covariate set: coords/labels length mismatch");
    CovariateSet cs;
    cs.d_ = static_cast<int>(coords[0].size());
    if (cs.d_ < 1) throw std::invalid_argument("covariate set: dimension must be >= 1");
    cs.coords_.reserve(coords.size() * cs.d_);
    cs.y_.reserve(labels.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (static_cast<int>(coords[i].size()) != cs.d_)
            throw std::invalid_argument("covariate set: point " + std::to_string(i) + " has wrong dimension");
        if (labels[i] != 0 && labels[i] != 1)
            throw std::invalid_argument("covariate set: label " + std::to_string(i) + " not in {0,1}");
        cs.coords_.insert(cs.coords_.end(), coords[i].begin(), coords[i].end());
        cs.y_.push_back(static_cast<std::uint8_t>(labels[i]));
    }
    return cs;
}

double CovariateSet::dist2(int i, const double* p) const {
    const double* a = point(i);
    double acc = 0.0;
    for (int d = 0; d < d_; ++d) {
        double diff = a[d] - p[d];
        acc += diff * diff;
    }
    return acc;
}

namespace {

/* the one expression both the full pass and the incremental updates use */
inline double gen_ratio(const CovariateSet& cov, const SubsetState& st, int i, int g) {
    double w = st.weights[g];
    return cov.dist2(i, cov.point(g)) / (w * w);
}

inline double point_ratio(const CovariateSet& cov, const SubsetState& st, const double* p, int g) {
    double w = st.weights[g];
    return cov.dist2(g, p) / (w * w);
}

bool accept_log_ratio(double delta, Rng& rng) {
    if (delta >= 0.0) return true;
    return std::log(rng.uniform()) < delta;
}

}  // namespace

SubsetState SubsetState::make(const CovariateSet& cov, std::vector<std::uint8_t> included,
                              std::vector<double> weights) {
    int n = cov.n();
    if (static_cast<int>(included.size()) != n) throw std::invalid_argument("subset state: wrong included length");
    if (weights.empty()) weights.assign(n, 1.0);
    if (static_cast<int>(weights.size()) != n) throw std::invalid_argument("subset state: wrong weights length");
    for (double w : weights)
        if (!(w > 0.0)) throw std::invalid_argument("subset state: weights must be positive");
    SubsetState st;
    st.included = std::move(included);
    st.weights = std::move(weights);
    st.k = 0;
    for (std::uint8_t b : st.included) st.k += b ? 1 : 0;
    if (st.k < 1) throw std::invalid_argument("subset state: at least one generator required");
    st.cell.resize(n);
    st.ratio.resize(n);
    st.n1.resize(n);
    st.n0.resize(n);
    recompute_cells(cov, st);
    return st;
}

SubsetState SubsetState::all_included(const CovariateSet& cov) {
    return make(cov, std::vector<std::uint8_t>(cov.n(), 1));
}

int assign_cell(const CovariateSet& cov, const SubsetState& st, const double* p) {
    int best = -1;
    double best_r = 0.0;
    for (int g = 0; g < cov.n(); ++g) {
        if (!st.included[g]) continue;
        double r = point_ratio(cov, st, p, g);
        if (best < 0 || r < best_r) {
            best = g;
            best_r = r;
        }
    }
    return best;
}

void recompute_cells(const CovariateSet& cov, SubsetState& st) {
    int n = cov.n();
    std::fill(st.n1.begin(), st.n1.end(), 0);
    std::fill(st.n0.begin(), st.n0.end(), 0);
    for (int i = 0; i < n; ++i) {
        int best = -1;
        double best_r = 0.0;
        for (int g = 0; g < n; ++g) {
            if (!st.included[g]) continue;
            double r = gen_ratio(cov, st, i, g);
            if (best < 0 || r < best_r) {
                best = g;
                best_r = r;
            }
        }
        st.cell[i] = best;
        st.ratio[i] = best_r;
        if (cov.y(i)) ++st.n1[best];
        else ++st.n0[best];
    }
}

double subset_log_posterior(const CovariateSet& cov, const SubsetState& st, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("subset posterior: alpha must lie in (0,1)");
    if (st.k < 1) throw std::invalid_argument("subset posterior: empty subset");
    double acc = (st.k - 1) * std::log(alpha);
    for (int g = 0; g < cov.n(); ++g)
        if (st.included[g]) acc += log_beta_integral(st.n1[g], st.n0[g]);
    return acc;
}

void VoronoiConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("voronoi config: alpha must lie in (0,1)");
    if (!(gamma > 0.0)) throw std::invalid_argument("voronoi config: gamma must be positive");
    if (!(weight_step_sd > 0.0)) throw std::invalid_argument("voronoi config: weight_step_sd must be positive");
    if (iterations < 1) throw std::invalid_argument("voronoi config: iterations must be >= 1");
    if (resolved_burn_in() >= iterations) throw std::invalid_argument("voronoi config: burn_in must be < iterations");
    if (record_every < 1) throw std::invalid_argument("voronoi config: record_every must be >= 1");
}

namespace {

/* Bookkeeping for one proposed move, enough to undo it exactly and to
 * price it: per-point restores plus per-generator count snapshots. */
struct MoveContext {
    struct PointEntry {
        int i, old_cell;
        double old_ratio;
    };
    std::vector<PointEntry> points;
    std::vector<int> gens, old_n1, old_n0;

    void clear() {
        points.clear();
        gens.clear();
        old_n1.clear();
        old_n0.clear();
    }

    void touch(const SubsetState& st, int g) {
        for (int seen : gens)
            if (seen == g) return;
        gens.push_back(g);
        old_n1.push_back(st.n1[g]);
        old_n0.push_back(st.n0[g]);
    }

    void move_point(const CovariateSet& cov, SubsetState& st, int i, int to, double r) {
        touch(st, st.cell[i]);
        touch(st, to);
        points.push_back({i, st.cell[i], st.ratio[i]});
        if (cov.y(i)) {
            --st.n1[st.cell[i]];
            ++st.n1[to];
        } else {
            --st.n0[st.cell[i]];
            ++st.n0[to];
        }
        st.cell[i] = to;
        st.ratio[i] = r;
    }

    void reprice_point(SubsetState& st, int i, double r) {
        points.push_back({i, st.cell[i], st.ratio[i]});
        st.ratio[i] = r;
    }

    double delta_beta(const SubsetState& st) const {
        double d = 0.0;
        for (std::size_t t = 0; t < gens.size(); ++t)
            d += log_beta_integral(st.n1[gens[t]], st.n0[gens[t]]) - log_beta_integral(old_n1[t], old_n0[t]);
        return d;
    }

    void rollback(SubsetState& st) const {
        for (std::size_t t = 0; t < gens.size(); ++t) {
            st.n1[gens[t]] = old_n1[t];
            st.n0[gens[t]] = old_n0[t];
        }
        for (auto it = points.rbegin(); it != points.rend(); ++it) {
            st.cell[it->i] = it->old_cell;
            st.ratio[it->i] = it->old_ratio;
        }
    }
};

thread_local MoveContext tls_ctx;

/* rescan one point over the included generators, earliest index wins ties */
void best_generator(const CovariateSet& cov, const SubsetState& st, int i, int& best, double& best_r) {
    best = -1;
    for (int g = 0; g < cov.n(); ++g) {
        if (!st.included[g]) continue;
        double r = gen_ratio(cov, st, i, g);
        if (best < 0 || r < best_r) {
            best = g;
            best_r = r;
        }
    }
}

bool flip_move(const CovariateSet& cov, SubsetState& st, const VoronoiConfig& cfg, int j, double fresh_weight,
               Rng& rng) {
    MoveContext& ctx = tls_ctx;
    ctx.clear();
    int n = cov.n();
    double delta;
    if (!st.included[j]) {
        st.included[j] = 1;
        ++st.k;
        st.weights[j] = fresh_weight;
        st.n1[j] = 0;
        st.n0[j] = 0;
        ctx.touch(st, j); /* snapshot the empty cell so delta_beta prices its appearance */
        for (int i = 0; i < n; ++i) {
            double r = gen_ratio(cov, st, i, j);
            if (r < st.ratio[i] || (r == st.ratio[i] && j < st.cell[i])) ctx.move_point(cov, st, i, j, r);
        }
        delta = std::log(cfg.alpha) + ctx.delta_beta(st);
        if (accept_log_ratio(delta, rng)) return true;
        ctx.rollback(st);
        st.included[j] = 0;
        --st.k;
        return false;
    }
    ctx.touch(st, j);
    st.included[j] = 0;
    --st.k;
    for (int i = 0; i < n; ++i) {
        if (st.cell[i] != j) continue;
        int best;
        double best_r = 0.0;
        best_generator(cov, st, i, best, best_r);
        ctx.move_point(cov, st, i, best, best_r);
    }
    delta = -std::log(cfg.alpha) + ctx.delta_beta(st);
    if (accept_log_ratio(delta, rng)) return true;
    ctx.rollback(st);
    st.included[j] = 1;
    ++st.k;
    return false;
}

bool weight_move(const CovariateSet& cov, SubsetState& st, const VoronoiConfig& cfg, int j, double new_w, Rng& rng) {
    MoveContext& ctx = tls_ctx;
    ctx.clear();
    int n = cov.n();
    double old_w = st.weights[j];
    st.weights[j] = new_w;
    for (int i = 0; i < n; ++i) {
        if (st.cell[i] == j) {
            int best;
            double best_r = 0.0;
            best_generator(cov, st, i, best, best_r);
            if (best != j) ctx.move_point(cov, st, i, best, best_r);
            else ctx.reprice_point(st, i, best_r);
        } else {
            double r = gen_ratio(cov, st, i, j);
            if (r < st.ratio[i] || (r == st.ratio[i] && j < st.cell[i])) ctx.move_point(cov, st, i, j, r);
        }
    }
    double lr = std::log(new_w) - std::log(old_w);
    /* Gamma(gamma, 1/gamma) prior ratio plus the log-normal walk Jacobian */
    double delta = ctx.delta_beta(st) + (cfg.gamma - 1.0) * lr - cfg.gamma * (new_w - old_w) + lr;
    if (accept_log_ratio(delta, rng)) return true;
    ctx.rollback(st);
    st.weights[j] = old_w;
    return false;
}

}  // namespace

bool subset_chain_step(const CovariateSet& cov, SubsetState& st, const VoronoiConfig& cfg, Rng& rng,
                       VoronoiStepStats* stats) {
    bool do_weight = cfg.weighted && rng.coin();
    if (do_weight) {
        /* walk the weight of one currently included generator */
        int pick = rng.uniform_int(st.k);
        int j = -1;
        for (int g = 0; g < cov.n(); ++g) {
            if (!st.included[g]) continue;
            if (pick-- == 0) {
                j = g;
                break;
            }
        }
        double new_w = st.weights[j] * std::exp(rng.normal(cfg.weight_step_sd));
        bool acc = weight_move(cov, st, cfg, j, new_w, rng);
        if (stats) {
            ++stats->proposed_weight;
            stats->accepted_weight += acc ? 1 : 0;
        }
        return acc;
    }
    int j = rng.uniform_int(cov.n());
    if (st.included[j] && st.k == 1) {
        /* removing the last generator is proposed as the current state */
        if (stats) {
            ++stats->proposed_flip;
            ++stats->accepted_flip;
        }
        return true;
    }
    double fresh_weight = 1.0;
    if (cfg.weighted && !st.included[j]) fresh_weight = rng.gamma(cfg.gamma, 1.0 / cfg.gamma);
    bool acc = flip_move(cov, st, cfg, j, fresh_weight, rng);
    if (stats) {
        ++stats->proposed_flip;
        stats->accepted_flip += acc ? 1 : 0;
    }
    return acc;
}

void VoronoiTrace::included_of(std::size_t rec, std::vector<std::uint8_t>& out) const {
    out.assign(n, 0);
    for (int i = 0; i < n; ++i)
        if (masks[rec * words + i / 64] >> (i % 64) & 1) out[i] = 1;
}

int VoronoiTrace::size_of(std::size_t rec) const {
    int c = 0;
    for (int w = 0; w < words; ++w) c += std::popcount(masks[rec * words + w]);
    return c;
}

VoronoiTrace run_subset_chain(const CovariateSet& cov, const VoronoiConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);
    SubsetState st = SubsetState::all_included(cov);
    VoronoiTrace trace;
    trace.n = cov.n();
    trace.words = (cov.n() + 63) / 64;
    trace.weighted = cfg.weighted;
    long burn = cfg.resolved_burn_in();
    std::size_t expect = static_cast<std::size_t>((cfg.iterations - burn) / cfg.record_every);
    trace.masks.reserve(expect * trace.words);
    if (cfg.weighted) trace.weights.reserve(expect * cov.n());
    for (long it = 1; it <= cfg.iterations; ++it) {
        subset_chain_step(cov, st, cfg, rng, &trace.stats);
        if (it > burn && (it - burn) % cfg.record_every == 0) {
            for (int w = 0; w < trace.words; ++w) {
                std::uint64_t word = 0;
                for (int b = 0; b < 64; ++b) {
                    int i = w * 64 + b;
                    if (i < cov.n() && st.included[i]) word |= std::uint64_t{1} << b;
                }
                trace.masks.push_back(word);
            }
            if (cfg.weighted) trace.weights.insert(trace.weights.end(), st.weights.begin(), st.weights.end());
        }
    }
    return trace;
}

std::vector<double> subset_size_mass(const VoronoiTrace& trace) {
    std::vector<double> mass(trace.n, 0.0);
    std::size_t R = trace.n_records();
    if (R == 0) return mass;
    for (std::size_t r = 0; r < R; ++r) ++mass[trace.size_of(r) - 1];
    for (double& m : mass) m /= static_cast<double>(R);
    return mass;
}

std::vector<double> voronoi_posterior_mean(const VoronoiTrace& trace, const CovariateSet& cov,
                                           const std::vector<std::vector<double>>& eval_points) {
    std::size_t R = trace.n_records();
    if (R == 0) throw std::invalid_argument("voronoi_posterior_mean: empty trace");
    if (trace.n != cov.n()) throw std::invalid_argument("voronoi_posterior_mean: trace/covariates mismatch");
    for (const auto& p : eval_points)
        if (static_cast<int>(p.size()) != cov.dim())
            throw std::invalid_argument("voronoi_posterior_mean: eval point dimension mismatch");
    SubsetState st = SubsetState::all_included(cov);
    std::vector<double> acc(eval_points.size(), 0.0);
    std::vector<std::uint8_t> inc;
    for (std::size_t r = 0; r < R; ++r) {
        trace.included_of(r, inc);
        st.included = inc;
        st.k = 0;
        for (std::uint8_t b : inc) st.k += b ? 1 : 0;
        if (trace.weighted)
            std::copy(trace.weights.begin() + r * cov.n(), trace.weights.begin() + (r + 1) * cov.n(),
                      st.weights.begin());
        recompute_cells(cov, st);
        for (std::size_t e = 0; e < eval_points.size(); ++e) {
            int g = assign_cell(cov, st, eval_points[e].data());
            acc[e] += posterior_value_mean(st.n1[g], st.n0[g]);
        }
    }
    for (double& a : acc) a /= static_cast<double>(R);
    return acc;
}

VoronoiExact enumerate_subsets_exact(const CovariateSet& cov, double alpha,
                                     const std::vector<std::vector<double>>& eval_points) {
    int n = cov.n();
    if (n > 15) throw std::runtime_error("subset enumeration supports at most 15 points, got " + std::to_string(n));
    for (const auto& p : eval_points)
        if (static_cast<int>(p.size()) != cov.dim())
            throw std::invalid_argument("enumerate_subsets_exact: eval point dimension mismatch");
    std::uint32_t top = (std::uint32_t{1} << n) - 1;
    std::vector<double> log_w(top + 1, -std::numeric_limits<double>::infinity());
    SubsetState st = SubsetState::all_included(cov);
    auto load_mask = [&](std::uint32_t mask) {
        st.k = 0;
        for (int i = 0; i < n; ++i) {
            st.included[i] = (mask >> i) & 1;
            st.k += st.included[i];
        }
        recompute_cells(cov, st);
    };
    double scale = -std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 1; mask <= top; ++mask) {
        load_mask(mask);
        log_w[mask] = subset_log_posterior(cov, st, alpha);
        scale = std::max(scale, log_w[mask]);
    }
    VoronoiExact out;
    out.size_mass.assign(n, 0.0);
    out.mean.assign(eval_points.size(), 0.0);
    double total = 0.0;
    for (std::uint32_t mask = 1; mask <= top; ++mask) {
        double w = std::exp(log_w[mask] - scale);
        total += w;
        out.size_mass[std::popcount(mask) - 1] += w;
        load_mask(mask);
        for (std::size_t e = 0; e < eval_points.size(); ++e) {
            int g = assign_cell(cov, st, eval_points[e].data());
            out.mean[e] += w * posterior_value_mean(st.n1[g], st.n0[g]);
        }
    }
    for (double& m : out.size_mass) m /= total;
    for (double& m : out.mean) m /= total;
    return out;
}

}  // namespace stepreg
