#include "stepreg/sampler.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace stepreg {

const char* action_name(Action a) {
    switch (a) {
        case Action::add_delete: return "add_delete";
        case Action::replace_one: return "replace_one";
        case Action::shift_one: return "shift_one";
        case Action::replace_all: return "replace_all";
        case Action::shift_all: return "shift_all";
    }
    return "?";
}

void KernelConfig::validate() const {
    if (iterations < 1) throw std::invalid_argument("kernel config: iterations must be >= 1");
    if (resolved_burn_in() >= iterations) throw std::invalid_argument("kernel config: burn_in must be < iterations");
    if (record_every < 1) throw std::invalid_argument("kernel config: record_every must be >= 1");
    if (!(shift_sd_single > 0.0) || !(shift_sd_all > 0.0))
        throw std::invalid_argument("kernel config: shift sds must be positive");
    double sum = 0.0;
    for (double m : mixture) {
        if (!(m >= 0.0)) throw std::invalid_argument("kernel config: negative mixture weight");
        sum += m;
    }
    if (!(sum > 0.0)) throw std::invalid_argument("kernel config: mixture weights all zero");
}

double ChainTrace::acceptance_rate(Action a) const {
    long p = proposed[static_cast<int>(a)];
    return p == 0 ? 0.0 : static_cast<double>(accepted[static_cast<int>(a)]) / static_cast<double>(p);
}

Action choose_action(const KernelConfig& cfg, Rng& rng) {
    double sum = 0.0;
    for (double m : cfg.mixture) sum += m;
    double u = rng.uniform() * sum;
    double acc = 0.0;
    for (int a = 0; a < kNumActions; ++a) {
        acc += cfg.mixture[a];
        if (u < acc) return static_cast<Action>(a);
    }
    return static_cast<Action>(kNumActions - 1);
}

ChangePointState propose(const ChangePointState& state, const LabeledDataset& data, Action action,
                         const KernelConfig& cfg, Rng& rng) {
    ChangePointState y = state;
    int ns = static_cast<int>(state.num_splits());
    switch (action) {
        case Action::add_delete: {
            if (rng.coin()) {
                y.insert_split(data, rng.uniform());
            } else if (ns > 0) {
                y.remove_split(data, static_cast<std::size_t>(rng.uniform_int(ns)));
            }
            break;
        }
        case Action::replace_one: {
            if (ns == 0) break;
            std::size_t pos = static_cast<std::size_t>(rng.uniform_int(ns));
            y.replace_split(data, pos, rng.uniform());
            break;
        }
        case Action::shift_one: {
            if (ns == 0) break;
            std::size_t pos = static_cast<std::size_t>(rng.uniform_int(ns));
            double moved = y.ordered_splits()[pos] + rng.normal(cfg.shift_sd_single);
            /* out of range: keep the current state as the proposal */
            if (moved >= 0.0 && moved <= 1.0) y.replace_split(data, pos, moved);
            break;
        }
        case Action::replace_all: {
            if (ns == 0) break;
            std::vector<double> fresh(ns);
            for (double& v : fresh) v = rng.uniform();
            y = ChangePointState::from_splits(data, std::move(fresh));
            break;
        }
        case Action::shift_all: {
            if (ns == 0) break;
            std::vector<double> moved = y.ordered_splits();
            for (double& v : moved) {
                double w = v + rng.normal(cfg.shift_sd_all);
                /* coordinates that would exit [0,1] stay put */
                if (w >= 0.0 && w <= 1.0) v = w;
            }
            y = ChangePointState::from_splits(data, std::move(moved));
            break;
        }
    }
    return y;
}

namespace {

bool accept_log_ratio(double delta, Rng& rng) {
    if (delta >= 0.0) return true;
    return std::log(rng.uniform()) < delta;
}

}  // namespace

bool mh_step_action(ChangePointState& state, const LabeledDataset& data, const HierarchyPrior& prior, Action action,
                    const KernelConfig& cfg, Rng& rng) {
    ChangePointState y = propose(state, data, action, cfg, rng);
    double delta = log_phi(prior, y.counts()) - log_phi(prior, state.counts());
    if (accept_log_ratio(delta, rng)) {
        state = std::move(y);
        return true;
    }
    return false;
}

bool mh_step(ChangePointState& state, const LabeledDataset& data, const HierarchyPrior& prior,
             const KernelConfig& cfg, Rng& rng, ChainTrace* trace) {
    Action a = choose_action(cfg, rng);
    bool acc = mh_step_action(state, data, prior, a, cfg, rng);
    if (trace) {
        ++trace->proposed[static_cast<int>(a)];
        if (acc) ++trace->accepted[static_cast<int>(a)];
    }
    return acc;
}

ChainTrace run_chain(const LabeledDataset& data, const HierarchyPrior& prior, const KernelConfig& cfg,
                     std::uint64_t stream) {
    cfg.validate();
    ChainTrace trace;
    long burn = cfg.resolved_burn_in();
    trace.records.reserve(static_cast<std::size_t>((cfg.iterations - burn) / cfg.record_every));
    Rng rng(cfg.seed, stream);
    ChangePointState state = ChangePointState::initial(data);
    for (long i = 1; i <= cfg.iterations; ++i) {
        mh_step(state, data, prior, cfg, rng, &trace);
        if (i > burn && (i - burn) % cfg.record_every == 0)
            trace.records.push_back(TraceRecord{i, state.ordered_splits()});
    }
    return trace;
}

std::vector<ChainTrace> run_chains(const LabeledDataset& data, const HierarchyPrior& prior, const KernelConfig& cfg,
                                   int n_chains) {
    if (n_chains < 1) throw std::invalid_argument("run_chains: need at least one chain");
    std::vector<ChainTrace> out(n_chains);
    std::vector<std::thread> workers;
    workers.reserve(n_chains);
    for (int c = 0; c < n_chains; ++c)
        workers.emplace_back([&, c] { out[c] = run_chain(data, prior, cfg, static_cast<std::uint64_t>(c)); });
    for (auto& w : workers) w.join();
    return out;
}

bool independence_step(ChangePointState& state, const LabeledDataset& data, const HierarchyPrior& prior, Rng& rng) {
    int k = prior.sample(rng);
    std::vector<double> splits(k - 1);
    for (double& v : splits) v = rng.uniform();
    ChangePointState y = ChangePointState::from_splits(data, std::move(splits));
    double delta = log_rho(y.counts()) - log_rho(state.counts());
    if (accept_log_ratio(delta, rng)) {
        state = std::move(y);
        return true;
    }
    return false;
}

}  // namespace stepreg
