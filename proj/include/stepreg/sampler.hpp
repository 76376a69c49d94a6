#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "stepreg/changepoint.hpp"
#include "stepreg/marginal.hpp"
#include "stepreg/prior.hpp"
#include "stepreg/rng.hpp"

namespace stepreg {

/* The five proposal moves, mixed at each step. */
enum class Action : int {
    add_delete = 0,    /* coin: append a fresh split, or drop a random one */
    replace_one = 1,   /* redraw one split uniformly */
    shift_one = 2,     /* nudge one split by N(0, shift_sd_single); hold if it leaves [0,1] */
    replace_all = 3,   /* redraw every split uniformly */
    shift_all = 4,     /* nudge each split by N(0, shift_sd_all); each holds individually */
};
inline constexpr int kNumActions = 5;
const char* action_name(Action a);

struct KernelConfig {
    /* renormalized mix of the five moves */
    std::array<double, kNumActions> mixture = {3.0 / 22, 3.0 / 22, 5.0 / 22, 1.0 / 22, 10.0 / 22};
    double shift_sd_single = 0.1;
    double shift_sd_all = 0.01;
    long iterations = 200000;
    long burn_in = -1;  /* negative: iterations / 10 */
    long record_every = 1;
    std::uint64_t seed = 0;

    long resolved_burn_in() const { return burn_in >= 0 ? burn_in : iterations / 10; }
    void validate() const;
};

struct TraceRecord {
    long iter;                   /* 1-based step index the snapshot was taken after */
    std::vector<double> splits;  /* ascending */
};

struct ChainTrace {
    std::vector<TraceRecord> records;
    std::array<long, kNumActions> proposed{};
    std::array<long, kNumActions> accepted{};

    double acceptance_rate(Action a) const;
};

/* Proposal construction only; no accept/reject. A move that cannot apply
 * (e.g. deleting from an empty split list) returns the state unchanged. */
ChangePointState propose(const ChangePointState& state, const LabeledDataset& data, Action action,
                         const KernelConfig& cfg, Rng& rng);

Action choose_action(const KernelConfig& cfg, Rng& rng);

/* One step with a fixed action; returns whether the proposal was accepted.
 * Unchanged proposals have ratio 1 and always accept. */
bool mh_step_action(ChangePointState& state, const LabeledDataset& data, const HierarchyPrior& prior, Action action,
                    const KernelConfig& cfg, Rng& rng);

/* One step of the mixed kernel; records bookkeeping when trace given. */
bool mh_step(ChangePointState& state, const LabeledDataset& data, const HierarchyPrior& prior,
             const KernelConfig& cfg, Rng& rng, ChainTrace* trace = nullptr);

/* Full run from the no-split state; snapshots every record_every steps
 * after burn-in. Identical configs give identical traces. */
ChainTrace run_chain(const LabeledDataset& data, const HierarchyPrior& prior, const KernelConfig& cfg,
                     std::uint64_t stream = 0);

/* Independent chains on streams 0..n_chains-1 derived from cfg.seed. */
std::vector<ChainTrace> run_chains(const LabeledDataset& data, const HierarchyPrior& prior, const KernelConfig& cfg,
                                   int n_chains);

/* Draw a fresh configuration from the prior and accept on the marginal
 * weight ratio alone (the prior factor cancels). */
bool independence_step(ChangePointState& state, const LabeledDataset& data, const HierarchyPrior& prior, Rng& rng);

}  // namespace stepreg
