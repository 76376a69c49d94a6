#include "stepreg/changepoint.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace stepreg {

std::size_t locate_interval(const std::vector<double>& ordered_splits, double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("locate_interval: x outside [0,1]");
    /* number of splits at or below x; a point at a split value falls right */
    return static_cast<std::size_t>(std::upper_bound(ordered_splits.begin(), ordered_splits.end(), x) -
                                    ordered_splits.begin());
}

double StepFunction::operator()(double u) const {
    if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("StepFunction: argument outside [0,1]");
    return values[locate_interval(splits, u)];
}

IntervalCounts compute_counts(const LabeledDataset& data, const std::vector<double>& ordered_splits) {
    assert(std::is_sorted(ordered_splits.begin(), ordered_splits.end()));
    int k = static_cast<int>(ordered_splits.size()) + 1;
    IntervalCounts c;
    c.n1.assign(k, 0);
    c.n0.assign(k, 0);
    std::size_t i = 0;
    std::size_t n = data.size();
    for (int j = 0; j < k; ++j) {
        bool last = (j == k - 1);
        while (i < n && (last || data.x(i) < ordered_splits[j])) {
            if (data.y(i)) ++c.n1[j];
            else ++c.n0[j];
            ++i;
        }
    }
    return c;
}

ChangePointState ChangePointState::initial(const LabeledDataset& data) {
    ChangePointState s;
    s.counts_.n1.assign(1, data.total_heads());
    s.counts_.n0.assign(1, static_cast<int>(data.size()) - data.total_heads());
    return s;
}

ChangePointState ChangePointState::from_splits(const LabeledDataset& data, std::vector<double> splits) {
    for (double v : splits)
        if (!(v >= 0.0 && v <= 1.0)) throw std::domain_error("split outside [0,1]");
    std::sort(splits.begin(), splits.end());
    ChangePointState s;
    s.splits_ = std::move(splits);
    s.counts_ = compute_counts(data, s.splits_);
    return s;
}

void ChangePointState::insert_split(const LabeledDataset& data, double v) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::domain_error("split outside [0,1]");
    std::size_t pos = static_cast<std::size_t>(std::upper_bound(splits_.begin(), splits_.end(), v) - splits_.begin());
    /* interval pos splits at v; only its two halves need fresh counts */
    std::size_t lo_i = (pos == 0) ? 0 : data.first_at_or_above(splits_[pos - 1]);
    std::size_t cut = data.first_at_or_above(v);
    int left_h = data.heads_in(lo_i, cut);
    int left_t = data.tails_in(lo_i, cut);
    splits_.insert(splits_.begin() + pos, v);
    counts_.n1.insert(counts_.n1.begin() + pos, left_h);
    counts_.n0.insert(counts_.n0.begin() + pos, left_t);
    counts_.n1[pos + 1] -= left_h;
    counts_.n0[pos + 1] -= left_t;
}

void ChangePointState::remove_split(const LabeledDataset&, std::size_t pos) {
    assert(pos < splits_.size());
    counts_.n1[pos] += counts_.n1[pos + 1];
    counts_.n0[pos] += counts_.n0[pos + 1];
    counts_.n1.erase(counts_.n1.begin() + pos + 1);
    counts_.n0.erase(counts_.n0.begin() + pos + 1);
    splits_.erase(splits_.begin() + pos);
}

void ChangePointState::replace_split(const LabeledDataset& data, std::size_t pos, double v) {
    assert(pos < splits_.size());
    if (splits_[pos] == v) return;
    remove_split(data, pos);
    insert_split(data, v);
}

}  // namespace stepreg
