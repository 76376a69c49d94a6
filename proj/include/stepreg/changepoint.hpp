#pragma once

#include <cstddef>
#include <vector>

#include "stepreg/dataset.hpp"

namespace stepreg {

/* Head/tail counts per interval, intervals left to right.
 * k intervals come from k-1 splits; a point at a split value belongs
 * to the interval on the right. */
struct IntervalCounts {
    std::vector<int> n1;  /* heads */
    std::vector<int> n0;  /* tails */

    int k() const { return static_cast<int>(n1.size()); }
    bool operator==(const IntervalCounts&) const = default;
};

/* Piecewise-constant function on [0,1]: values[j] on the j-th interval. */
struct StepFunction {
    std::vector<double> splits;  /* ascending, size k-1 */
    std::vector<double> values;  /* size k */

    double operator()(double u) const;
};

/* 0-based index of the interval containing x; splits ascending */
std::size_t locate_interval(const std::vector<double>& ordered_splits, double x);

/* counts for every interval in one left-to-right pass, O(k + n) */
IntervalCounts compute_counts(const LabeledDataset& data, const std::vector<double>& ordered_splits);

/* Split configuration with its counts kept consistent under local moves.
 * Moves touch only the affected intervals, so a move costs O(log n) count
 * work plus the vector splice. */
class ChangePointState {
  public:
    /* no splits: a single interval holding everything */
    static ChangePointState initial(const LabeledDataset& data);
    /* arbitrary splits (any order); sorts and counts from scratch */
    static ChangePointState from_splits(const LabeledDataset& data, std::vector<double> splits);

    int k() const { return counts_.k(); }
    std::size_t num_splits() const { return splits_.size(); }
    const std::vector<double>& ordered_splits() const { return splits_; }
    const IntervalCounts& counts() const { return counts_; }

    void insert_split(const LabeledDataset& data, double v);
    void remove_split(const LabeledDataset& data, std::size_t pos);
    void replace_split(const LabeledDataset& data, std::size_t pos, double v);

    bool operator==(const ChangePointState&) const = default;

  private:
    std::vector<double> splits_;  /* ascending */
    IntervalCounts counts_;
};

}  // namespace stepreg
