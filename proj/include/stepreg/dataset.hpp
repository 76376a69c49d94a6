#pragma once

#include <cstdint>
#include <cstddef>
#include <utility>
#include <vector>

namespace stepreg {

/* Binary-labeled points on [0,1], kept sorted by x (ties allowed).
 * A prefix table over the labels answers head/tail counts for any
 * contiguous index range in O(1). */
class LabeledDataset {
  public:
    LabeledDataset() = default;

    /* sorts by x and validates: x in [0,1], y in {0,1} */
    static LabeledDataset from_points(std::vector<std::pair<double, int>> pts);

    std::size_t size() const { return x_.size(); }
    bool empty() const { return x_.empty(); }
    double x(std::size_t i) const { return x_[i]; }
    int y(std::size_t i) const { return y_[i]; }
    const std::vector<double>& xs() const { return x_; }

    /* first index i with x_i >= v (data at the split value falls right of it) */
    std::size_t first_at_or_above(double v) const;

    /* heads among points with index in [lo, hi) */
    int heads_in(std::size_t lo, std::size_t hi) const;
    int tails_in(std::size_t lo, std::size_t hi) const { return static_cast<int>(hi - lo) - heads_in(lo, hi); }
    int total_heads() const { return heads_in(0, size()); }

  private:
    std::vector<double> x_;
    std::vector<std::uint8_t> y_;
    std::vector<int> heads_prefix_{0};  /* heads among the first i points; size n+1 */
};

}  // namespace stepreg
