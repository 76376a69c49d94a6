#include "stepreg/dataset.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace stepreg {

LabeledDataset LabeledDataset::from_points(std::vector<std::pair<double, int>> pts) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double xv = pts[i].first;
        int yv = pts[i].second;
        if (!(xv >= 0.0 && xv <= 1.0))
            throw std::invalid_argument("dataset point " + std::to_string(i) + ": x=" + std::to_string(xv) +
                                        " outside [0,1]");
        if (yv != 0 && yv != 1)
            throw std::invalid_argument("dataset point " + std::to_string(i) + ": y=" + std::to_string(yv) +
                                        " not in {0,1}");
    }
    std::sort(pts.begin(), pts.end());
    LabeledDataset d;
    d.x_.reserve(pts.size());
    d.y_.reserve(pts.size());
    d.heads_prefix_.resize(pts.size() + 1, 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        d.x_.push_back(pts[i].first);
        d.y_.push_back(static_cast<std::uint8_t>(pts[i].second));
        d.heads_prefix_[i + 1] = d.heads_prefix_[i] + pts[i].second;
    }
    return d;
}

std::size_t LabeledDataset::first_at_or_above(double v) const {
    return static_cast<std::size_t>(std::lower_bound(x_.begin(), x_.end(), v) - x_.begin());
}

int LabeledDataset::heads_in(std::size_t lo, std::size_t hi) const {
    return heads_prefix_[hi] - heads_prefix_[lo];
}

}  // namespace stepreg
