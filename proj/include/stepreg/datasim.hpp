#pragma once

#include <cstdint>
#include <functional>

#include "stepreg/dataset.hpp"
#include "stepreg/rng.hpp"

namespace stepreg {

/* Reference success curve: 0.6, then 0.4, then a smooth descent given by
 * the ratio of two normal bumps (sd 0.25) centered at 1/2 and 1. */
double f0(double x);

/* f0 compressed into dyadic blocks [2^-(j+1), 2^-j] for j < depth, with a
 * final full copy squeezed into [0, 2^-depth]; depth 0 is f0 itself */
double hard_f(double x, int depth);

/* coin flips everywhere */
double null_f(double x);

/* x uniform on [0,1], y Bernoulli(f(x)); returned sorted by x */
LabeledDataset generate_dataset_1d(const std::function<double(double)>& f, int n, std::uint64_t seed);

/* Two clusters on [0,2] x [0,1]. Labels are fair coins; label 1 points mix
 * a uniform draw on the right unit square with a tight normal at the left
 * square's center, label 0 the mirror image. */
struct Point2D {
    double x1, x2;
    int y;
};
std::vector<Point2D> generate_dataset_2d(int n, std::uint64_t seed);

}  // namespace stepreg
