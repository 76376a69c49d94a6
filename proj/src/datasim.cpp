#include "stepreg/datasim.hpp"

#include <cmath>
#include <stdexcept>

namespace stepreg {

namespace {

constexpr double kBumpSd = 0.25;

/* ratio of normal densities phi(x-1/2) / (phi(x-1/2) + phi(x-1)) */
double bump_ratio(double x) {
    double d1 = x - 0.5;
    double d2 = x - 1.0;
    return 1.0 / (1.0 + std::exp((d1 * d1 - d2 * d2) / (2.0 * kBumpSd * kBumpSd)));
}

}  // namespace

double f0(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("f0: argument outside [0,1]");
    if (x < 1.0 / 6.0) return 0.6;
    if (x <= 0.5) return 0.4;
    return bump_ratio(x);
}

double hard_f(double x, int depth) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("hard_f: argument outside [0,1]");
    if (depth < 0) throw std::invalid_argument("hard_f: depth must be >= 0");
    /* block [2^-(j+1), 2^-j] carries f0 rescaled to its width */
    double lo = std::pow(0.5, depth);
    if (x <= lo) return f0(x / lo);
    for (int j = depth - 1; j >= 0; --j) {
        double a = std::pow(0.5, j + 1);
        double b = std::pow(0.5, j);
        if (x <= b) {
            double t = (x - a) / (b - a);
            return f0(t);
        }
    }
    return 0.5;  /* unreachable for x in [0,1] */
}

double null_f(double) {
    return 0.5;
}

LabeledDataset generate_dataset_1d(const std::function<double(double)>& f, int n, std::uint64_t seed) {
    if (n < 0) throw std::invalid_argument("generate_dataset_1d: n must be >= 0");
    Rng rng(seed);
    std::vector<std::pair<double, int>> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        double x = rng.uniform();
        int y = rng.bernoulli(f(x)) ? 1 : 0;
        pts.emplace_back(x, y);
    }
    return LabeledDataset::from_points(std::move(pts));
}

std::vector<Point2D> generate_dataset_2d(int n, std::uint64_t seed) {
    if (n < 0) throw std::invalid_argument("generate_dataset_2d: n must be >= 0");
    Rng rng(seed);
    std::vector<Point2D> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        int y = rng.coin() ? 1 : 0;
        bool far_side = rng.coin();
        Point2D p{};
        p.y = y;
        if (far_side) {
            /* uniform on the label's own square: right for 1, left for 0 */
            p.x1 = (y == 1 ? 1.0 : 0.0) + rng.uniform();
            p.x2 = rng.uniform();
        } else {
            /* tight cluster at the opposite square's center */
            double cx = y == 1 ? 0.5 : 1.5;
            p.x1 = cx + rng.normal(0.1);
            p.x2 = 0.5 + rng.normal(0.1);
        }
        pts.push_back(p);
    }
    return pts;
}

}  // namespace stepreg
