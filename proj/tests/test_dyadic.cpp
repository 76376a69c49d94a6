#include <stdexcept>
#include <utility>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"

#include "stepreg/dyadic.hpp"
#include "stepreg/estimator.hpp"

using namespace stepreg;

TEST_CASE("level prior masses") {
    std::vector<double> m = geometric_level_masses(0.5, 3);
    REQUIRE(m.size() == 4);
    CHECK(m[0] == doctest::Approx(0.5));
    CHECK(m[3] == doctest::Approx(0.0625));
    CHECK(std::accumulate(m.begin(), m.end(), 0.0) == doctest::Approx(1.0 - std::pow(0.5, 4)));
    CHECK(default_level_beta() == doctest::Approx(0.4313237049315922).epsilon(1e-12));
    CHECK_THROWS_AS(geometric_level_masses(1.5, 3), std::invalid_argument);
}

TEST_CASE("no data: levels keep their prior odds and the curve is flat") {
    LabeledDataset d = LabeledDataset::from_points({});
    std::vector<double> prior = geometric_level_masses(0.4, 6);
    DyadicPosterior post = dyadic_exact_posterior(d, prior, std::pow(0.4, 7), make_grid(17));
    REQUIRE(post.level_mass.size() == 7);
    double head = std::accumulate(prior.begin(), prior.end(), 0.0);
    for (std::size_t l = 0; l < prior.size(); ++l)
        CHECK(post.level_mass[l] == doctest::Approx(prior[l] / head));
    CHECK(post.mode_level() == 0);
    for (double v : post.curve.mean) CHECK(v == doctest::Approx(0.5));
    CHECK(post.prior_tail_mass == doctest::Approx(std::pow(0.4, 7)));
}

TEST_CASE("a clean half split concentrates on level one") {
    std::vector<std::pair<double, int>> pts;
    for (int i = 0; i < 32; ++i) {
        pts.push_back({(i + 0.5) / 64.0, 1});        /* heads on the left half */
        pts.push_back({0.5 + (i + 0.5) / 64.0, 0});  /* tails on the right half */
    }
    LabeledDataset d = LabeledDataset::from_points(pts);
    std::vector<double> prior = geometric_level_masses(default_level_beta(), 8);
    DyadicPosterior post = dyadic_exact_posterior(d, prior, 0.0, make_grid(33));
    CHECK(post.mode_level() == 1);
    CHECK(post.level_mass[1] > 0.9);
    CHECK(std::accumulate(post.level_mass.begin(), post.level_mass.end(), 0.0) == doctest::Approx(1.0));
    /* curve hugs the plateau means */
    CHECK(post.curve.mean[0] > 0.9);
    CHECK(post.curve.mean[32] < 0.1);
}

TEST_CASE("cells collect their own points") {
    /* one head at 0.1, one tail at 0.9; level 1 separates them */
    LabeledDataset d = LabeledDataset::from_points({{0.1, 1}, {0.9, 0}});
    std::vector<double> prior = {0.5, 0.5};
    DyadicPosterior post = dyadic_exact_posterior(d, prior, 0.0, make_grid(11));
    /* level 0: rho = 1!1!/3! = 1/6; level 1: (1/2)^2 = 1/4; posterior odds 2:3 */
    CHECK(post.level_mass[0] == doctest::Approx(2.0 / 5.0));
    CHECK(post.level_mass[1] == doctest::Approx(3.0 / 5.0));
    /* at u=0: mix of 1/2 half-mass curve... level0 mean 2/4, level1 left cell mean 2/3 */
    CHECK(post.curve.mean[0] == doctest::Approx(0.4 * 0.5 + 0.6 * (2.0 / 3.0)));
    CHECK(post.curve.mean[10] == doctest::Approx(0.4 * 0.5 + 0.6 * (1.0 / 3.0)));
}

TEST_CASE("level budget is enforced") {
    LabeledDataset d = LabeledDataset::from_points({{0.5, 1}});
    std::vector<double> prior(26, 1.0 / 26);
    CHECK_THROWS_AS(dyadic_exact_posterior(d, prior, 0.0, make_grid(5)), std::runtime_error);
    CHECK_THROWS_AS(dyadic_exact_posterior(d, {}, 0.0, make_grid(5)), std::invalid_argument);
}
