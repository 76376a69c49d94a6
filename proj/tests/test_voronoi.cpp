#include <cstdint>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "stepreg/datasim.hpp"
#include "stepreg/marginal.hpp"
#include "stepreg/voronoi.hpp"

using namespace stepreg;

namespace {

CovariateSet line3() {
    /* three labeled points on a line */
    return CovariateSet::from_points({{0.0}, {1.0}, {2.0}}, {1, 0, 1});
}

CovariateSet from_2d(const std::vector<Point2D>& pts) {
    std::vector<std::vector<double>> coords;
    std::vector<int> labels;
    for (const Point2D& p : pts) {
        coords.push_back({p.x1, p.x2});
        labels.push_back(p.y);
    }
    return CovariateSet::from_points(coords, labels);
}

}  // namespace

TEST_CASE("points join their nearest generator, ties to the earliest") {
    CovariateSet cov = CovariateSet::from_points({{0.0, 0.0}, {2.0, 0.0}, {1.0, 0.0}}, {1, 0, 1});
    SubsetState st = SubsetState::make(cov, {1, 1, 0});
    CHECK(st.k == 2);
    CHECK(st.cell[0] == 0);
    CHECK(st.cell[1] == 1);
    CHECK(st.cell[2] == 0);  /* equidistant from 0 and 1: the earlier index wins */
    CHECK(st.n1[0] == 2);
    CHECK(st.n0[1] == 1);

    double q[2] = {1.0, 0.0};
    CHECK(assign_cell(cov, st, q) == 0);
    double r[2] = {1.9, 0.0};
    CHECK(assign_cell(cov, st, r) == 1);
}

TEST_CASE("scaling every weight leaves the partition alone") {
    std::vector<Point2D> pts = generate_dataset_2d(30, 5);
    CovariateSet cov = from_2d(pts);
    std::vector<std::uint8_t> inc(30, 0);
    for (int i = 0; i < 30; i += 3) inc[i] = 1;
    std::vector<double> w(30);
    Rng rng(9);
    for (double& v : w) v = 0.25 + rng.uniform();

    SubsetState a = SubsetState::make(cov, inc, w);
    std::vector<double> w2 = w;
    for (double& v : w2) v *= 2.0;
    SubsetState b = SubsetState::make(cov, inc, w2);
    CHECK(a.cell == b.cell);
    CHECK(a.n1 == b.n1);
    CHECK(a.n0 == b.n0);
    CHECK(subset_log_posterior(cov, a, 0.5) == doctest::Approx(subset_log_posterior(cov, b, 0.5)));
}

TEST_CASE("subset weight on a worked example") {
    CovariateSet cov = line3();
    SubsetState all = SubsetState::all_included(cov);
    CHECK(all.k == 3);
    /* every point is its own generator: three singleton cells */
    double expect = 2.0 * std::log(0.5) + 3.0 * log_beta_integral(1, 0);
    CHECK(subset_log_posterior(cov, all, 0.5) == doctest::Approx(expect));

    SubsetState lone = SubsetState::make(cov, {0, 1, 0});
    CHECK(lone.k == 1);
    CHECK(lone.n1[1] == 2);
    CHECK(lone.n0[1] == 1);
    CHECK(subset_log_posterior(cov, lone, 0.5) == doctest::Approx(log_beta_integral(2, 1)));
}

TEST_CASE("single point enumeration is trivial") {
    CovariateSet cov = CovariateSet::from_points({{0.3, 0.3}}, {1});
    VoronoiExact ex = enumerate_subsets_exact(cov, 0.5, {{0.0, 0.0}, {0.9, 0.9}});
    REQUIRE(ex.size_mass.size() == 1);
    CHECK(ex.size_mass[0] == doctest::Approx(1.0));
    CHECK(ex.mean[0] == doctest::Approx(2.0 / 3.0));
    CHECK(ex.mean[1] == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("chain moves match a full rebuild step for step") {
    std::vector<Point2D> pts = generate_dataset_2d(20, 11);
    CovariateSet cov = from_2d(pts);
    for (bool weighted : {false, true}) {
        VoronoiConfig cfg;
        cfg.weighted = weighted;
        cfg.seed = 3;
        Rng rng(cfg.seed);
        SubsetState st = SubsetState::all_included(cov);
        for (int step = 0; step < 3000; ++step) {
            subset_chain_step(cov, st, cfg, rng);
            SubsetState ref = st;
            recompute_cells(cov, ref);
            REQUIRE(st.cell == ref.cell);
            REQUIRE(st.ratio == ref.ratio);
            REQUIRE(st.n1 == ref.n1);
            REQUIRE(st.n0 == ref.n0);
            REQUIRE(st.k >= 1);
        }
    }
}

TEST_CASE("short chain on three points against full enumeration") {
    CovariateSet cov = line3();
    VoronoiConfig cfg;
    cfg.iterations = 120000;
    cfg.seed = 17;
    VoronoiTrace trace = run_subset_chain(cov, cfg);
    std::vector<double> emp = subset_size_mass(trace);
    std::vector<std::vector<double>> evals = {{0.1}, {1.5}};
    VoronoiExact ex = enumerate_subsets_exact(cov, cfg.alpha, evals);
    REQUIRE(emp.size() == ex.size_mass.size());
    double tv = 0.0;
    for (std::size_t i = 0; i < emp.size(); ++i) tv += std::abs(emp[i] - ex.size_mass[i]);
    CHECK(tv / 2.0 < 0.02);
    std::vector<double> mean = voronoi_posterior_mean(trace, cov, evals);
    CHECK(mean[0] == doctest::Approx(ex.mean[0]).epsilon(0.03));
    CHECK(mean[1] == doctest::Approx(ex.mean[1]).epsilon(0.03));
}

TEST_CASE("weighted runs keep positive weights and count both move kinds") {
    std::vector<Point2D> pts = generate_dataset_2d(12, 21);
    CovariateSet cov = from_2d(pts);
    VoronoiConfig cfg;
    cfg.weighted = true;
    cfg.iterations = 20000;
    cfg.seed = 4;
    VoronoiTrace trace = run_subset_chain(cov, cfg);
    CHECK(trace.weighted);
    CHECK(trace.stats.proposed_flip + trace.stats.proposed_weight == cfg.iterations);
    CHECK(trace.stats.proposed_weight > 0);
    CHECK(trace.stats.accepted_weight > 0);
    REQUIRE(trace.n_records() == static_cast<std::size_t>(cfg.iterations - cfg.resolved_burn_in()));
    std::vector<std::uint8_t> inc;
    for (std::size_t r = 0; r < trace.n_records(); r += 997) {
        trace.included_of(r, inc);
        int k = 0;
        for (std::uint8_t b : inc) k += b;
        CHECK(k == trace.size_of(r));
        CHECK(k >= 1);
        for (int i = 0; i < trace.n; ++i)
            if (inc[i]) CHECK(trace.weights[r * trace.n + i] > 0.0);
    }
}

TEST_CASE("the empty subset is never proposed into") {
    CovariateSet cov = CovariateSet::from_points({{0.5}}, {1});
    VoronoiConfig cfg;
    cfg.iterations = 500;
    cfg.seed = 8;
    VoronoiTrace trace = run_subset_chain(cov, cfg);
    for (std::size_t r = 0; r < trace.n_records(); ++r) CHECK(trace.size_of(r) == 1);
}

TEST_CASE("enumeration bounds") {
    std::vector<Point2D> pts = generate_dataset_2d(16, 1);
    CHECK_THROWS_AS(enumerate_subsets_exact(from_2d(pts), 0.5, {{0.0, 0.0}}), std::runtime_error);
}
