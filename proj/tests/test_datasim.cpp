#include <cmath>
#include <vector>

#include "doctest.h"

#include "stepreg/datasim.hpp"

using namespace stepreg;

TEST_CASE("reference curve values") {
    CHECK(f0(0.0) == doctest::Approx(0.6));
    CHECK(f0(0.1) == doctest::Approx(0.6));
    CHECK(f0(1.0 / 6.0) == doctest::Approx(0.4));
    CHECK(f0(0.3) == doctest::Approx(0.4));
    CHECK(f0(0.5) == doctest::Approx(0.4));
    /* jump at one half, then a smooth fall to the right edge */
    CHECK(f0(0.5 + 1e-12) == doctest::Approx(0.8807970779778823));
    CHECK(f0(0.75) == doctest::Approx(0.5));
    CHECK(f0(1.0) == doctest::Approx(0.11920292202211755));
    for (double x = 0.0; x <= 1.0; x += 0.001) {
        CHECK(f0(x) >= 0.0);
        CHECK(f0(x) <= 1.0);
    }
    CHECK(null_f(0.3) == 0.5);
}

TEST_CASE("depth zero is the curve itself") {
    for (int i = 0; i <= 1000; ++i) {
        double x = i / 1000.0;
        CHECK(hard_f(x, 0) == doctest::Approx(f0(x)));
    }
}

TEST_CASE("deeper curves are squeezed copies") {
    /* block (1/2, 1] of depth 2 replays the whole curve at double speed */
    CHECK(hard_f(0.75, 2) == doctest::Approx(f0(0.5)));
    CHECK(hard_f(1.0, 2) == doctest::Approx(f0(1.0)));
    /* block (1/4, 1/2] replays it at four times the speed */
    CHECK(hard_f(0.3, 2) == doctest::Approx(f0(0.2)));
    /* the remainder [0, 1/4] holds one more full copy */
    CHECK(hard_f(0.25, 2) == doctest::Approx(f0(1.0)));
    CHECK(hard_f(0.125, 2) == doctest::Approx(f0(0.5)));
    CHECK(hard_f(0.0, 2) == doctest::Approx(f0(0.0)));
    for (int i = 0; i <= 500; ++i) {
        double x = i / 500.0;
        for (int depth : {1, 2, 5}) {
            CHECK(hard_f(x, depth) >= 0.0);
            CHECK(hard_f(x, depth) <= 1.0);
        }
    }
}

TEST_CASE("one dimensional draws are sorted, valid, and reproducible") {
    LabeledDataset a = generate_dataset_1d([](double x) { return f0(x); }, 500, 42);
    LabeledDataset b = generate_dataset_1d([](double x) { return f0(x); }, 500, 42);
    REQUIRE(a.size() == 500);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.x(i) >= 0.0);
        CHECK(a.x(i) <= 1.0);
        CHECK((a.y(i) == 0 || a.y(i) == 1));
        CHECK(a.x(i) == b.x(i));
        CHECK(a.y(i) == b.y(i));
        if (i > 0) CHECK(a.x(i) >= a.x(i - 1));
    }
    LabeledDataset c = generate_dataset_1d([](double x) { return f0(x); }, 500, 43);
    bool differ = false;
    for (std::size_t i = 0; i < c.size() && !differ; ++i) differ = a.x(i) != c.x(i);
    CHECK(differ);
}

TEST_CASE("labels follow the curve") {
    LabeledDataset ones = generate_dataset_1d([](double) { return 1.0; }, 200, 1);
    for (std::size_t i = 0; i < ones.size(); ++i) CHECK(ones.y(i) == 1);
    LabeledDataset zeros = generate_dataset_1d([](double) { return 0.0; }, 200, 1);
    for (std::size_t i = 0; i < zeros.size(); ++i) CHECK(zeros.y(i) == 0);

    /* mean label over many draws approaches the curve's integral */
    const int n = 20000;
    LabeledDataset d = generate_dataset_1d([](double x) { return f0(x); }, n, 9);
    double integral = 0.0;
    const int m = 100000;
    for (int i = 0; i < m; ++i) integral += f0((i + 0.5) / m) / m;
    double frac = static_cast<double>(d.total_heads()) / n;
    CHECK(std::abs(frac - integral) < 4.0 * std::sqrt(0.25 / n));
}

TEST_CASE("two dimensional clusters sit where they should") {
    std::vector<Point2D> pts = generate_dataset_2d(2000, 77);
    REQUIRE(pts.size() == 2000);
    int heads = 0;
    for (const Point2D& p : pts) {
        REQUIRE((p.y == 0 || p.y == 1));
        heads += p.y;
        bool in_right = p.x1 >= 1.0 && p.x1 <= 2.0 && p.x2 >= 0.0 && p.x2 <= 1.0;
        bool in_left = p.x1 >= 0.0 && p.x1 <= 1.0 && p.x2 >= 0.0 && p.x2 <= 1.0;
        bool near_left_center = std::abs(p.x1 - 0.5) < 0.8 && std::abs(p.x2 - 0.5) < 0.8;
        bool near_right_center = std::abs(p.x1 - 1.5) < 0.8 && std::abs(p.x2 - 0.5) < 0.8;
        if (p.y == 1) CHECK((in_right || near_left_center));
        else CHECK((in_left || near_right_center));
    }
    /* fair label coin */
    CHECK(std::abs(heads - 1000) < 4 * std::sqrt(2000 * 0.25));

    std::vector<Point2D> again = generate_dataset_2d(2000, 77);
    CHECK(again[123].x1 == pts[123].x1);
    CHECK(again[1999].x2 == pts[1999].x2);
}
