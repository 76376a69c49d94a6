#include <stdexcept>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "stepreg/datasim.hpp"
#include "stepreg/io.hpp"

using namespace stepreg;

namespace {

struct TmpFile {
    std::string path;
    explicit TmpFile(const std::string& name) : path("/tmp/stepreg_io_" + name) {}
    ~TmpFile() { std::remove(path.c_str()); }
    void fill(const std::string& text) {
        std::ofstream out(path);
        out << text;
    }
};

}  // namespace

TEST_CASE("doubles survive the text round trip exactly") {
    for (double v : {1.0 / 3.0, 1e-17, 0.1, 123456.789, 0.0}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("dataset round trip is exact") {
    TmpFile f("data.csv");
    LabeledDataset d = generate_dataset_1d([](double x) { return f0(x); }, 200, 3);
    save_dataset_csv(d, f.path);
    LabeledDataset back = load_dataset_csv(f.path);
    REQUIRE(back.size() == d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        CHECK(back.x(i) == d.x(i));
        CHECK(back.y(i) == d.y(i));
    }
}

TEST_CASE("curve round trip is exact") {
    TmpFile f("curve.csv");
    PosteriorMeanCurve c{make_grid(33), std::vector<double>(33)};
    for (int i = 0; i < 33; ++i) c.mean[i] = 1.0 / (i + 3.0);
    save_curve_csv(c, f.path);
    PosteriorMeanCurve back = load_curve_csv(f.path);
    CHECK(back.grid == c.grid);
    CHECK(back.mean == c.mean);
}

TEST_CASE("loaders name the offending line") {
    TmpFile f("bad.csv");
    f.fill("x,y\n0.5,1\n0.6,oops\n");
    try {
        load_dataset_csv(f.path);
        FAIL("expected a parse failure");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find(":3:") != std::string::npos);
    }

    f.fill("x,y\n0.5,1,9\n");
    CHECK_THROWS_AS(load_dataset_csv(f.path), std::invalid_argument);

    CHECK_THROWS_AS(load_dataset_csv("/tmp/stepreg_io_no_such_file.csv"), std::invalid_argument);
}

TEST_CASE("header is optional") {
    TmpFile f("plain.csv");
    f.fill("0.25,1\n0.75,0\n");
    LabeledDataset d = load_dataset_csv(f.path);
    REQUIRE(d.size() == 2);
    CHECK(d.x(0) == 0.25);
    CHECK(d.y(1) == 0);
}

TEST_CASE("trace dump carries one row per record") {
    TmpFile f("trace.csv");
    ChainTrace t;
    t.records.push_back({5, {0.25, 0.5}});
    t.records.push_back({6, {}});
    save_trace_csv(t, f.path);
    std::ifstream in(f.path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "iter,k,splits");
    std::getline(in, line);
    CHECK(line.rfind("5,3,", 0) == 0);
    CHECK(line.find("0.25 0.5") != std::string::npos);
    std::getline(in, line);
    CHECK(line == "6,1,");
}

TEST_CASE("mass and histogram files") {
    TmpFile f("mass.csv");
    save_mass_csv({0.25, 0.75}, 0, f.path);
    std::ifstream in(f.path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "k,mass");
    std::getline(in, line);
    CHECK(line == "0,0.25");
    std::getline(in, line);
    CHECK(line == "1,0.75");

    TmpFile h("hist.csv");
    ModelSizeHistogram hist;
    hist.add(2, 7);
    save_histogram_csv(hist, h.path);
    std::ifstream hin(h.path);
    std::getline(hin, line);
    CHECK(line == "k,count");
    std::getline(hin, line);
    CHECK(line == "1,0");
    std::getline(hin, line);
    CHECK(line == "2,7");
}

TEST_CASE("covariate files round trip through the 2d writer") {
    TmpFile f("pts.csv");
    std::vector<Point2D> pts = generate_dataset_2d(50, 6);
    save_points_2d_csv(pts, f.path);
    CovariateSet cov = load_covariates_csv(f.path);
    REQUIRE(cov.n() == 50);
    REQUIRE(cov.dim() == 2);
    for (int i = 0; i < 50; ++i) {
        CHECK(cov.point(i)[0] == pts[i].x1);
        CHECK(cov.point(i)[1] == pts[i].x2);
        CHECK(cov.y(i) == pts[i].y);
    }
}

TEST_CASE("surface writer emits one row per location") {
    TmpFile f("surf.csv");
    save_surface_csv({{0.0, 0.0}, {1.0, 0.5}}, {0.25, 0.75}, f.path);
    std::ifstream in(f.path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "x1,x2,mean");
    std::getline(in, line);
    CHECK(line == "0,0,0.25");
    std::getline(in, line);
    CHECK(line == "1,0.5,0.75");
}

TEST_CASE("piece count tables validate their index column") {
    TmpFile f("prior.csv");
    f.fill("k,mass\n1,0.5\n2,0.5\n");
    std::vector<double> m = load_table_prior_csv(f.path);
    REQUIRE(m.size() == 2);
    CHECK(m[0] == 0.5);

    f.fill("k,mass\n1,0.5\n3,0.5\n");
    CHECK_THROWS_AS(load_table_prior_csv(f.path), std::invalid_argument);
    f.fill("k,mass\n2,1.0\n");
    CHECK_THROWS_AS(load_table_prior_csv(f.path), std::invalid_argument);
}
