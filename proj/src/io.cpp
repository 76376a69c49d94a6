#include "stepreg/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace stepreg {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

[[noreturn]] void fail_at(const std::string& path, long line, const std::string& msg) {
    throw std::invalid_argument(path + ":" + std::to_string(line) + ": " + msg);
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double(const std::string& s, const std::string& path, long line) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') fail_at(path, line, "not a number: '" + s + "'");
    return v;
}

long parse_long(const std::string& s, const std::string& path, long line) {
    char* end = nullptr;
    long v = std::strtol(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0') fail_at(path, line, "not an integer: '" + s + "'");
    return v;
}

bool looks_like_header(const std::vector<std::string>& fields) {
    char* end = nullptr;
    std::strtod(fields[0].c_str(), &end);
    return end == fields[0].c_str();
}

}  // namespace

LabeledDataset load_dataset_csv(const std::string& path) {
    std::ifstream in = open_input(path);
    std::vector<std::pair<double, int>> pts;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> f = split_csv(line);
        if (lineno == 1 && looks_like_header(f)) continue;
        if (f.size() != 2) fail_at(path, lineno, "expected 2 fields, got " + std::to_string(f.size()));
        double x = parse_double(f[0], path, lineno);
        long y = parse_long(f[1], path, lineno);
        if (!(x >= 0.0 && x <= 1.0)) fail_at(path, lineno, "x outside [0,1]");
        if (y != 0 && y != 1) fail_at(path, lineno, "y not in {0,1}");
        pts.emplace_back(x, static_cast<int>(y));
    }
    return LabeledDataset::from_points(std::move(pts));
}

void save_dataset_csv(const LabeledDataset& data, const std::string& path) {
    std::ofstream out = open_output(path);
    out << "x,y\n";
    for (std::size_t i = 0; i < data.size(); ++i) out << format_double(data.x(i)) << "," << data.y(i) << "\n";
}

PosteriorMeanCurve load_curve_csv(const std::string& path) {
    std::ifstream in = open_input(path);
    PosteriorMeanCurve c;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> f = split_csv(line);
        if (lineno == 1 && looks_like_header(f)) continue;
        if (f.size() != 2) fail_at(path, lineno, "expected 2 fields, got " + std::to_string(f.size()));
        c.grid.push_back(parse_double(f[0], path, lineno));
        c.mean.push_back(parse_double(f[1], path, lineno));
    }
    if (c.grid.size() < 2) throw std::invalid_argument(path + ": curve needs at least 2 rows");
    return c;
}

void save_curve_csv(const PosteriorMeanCurve& curve, const std::string& path) {
    std::ofstream out = open_output(path);
    out << "u,mean\n";
    for (std::size_t i = 0; i < curve.grid.size(); ++i)
        out << format_double(curve.grid[i]) << "," << format_double(curve.mean[i]) << "\n";
}

void save_histogram_csv(const ModelSizeHistogram& hist, const std::string& path) {
    std::ofstream out = open_output(path);
    out << "k,count\n";
    for (std::size_t k = 1; k < hist.count.size(); ++k) out << k << "," << hist.count[k] << "\n";
}

void save_mass_csv(const std::vector<double>& mass, int first_k, const std::string& path) {
    std::ofstream out = open_output(path);
    out << "k,mass\n";
    for (std::size_t i = 0; i < mass.size(); ++i)
        out << (first_k + static_cast<int>(i)) << "," << format_double(mass[i]) << "\n";
}

void save_trace_csv(const ChainTrace& trace, const std::string& path) {
    std::ofstream out = open_output(path);
    out << "iter,k,splits\n";
    for (const TraceRecord& rec : trace.records) {
        out << rec.iter << "," << (rec.splits.size() + 1) << ",";
        for (std::size_t i = 0; i < rec.splits.size(); ++i) {
            if (i) out << ' ';
            out << format_double(rec.splits[i]);
        }
        out << "\n";
    }
}

CovariateSet load_covariates_csv(const std::string& path) {
    std::ifstream in = open_input(path);
    std::vector<std::vector<double>> coords;
    std::vector<int> labels;
    std::string line;
    long lineno = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> f = split_csv(line);
        if (lineno == 1 && looks_like_header(f)) continue;
        if (f.size() < 2) fail_at(path, lineno, "expected at least 2 fields");
        if (width == 0) width = f.size();
        if (f.size() != width) fail_at(path, lineno, "inconsistent field count");
        std::vector<double> p(f.size() - 1);
        for (std::size_t d = 0; d + 1 < f.size(); ++d) p[d] = parse_double(f[d], path, lineno);
        long y = parse_long(f.back(), path, lineno);
        if (y != 0 && y != 1) fail_at(path, lineno, "y not in {0,1}");
        coords.push_back(std::move(p));
        labels.push_back(static_cast<int>(y));
    }
    return CovariateSet::from_points(std::move(coords), std::move(labels));
}

void save_points_2d_csv(const std::vector<Point2D>& pts, const std::string& path) {
    std::ofstream out = open_output(path);
    out << "x1,x2,y\n";
    for (const Point2D& p : pts)
        out << format_double(p.x1) << "," << format_double(p.x2) << "," << p.y << "\n";
}

void save_surface_csv(const std::vector<std::vector<double>>& points, const std::vector<double>& mean,
                      const std::string& path) {
    if (points.size() != mean.size()) throw std::invalid_argument("surface: points/mean length mismatch");
    std::ofstream out = open_output(path);
    std::size_t d = points.empty() ? 0 : points[0].size();
    for (std::size_t j = 0; j < d; ++j) out << "x" << (j + 1) << ",";
    out << "mean\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (double c : points[i]) out << format_double(c) << ",";
        out << format_double(mean[i]) << "\n";
    }
}

std::vector<double> load_table_prior_csv(const std::string& path) {
    std::ifstream in = open_input(path);
    std::vector<double> masses;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> f = split_csv(line);
        if (lineno == 1 && looks_like_header(f)) continue;
        if (f.size() != 2) fail_at(path, lineno, "expected 2 fields, got " + std::to_string(f.size()));
        long k = parse_long(f[0], path, lineno);
        if (k != static_cast<long>(masses.size()) + 1) fail_at(path, lineno, "k values must run 1,2,...");
        masses.push_back(parse_double(f[1], path, lineno));
    }
    if (masses.empty()) throw std::invalid_argument(path + ": no prior rows");
    return masses;
}

}  // namespace stepreg
