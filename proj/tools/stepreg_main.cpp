#include <cstdint>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "stepreg/datasim.hpp"
#include "stepreg/dyadic.hpp"
#include "stepreg/estimator.hpp"
#include "stepreg/io.hpp"
#include "stepreg/oracle.hpp"
#include "stepreg/prior.hpp"
#include "stepreg/sampler.hpp"
#include "stepreg/voronoi.hpp"

using nlohmann::json;
using namespace stepreg;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 1;

HierarchyPrior parse_prior(const std::string& spec) {
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (head == "geometric") return HierarchyPrior::geometric(arg.empty() ? 0.5 : std::stod(arg));
    if (head == "poisson") return HierarchyPrior::truncated_poisson(arg.empty() ? 5.0 : std::stod(arg));
    if (head == "table") {
        if (arg.empty()) throw std::invalid_argument("--prior table: needs a file path");
        return HierarchyPrior::from_table(load_table_prior_csv(arg));
    }
    throw std::invalid_argument("unknown prior '" + spec + "' (want geometric:a, poisson:l, or table:path)");
}

/* f0 | null | hard[:depth]; 2d is handled by simulate alone */
std::function<double(double)> parse_true_function(const std::string& kind) {
    if (kind == "f0") return [](double x) { return f0(x); };
    if (kind == "null") return [](double x) { return null_f(x); };
    if (kind.rfind("hard", 0) == 0) {
        int depth = 3;
        if (kind.size() > 4) {
            if (kind[4] != ':') throw std::invalid_argument("unknown kind '" + kind + "'");
            depth = std::stoi(kind.substr(5));
        }
        return [depth](double x) { return hard_f(x, depth); };
    }
    throw std::invalid_argument("unknown kind '" + kind + "' (want f0, null, or hard[:depth])");
}

json prior_json(const std::string& spec) {
    return spec;
}

void apply_config_file(KernelConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j = json::parse(in, nullptr, true, true);
    if (j.contains("mixture")) {
        auto mix = j["mixture"].get<std::vector<double>>();
        if (mix.size() != kNumActions) throw std::invalid_argument(path + ": mixture needs 5 entries");
        std::copy(mix.begin(), mix.end(), cfg.mixture.begin());
    }
    if (j.contains("shift_sd_single")) cfg.shift_sd_single = j["shift_sd_single"].get<double>();
    if (j.contains("shift_sd_all")) cfg.shift_sd_all = j["shift_sd_all"].get<double>();
    if (j.contains("iterations")) cfg.iterations = j["iterations"].get<long>();
    if (j.contains("burn_in")) cfg.burn_in = j["burn_in"].get<long>();
    if (j.contains("record_every")) cfg.record_every = j["record_every"].get<long>();
}

json kernel_config_json(const KernelConfig& cfg, int chains, int grid_points, const std::string& prior_spec) {
    json j;
    j["seed"] = cfg.seed;
    j["prior"] = prior_json(prior_spec);
    j["iterations"] = cfg.iterations;
    j["burn_in"] = cfg.resolved_burn_in();
    j["record_every"] = cfg.record_every;
    j["chains"] = chains;
    j["grid"] = grid_points;
    j["mixture"] = cfg.mixture;
    j["shift_sd_single"] = cfg.shift_sd_single;
    j["shift_sd_all"] = cfg.shift_sd_all;
    return j;
}

void write_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

int cmd_simulate(const std::string& kind, int n, std::uint64_t seed, const std::string& out) {
    if (kind == "2d") {
        save_points_2d_csv(generate_dataset_2d(n, seed), out);
        return 0;
    }
    save_dataset_csv(generate_dataset_1d(parse_true_function(kind), n, seed), out);
    return 0;
}

int cmd_fit(const std::string& data_path, const std::string& prior_spec, const KernelConfig& cfg, int chains,
            int grid_points, const std::string& truth_kind, bool dump_trace, const std::string& out) {
    LabeledDataset data = load_dataset_csv(data_path);
    HierarchyPrior prior = parse_prior(prior_spec);
    std::vector<ChainTrace> traces = run_chains(data, prior, cfg, chains);
    std::vector<double> grid = make_grid(grid_points);
    PosteriorMeanCurve curve = posterior_mean_curve(traces, data, grid);
    ModelSizeHistogram hist = model_size_histogram(traces);
    save_curve_csv(curve, out + ".curve.csv");
    save_histogram_csv(hist, out + ".khist.csv");
    if (dump_trace)
        for (std::size_t c = 0; c < traces.size(); ++c)
            save_trace_csv(traces[c], out + ".trace" + (traces.size() > 1 ? std::to_string(c) : "") + ".csv");

    json summary;
    summary["k_mode"] = hist.mode();
    if (!truth_kind.empty())
        summary["l2_error"] = lp_distance(curve, parse_true_function(truth_kind), 2.0);
    else
        summary["l2_error"] = nullptr;
    json rates;
    for (int a = 0; a < kNumActions; ++a) {
        long prop = 0, acc = 0;
        for (const ChainTrace& t : traces) {
            prop += t.proposed[a];
            acc += t.accepted[a];
        }
        rates[action_name(static_cast<Action>(a))] = prop == 0 ? 0.0 : static_cast<double>(acc) / prop;
    }
    summary["acceptance_rates"] = rates;
    summary["config"] = kernel_config_json(cfg, chains, grid_points, prior_spec);
    write_json(summary, out + ".json");
    return 0;
}

int cmd_oracle(const std::string& data_path, const std::string& prior_spec, int k_max, int grid_points,
               const std::string& out) {
    LabeledDataset data = load_dataset_csv(data_path);
    HierarchyPrior prior = parse_prior(prior_spec);
    ExactPosterior post = exact_posterior_small(data, prior, k_max, make_grid(grid_points));
    save_curve_csv(post.curve, out + ".curve.csv");
    save_mass_csv(post.k_mass, 1, out + ".kpost.csv");
    json summary;
    summary["prior_tail_mass"] = post.prior_tail_mass;
    int mode = 1;
    for (std::size_t i = 0; i < post.k_mass.size(); ++i)
        if (post.k_mass[i] > post.k_mass[mode - 1]) mode = static_cast<int>(i) + 1;
    summary["k_mode"] = mode;
    summary["config"] = {{"prior", prior_json(prior_spec)}, {"kmax", k_max}, {"grid", grid_points}};
    write_json(summary, out + ".json");
    return 0;
}

int cmd_dyadic(const std::string& data_path, const std::string& prior_spec, int max_level, int grid_points,
               const std::string& out) {
    LabeledDataset data = load_dataset_csv(data_path);
    auto colon = prior_spec.find(':');
    if (prior_spec.substr(0, colon) != "geometric")
        throw std::invalid_argument("dyadic: --prior must be geometric:beta");
    double beta = colon == std::string::npos ? default_level_beta() : std::stod(prior_spec.substr(colon + 1));
    std::vector<double> level_prior = geometric_level_masses(beta, max_level);
    DyadicPosterior post =
        dyadic_exact_posterior(data, level_prior, std::pow(beta, max_level + 1), make_grid(grid_points));
    save_curve_csv(post.curve, out + ".curve.csv");
    save_mass_csv(post.level_mass, 0, out + ".levels.csv");
    json summary;
    summary["mode_level"] = post.mode_level();
    summary["prior_tail_mass"] = post.prior_tail_mass;
    summary["config"] = {{"beta", beta}, {"max_level", max_level}, {"grid", grid_points}};
    write_json(summary, out + ".json");
    return 0;
}

int cmd_voronoi_fit(const std::string& data_path, const VoronoiConfig& cfg, int grid_per_axis,
                    const std::string& out) {
    CovariateSet cov = load_covariates_csv(data_path);
    VoronoiTrace trace = run_subset_chain(cov, cfg);

    std::vector<std::vector<double>> eval_pts;
    if (grid_per_axis > 0) {
        if (cov.dim() != 2) throw std::invalid_argument("voronoi-fit: --grid needs 2-d covariates");
        double lo1 = 1e300, hi1 = -1e300, lo2 = 1e300, hi2 = -1e300;
        for (int i = 0; i < cov.n(); ++i) {
            lo1 = std::min(lo1, cov.point(i)[0]);
            hi1 = std::max(hi1, cov.point(i)[0]);
            lo2 = std::min(lo2, cov.point(i)[1]);
            hi2 = std::max(hi2, cov.point(i)[1]);
        }
        for (int a = 0; a < grid_per_axis; ++a)
            for (int b = 0; b < grid_per_axis; ++b)
                eval_pts.push_back({lo1 + (hi1 - lo1) * a / (grid_per_axis - 1.0),
                                    lo2 + (hi2 - lo2) * b / (grid_per_axis - 1.0)});
    } else {
        for (int i = 0; i < cov.n(); ++i)
            eval_pts.emplace_back(cov.point(i), cov.point(i) + cov.dim());
    }
    std::vector<double> mean = voronoi_posterior_mean(trace, cov, eval_pts);
    save_surface_csv(eval_pts, mean, out + ".surface.csv");
    std::vector<double> sizes = subset_size_mass(trace);
    save_mass_csv(sizes, 1, out + ".sizes.csv");

    json summary;
    int mode = 1;
    for (std::size_t i = 0; i < sizes.size(); ++i)
        if (sizes[i] > sizes[mode - 1]) mode = static_cast<int>(i) + 1;
    summary["size_mode"] = mode;
    json rates;
    rates["flip"] = trace.stats.proposed_flip == 0
                        ? 0.0
                        : static_cast<double>(trace.stats.accepted_flip) / trace.stats.proposed_flip;
    rates["weight"] = trace.stats.proposed_weight == 0
                          ? 0.0
                          : static_cast<double>(trace.stats.accepted_weight) / trace.stats.proposed_weight;
    summary["acceptance_rates"] = rates;
    summary["config"] = {{"seed", cfg.seed},        {"alpha", cfg.alpha},
                         {"gamma", cfg.gamma},      {"weighted", cfg.weighted},
                         {"iterations", cfg.iterations}, {"burn_in", cfg.resolved_burn_in()},
                         {"record_every", cfg.record_every}};
    write_json(summary, out + ".json");
    return 0;
}

int cmd_eval(const std::string& curve_path, const std::string& truth_kind, const std::string& out) {
    PosteriorMeanCurve curve = load_curve_csv(curve_path);
    std::function<double(double)> truth = parse_true_function(truth_kind);
    std::vector<double> tv(curve.grid.size());
    for (std::size_t i = 0; i < curve.grid.size(); ++i) tv[i] = truth(curve.grid[i]);
    json metrics;
    metrics["l1_error"] = lp_distance(curve.grid, curve.mean, tv, 1.0);
    metrics["l2_error"] = lp_distance(curve.grid, curve.mean, tv, 2.0);
    metrics["hellinger"] = hellinger_on_grid(curve.grid, curve.mean, tv);
    metrics["config"] = {{"kind", truth_kind}, {"curve", curve_path}};
    if (out.empty())
        std::cout << metrics.dump(2) << "\n";
    else
        write_json(metrics, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian step-function binary regression"};
    app.require_subcommand(1);

    std::string kind = "f0", data_path, prior_spec = "geometric:0.5", out, config_path, truth_kind;
    int n = 0, chains = 1, grid_points = 513, k_max = 10, grid_per_axis = 0;
    std::uint64_t seed = 0;
    long iters = -1, burnin = -1;
    bool weighted = false, dump_trace = false;
    double alpha = 0.5, gamma = 5.0;

    CLI::App* sim = app.add_subcommand("simulate", "draw a synthetic dataset");
    sim->add_option("--kind", kind, "f0 | null | hard[:depth] | 2d");
    sim->add_option("--n", n, "number of points")->required();
    sim->add_option("--seed", seed, "rng seed")->required();
    sim->add_option("--out", out, "output CSV path")->required();

    CLI::App* fit = app.add_subcommand("fit", "run the split chain and report the posterior mean");
    fit->add_option("--data", data_path, "dataset CSV")->required();
    fit->add_option("--prior", prior_spec, "geometric:a | poisson:l | table:path");
    fit->add_option("--iters", iters, "chain length");
    fit->add_option("--burnin", burnin, "burn-in steps (default a tenth)");
    fit->add_option("--chains", chains, "independent chains");
    fit->add_option("--grid", grid_points, "evaluation grid size");
    fit->add_option("--seed", seed, "rng seed")->required();
    fit->add_option("--config", config_path, "JSON kernel overrides");
    fit->add_option("--kind", truth_kind, "true curve for the error report");
    fit->add_flag("--trace", dump_trace, "also dump the recorded states");
    fit->add_option("--out", out, "output path prefix")->required();

    CLI::App* orc = app.add_subcommand("oracle", "exact small-instance posterior");
    orc->add_option("--data", data_path, "dataset CSV")->required();
    orc->add_option("--prior", prior_spec, "geometric:a | poisson:l | table:path");
    orc->add_option("--kmax", k_max, "piece cap");
    orc->add_option("--grid", grid_points, "evaluation grid size");
    orc->add_option("--out", out, "output path prefix")->required();

    CLI::App* dya = app.add_subcommand("dyadic", "exact posterior over dyadic refinement levels");
    dya->add_option("--data", data_path, "dataset CSV")->required();
    std::string dyadic_prior = "geometric:" + format_double(default_level_beta());
    dya->add_option("--prior", dyadic_prior, "geometric:beta over levels");
    dya->add_option("--kmax", k_max, "maximum level");
    dya->add_option("--grid", grid_points, "evaluation grid size");
    dya->add_option("--out", out, "output path prefix")->required();

    CLI::App* vor = app.add_subcommand("voronoi-fit", "subset chain over covariate cells");
    vor->add_option("--data", data_path, "covariate CSV")->required();
    vor->add_option("--alpha", alpha, "subset size decay");
    vor->add_option("--gamma", gamma, "weight prior shape");
    vor->add_flag("--weighted", weighted, "use weighted cells");
    vor->add_option("--iters", iters, "chain length");
    vor->add_option("--burnin", burnin, "burn-in steps (default a tenth)");
    vor->add_option("--grid", grid_per_axis, "eval grid per axis (default: the data points)");
    vor->add_option("--seed", seed, "rng seed")->required();
    vor->add_option("--out", out, "output path prefix")->required();

    CLI::App* ev = app.add_subcommand("eval", "error metrics of a saved curve against a known truth");
    ev->add_option("--data", data_path, "curve CSV")->required();
    ev->add_option("--kind", truth_kind, "f0 | null | hard[:depth]")->required();
    ev->add_option("--out", out, "output JSON path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (sim->parsed()) return cmd_simulate(kind, n, seed, out);
        if (fit->parsed()) {
            KernelConfig cfg;
            if (!config_path.empty()) apply_config_file(cfg, config_path);
            if (iters >= 0) cfg.iterations = iters;
            if (burnin >= 0) cfg.burn_in = burnin;
            cfg.seed = seed;
            return cmd_fit(data_path, prior_spec, cfg, chains, grid_points, truth_kind, dump_trace, out);
        }
        if (orc->parsed()) return cmd_oracle(data_path, prior_spec, k_max, grid_points, out);
        if (dya->parsed()) return cmd_dyadic(data_path, dyadic_prior, k_max, grid_points, out);
        if (vor->parsed()) {
            VoronoiConfig cfg;
            cfg.alpha = alpha;
            cfg.gamma = gamma;
            cfg.weighted = weighted;
            if (iters >= 0) cfg.iterations = iters;
            if (burnin >= 0) cfg.burn_in = burnin;
            cfg.seed = seed;
            return cmd_voronoi_fit(data_path, cfg, grid_per_axis, out);
        }
        if (ev->parsed()) return cmd_eval(data_path, truth_kind, out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
