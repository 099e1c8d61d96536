// Command-line runner: optimize, explore, front, hv, probe, dataset.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include "pareto/benchmarks.hpp"
#include "pareto/expansion.hpp"
#include "pareto/explorer.hpp"
#include "pareto/metrics.hpp"
#include "pareto/parametrization.hpp"
#include "pareto/records_io.hpp"
#include "pareto/simplex.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace pareto;

namespace {

constexpr const char* kVersion = "pareto-cli 1.0.0";
constexpr const char* kOutEnv = "PARETO_OUT_DIR";

json vec_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Eigen::VectorXd to_vector(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

fs::path output_dir(const std::string& flag) {
    if (const char* env = std::getenv(kOutEnv); env && *env) return env;
    return flag;
}

void require_benchmark(const std::string& id) {
    for (const auto& known : benchmark_ids()) {
        if (known == id) return;
    }
    throw ConfigError("unknown benchmark '" + id + "'");
}

/// Writes the manifest before any data and again on completion, so an
/// interrupted run still leaves a readable manifest flagged partial.
class Run {
public:
    Run(fs::path dir, std::string command, std::string benchmark, std::uint64_t seed, json config)
        : dir_(std::move(dir)), start_(std::chrono::steady_clock::now()) {
        fs::create_directories(dir_);
        doc_ = {{"command", std::move(command)},
                {"version", kVersion},
                {"benchmark", std::move(benchmark)},
                {"seed", seed},
                {"config", std::move(config)},
                {"counters", json::object()},
                {"wall_time_s", 0.0},
                {"partial", true},
                {"warnings", json::array()}};
        flush();
    }

    json& doc() { return doc_; }
    const fs::path& dir() const { return dir_; }
    void counters(const std::string& stage, const CostCounters& c) { doc_["counters"][stage] = to_json(c); }
    void warn(const std::string& text) {
        std::cerr << "warning: " << text << '\n';
        doc_["warnings"].push_back(text);
    }
    void finish(bool partial = false) {
        doc_["partial"] = partial;
        flush();
    }

    std::ofstream open(const std::string& name) const {
        std::ofstream out(dir_ / name);
        if (!out) throw ConfigError("cannot write " + (dir_ / name).string());
        return out;
    }

private:
    void flush() {
        doc_["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        write_json_file(dir_ / "manifest.json", doc_);
    }

    fs::path dir_;
    std::chrono::steady_clock::time_point start_;
    json doc_;
};

std::optional<double> front_residual(const std::string& bench, Problem& problem, const ObjectiveValues& f) {
    if (bench == "zdt2") return zdt2_front_residual(f);
    if (bench == "two-quadratics") return dynamic_cast<TwoQuadratics&>(problem).front_residual(f);
    return std::nullopt;
}

// ---------------------------------------------------------------------------

struct OptimizeArgs {
    std::string bench;
    std::uint64_t seed = 0;
    std::string opt = "mgda";
    double tol = 1e-6;
    int max_iters = 2000;
    std::vector<double> weights;
    double lr = 0.01;
    int iters = 100;
    std::string out = "out";
};

int cmd_optimize(const OptimizeArgs& a) {
    require_benchmark(a.bench);
    if (a.opt != "mgda" && a.opt != "ws") throw ConfigError("--opt must be mgda or ws");
    auto problem = make_benchmark(a.bench, a.seed);
    const auto m = problem->num_objectives();
    Eigen::VectorXd w = a.weights.empty() ? Eigen::VectorXd::Constant(static_cast<Eigen::Index>(m), 1.0 / m)
                                          : to_vector(a.weights);
    if (a.opt == "ws") {
        if (static_cast<std::size_t>(w.size()) != m) throw ConfigError("--w needs one weight per objective");
        if (w.minCoeff() < 0.0 || std::abs(w.sum() - 1.0) > 1e-9) throw ConfigError("--w must lie on the simplex");
        if (!(a.lr > 0.0) || a.iters < 0) throw ConfigError("--lr must be positive and --iters non-negative");
    } else if (!(a.tol > 0.0) || a.max_iters < 0) {
        throw ConfigError("--tol must be positive and --max-iters non-negative");
    }

    json config{{"optimizer", a.opt}, {"tol", a.tol}, {"max_iters", a.max_iters},
                {"weights", vec_json(w)}, {"lr", a.lr}, {"iters", a.iters}};
    Run run(output_dir(a.out), "optimize", a.bench, a.seed, config);
    Rng rng = Rng(a.seed).split(1);
    const ParamVector x0 = benchmark_start(a.bench, *problem, rng);

    std::vector<ParetoRecord> rows;
    try {
        if (a.opt == "mgda") {
            rows.push_back(pareto_optimize_mgda(*problem, x0, a.tol, a.max_iters));
        } else {
            auto trajectory = weighted_sum_gd(*problem, x0, w, a.lr, a.iters);
            auto out = run.open("trajectory.csv");
            write_records_csv(out, "optimize", trajectory);
            rows.push_back(trajectory.back());
            rows.back().parent_id.reset();
            rows.back().id = 0;
        }
    } catch (const StalledError& e) {
        run.counters("opt", problem->counters());
        run.warn(e.what());
        auto out = run.open("records.csv");
        write_records_csv(out, "optimize", {e.best()});
        run.finish(true);
        throw;
    }
    run.counters("opt", problem->counters());
    auto out = run.open("records.csv");
    write_records_csv(out, "optimize", rows);
    out.close();
    run.doc()["residual"] = rows.back().residual();
    run.finish();
    std::cout << "residual " << rows.back().residual() << " f " << rows.back().f.transpose() << '\n';
    return 0;
}

// ---------------------------------------------------------------------------

struct ExploreArgs {
    std::string bench;
    std::uint64_t seed = 0;
    double s = 0.1;
    std::vector<int> k{2};
    int K = 1;
    int N = 10;
    std::string beta = "standard_normal";
    bool correct = true;
    std::string opt = "mgda";
    double tol = 1e-6;
    int max_iters = 2000;
    int workers = 1;
    std::string out = "out";
};

int cmd_explore(const ExploreArgs& a) {
    require_benchmark(a.bench);
    ExplorationConfig base;
    base.s = a.s;
    base.K = a.K;
    base.N = a.N;
    base.beta_strategy = beta_strategy_from_string(a.beta);
    base.use_correction = a.correct;
    if (a.opt != "mgda" && a.opt != "ws") throw ConfigError("--opt must be mgda or ws");
    base.optimizer = a.opt == "mgda" ? OptimizerKind::mgda_linesearch : OptimizerKind::weighted_sum_gd;
    base.tol = a.tol;
    base.max_iters = a.max_iters;
    base.rng_seed = a.seed;
    if (a.k.empty()) throw ConfigError("--k needs at least one value");
    if (a.workers < 1) throw ConfigError("--workers must be at least 1");
    {
        auto probe = make_benchmark(a.bench, a.seed);
        for (int k : a.k) {
            auto c = base;
            c.k = k;
            c.validate(probe->num_objectives());
        }
    }

    const fs::path root = output_dir(a.out);
    for (int k : a.k) {
        auto config = base;
        config.k = k;
        auto problem = make_benchmark(a.bench, a.seed);
        const fs::path dir = a.k.size() == 1 ? root : root / ("k_" + std::to_string(k));
        json snapshot{{"s", config.s}, {"k", k}, {"K", config.K}, {"N", config.N},
                      {"beta", std::string(to_string(config.beta_strategy))}, {"correct", config.use_correction},
                      {"optimizer", std::string(to_string(config.optimizer))}, {"tol", config.tol},
                      {"max_iters", config.max_iters}, {"workers", a.workers}};
        Run run(dir, "explore", a.bench, a.seed, snapshot);
        if (a.workers > 1) run.warn("parallel expansion is not available; running with one worker");
        Rng rng = Rng(a.seed).split(1);
        const ParamVector x0 = benchmark_start(a.bench, *problem, rng);

        ExplorationResult result;
        try {
            result = explore(*problem, x0, config);
        } catch (const NumericError& e) {
            run.counters("total", problem->counters());
            run.warn(e.what());
            run.finish(true);
            throw;
        }
        run.counters("opt", result.optimize_counters);
        run.counters("exp", result.expand_counters);
        for (const auto& w : result.warnings) run.warn(w);
        run.doc()["expansions"] = result.expansions;
        run.doc()["rejected"] = result.rejected;
        run.doc()["records"] = result.filtered.size();
        run.doc()["raw_records"] = result.raw.size();

        const std::string run_id = "explore-s" + std::to_string(a.seed) + "-k" + std::to_string(k);
        auto out = run.open("records.csv");
        write_records_csv(out, run_id, result.filtered);
        out.close();
        auto raw = run.open("records_raw.csv");
        write_records_csv(raw, run_id, result.raw);
        raw.close();

        std::ostringstream line;
        line << "k=" << k << " records=" << result.filtered.size();
        double total = 0.0;
        bool known = true;
        for (const auto& r : result.filtered) {
            const auto res = front_residual(a.bench, *problem, r.f);
            if (!res) {
                known = false;
                break;
            }
            total += *res;
        }
        if (known && !result.filtered.empty()) {
            const double mean = total / static_cast<double>(result.filtered.size());
            run.doc()["mean_front_residual"] = mean;
            line << " mean_front_residual=" << mean;
        }
        run.finish(result.partial);
        std::cout << line.str() << '\n';
    }
    return 0;
}

// ---------------------------------------------------------------------------

json read_sibling_manifest(const fs::path& records) {
    const fs::path manifest = records.parent_path() / "manifest.json";
    if (!fs::exists(manifest)) throw ConfigError("no manifest.json next to " + records.string());
    return read_json_file(manifest);
}

RecordsFile read_records(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path.string());
    return read_records_csv(in);
}

struct FrontArgs {
    std::vector<std::string> records;
    bool stitch = false;
    int grid = kDefaultStitchGrid;
    std::string out = "front";
};

int cmd_front(const FrontArgs& a) {
    if (a.records.empty()) throw ConfigError("--records needs at least one file");
    if (a.grid < 2) throw ConfigError("--grid must be at least 2");
    std::string bench;
    std::uint64_t seed = 0;
    std::vector<FrontParametrization> chains;
    for (const auto& path : a.records) {
        auto records = read_records(path).records;
        const auto manifest = read_sibling_manifest(path);
        const std::string b = manifest.value("benchmark", "");
        if (bench.empty()) {
            bench = b;
            seed = manifest.value("seed", std::uint64_t{0});
        } else if (b != bench) {
            throw ConfigError("records come from different benchmarks: " + bench + " and " + b);
        }
        chains.push_back(build_chain(records));
    }
    require_benchmark(bench);
    auto problem = make_benchmark(bench, seed);

    json config{{"records", a.records}, {"stitch", a.stitch}, {"grid", a.grid}};
    Run run(output_dir(a.out), "front", bench, seed, config);
    StitchedFront front;
    if (a.stitch) {
        front = stitch_fronts(*problem, chains, a.grid);
    } else {
        for (const auto& chain : chains) {
            auto single = stitch_fronts(*problem, {chain}, a.grid);
            front.segments.push_back(chain);
            front.samples.push_back(std::move(single.samples.front()));
            for (auto c : single.crop_log) {
                c.segment = c.dominated_by = front.segments.size() - 1;
                front.crop_log.push_back(c);
            }
        }
    }
    run.counters("front", problem->counters());
    write_json_file(run.dir() / "parametrization.json", to_json(front));
    auto out = run.open("front.csv");
    write_front_csv(out, front);
    out.close();
    run.doc()["stitch_points"] = front.stitch_points.size();
    run.finish();
    std::cout << "segments=" << front.segments.size() << " stitch_points=" << front.stitch_points.size()
              << " crops=" << front.crop_log.size() << '\n';
    return 0;
}

// ---------------------------------------------------------------------------

struct HvArgs {
    std::string records;
    std::vector<double> ref;
    std::string mode = "exact";
    std::size_t samples = 1'000'000;
    std::uint64_t seed = 0;
};

int cmd_hv(const HvArgs& a) {
    const auto file = read_records(a.records);
    HvConfig config;
    std::string source = "flag";
    if (a.ref.empty()) {
        const auto manifest = read_sibling_manifest(a.records);
        const std::string bench = manifest.value("benchmark", "");
        require_benchmark(bench);
        config.reference = default_reference(bench);
        source = "benchmark default (" + bench + ")";
    } else {
        config.reference = to_vector(a.ref);
    }
    if (static_cast<std::size_t>(config.reference.size()) != file.m) {
        throw ConfigError("--ref needs " + std::to_string(file.m) + " values");
    }
    if (a.mode == "exact") {
        config.mode = HvMode::exact;
    } else if (a.mode == "mc") {
        config.mode = HvMode::monte_carlo;
        config.samples = a.samples;
        config.seed = a.seed;
    } else {
        throw ConfigError("--mode must be exact or mc");
    }
    std::vector<ObjectiveValues> points;
    for (const auto& r : file.records) points.push_back(r.f);
    json doc{{"mode", a.mode}, {"reference", vec_json(config.reference)}, {"reference_source", source},
             {"points", points.size()}};
    if (config.mode == HvMode::monte_carlo) {
        const auto est = hv_monte_carlo(points, config.reference, config.samples, config.seed);
        doc["hypervolume"] = est.value;
        doc["standard_error"] = est.standard_error;
        doc["samples"] = config.samples;
    } else {
        doc["hypervolume"] = hypervolume(points, config);
    }
    std::cout << std::setprecision(12) << doc["hypervolume"].get<double>() << '\n' << doc.dump() << '\n';
    return 0;
}

// ---------------------------------------------------------------------------

struct ProbeArgs {
    std::uint64_t seed = 0;
    int points = 40;
    int k = 2;
    double range = 0.1;
    int grid = 41;
    std::string out = "probe";
};

// Image curves f(x* + t d) through random exact Pareto points of the ZDT2
// variant, for a tangent direction and both normalized gradients.
int cmd_probe(const ProbeArgs& a) {
    if (a.points < 1 || a.k < 1 || !(a.range > 0.0) || a.grid < 2) throw ConfigError("probe: invalid arguments");
    json config{{"points", a.points}, {"k", a.k}, {"range", a.range}, {"grid", a.grid}};
    Run run(output_dir(a.out), "probe", "zdt2", a.seed, config);
    Zdt2Variant problem;
    Rng rng = Rng(a.seed).split(2);
    std::vector<double> grid;
    for (int j = 0; j < a.grid; ++j) grid.push_back(-a.range + 2.0 * a.range * j / (a.grid - 1));

    std::vector<std::string> labels;
    std::vector<std::vector<ObjectiveValues>> curves;
    for (int i = 0; i < a.points; ++i) {
        const ParamVector x = Zdt2Variant::pareto_point(rng.uniform(0.05, 0.95), rng.uniform(0.0, 2 * std::numbers::pi));
        const GradientMatrix grads = problem.gradients(x);
        const auto alpha = min_norm_alpha(grads);
        const auto tangent = expand_sampled(problem, x, grads, alpha, BetaStrategy::standard_normal, rng, a.k, true);
        const std::string tag = "p" + std::to_string(i);
        labels.push_back(tag + "-tangent");
        curves.push_back(image_curve_probe(problem, x, tangent.v, grid));
        for (int g = 0; g < 2; ++g) {
            labels.push_back(tag + "-grad" + std::to_string(g + 1));
            curves.push_back(image_curve_probe(problem, x, grads.row(g).transpose().normalized(), grid));
        }
    }
    run.counters("probe", problem.counters());
    auto out = run.open("probe.csv");
    write_probe_csv(out, labels, grid, curves);
    out.close();
    run.finish();
    std::cout << "curves=" << curves.size() << '\n';
    return 0;
}

int cmd_dataset(std::uint64_t seed, const std::string& out_flag) {
    const fs::path dir = output_dir(out_flag);
    fs::create_directories(dir);
    std::ofstream out(dir / "blobs.csv");
    if (!out) throw ConfigError("cannot write " + (dir / "blobs.csv").string());
    write_dataset_csv(out, make_blobs(seed));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pareto front exploration with Hessian-vector products"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    OptimizeArgs opt;
    auto* optimize = app.add_subcommand("optimize", "Optimize one seeded start point");
    optimize->add_option("--bench", opt.bench, "Benchmark id")->required();
    optimize->add_option("--seed", opt.seed, "Random seed");
    optimize->add_option("--opt", opt.opt, "mgda or ws");
    optimize->add_option("--tol", opt.tol, "MGDA stationarity tolerance");
    optimize->add_option("--max-iters", opt.max_iters, "MGDA iteration cap");
    optimize->add_option("--w", opt.weights, "Weighted-sum weights")->delimiter(',');
    optimize->add_option("--lr", opt.lr, "Initial learning rate (ws)");
    optimize->add_option("--iters", opt.iters, "Gradient steps (ws)");
    optimize->add_option("--out", opt.out, "Output directory");

    ExploreArgs exp;
    auto* explore_cmd = app.add_subcommand("explore", "Breadth-first Pareto exploration");
    explore_cmd->add_option("--bench", exp.bench, "Benchmark id")->required();
    explore_cmd->add_option("--seed", exp.seed, "Random seed");
    explore_cmd->add_option("--s", exp.s, "Expansion step size");
    explore_cmd->add_option("--k", exp.k, "MINRES iteration cap; a list runs a sweep")->delimiter(',');
    explore_cmd->add_option("--K", exp.K, "Directions per record");
    explore_cmd->add_option("--N", exp.N, "Output budget");
    explore_cmd->add_option("--beta", exp.beta, "standard_normal, convex_span, one_hot or coin_flip_subset");
    explore_cmd->add_flag("--correct,!--no-correct", exp.correct, "Use the gradient correction (default on)");
    explore_cmd->add_option("--opt", exp.opt, "mgda or ws");
    explore_cmd->add_option("--tol", exp.tol, "Stationarity tolerance");
    explore_cmd->add_option("--max-iters", exp.max_iters, "Optimizer iteration cap");
    explore_cmd->add_option("--workers", exp.workers, "Worker count (only 1 is available)");
    explore_cmd->add_option("--out", exp.out, "Output directory");

    FrontArgs fr;
    auto* front = app.add_subcommand("front", "Continuous front from exploration records");
    front->add_option("--records", fr.records, "records.csv files")->required();
    front->add_flag("--stitch", fr.stitch, "Stitch the chains together");
    front->add_option("--grid", fr.grid, "Samples per chain");
    front->add_option("--out", fr.out, "Output directory");

    HvArgs hv;
    auto* hv_cmd = app.add_subcommand("hv", "Hypervolume of a records file");
    hv_cmd->add_option("--records", hv.records, "records.csv")->required();
    hv_cmd->add_option("--ref", hv.ref, "Reference point")->delimiter(',');
    hv_cmd->add_option("--mode", hv.mode, "exact or mc");
    hv_cmd->add_option("--samples", hv.samples, "Monte-Carlo samples");
    hv_cmd->add_option("--seed", hv.seed, "Monte-Carlo seed");

    ProbeArgs pr;
    auto* probe = app.add_subcommand("probe", "Tangent vs gradient image curves on the ZDT2 variant");
    probe->add_option("--seed", pr.seed, "Random seed");
    probe->add_option("--points", pr.points, "Pareto points to probe");
    probe->add_option("--k", pr.k, "MINRES iteration cap");
    probe->add_option("--range", pr.range, "Probe half-width in s");
    probe->add_option("--grid", pr.grid, "Samples per curve");
    probe->add_option("--out", pr.out, "Output directory");

    std::uint64_t data_seed = 0;
    std::string data_out = "data";
    auto* dataset = app.add_subcommand("dataset", "Export the toy MLP blobs dataset");
    dataset->add_option("--seed", data_seed, "Random seed");
    dataset->add_option("--out", data_out, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (optimize->parsed()) return cmd_optimize(opt);
        if (explore_cmd->parsed()) return cmd_explore(exp);
        if (front->parsed()) return cmd_front(fr);
        if (hv_cmd->parsed()) return cmd_hv(hv);
        if (probe->parsed()) return cmd_probe(pr);
        if (dataset->parsed()) return cmd_dataset(data_seed, data_out);
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
