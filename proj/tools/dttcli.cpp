// Command-line front end: build DIRT files, draw corrected samples, report
// divergence diagnostics. Exit codes: 0 ok, 2 config error, 3 numerical
// failure.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "dtt/debias.hpp"
#include "dtt/dirt.hpp"
#include "dtt/io.hpp"
#include "dtt/oracle.hpp"

using json = nlohmann::json;
using namespace dtt;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError(where + ": unknown key '" + it.key() + "'");
}

VectorXd parse_vector(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + ": expected an array");
    VectorXd v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v[i] = j[i].get<double>();
    return v;
}

MatrixXd parse_matrix(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw ConfigError(where + ": expected a 2-d array");
    MatrixXd m(j.size(), j[0].size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (j[i].size() != j[0].size())
            throw ConfigError(where + ": ragged rows");
        for (std::size_t k = 0; k < j[i].size(); ++k)
            m(i, k) = j[i][k].get<double>();
    }
    return m;
}

TargetDensity parse_target(const json& j) {
    if (!j.contains("name")) throw ConfigError("target: missing 'name'");
    const std::string name = j.at("name").get<std::string>();
    if (name == "gaussian") {
        check_keys(j, {"name", "covariance", "lower", "upper"}, "target");
        MatrixXd cov = parse_matrix(j.at("covariance"), "target.covariance");
        VectorXd lo = parse_vector(j.at("lower"), "target.lower");
        VectorXd up = parse_vector(j.at("upper"), "target.upper");
        if (lo.size() != cov.rows() || up.size() != cov.rows())
            throw ConfigError("target: box/covariance size mismatch");
        return target_gaussian(cov, lo, up);
    }
    if (name == "predator_prey") {
        check_keys(j, {"name", "sigma", "data_seed", "obs"}, "target");
        double sigma = j.value("sigma", std::sqrt(2.0));
        MatrixXd obs;
        if (j.contains("obs"))
            obs = parse_matrix(j.at("obs"), "target.obs");
        else
            obs = predator_prey_data(j.value("data_seed", std::uint64_t(0)), sigma).obs;
        return target_predator_prey(obs, sigma);
    }
    if (name == "lorenz96") {
        check_keys(j, {"name", "d", "sigma", "data_seed", "T", "data"}, "target");
        int d = j.value("d", 40);
        double sigma = j.value("sigma", 1.0);
        double T = j.value("T", 0.1);
        VectorXd data;
        if (j.contains("data"))
            data = parse_vector(j.at("data"), "target.data");
        else
            data = lorenz96_data(d, j.value("data_seed", std::uint64_t(0)), sigma, T);
        return target_lorenz96(d, data, sigma, T);
    }
    throw ConfigError("target: unknown name '" + name + "'");
}

Reference parse_reference(const json& j) {
    check_keys(j, {"kind", "bound"}, "reference");
    const std::string kind = j.value("kind", std::string("uniform"));
    if (kind == "uniform") return Reference::uniform();
    if (kind == "truncated_normal")
        return Reference::truncated_normal(j.value("bound", 4.0));
    throw ConfigError("reference: unknown kind '" + kind + "'");
}

BridgingSchedule parse_schedule(const json& j) {
    check_keys(j, {"beta0", "factor", "betas", "ratio_mode", "prior_rule",
                   "prior_power"},
               "schedule");
    BridgingSchedule s;
    if (j.contains("betas")) {
        if (j.contains("beta0") || j.contains("factor"))
            throw ConfigError("schedule: give either betas or beta0/factor");
        std::vector<double> b = j.at("betas").get<std::vector<double>>();
        s = make_schedule_explicit(b);
    } else if (j.contains("beta0")) {
        s = make_schedule_geometric(j.at("beta0").get<double>(),
                                    j.value("factor", std::sqrt(10.0)));
    } else {
        s = make_schedule_explicit({1.0});  // single level, no tempering
    }
    const std::string rm = j.value("ratio_mode", std::string("approximate"));
    if (rm == "approximate")
        s.ratio_mode = BridgingSchedule::RatioMode::Approximate;
    else if (rm == "exact")
        s.ratio_mode = BridgingSchedule::RatioMode::Exact;
    else
        throw ConfigError("schedule: unknown ratio_mode '" + rm + "'");
    const std::string pr = j.value("prior_rule", std::string("same_as_beta"));
    if (pr == "same_as_beta")
        s.prior_rule = BridgingSchedule::PriorRule::SameAsBeta;
    else if (pr == "power")
        s.prior_rule = BridgingSchedule::PriorRule::Power;
    else
        throw ConfigError("schedule: unknown prior_rule '" + pr + "'");
    s.prior_power = j.value("prior_power", 1.0);
    return s;
}

CrossOptions parse_cross(const json& j, const std::string& where) {
    check_keys(j, {"R0", "Rho", "MaxIt", "stop_tol", "maxvol_tol",
                   "truncation_tol", "rng_seed"},
               where);
    CrossOptions o;
    o.R0 = j.value("R0", o.R0);
    o.Rho = j.value("Rho", o.Rho);
    o.MaxIt = j.value("MaxIt", o.MaxIt);
    o.stop_tol = j.value("stop_tol", o.stop_tol);
    o.maxvol_tol = j.value("maxvol_tol", o.maxvol_tol);
    o.truncation_tol = j.value("truncation_tol", o.truncation_tol);
    o.rng_seed = j.value("rng_seed", o.rng_seed);
    if (o.R0 < 1 || o.Rho < 0 || o.MaxIt < 1)
        throw ConfigError(where + ": R0 >= 1, Rho >= 0, MaxIt >= 1 required");
    return o;
}

DirtOptions parse_dirt_options(const json& cfg) {
    DirtOptions o;
    if (cfg.contains("basis")) {
        const json& b = cfg.at("basis");
        check_keys(b, {"family", "n"}, "basis");
        o.family = family_from_name(b.value("family", std::string("piecewise_linear")));
        o.n = b.value("n", o.n);
        if (o.n < 2) throw ConfigError("basis: n must be >= 2");
    }
    if (cfg.contains("cross")) o.cross = parse_cross(cfg.at("cross"), "cross");
    if (cfg.contains("per_layer")) {
        const json& pl = cfg.at("per_layer");
        if (!pl.is_array()) throw ConfigError("per_layer: expected an array");
        for (std::size_t i = 0; i < pl.size(); ++i)
            o.per_layer.push_back(
                parse_cross(pl[i], "per_layer[" + std::to_string(i) + "]"));
    }
    o.gamma = cfg.value("gamma", o.gamma);
    o.warm_start = cfg.value("warm_start", o.warm_start);
    if (o.gamma < 0) throw ConfigError("gamma must be >= 0");
    return o;
}

// splits batch rows over a thread pool; the evaluator must be pure
std::function<VectorXd(const MatrixXd&)> parallelize(
    std::function<VectorXd(const MatrixXd&)> fn, int workers) {
    if (workers <= 1 || !fn) return fn;
    return [fn, workers](const MatrixXd& X) {
        const int m = int(X.rows());
        if (m < 2 * workers) return fn(X);
        VectorXd out(m);
        int per = (m + workers - 1) / workers;
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            int lo = w * per, hi = std::min(m, lo + per);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                out.segment(lo, hi - lo) = fn(X.middleRows(lo, hi - lo));
            });
        }
        for (auto& t : pool) t.join();
        return out;
    };
}

void apply_workers(TargetDensity& t, int workers) {
    t.log_density = parallelize(t.log_density, workers);
    t.log_likelihood = parallelize(t.log_likelihood, workers);
    t.log_prior = parallelize(t.log_prior, workers);
}

json load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file " + path);
    json cfg;
    try {
        is >> cfg;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    check_keys(cfg,
               {"target", "reference", "schedule", "basis", "cross",
                "per_layer", "gamma", "warm_start", "sampler", "seed", "out"},
               "config");
    if (!cfg.contains("target")) throw ConfigError("config: missing 'target'");
    return cfg;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int cmd_build(const std::string& config_path, std::string out,
              std::int64_t seed_override, int workers) {
    json cfg = load_config(config_path);
    TargetDensity target = parse_target(cfg.at("target"));
    apply_workers(target, workers);
    Reference ref = cfg.contains("reference") ? parse_reference(cfg.at("reference"))
                                              : Reference::uniform();
    BridgingSchedule sched = cfg.contains("schedule")
                                 ? parse_schedule(cfg.at("schedule"))
                                 : make_schedule_explicit({1.0});
    DirtOptions opts = parse_dirt_options(cfg);
    if (seed_override >= 0) opts.cross.rng_seed = std::uint64_t(seed_override);
    else if (cfg.contains("seed")) opts.cross.rng_seed = cfg.at("seed").get<std::uint64_t>();
    if (out.empty()) out = cfg.value("out", std::string("out.dirt"));

    BuildReport rep;
    Dirt dirt = build_dirt(target, sched, ref, opts, &rep);
    save_dirt(out, dirt, cfg.at("target").dump());

    json layers = json::array();
    for (std::size_t i = 0; i < rep.betas.size(); ++i)
        layers.push_back({{"beta", rep.betas[i]},
                          {"n_evals", rep.eval_counts[i]},
                          {"z_hat", rep.z_hats[i]},
                          {"shift", rep.shifts[i]},
                          {"ranks", rep.ranks[i]}});
    json report = {{"out", out},
                   {"dim", dirt.dim()},
                   {"num_layers", dirt.num_layers()},
                   {"log_z_bar", dirt.log_z_bar()},
                   {"layers", layers}};
    std::cout << report.dump(2) << "\n";
    return 0;
}

int cmd_sample(const std::string& dirt_path, const std::string& mode, int N,
               std::uint64_t seed, const std::string& out, int workers) {
    if (N < 1) throw ConfigError("sample: N must be >= 1");
    if (mode != "mcmc" && mode != "is")
        throw ConfigError("sample: mode must be 'mcmc' or 'is'");
    std::string meta;
    Dirt dirt = load_dirt(dirt_path, &meta);
    if (meta.empty())
        throw ConfigError("sample: DIRT file carries no target descriptor");
    TargetDensity target = parse_target(json::parse(meta));
    apply_workers(target, workers);

    std::ofstream os(out);
    if (!os) throw ConfigError("sample: cannot open output file " + out);
    const int d = dirt.dim();
    json diag;
    if (mode == "mcmc") {
        ChainResult r = irt_mcmc(dirt, target, N, seed);
        for (int k = 0; k < d; ++k) os << "x" << (k + 1) << ",";
        os << "accepted\n";
        for (int i = 0; i < N; ++i) {
            for (int k = 0; k < d; ++k) os << fmt(r.states(i, k)) << ",";
            os << int(r.accepted[i]) << "\n";
        }
        diag = {{"accept_rate", r.accept_rate}, {"iact", r.iact},
                {"ess", nullptr},              {"z_bar", nullptr},
                {"n_evals", r.target_evals}};
    } else {
        IsResult r = irt_is(dirt, target, N, seed);
        for (int k = 0; k < d; ++k) os << "x" << (k + 1) << ",";
        os << "log_weight\n";
        for (int i = 0; i < N; ++i) {
            for (int k = 0; k < d; ++k) os << fmt(r.samples(i, k)) << ",";
            os << fmt(r.log_weights[i]) << "\n";
        }
        diag = {{"accept_rate", nullptr}, {"iact", nullptr},
                {"ess", r.ess},           {"z_bar", r.z_bar_n},
                {"n_evals", r.target_evals}};
    }
    std::cout << diag.dump(2) << "\n";
    return 0;
}

int cmd_diagnose(const std::string& dirt_path, const std::string& config_path,
                 int quad_order) {
    std::string meta;
    Dirt dirt = load_dirt(dirt_path, &meta);
    json tj;
    if (!config_path.empty())
        tj = load_config(config_path).at("target");
    else if (!meta.empty())
        tj = json::parse(meta);
    else
        throw ConfigError("diagnose: no target descriptor available");
    TargetDensity target = parse_target(tj);
    if (target.d > 3)
        throw ConfigError("diagnose: dimension cap (d <= 3) exceeded, d = " +
                          std::to_string(target.d));
    QuadGrid grid = QuadGrid::make(target.lower, target.upper, quad_order);
    // the built surrogate carries the per-layer scale shifts; undo them so
    // epsilon and the bounds live on the target's own scale
    double lshift = 0.0;
    for (double s : dirt.shifts) lshift += s;
    const double lzbar = dirt.log_z_bar();
    auto approx = [&](const VectorXd& x) { return dirt.logpdf(x); };
    auto surrogate = [&](const VectorXd& x) {
        return std::exp(0.5 * (dirt.logpdf(x) + lzbar + lshift));
    };
    Divergences dv = divergences(target, approx, grid, surrogate);
    json out = {{"z", dv.z},
                {"z_hat", dv.z_hat},
                {"hellinger", dv.hellinger},
                {"tv", dv.tv},
                {"chi2", dv.chi2},
                {"epsilon", dv.l2_sqrt_err},
                {"hellinger_bound", std::sqrt(2.0 / dv.z) * dv.l2_sqrt_err},
                {"tv_bound", 2.0 * dv.l2_sqrt_err / std::sqrt(dv.z)},
                {"quad_order", quad_order}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_info(const std::string& dirt_path) {
    std::string meta;
    Dirt dirt = load_dirt(dirt_path, &meta);
    json layers = json::array();
    for (int j = 0; j < dirt.num_layers(); ++j) {
        json ranks = json::array();
        for (int r : dirt.layers[j].g().ranks()) ranks.push_back(r);
        layers.push_back({{"beta", dirt.schedule.betas[j]},
                          {"z_hat", dirt.layers[j].z_hat()},
                          {"gamma", dirt.layers[j].gamma()},
                          {"shift", dirt.shifts[j]},
                          {"ranks", ranks}});
    }
    json out = {{"dim", dirt.dim()},
                {"num_layers", dirt.num_layers()},
                {"reference", dirt.reference.kind() == Reference::Kind::Uniform
                                  ? "uniform"
                                  : "truncated_normal"},
                {"log_z_bar", dirt.log_z_bar()},
                {"target", meta.empty() ? json() : json::parse(meta)},
                {"layers", layers}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tensor-train transport sampler"};
    app.require_subcommand(1);

    std::string config_path, out, dirt_path, mode = "is";
    int N = 1000, workers = 1, quad_order = 60;
    std::int64_t seed = -1;

    auto* build = app.add_subcommand("build", "Build a DIRT from a config file");
    build->add_option("--config", config_path, "JSON config path")->required();
    build->add_option("--out", out, "output DIRT file (overrides config)");
    build->add_option("--seed", seed, "cross seed override");
    build->add_option("--workers", workers, "density evaluation threads");

    auto* sample = app.add_subcommand("sample", "Draw debiased samples");
    sample->add_option("dirt", dirt_path, "DIRT file")->required();
    sample->add_option("--mode", mode, "mcmc or is");
    sample->add_option("-N,--samples", N, "number of samples");
    sample->add_option("--seed", seed, "sampler seed");
    sample->add_option("--out", out, "samples CSV path")->required();
    sample->add_option("--workers", workers, "density evaluation threads");

    auto* diagnose = app.add_subcommand("diagnose", "Quadrature divergence report");
    diagnose->add_option("dirt", dirt_path, "DIRT file")->required();
    diagnose->add_option("--config", config_path, "target override config");
    diagnose->add_option("--quad-order", quad_order, "per-dimension order");

    auto* info = app.add_subcommand("info", "Describe a DIRT file");
    info->add_option("dirt", dirt_path, "DIRT file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (build->parsed()) return cmd_build(config_path, out, seed, workers);
        if (sample->parsed())
            return cmd_sample(dirt_path, mode, N,
                              seed < 0 ? 0 : std::uint64_t(seed), out, workers);
        if (diagnose->parsed())
            return cmd_diagnose(dirt_path, config_path, quad_order);
        if (info->parsed()) return cmd_info(dirt_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
