// lzsim: Landau-Zener sweeps under decoherence.
//
// Subcommands: predict | simulate | ensemble | curve | optimize | scaling.
// Configuration is a single JSON document (--config); every output embeds
// the resolved configuration so a run can be reproduced from its output
// alone. Exit codes: 0 success, 1 numerical failure, 2 configuration error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lzsim/ensemble.hpp"
#include "lzsim/model.hpp"
#include "lzsim/noise.hpp"
#include "lzsim/optimizer.hpp"
#include "lzsim/propagator.hpp"
#include "lzsim/scaling.hpp"

using json = nlohmann::json;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::string format;  // "csv" or "json"; empty means the command default
    std::optional<std::uint64_t> seed_override;
    std::optional<int> threads_override;
};

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

const json& require(const json& j, const std::string& key, const std::string& context) {
    auto it = j.find(key);
    if (it == j.end()) throw ConfigError("missing field: " + context + "." + key);
    return *it;
}

double require_number(const json& j, const std::string& key, const std::string& context) {
    const json& v = require(j, key, context);
    if (!v.is_number()) throw ConfigError("field " + context + "." + key + " must be a number");
    return v.get<double>();
}

json load_config(const CommonArgs& args) {
    std::ifstream in(args.config_path);
    if (!in) throw ConfigError("cannot open config file: " + args.config_path);
    json cfg;
    try {
        in >> cfg;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (cfg.contains("units")) {
        const double hbar = cfg["units"].value("hbar", 1.0);
        if (hbar != 1.0) throw ConfigError("units.hbar must be 1 (fixed convention)");
    }
    return cfg;
}

lz::SystemParams parse_system(const json& cfg, bool need_v = true) {
    if (!cfg.contains("system")) throw ConfigError("missing field: system");
    const json& s = cfg["system"];
    lz::SystemParams p;
    p.delta = require_number(s, "delta", "system");
    if (need_v || s.contains("v")) p.v = require_number(s, "v", "system");
    return p;
}

lz::NoiseModel parse_noise_model(const std::string& name) {
    if (name == "none") return lz::NoiseModel::None;
    if (name == "ou" || name == "ornstein-uhlenbeck") return lz::NoiseModel::OrnsteinUhlenbeck;
    if (name == "telegraph") return lz::NoiseModel::Telegraph;
    throw ConfigError("noise.model must be one of none|ou|telegraph, got: " + name);
}

const char* noise_model_name(lz::NoiseModel m) {
    switch (m) {
        case lz::NoiseModel::None: return "none";
        case lz::NoiseModel::OrnsteinUhlenbeck: return "ou";
        case lz::NoiseModel::Telegraph: return "telegraph";
    }
    return "?";
}

lz::NoiseSpec parse_noise(const json& cfg, const CommonArgs& args) {
    if (!cfg.contains("noise")) throw ConfigError("missing field: noise");
    const json& n = cfg["noise"];
    lz::NoiseSpec spec;
    spec.model = parse_noise_model(require(n, "model", "noise").get<std::string>());
    if (spec.model != lz::NoiseModel::None) {
        spec.amplitude = require_number(n, "amplitude", "noise");
        spec.tau = require_number(n, "tau", "noise");
    }
    spec.mean_offset = n.value("mean_offset", 0.0);
    spec.channels = n.value("channels", 1);
    spec.master_seed = n.value("master_seed", std::uint64_t{1});
    if (args.seed_override) spec.master_seed = *args.seed_override;
    spec.validate();
    return spec;
}

lz::EnsembleConfig parse_ensemble(const json& cfg, const CommonArgs& args) {
    lz::EnsembleConfig ec;
    if (cfg.contains("ensemble")) {
        const json& e = cfg["ensemble"];
        ec.n_trajectories = e.value("n_trajectories", std::uint64_t{1000});
        ec.master_seed = e.value("master_seed", std::uint64_t{1});
        ec.max_trajectories = e.value("max_trajectories", std::uint64_t{0});
        ec.threads = e.value("threads", 1);
        ec.tail_tolerance = e.value("tail_tolerance", 1e-3);
        if (e.contains("target_standard_error") && !e["target_standard_error"].is_null())
            ec.target_standard_error = e["target_standard_error"].get<double>();
    }
    if (args.seed_override) ec.master_seed = *args.seed_override;
    if (args.threads_override) ec.threads = *args.threads_override;
    ec.validate();
    return ec;
}

// Exactly one decoherence model per run.
lz::DecoherenceModel parse_decoherence(const json& cfg, const CommonArgs& args) {
    const bool has_lindblad = cfg.contains("lindblad");
    const bool has_noise =
        cfg.contains("noise") && cfg["noise"].value("model", "none") != std::string("none");
    if (has_lindblad && has_noise)
        throw ConfigError("config must specify exactly one of lindblad or noise, not both");
    if (has_lindblad) {
        lz::LindbladModel lb;
        lb.gamma = require_number(cfg["lindblad"], "gamma", "lindblad");
        if (lb.gamma < 0.0) throw ConfigError("lindblad.gamma must be >= 0");
        return lb;
    }
    if (cfg.contains("noise")) return parse_noise(cfg, args);
    throw ConfigError("missing field: lindblad or noise");
}

json noise_to_json(const lz::NoiseSpec& n) {
    return json{{"model", noise_model_name(n.model)}, {"amplitude", n.amplitude},
                {"tau", n.tau},                       {"mean_offset", n.mean_offset},
                {"channels", n.channels},             {"master_seed", n.master_seed}};
}

// The thread count is deliberately not echoed: it affects speed only, never
// results, and outputs must be identical across thread counts.
json ensemble_to_json(const lz::EnsembleConfig& ec) {
    json j{{"n_trajectories", ec.n_trajectories},
           {"master_seed", ec.master_seed},
           {"max_trajectories", ec.max_trajectories},
           {"tail_tolerance", ec.tail_tolerance}};
    if (ec.target_standard_error) j["target_standard_error"] = *ec.target_standard_error;
    return j;
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void emit(const CommonArgs& args, const std::string& text) {
    if (args.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(args.out_path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + args.out_path);
    out << text;
}

void emit_json(const CommonArgs& args, const json& doc) { emit(args, doc.dump(2) + "\n"); }

json optional_to_json(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

// ---------------------------------------------------------------- predict

int cmd_predict(const CommonArgs& args) {
    const json cfg = load_config(args);
    const lz::SystemParams system = parse_system(cfg, /*need_v=*/false);
    const lz::NoiseSpec noise = parse_noise(cfg, args);

    std::optional<double> v;
    if (cfg.contains("system") && cfg["system"].contains("v"))
        v = cfg["system"]["v"].get<double>();

    std::optional<lz::ThermalParams> thermal;
    if (cfg.contains("thermal"))
        thermal = lz::ThermalParams{require_number(cfg["thermal"], "k_b_t", "thermal")};

    const double threshold =
        cfg.contains("predict") ? cfg["predict"].value("negligible_threshold", 10.0) : 10.0;

    if (!(system.delta > 0.0)) throw ConfigError("system.delta must be > 0 for predict");
    const lz::RegimeReport r = lz::predict(noise, system.delta, v, thermal, threshold);

    json doc;
    doc["config"] = {{"system", {{"delta", system.delta}}},
                     {"noise", noise_to_json(noise)},
                     {"predict", {{"negligible_threshold", threshold}}}};
    if (v) doc["config"]["system"]["v"] = *v;
    if (thermal) doc["config"]["thermal"] = {{"k_b_t", thermal->k_b_t}};
    json& rep = doc["report"];
    rep["quadrant"] = lz::to_string(r.quadrant);
    rep["excitation_rate"] = optional_to_json(r.excitation_rate);
    rep["v_optimal"] = optional_to_json(r.v_optimal);
    rep["p_failure"] = optional_to_json(r.p_failure);
    rep["p_noise"] = optional_to_json(r.p_noise);
    rep["photon_order"] = r.photon_order ? json(*r.photon_order) : json(nullptr);
    rep["v_env"] = optional_to_json(r.v_env);
    rep["p_env_lz"] = optional_to_json(r.p_env_lz);
    rep["crossing_count"] = optional_to_json(r.crossing_count);
    rep["env_effect_negligible"] =
        r.env_effect_negligible ? json(*r.env_effect_negligible) : json(nullptr);
    rep["thermal_floor"] = optional_to_json(r.thermal_floor);
    rep["clamped"] = r.clamped;
    rep["diagnostic"] = r.diagnostic ? json(*r.diagnostic) : json(nullptr);

    std::ostringstream human;
    human << "quadrant: " << lz::to_string(r.quadrant) << "\n";
    if (r.excitation_rate) human << "excitation_rate: " << fmt17(*r.excitation_rate) << "\n";
    if (r.v_optimal) human << "v_optimal: " << fmt17(*r.v_optimal) << "\n";
    if (r.p_failure) human << "p_failure: " << fmt17(*r.p_failure) << "\n";
    if (r.p_noise) human << "p_noise: " << fmt17(*r.p_noise) << "\n";
    if (r.photon_order) human << "photon_order: " << *r.photon_order << "\n";
    if (r.v_env) human << "v_env: " << fmt17(*r.v_env) << "\n";
    if (r.p_env_lz) human << "p_env_lz: " << fmt17(*r.p_env_lz) << "\n";
    if (r.crossing_count) human << "crossing_count: " << fmt17(*r.crossing_count) << "\n";
    if (r.env_effect_negligible)
        human << "env_effect_negligible: " << (*r.env_effect_negligible ? "yes" : "no") << "\n";
    if (r.thermal_floor) human << "thermal_floor: " << fmt17(*r.thermal_floor) << "\n";
    if (r.diagnostic) human << "diagnostic: " << *r.diagnostic << "\n";

    if (args.out_path.empty()) {
        std::cout << human.str();
    } else {
        emit_json(args, doc);
        std::cout << human.str();
    }
    return 0;
}

// --------------------------------------------------------------- simulate

int cmd_simulate(const CommonArgs& args) {
    const json cfg = load_config(args);
    lz::SystemParams system = parse_system(cfg);

    const bool has_lindblad = cfg.contains("lindblad");
    lz::NoiseSpec noise;
    double gamma = 0.0;
    if (has_lindblad) {
        gamma = require_number(cfg["lindblad"], "gamma", "lindblad");
        if (cfg.contains("noise") && cfg["noise"].value("model", "none") != std::string("none"))
            throw ConfigError("config must specify exactly one of lindblad or noise, not both");
    } else if (cfg.contains("noise")) {
        noise = parse_noise(cfg, args);
    }

    const double tail_tolerance = cfg.value("tail_tolerance", 1e-3);
    const std::optional<double> tau = (noise.model != lz::NoiseModel::None)
                                          ? std::optional<double>(noise.tau)
                                          : std::nullopt;
    const lz::TimeWindow window = lz::auto_time_window(system, tail_tolerance, tau);
    system.t_start = window.t_start;
    system.t_end = window.t_end;

    lz::EvolutionResult result;
    if (has_lindblad) {
        result = lz::evolve_lindblad(system, gamma, window);
    } else if (noise.model != lz::NoiseModel::None) {
        const lz::TimeGrid grid{window.t_start, window.dt, window.step_count()};
        const lz::NoiseTrace trace = lz::generate_trace(noise, grid, noise.master_seed);
        result = lz::evolve_pure(system, &trace, window);
    } else {
        result = lz::evolve_pure(system, nullptr, window);
    }

    json doc;
    doc["config"] = {{"system", {{"delta", system.delta}, {"v", system.v}}},
                     {"tail_tolerance", tail_tolerance}};
    if (has_lindblad)
        doc["config"]["lindblad"] = {{"gamma", gamma}};
    else
        doc["config"]["noise"] = noise_to_json(noise);
    doc["window"] = {{"t_start", window.t_start}, {"t_end", window.t_end}, {"dt", window.dt}};
    doc["result"] = {{"ground_state_population", result.ground_state_population},
                     {"step_count", result.step_count},
                     {"max_norm_drift", result.max_norm_drift}};
    emit_json(args, doc);
    return 0;
}

// --------------------------------------------------------------- ensemble

int cmd_ensemble(const CommonArgs& args) {
    const json cfg = load_config(args);
    const lz::SystemParams system = parse_system(cfg);
    const lz::NoiseSpec noise = parse_noise(cfg, args);
    const lz::EnsembleConfig ec = parse_ensemble(cfg, args);

    const lz::EnsembleResult result = lz::run_ensemble(system, noise, ec);

    json doc;
    doc["config"] = {{"system", {{"delta", system.delta}, {"v", system.v}}},
                     {"noise", noise_to_json(noise)},
                     {"ensemble", ensemble_to_json(ec)}};
    doc["result"] = {{"success_probability", result.success_probability},
                     {"standard_error", result.standard_error},
                     {"n_used", result.n_used}};
    if (result.n_used <= 64 && !result.trajectory_seeds.empty())
        doc["result"]["trajectory_seeds"] = result.trajectory_seeds;
    emit_json(args, doc);
    return 0;
}

// ------------------------------------------------------------------ curve

std::vector<double> parse_v_grid(const json& cfg, double delta) {
    if (!cfg.contains("curve")) throw ConfigError("missing field: curve");
    const json& c = cfg["curve"];
    std::vector<double> v_grid;
    if (c.contains("v_grid")) {
        v_grid = c["v_grid"].get<std::vector<double>>();
    } else {
        const double x_lo = require_number(c, "delta2_over_v_min", "curve");
        const double x_hi = require_number(c, "delta2_over_v_max", "curve");
        const int points = static_cast<int>(require_number(c, "points", "curve"));
        if (!(0.0 < x_lo && x_lo < x_hi) || points < 2)
            throw ConfigError("curve grid must satisfy 0 < delta2_over_v_min < "
                              "delta2_over_v_max with points >= 2");
        for (int i = 0; i < points; ++i) {
            const double f = static_cast<double>(i) / static_cast<double>(points - 1);
            const double x = std::exp(std::log(x_lo) + f * (std::log(x_hi) - std::log(x_lo)));
            v_grid.push_back(delta * delta / x);
        }
    }
    if (v_grid.empty()) throw ConfigError("curve.v_grid must not be empty");
    for (double v : v_grid)
        if (!(v > 0.0)) throw ConfigError("curve.v_grid entries must be > 0");
    return v_grid;
}

int cmd_curve(const CommonArgs& args) {
    const json cfg = load_config(args);
    const lz::SystemParams system = parse_system(cfg, /*need_v=*/false);
    const lz::DecoherenceModel model = parse_decoherence(cfg, args);
    const std::vector<double> v_grid = parse_v_grid(cfg, system.delta);
    const double tail_tolerance = cfg.value("tail_tolerance", 1e-3);

    struct Row {
        double v, p, err;
        std::size_t n;
    };
    std::vector<Row> rows;
    rows.reserve(v_grid.size());

    json config_echo{{"system", {{"delta", system.delta}}}, {"tail_tolerance", tail_tolerance}};
    if (const auto* lb = std::get_if<lz::LindbladModel>(&model)) {
        config_echo["lindblad"] = {{"gamma", lb->gamma}};
        for (double v : v_grid) {
            lz::SystemParams s = system;
            s.v = v;
            const lz::TimeWindow window = lz::auto_time_window(s, tail_tolerance);
            const lz::EvolutionResult r = lz::evolve_lindblad(s, lb->gamma, window);
            rows.push_back({v, r.ground_state_population, 0.0, 1});
        }
    } else {
        const auto& noise = std::get<lz::NoiseSpec>(model);
        lz::EnsembleConfig ec = parse_ensemble(cfg, args);
        ec.tail_tolerance = tail_tolerance;
        config_echo["noise"] = noise_to_json(noise);
        config_echo["ensemble"] = ensemble_to_json(ec);
        const auto curve = lz::success_curve(system, noise, v_grid, ec);
        for (const auto& pt : curve)
            rows.push_back(
                {pt.v, pt.result.success_probability, pt.result.standard_error, pt.result.n_used});
    }
    config_echo["curve"] = {{"v_grid", v_grid}};

    const std::string format = args.format.empty() ? "csv" : args.format;
    if (format == "csv") {
        std::ostringstream out;
        out << "# config: " << config_echo.dump() << "\n";
        out << "v,delta2_over_v,p_success,std_err,n\n";
        char buf[200];
        for (const auto& r : rows) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%zu\n", r.v,
                          system.delta * system.delta / r.v, r.p, r.err, r.n);
            out << buf;
        }
        emit(args, out.str());
    } else if (format == "json") {
        json doc;
        doc["config"] = config_echo;
        for (const auto& r : rows)
            doc["points"].push_back({{"v", r.v},
                                     {"delta2_over_v", system.delta * system.delta / r.v},
                                     {"p_success", r.p},
                                     {"std_err", r.err},
                                     {"n", r.n}});
        emit_json(args, doc);
    } else {
        throw ConfigError("unknown format: " + format);
    }
    return 0;
}

// --------------------------------------------------------------- optimize

int cmd_optimize(const CommonArgs& args) {
    const json cfg = load_config(args);
    const lz::SystemParams system = parse_system(cfg, /*need_v=*/false);
    const lz::DecoherenceModel model = parse_decoherence(cfg, args);

    if (!cfg.contains("optimize")) throw ConfigError("missing field: optimize");
    const json& o = cfg["optimize"];
    lz::OptimizeConfig oc;
    oc.v_min = require_number(o, "v_min", "optimize");
    oc.v_max = require_number(o, "v_max", "optimize");
    oc.coarse_grid_points = o.value("coarse_grid_points", 9);
    oc.refine_iterations = o.value("refine_iterations", 10);
    oc.tail_tolerance = o.value("tail_tolerance", cfg.value("tail_tolerance", 1e-3));
    oc.lindblad_error_floor = o.value("lindblad_error_floor", 1e-4);
    oc.ensemble = parse_ensemble(cfg, args);

    lz::OptimumReport report = lz::find_optimal_sweep(system, model, oc);

    std::optional<lz::ThermalParams> thermal;
    if (cfg.contains("thermal")) {
        thermal = lz::ThermalParams{require_number(cfg["thermal"], "k_b_t", "thermal")};
        report = lz::apply_thermal_floor(std::move(report), system.delta, *thermal);
    }

    json config_echo{{"system", {{"delta", system.delta}}},
                     {"optimize",
                      {{"v_min", oc.v_min},
                       {"v_max", oc.v_max},
                       {"coarse_grid_points", oc.coarse_grid_points},
                       {"refine_iterations", oc.refine_iterations},
                       {"tail_tolerance", oc.tail_tolerance},
                       {"lindblad_error_floor", oc.lindblad_error_floor}}},
                     {"ensemble", ensemble_to_json(oc.ensemble)}};
    if (const auto* lb = std::get_if<lz::LindbladModel>(&model))
        config_echo["lindblad"] = {{"gamma", lb->gamma}};
    else
        config_echo["noise"] = noise_to_json(std::get<lz::NoiseSpec>(model));
    if (thermal) config_echo["thermal"] = {{"k_b_t", thermal->k_b_t}};

    const std::string format = args.format.empty() ? "json" : args.format;
    if (format == "csv") {
        std::ostringstream out;
        out << "# config: " << config_echo.dump() << "\n";
        out << "v,p_success,std_err\n";
        char buf[160];
        for (const auto& pt : report.landscape) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", pt.v, pt.p, pt.err);
            out << buf;
        }
        emit(args, out.str());
        return 0;
    }
    if (format != "json") throw ConfigError("unknown format: " + format);

    json doc;
    doc["config"] = config_echo;
    json& rep = doc["report"];
    rep["v_opt_numeric"] = report.v_opt_numeric;
    rep["p_max_numeric"] = report.p_max_numeric;
    rep["p_max_error"] = report.p_max_error;
    rep["v_plateau_lo"] = report.v_plateau_lo;
    rep["v_plateau_hi"] = report.v_plateau_hi;
    rep["v_opt_analytic"] = optional_to_json(report.v_opt_analytic);
    rep["ratio_numeric_to_analytic"] = optional_to_json(report.ratio_numeric_to_analytic);
    rep["p_failure_analytic"] = optional_to_json(report.p_failure_analytic);
    rep["monotone_regime"] = report.monotone_regime;
    rep["resolution_insufficient"] = report.resolution_insufficient;
    rep["thermal_floor_applied"] = report.thermal_floor_applied;
    rep["success_ceiling"] = optional_to_json(report.success_ceiling);
    rep["recommendation"] = report.recommendation ? json(*report.recommendation) : json(nullptr);
    for (const auto& pt : report.landscape)
        rep["landscape"].push_back({{"v", pt.v}, {"p", pt.p}, {"err", pt.err}});
    emit_json(args, doc);
    return 0;
}

// ---------------------------------------------------------------- scaling

int cmd_scaling(const CommonArgs& args) {
    const json cfg = load_config(args);
    if (!cfg.contains("scaling")) throw ConfigError("missing field: scaling");
    const json& s = cfg["scaling"];

    lz::ScalingScenario base;
    base.delta = require_number(s, "delta", "scaling");
    base.tau = require_number(s, "tau", "scaling");
    base.per_qubit_amplitude = require_number(s, "per_qubit_amplitude", "scaling");
    base.margin = s.value("margin", 10.0);
    std::vector<int> m_values = require(s, "m_values", "scaling").get<std::vector<int>>();

    const auto rows = lz::scaling_table(base, m_values);

    json config_echo{{"scaling",
                      {{"delta", base.delta},
                       {"tau", base.tau},
                       {"per_qubit_amplitude", base.per_qubit_amplitude},
                       {"margin", base.margin},
                       {"m_values", m_values}}}};

    const std::string format = args.format.empty() ? "csv" : args.format;
    if (format == "csv") {
        std::ostringstream out;
        out << "# config: " << config_echo.dump() << "\n";
        std::ostringstream table;
        lz::write_scaling_csv(table, rows);
        out << table.str();
        emit(args, out.str());
    } else if (format == "json") {
        json doc;
        doc["config"] = config_echo;
        for (const auto& r : rows)
            doc["rows"].push_back({{"m", r.m},
                                   {"agg_amplitude", r.agg_amplitude},
                                   {"p_excite", r.p_excite},
                                   {"delta_bound", r.bound},
                                   {"pass", r.pass}});
        emit_json(args, doc);
    } else {
        throw ConfigError("unknown format: " + format);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Landau-Zener sweeps under decoherence: simulation and analytic estimates"};
    app.require_subcommand(1);

    CommonArgs args;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", args.config_path, "JSON configuration file")->required();
        sub->add_option("--out", args.out_path, "output file (default: stdout)");
        sub->add_option("--format", args.format, "output format: csv or json");
        sub->add_option("--seed", args.seed_override, "override the master seed");
        sub->add_option("--threads", args.threads_override, "worker threads (speed only)");
    };

    CLI::App* predict = app.add_subcommand("predict", "analytic regime report");
    CLI::App* simulate = app.add_subcommand("simulate", "single deterministic propagation");
    CLI::App* ensemble = app.add_subcommand("ensemble", "Monte Carlo trajectory average");
    CLI::App* curve = app.add_subcommand("curve", "success probability vs sweep rate");
    CLI::App* optimize = app.add_subcommand("optimize", "find the optimal sweep rate");
    CLI::App* scaling = app.add_subcommand("scaling", "multi-qubit noise aggregation table");
    for (CLI::App* sub : {predict, simulate, ensemble, curve, optimize, scaling}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (predict->parsed()) return cmd_predict(args);
        if (simulate->parsed()) return cmd_simulate(args);
        if (ensemble->parsed()) return cmd_ensemble(args);
        if (curve->parsed()) return cmd_curve(args);
        if (optimize->parsed()) return cmd_optimize(args);
        if (scaling->parsed()) return cmd_scaling(args);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
