// seqnet: simulate and analyze fully distributed sequential hypothesis tests
// on sensor networks (centralized, local, sample-dissemination, and
// consensus-algorithm SPRT variants).

#include <CLI11.hpp>
#include <json.hpp>

#include <seqnet/analytics.hpp>
#include <seqnet/config.hpp>
#include <seqnet/recipes.hpp>
#include <seqnet/reporting.hpp>
#include <seqnet/weights.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

using nlohmann::json;
using namespace seqnet;

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    int workers = 0;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool needs_config) {
    auto* c = cmd->add_option("--config", opts.config_path, "experiment config (JSON)");
    if (needs_config) c->required();
    cmd->add_option("--out", opts.out_path, "output path");
    cmd->add_option("--seed", opts.seed, "master seed (overrides config)");
    cmd->add_option("--trials", opts.trials, "trial count (overrides config)");
    cmd->add_option("--workers", opts.workers, "worker thread cap (0 = auto)");
}

std::uint64_t resolve_seed(const CommonOptions& opts, const LoadedConfig* cfg) {
    if (opts.seed) return *opts.seed;
    if (cfg && cfg->seed_in_config) return cfg->experiment.master_seed;
    if (const char* env = std::getenv("SEQNET_SEED")) return std::strtoull(env, nullptr, 10);
    return 1;
}

void apply_overrides(LoadedConfig& cfg, const CommonOptions& opts) {
    cfg.experiment.master_seed = resolve_seed(opts, &cfg);
    if (opts.trials) cfg.experiment.trials = *opts.trials;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string sibling_path(const std::string& csv_path, const std::string& suffix) {
    const auto dot = csv_path.rfind(".csv");
    if (dot != std::string::npos && dot == csv_path.size() - 4)
        return csv_path.substr(0, dot) + suffix;
    return csv_path + suffix;
}

json weight_report_json(const LoadedConfig& cfg) {
    const WeightMatrix wm = equal_weight_matrix(cfg.experiment.topology);
    const SpectralReport report = validate_condition1(wm.w);
    double margin = 0.0;
    for (const auto& m : cfg.experiment.models)
        margin = std::max(margin, m.condition2_log_margin(cfg.experiment.topology.n_sensors));

    json out;
    out["sigma2"] = wm.sigma2;
    out["delta"] = wm.delta ? json(*wm.delta) : json(nullptr);
    out["condition1_ok"] = report.condition1_ok;
    out["eigenvalues"] = report.eigenvalues;
    out["condition2_log_margin"] = margin;
    json warnings = json::array();
    for (const auto& w : wm.warnings) warnings.push_back(w);
    for (const auto& w : report.warnings) warnings.push_back(w);
    out["warnings"] = warnings;
    return out;
}

int cmd_validate(const CommonOptions& opts) {
    const LoadedConfig cfg = load_config_file(opts.config_path);
    const json report = weight_report_json(cfg);
    std::cout << report.dump(2) << '\n';
    return report["condition1_ok"].get<bool>() ? 0 : 1;
}

int cmd_sweep(const CommonOptions& opts) {
    LoadedConfig cfg = load_config_file(opts.config_path);
    apply_overrides(cfg, opts);
    if (cfg.experiment.thresholds.empty())
        throw ConfigError("thresholds: sweep needs a threshold list");
    if (opts.out_path.empty()) throw ConfigError("--out: required for sweep");

    RunManifest manifest;
    manifest.config_digest = config_digest(cfg.raw);
    manifest.master_seed = cfg.experiment.master_seed;
    manifest.started = iso8601_now();

    const SummaryTable table = run_experiment(cfg.experiment, opts.workers);

    const std::string csv =
        to_csv_with_references(table, cfg.experiment.models, cfg.experiment.topology);
    json mirror = to_json(table);
    mirror["config_digest"] = manifest.config_digest;
    mirror["master_seed"] = cfg.experiment.master_seed;

    const std::string json_path = sibling_path(opts.out_path, ".json");
    const std::string manifest_path = sibling_path(opts.out_path, ".manifest.json");
    write_file(opts.out_path, csv);
    write_file(json_path, mirror.dump(2) + "\n");
    manifest.finished = iso8601_now();
    manifest.outputs = {opts.out_path, json_path};
    write_file(manifest_path, manifest.to_json().dump(2) + "\n");
    std::cout << manifest.to_json().dump(2) << '\n';
    return 0;
}

int cmd_operating_point(const CommonOptions& opts) {
    LoadedConfig cfg = load_config_file(opts.config_path);
    apply_overrides(cfg, opts);
    if (!cfg.targets) throw ConfigError("targets: operating-point needs {alpha, beta}");

    json out;
    Thresholds th;
    if (cfg.experiment.detector.kind == DetectorKind::consensus) {
        const WeightMatrix wm = equal_weight_matrix(cfg.experiment.topology);
        const int t0 = cfg.t0 ? *cfg.t0 : default_t0(wm.sigma2, cfg.experiment.detector.q);
        const int sensor = cfg.sensor ? *cfg.sensor : 0;
        const RefinedConstants constants =
            refined_constants(wm, cfg.experiment.detector.q, t0, cfg.experiment.models, sensor,
                              cfg.mc_samples, cfg.experiment.master_seed);
        th = ca_thresholds(*cfg.targets, constants, cfg.experiment.topology.n_sensors);
        out["constants"] = {{"c_alpha", constants.c_alpha},
                            {"c_beta", constants.c_beta},
                            {"c_alpha_se", constants.c_alpha_se},
                            {"c_beta_se", constants.c_beta_se},
                            {"t0", constants.t0},
                            {"mc_samples", constants.mc_samples},
                            {"sensor", sensor}};
    } else {
        th = simple_thresholds(*cfg.targets);
    }
    out["targets"] = {{"alpha", cfg.targets->alpha}, {"beta", cfg.targets->beta}};
    out["thresholds"] = {{"a", th.a}, {"b", th.b}};

    cfg.experiment.thresholds = {th};
    cfg.experiment.thresholds_raw = true;
    cfg.experiment.validate();
    const SummaryTable table = run_experiment(cfg.experiment, opts.workers);
    out["results"] = to_json(table)["rows"];
    const std::string text = out.dump(2) + "\n";
    if (!opts.out_path.empty()) write_file(opts.out_path, text);
    std::cout << text;
    return 0;
}

int cmd_constants(const CommonOptions& opts) {
    LoadedConfig cfg = load_config_file(opts.config_path);
    apply_overrides(cfg, opts);
    const WeightMatrix wm = equal_weight_matrix(cfg.experiment.topology);
    const int q = cfg.experiment.detector.q;
    const int t0 = cfg.t0 ? *cfg.t0 : default_t0(wm.sigma2, q);

    std::vector<int> sensors;
    if (cfg.sensor)
        sensors.push_back(*cfg.sensor);
    else
        for (int k = 0; k < cfg.experiment.topology.n_sensors; ++k) sensors.push_back(k);

    json list = json::array();
    for (int sensor : sensors) {
        const RefinedConstants c = refined_constants(wm, q, t0, cfg.experiment.models, sensor,
                                                     cfg.mc_samples, cfg.experiment.master_seed);
        list.push_back({{"sensor", sensor},
                        {"c_alpha", c.c_alpha},
                        {"c_beta", c.c_beta},
                        {"c_alpha_se", c.c_alpha_se},
                        {"c_beta_se", c.c_beta_se}});
    }
    json out;
    out["t0"] = t0;
    out["q"] = q;
    out["mc_samples"] = cfg.mc_samples;
    out["master_seed"] = cfg.experiment.master_seed;
    out["sigma2"] = wm.sigma2;
    out["constants"] = list;
    const std::string text = out.dump(2) + "\n";
    if (!opts.out_path.empty()) write_file(opts.out_path, text);
    std::cout << text;
    return 0;
}

int cmd_predict(const CommonOptions& opts) {
    LoadedConfig cfg = load_config_file(opts.config_path);
    apply_overrides(cfg, opts);
    const auto& topo = cfg.experiment.topology;
    const auto& models = cfg.experiment.models;
    const int n = topo.n_sensors;
    const WeightMatrix wm = equal_weight_matrix(topo);
    const DelayMatrix nu = delay_matrix(topo);

    json out;
    out["n_sensors"] = n;
    out["sigma2"] = wm.sigma2;
    out["delta"] = wm.delta ? json(*wm.delta) : json(nullptr);
    out["kld_sum_h1"] = kld_sum(models, 1);
    out["kld_sum_h0"] = kld_sum(models, 0);
    double margin = 0.0;
    for (const auto& m : models) margin = std::max(margin, m.condition2_log_margin(n));
    out["condition2_log_margin"] = margin;

    json delay = json::array();
    for (int k = 0; k < n; ++k)
        delay.push_back({{"sensor", k},
                         {"h1", sd_delay_constant(nu, models, k, 1)},
                         {"h0", sd_delay_constant(nu, models, k, 0)}});
    out["sd_delay_constants"] = delay;

    if (cfg.targets) {
        const Thresholds th = simple_thresholds(*cfg.targets);
        const auto cs_et = centralized_asymptotic_et(models, *cfg.targets);
        out["simple_thresholds"] = {{"a", th.a}, {"b", th.b}};
        out["centralized_et"] = {{"h1", cs_et.first}, {"h0", cs_et.second}};
        json local_et = json::array();
        for (int k = 0; k < n; ++k) {
            const auto et = local_asymptotic_et(topo, models, *cfg.targets, k);
            local_et.push_back({{"sensor", k}, {"h1", et.first}, {"h0", et.second}});
        }
        out["local_et"] = local_et;
    }

    json per_threshold = json::array();
    for (std::size_t i = 0; i < cfg.experiment.thresholds.size(); ++i) {
        const Thresholds common = cfg.experiment.thresholds[i];
        json entry;
        entry["b_common"] = common.b;
        const Thresholds raw_sum{common.a * n, common.b * n};
        entry["sd_alpha_bound"] = sd_error_bound(raw_sum).first;
        entry["ca_log_alpha_slope"] = ca_error_exponent(n, common).first;
        const auto lemma1 = lemma1_et_prediction(n, models, common, wm.sigma2,
                                                 cfg.experiment.detector.q);
        entry["lemma1_et1_center"] = lemma1.et1_center;
        entry["gap_scale"] = lemma1.gap_scale;
        if (homogeneous(models) && wm.sigma2 > 0.0)
            entry["sahu_alpha_bound"] =
                sahu_alpha_bound(n, wm.sigma2, common.b, models.front().kld(1));
        per_threshold.push_back(entry);
    }
    out["per_threshold"] = per_threshold;

    const std::string text = out.dump(2) + "\n";
    if (!opts.out_path.empty()) write_file(opts.out_path, text);
    std::cout << text;
    return 0;
}

int cmd_reproduce(const std::string& name, const CommonOptions& opts) {
    const Recipe recipe = make_recipe(name);
    const std::uint64_t seed = resolve_seed(opts, nullptr);
    const std::uint64_t trials = opts.trials ? *opts.trials : recipe.default_trials;
    const std::string dir = opts.out_path.empty() ? "." : opts.out_path;

    RunManifest manifest;
    const json recipe_desc = {{"recipe", name}, {"trials", trials}, {"master_seed", seed}};
    manifest.config_digest = config_digest(recipe_desc);
    manifest.master_seed = seed;
    manifest.started = iso8601_now();

    const SummaryTable table = run_recipe(recipe, trials, seed, 1000000, opts.workers);
    const std::string csv = to_csv_with_references(table, recipe.models, recipe.topology);
    json mirror = to_json(table);
    mirror["recipe"] = recipe_desc;

    const std::string csv_path = dir + "/" + name + ".csv";
    const std::string json_path = dir + "/" + name + ".json";
    const std::string manifest_path = dir + "/" + name + ".manifest.json";
    write_file(csv_path, csv);
    write_file(json_path, mirror.dump(2) + "\n");
    manifest.finished = iso8601_now();
    manifest.outputs = {csv_path, json_path};
    write_file(manifest_path, manifest.to_json().dump(2) + "\n");
    std::cout << manifest.to_json().dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"seqnet: distributed sequential hypothesis testing on sensor networks"};
    app.set_version_flag("--version", std::string("seqnet ") + kToolVersion);
    app.require_subcommand(1);

    CommonOptions validate_opts, sweep_opts, op_opts, const_opts, predict_opts, repro_opts;
    std::string recipe_name;

    auto* validate = app.add_subcommand(
        "validate-weights", "check the consensus matrix conditions and tail margins for a config");
    add_common(validate, validate_opts, true);

    auto* sweep = app.add_subcommand("sweep", "run a threshold sweep and write CSV/JSON tables");
    add_common(sweep, sweep_opts, true);

    auto* op = app.add_subcommand("operating-point",
                                  "choose thresholds for the target error rates and measure them");
    add_common(op, op_opts, true);

    auto* constants =
        app.add_subcommand("constants", "estimate the refined error-approximation constants");
    add_common(constants, const_opts, true);

    auto* predict = app.add_subcommand("predict", "emit the closed-form predictions for a config");
    add_common(predict, predict_opts, true);

    auto* reproduce =
        app.add_subcommand("reproduce", "run a named experiment suite (fig-12-2, fig-20-2, fig-26-2)");
    reproduce->add_option("name", recipe_name, "suite name")->required();
    add_common(reproduce, repro_opts, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(validate_opts);
        if (sweep->parsed()) return cmd_sweep(sweep_opts);
        if (op->parsed()) return cmd_operating_point(op_opts);
        if (constants->parsed()) return cmd_constants(const_opts);
        if (predict->parsed()) return cmd_predict(predict_opts);
        if (reproduce->parsed()) return cmd_reproduce(recipe_name, repro_opts);
    } catch (const ConfigError& ex) {
        std::cerr << "config error: " << ex.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "config error: " << ex.what() << '\n';
        return 1;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 2;
    }
    return 0;
}
