#include <seqnet/recipes.hpp>

#include <stdexcept>

namespace seqnet {

namespace {

Recipe base_recipe(const std::string& name, int n, int m, LlrFamily family, double mu) {
    Recipe r;
    r.name = name;
    r.topology = ring_topology(n, m);
    r.models = homogeneous_models(HypothesisModel(family, mu), n);
    r.detectors.push_back({DetectorKind::centralized, 1});
    r.detectors.push_back({DetectorKind::sample_dissemination, 1});
    r.detectors.push_back({DetectorKind::local, 1});
    return r;
}

}  // namespace

Recipe make_recipe(const std::string& name) {
    if (name == "fig-12-2") {
        Recipe r = base_recipe(name, 12, 2, LlrFamily::gaussian_mean_shift, 0.3);
        r.detectors.push_back({DetectorKind::consensus, 1});
        r.b_values = {0.2, 0.3, 0.4, 0.5, 0.6, 0.7};
        return r;
    }
    if (name == "fig-20-2") {
        Recipe r = base_recipe(name, 20, 2, LlrFamily::gaussian_mean_shift, 0.3);
        r.detectors.push_back({DetectorKind::consensus, 1});
        r.detectors.push_back({DetectorKind::consensus, 2});
        r.b_values = {0.2, 0.3, 0.4, 0.5};
        return r;
    }
    if (name == "fig-26-2") {
        Recipe r = base_recipe(name, 26, 2, LlrFamily::laplace_mean_shift, 0.2);
        r.detectors.push_back({DetectorKind::consensus, 1});
        r.detectors.push_back({DetectorKind::consensus, 2});
        r.detectors.push_back({DetectorKind::consensus, 3});
        r.b_values = {0.1, 0.15, 0.2, 0.25, 0.3};
        return r;
    }
    throw std::invalid_argument("unknown recipe: " + name +
                                " (expected fig-12-2, fig-20-2, or fig-26-2)");
}

std::vector<std::string> recipe_names() { return {"fig-12-2", "fig-20-2", "fig-26-2"}; }

SummaryTable run_recipe(const Recipe& recipe, std::uint64_t trials, std::uint64_t master_seed,
                        std::uint64_t max_steps, int workers) {
    SummaryTable table;
    for (const auto& det : recipe.detectors) {
        ExperimentConfig cfg;
        cfg.topology = recipe.topology;
        cfg.models = recipe.models;
        cfg.detector = det;
        cfg.hypotheses = {0, 1};
        for (double b : recipe.b_values) cfg.thresholds.push_back({b, b});
        cfg.thresholds_raw = false;
        cfg.trials = trials;
        cfg.master_seed = master_seed;
        cfg.max_steps = max_steps;
        table.append(run_experiment(cfg, workers));
    }
    return table;
}

}  // namespace seqnet
