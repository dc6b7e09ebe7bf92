#pragma once

#include <string>
#include <vector>

#include <seqnet/montecarlo.hpp>

namespace seqnet {

// A named experiment suite: one network and model, several detectors swept
// over a shared list of common-unit thresholds (a = b). Sample paths pair
// across detectors, so the per-threshold comparisons are common-random-number
// comparisons.
struct Recipe {
    std::string name;
    Topology topology;
    ModelSet models;
    std::vector<DetectorSpec> detectors;
    std::vector<double> b_values;  // common units
    std::uint64_t default_trials = 100000;
};

// Known names: fig-12-2, fig-20-2, fig-26-2.
Recipe make_recipe(const std::string& name);
std::vector<std::string> recipe_names();

SummaryTable run_recipe(const Recipe& recipe, std::uint64_t trials, std::uint64_t master_seed,
                        std::uint64_t max_steps, int workers);

}  // namespace seqnet
