#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <seqnet/detectors.hpp>
#include <seqnet/models.hpp>
#include <seqnet/topology.hpp>

namespace seqnet {

enum class DetectorKind { centralized, local, sample_dissemination, consensus };

const char* detector_code(DetectorKind kind);            // "cs", "local", "sd", "ca"
DetectorKind detector_from_code(const std::string& code);

struct DetectorSpec {
    DetectorKind kind = DetectorKind::consensus;
    int q = 1;  // message-passing rounds per slot (consensus only)
};

// Declarative description of one experiment: one detector swept over a
// threshold list under the listed hypotheses. Thresholds are given either in
// the detector's own statistic scale ("raw") or in the common per-sensor
// average scale that puts all detectors on one comparison axis: sum-statistic
// detectors (cs, sd, local) run at K times the listed value and the consensus
// detector runs at the value itself.
struct ExperimentConfig {
    Topology topology;
    ModelSet models;
    DetectorSpec detector;
    std::vector<int> hypotheses = {0, 1};
    std::vector<Thresholds> thresholds;
    bool thresholds_raw = false;
    std::uint64_t trials = 100000;
    std::uint64_t master_seed = 1;
    std::uint64_t max_steps = 1000000;

    void validate() const;
    Thresholds raw_thresholds(std::size_t index) const;
};

struct SensorCellStats {
    std::uint64_t trials = 0;
    std::uint64_t decide_h1 = 0;
    std::uint64_t decide_h0 = 0;
    std::uint64_t censored = 0;
    double error_rate = 0.0;  // P(D=1) under H0, P(D=0) under H1
    double err_lo = 0.0;      // Wilson 95% interval on error_rate
    double err_hi = 0.0;
    double et_mean = 0.0;     // censored trials excluded; NaN when all censored
    double et_se = 0.0;
    double overshoot_mean = 0.0;
    bool under_resolved = false;  // fewer than 10 observed errors
};

struct ExperimentRow {
    DetectorKind detector = DetectorKind::consensus;
    int q = 1;
    int sensor = 0;
    int hyp = 0;
    double a_raw = 0.0;
    double b_raw = 0.0;
    double a_common = 0.0;
    double b_common = 0.0;
    SensorCellStats stats;
};

struct SummaryTable {
    std::vector<ExperimentRow> rows;

    void append(const SummaryTable& other) {
        rows.insert(rows.end(), other.rows.begin(), other.rows.end());
    }
};

// Runs trials x |thresholds| x |hypotheses| independent network trials. The
// random stream of a trial is fixed by (master_seed, threshold index,
// hypothesis, trial index) alone, so results are invariant to worker count
// and execution order, and sample paths pair across detectors and q.
// workers = 0 picks a small default.
SummaryTable run_experiment(const ExperimentConfig& config, int workers = 0);

// run_experiment with at least two thresholds (one summary row per sensor,
// hypothesis, and threshold).
SummaryTable threshold_sweep(const ExperimentConfig& config, int workers = 0);

// Wilson score interval (95%).
std::pair<double, double> proportion_ci(std::uint64_t successes, std::uint64_t trials);

// Normal-approximation interval (95%) for a sample mean; zero width for
// degenerate samples.
std::pair<double, double> mean_ci(const std::vector<double>& samples);

}  // namespace seqnet
