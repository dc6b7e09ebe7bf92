#include <seqnet/montecarlo.hpp>

#include <seqnet/weights.hpp>

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace seqnet {

namespace {

constexpr std::uint64_t kBlockTrials = 4096;
constexpr double kZ95 = 1.959963984540054;

struct Accum {
    std::uint64_t decide_h1 = 0;
    std::uint64_t decide_h0 = 0;
    std::uint64_t censored = 0;
    std::uint64_t sum_t = 0;   // non-censored stopping slots (exact)
    double sum_t2 = 0.0;
    double sum_overshoot = 0.0;
};

Accum merge(const Accum& x, const Accum& y) {
    Accum z;
    z.decide_h1 = x.decide_h1 + y.decide_h1;
    z.decide_h0 = x.decide_h0 + y.decide_h0;
    z.censored = x.censored + y.censored;
    z.sum_t = x.sum_t + y.sum_t;
    z.sum_t2 = x.sum_t2 + y.sum_t2;
    z.sum_overshoot = x.sum_overshoot + y.sum_overshoot;
    return z;
}

// Pairwise reduction over [lo, hi) in block order; the tree shape depends only
// on the block count, never on worker scheduling.
std::vector<Accum> reduce_blocks(const std::vector<std::vector<Accum>>& blocks, std::size_t lo,
                                 std::size_t hi) {
    if (hi - lo == 1) return blocks[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    auto left = reduce_blocks(blocks, lo, mid);
    const auto right = reduce_blocks(blocks, mid, hi);
    for (std::size_t u = 0; u < left.size(); ++u) left[u] = merge(left[u], right[u]);
    return left;
}

// Immutable per-run context shared by all workers.
struct RunContext {
    const ExperimentConfig& config;
    const DelayMatrix* nu = nullptr;        // dissemination only
    const WeightMatrix* weights = nullptr;  // consensus only
    int units = 1;                          // decision units per trial
};

void run_one_trial(const RunContext& ctx, const Thresholds& th, std::uint32_t cell,
                   std::uint32_t trial, int hypothesis, std::vector<SensorVerdict>& verdicts) {
    const TrialStream stream{ctx.config.master_seed, cell, trial};
    const auto& cfg = ctx.config;
    switch (cfg.detector.kind) {
        case DetectorKind::centralized:
            verdicts.assign(1, run_centralized_trial(cfg.models, th, hypothesis, stream, cfg.max_steps));
            break;
        case DetectorKind::local:
            verdicts = run_local_trial(cfg.topology, cfg.models, th, hypothesis, stream, cfg.max_steps);
            break;
        case DetectorKind::sample_dissemination:
            verdicts = run_sd_trial(cfg.topology, *ctx.nu, cfg.models, th, hypothesis, stream,
                                    cfg.max_steps);
            break;
        case DetectorKind::consensus:
            verdicts = run_ca_trial(*ctx.weights, cfg.models, th, cfg.detector.q, hypothesis, stream,
                                    cfg.max_steps);
            break;
    }
}

SensorCellStats finalize(const Accum& acc, std::uint64_t trials, int hypothesis) {
    SensorCellStats s;
    s.trials = trials;
    s.decide_h1 = acc.decide_h1;
    s.decide_h0 = acc.decide_h0;
    s.censored = acc.censored;

    const std::uint64_t errors = hypothesis == 0 ? acc.decide_h1 : acc.decide_h0;
    s.error_rate = static_cast<double>(errors) / trials;
    const auto ci = proportion_ci(errors, trials);
    s.err_lo = ci.first;
    s.err_hi = ci.second;
    s.under_resolved = errors < 10;

    const std::uint64_t n = acc.decide_h1 + acc.decide_h0;
    if (n > 0) {
        s.et_mean = static_cast<double>(acc.sum_t) / n;
        if (n > 1) {
            const double var =
                (acc.sum_t2 - static_cast<double>(n) * s.et_mean * s.et_mean) / (n - 1);
            s.et_se = std::sqrt(var > 0.0 ? var / n : 0.0);
        }
        s.overshoot_mean = acc.sum_overshoot / n;
    } else {
        s.et_mean = std::numeric_limits<double>::quiet_NaN();
        s.et_se = std::numeric_limits<double>::quiet_NaN();
        s.overshoot_mean = std::numeric_limits<double>::quiet_NaN();
    }
    return s;
}

}  // namespace

const char* detector_code(DetectorKind kind) {
    switch (kind) {
        case DetectorKind::centralized: return "cs";
        case DetectorKind::local: return "local";
        case DetectorKind::sample_dissemination: return "sd";
        case DetectorKind::consensus: return "ca";
    }
    return "?";
}

DetectorKind detector_from_code(const std::string& code) {
    if (code == "cs") return DetectorKind::centralized;
    if (code == "local") return DetectorKind::local;
    if (code == "sd") return DetectorKind::sample_dissemination;
    if (code == "ca") return DetectorKind::consensus;
    throw std::invalid_argument("unknown detector code: " + code);
}

void ExperimentConfig::validate() const {
    if (trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
    if (trials > 0xFFFFFFFFull) throw std::invalid_argument("experiment: trials exceed 2^32");
    if (max_steps < 1) throw std::invalid_argument("experiment: max_steps must be >= 1");
    if (thresholds.empty()) throw std::invalid_argument("experiment: no thresholds given");
    for (const auto& th : thresholds) th.validate();
    if (hypotheses.empty()) throw std::invalid_argument("experiment: no hypotheses given");
    for (int h : hypotheses)
        if (h != 0 && h != 1) throw std::invalid_argument("experiment: hypotheses must be 0 or 1");
    if (static_cast<int>(models.size()) != topology.n_sensors)
        throw std::invalid_argument("experiment: one model per sensor required");
    if (detector.q < 1) throw std::invalid_argument("experiment: q must be >= 1");
}

Thresholds ExperimentConfig::raw_thresholds(std::size_t index) const {
    Thresholds th = thresholds.at(index);
    if (!thresholds_raw && detector.kind != DetectorKind::consensus) {
        th.a *= topology.n_sensors;
        th.b *= topology.n_sensors;
    }
    return th;
}

SummaryTable run_experiment(const ExperimentConfig& config, int workers) {
    config.validate();

    RunContext ctx{config};
    DelayMatrix nu;
    WeightMatrix wm;
    switch (config.detector.kind) {
        case DetectorKind::centralized:
            ctx.units = 1;
            break;
        case DetectorKind::sample_dissemination:
            nu = delay_matrix(config.topology);
            ctx.nu = &nu;
            ctx.units = config.topology.n_sensors;
            break;
        case DetectorKind::consensus:
            wm = equal_weight_matrix(config.topology);
            ctx.weights = &wm;
            ctx.units = config.topology.n_sensors;
            break;
        case DetectorKind::local:
            ctx.units = config.topology.n_sensors;
            break;
    }

    struct Task {
        std::size_t cell_slot;  // dense index over (threshold, hypothesis)
        std::uint32_t cell_id;
        Thresholds th;
        int hyp;
        std::uint64_t first, last;  // trial range [first, last)
        std::size_t block;
    };

    const std::size_t n_cells = config.thresholds.size() * config.hypotheses.size();
    const std::size_t blocks_per_cell =
        static_cast<std::size_t>((config.trials + kBlockTrials - 1) / kBlockTrials);

    std::vector<Task> tasks;
    tasks.reserve(n_cells * blocks_per_cell);
    std::vector<std::vector<std::vector<Accum>>> partials(
        n_cells, std::vector<std::vector<Accum>>(blocks_per_cell,
                                                 std::vector<Accum>(ctx.units)));
    for (std::size_t ti = 0; ti < config.thresholds.size(); ++ti) {
        for (std::size_t hi = 0; hi < config.hypotheses.size(); ++hi) {
            const int hyp = config.hypotheses[hi];
            const std::uint32_t cell_id = static_cast<std::uint32_t>((ti << 1) | hyp);
            const std::size_t cell_slot = ti * config.hypotheses.size() + hi;
            for (std::size_t blk = 0; blk < blocks_per_cell; ++blk) {
                Task t;
                t.cell_slot = cell_slot;
                t.cell_id = cell_id;
                t.th = config.raw_thresholds(ti);
                t.hyp = hyp;
                t.first = blk * kBlockTrials;
                t.last = std::min<std::uint64_t>(t.first + kBlockTrials, config.trials);
                t.block = blk;
                tasks.push_back(t);
            }
        }
    }

    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    workers = static_cast<int>(std::min<std::size_t>(workers, tasks.size()));

    std::atomic<std::size_t> next{0};
    auto worker_loop = [&]() {
        std::vector<SensorVerdict> verdicts;
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) break;
            const Task& task = tasks[i];
            auto& acc = partials[task.cell_slot][task.block];
            for (std::uint64_t trial = task.first; trial < task.last; ++trial) {
                run_one_trial(ctx, task.th, task.cell_id, static_cast<std::uint32_t>(trial),
                              task.hyp, verdicts);
                for (int u = 0; u < ctx.units; ++u) {
                    const SensorVerdict& v = verdicts[u];
                    Accum& a = acc[u];
                    if (v.censored) {
                        ++a.censored;
                        continue;
                    }
                    if (v.decision == 1)
                        ++a.decide_h1;
                    else
                        ++a.decide_h0;
                    a.sum_t += v.stopping_time;
                    a.sum_t2 += static_cast<double>(v.stopping_time) *
                                static_cast<double>(v.stopping_time);
                    a.sum_overshoot += v.overshoot(task.th);
                }
            }
        }
    };

    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker_loop);
    worker_loop();
    for (auto& t : pool) t.join();

    SummaryTable table;
    const int n_sensors = config.topology.n_sensors;
    for (std::size_t ti = 0; ti < config.thresholds.size(); ++ti) {
        for (std::size_t hi = 0; hi < config.hypotheses.size(); ++hi) {
            const std::size_t cell_slot = ti * config.hypotheses.size() + hi;
            const auto totals = reduce_blocks(partials[cell_slot], 0, blocks_per_cell);
            const Thresholds raw = config.raw_thresholds(ti);
            for (int sensor = 0; sensor < n_sensors; ++sensor) {
                // The centralized test has a single network-wide verdict,
                // replicated across sensor rows.
                const int unit = ctx.units == 1 ? 0 : sensor;
                ExperimentRow row;
                row.detector = config.detector.kind;
                row.q = config.detector.q;
                row.sensor = sensor;
                row.hyp = config.hypotheses[hi];
                row.a_raw = raw.a;
                row.b_raw = raw.b;
                row.a_common = config.thresholds[ti].a;
                row.b_common = config.thresholds[ti].b;
                if (config.thresholds_raw && config.detector.kind != DetectorKind::consensus) {
                    row.a_common = raw.a / n_sensors;
                    row.b_common = raw.b / n_sensors;
                }
                row.stats = finalize(totals[unit], config.trials, row.hyp);
                table.rows.push_back(row);
            }
        }
    }
    return table;
}

SummaryTable threshold_sweep(const ExperimentConfig& config, int workers) {
    if (config.thresholds.size() < 2)
        throw std::invalid_argument("threshold_sweep: need at least two thresholds");
    return run_experiment(config, workers);
}

std::pair<double, double> proportion_ci(std::uint64_t successes, std::uint64_t trials) {
    if (trials < 1) throw std::invalid_argument("proportion_ci: trials must be >= 1");
    if (successes > trials) throw std::invalid_argument("proportion_ci: successes > trials");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::pair<double, double> mean_ci(const std::vector<double>& samples) {
    if (samples.empty()) throw std::invalid_argument("mean_ci: no samples");
    double sum = 0.0;
    for (double x : samples) sum += x;
    const double mean = sum / samples.size();
    if (samples.size() == 1) return {mean, mean};
    double ss = 0.0;
    for (double x : samples) ss += (x - mean) * (x - mean);
    const double se = std::sqrt(ss / (samples.size() - 1) / samples.size());
    return {mean - kZ95 * se, mean + kZ95 * se};
}

}  // namespace seqnet
