#include <seqnet/detectors.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace seqnet {

void Thresholds::validate() const {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("thresholds: a and b must be strictly positive and finite");
}

SprtDecision sprt_decide(double statistic, const Thresholds& th) {
    if (std::isnan(statistic)) throw std::invalid_argument("sprt_decide: NaN statistic");
    if (statistic >= th.b) return SprtDecision::decide_h1;
    if (statistic <= -th.a) return SprtDecision::decide_h0;
    return SprtDecision::keep_sampling;
}

LocalEngine::LocalEngine(const Topology& t) : stat_(t.n_sensors, 0.0) {
    closure_.resize(t.n_sensors);
    for (int k = 0; k < t.n_sensors; ++k) {
        closure_[k] = t.neighbor_lists[k];
        closure_[k].push_back(k);
        std::sort(closure_[k].begin(), closure_[k].end());
    }
}

void LocalEngine::step(const LlrVector& s) {
    for (std::size_t k = 0; k < closure_.size(); ++k) {
        double inc = 0.0;
        for (int l : closure_[k]) inc += s[l];
        stat_[k] += inc;
    }
}

SdClosedFormEngine::SdClosedFormEngine(const Topology& t, const DelayMatrix& nu)
    : n_(t.n_sensors),
      depth_(std::max(1, nu.max_delay()) + 1),
      nu_(nu),
      prefix_(t.n_sensors, 0.0),
      history_(static_cast<std::size_t>(t.n_sensors) * (std::max(1, nu.max_delay()) + 1), 0.0),
      stat_(t.n_sensors, 0.0) {
    if (nu.n != n_) throw std::invalid_argument("sd engine: delay matrix size mismatch");
}

void SdClosedFormEngine::step(const LlrVector& s) {
    ++t_;
    for (int l = 0; l < n_; ++l) {
        prefix_[l] += s[l];
        history_[static_cast<std::size_t>(l) * depth_ + t_ % depth_] = prefix_[l];
    }
    for (int k = 0; k < n_; ++k) {
        double z = 0.0;
        for (int l = 0; l < n_; ++l) {
            const std::int64_t idx = static_cast<std::int64_t>(t_) - nu_.at(l, k) + 1;
            if (idx >= 1) z += history_[static_cast<std::size_t>(l) * depth_ + idx % depth_];
        }
        stat_[k] = z;
    }
}

SdExplicitEngine::SdExplicitEngine(const Topology& t)
    : topo_(t),
      n_(t.n_sensors),
      values_(t.n_sensors),
      info_(t.n_sensors),
      fresh_(t.n_sensors),
      messages_(t.n_sensors),
      source_sum_(t.n_sensors, std::vector<double>(t.n_sensors, 0.0)),
      stat_(t.n_sensors, 0.0) {}

void SdExplicitEngine::step(const LlrVector& s) {
    ++t_;
    const int t_now = static_cast<int>(t_);
    for (int l = 0; l < n_; ++l) values_[l].push_back(s[l]);

    // Message sets first, synchronously: own innovation plus the external
    // samples that entered the information set in the previous slot.
    for (int k = 0; k < n_; ++k) {
        auto& v = messages_[k];
        v.clear();
        v.push_back({k, t_now});
        for (const auto& sample : fresh_[k])
            if (!(sample.first == k && sample.second == t_now - 1)) v.push_back(sample);
    }

    // Merge phase.
    for (int k = 0; k < n_; ++k) {
        auto& arrivals = fresh_[k];
        arrivals.clear();
        auto insert = [&](const Sample& sample) {
            if (info_[k].insert(sample).second) arrivals.push_back(sample);
        };
        insert({k, t_now});
        for (int l : topo_.neighbor_lists[k])
            for (const auto& sample : messages_[l]) insert(sample);

        // Accumulate per source in time order so the partial sums match the
        // closed-form prefix sums bit for bit.
        std::sort(arrivals.begin(), arrivals.end());
        for (const auto& [src, j] : arrivals) source_sum_[k][src] += values_[src][j - 1];

        double z = 0.0;
        for (int l = 0; l < n_; ++l) z += source_sum_[k][l];
        stat_[k] = z;
    }
}

ConsensusEngine::ConsensusEngine(const Matrix& w, int q) : w_(w), q_(q), eta_(w.rows, 0.0) {
    if (!w.square()) throw std::invalid_argument("consensus engine: W must be square");
    if (q < 1) throw std::invalid_argument("consensus engine: q must be >= 1");
}

void ConsensusEngine::step(const LlrVector& s) {
    for (std::size_t k = 0; k < eta_.size(); ++k) eta_[k] += s[k];
    for (int m = 0; m < q_; ++m) {
        mat_vec(w_, eta_, scratch_);
        eta_.swap(scratch_);
    }
}

namespace {

template <class Engine>
std::vector<SensorVerdict> drive_trial(Engine& engine, int n_units, const ModelSet& models,
                                       const Thresholds& th, int hypothesis,
                                       const TrialStream& stream, std::uint64_t max_steps) {
    th.validate();
    if (max_steps < 1) throw std::invalid_argument("trial: max_steps must be >= 1");
    std::vector<SensorVerdict> verdicts(n_units);
    std::vector<char> stopped(n_units, 0);
    int remaining = n_units;

    for (std::uint64_t t = 1; t <= max_steps && remaining > 0; ++t) {
        const LlrVector s = draw_llr_vector(models, hypothesis, stream, static_cast<std::uint32_t>(t));
        engine.step(s);
        const Vec& stat = engine.statistics();
        for (int k = 0; k < n_units; ++k) {
            if (stopped[k]) continue;
            const SprtDecision d = sprt_decide(stat[k], th);
            if (d == SprtDecision::keep_sampling) continue;
            verdicts[k].stopping_time = t;
            verdicts[k].decision = d == SprtDecision::decide_h1 ? 1 : 0;
            verdicts[k].terminal_statistic = stat[k];
            verdicts[k].censored = false;
            stopped[k] = 1;
            --remaining;
        }
    }
    if (remaining > 0) {
        const Vec& stat = engine.statistics();
        for (int k = 0; k < n_units; ++k) {
            if (stopped[k]) continue;
            verdicts[k].stopping_time = max_steps;
            verdicts[k].decision = -1;
            verdicts[k].terminal_statistic = stat[k];
            verdicts[k].censored = true;
        }
    }
    return verdicts;
}

}  // namespace

SensorVerdict run_centralized_trial(const ModelSet& models, const Thresholds& th, int hypothesis,
                                    const TrialStream& stream, std::uint64_t max_steps) {
    CentralizedEngine engine;
    return drive_trial(engine, 1, models, th, hypothesis, stream, max_steps)[0];
}

std::vector<SensorVerdict> run_local_trial(const Topology& t, const ModelSet& models,
                                           const Thresholds& th, int hypothesis,
                                           const TrialStream& stream, std::uint64_t max_steps) {
    LocalEngine engine(t);
    return drive_trial(engine, t.n_sensors, models, th, hypothesis, stream, max_steps);
}

std::vector<SensorVerdict> run_sd_trial(const Topology& t, const DelayMatrix& nu,
                                        const ModelSet& models, const Thresholds& th,
                                        int hypothesis, const TrialStream& stream,
                                        std::uint64_t max_steps) {
    SdClosedFormEngine engine(t, nu);
    return drive_trial(engine, t.n_sensors, models, th, hypothesis, stream, max_steps);
}

std::vector<SensorVerdict> run_sd_trial_explicit(const Topology& t, const ModelSet& models,
                                                 const Thresholds& th, int hypothesis,
                                                 const TrialStream& stream,
                                                 std::uint64_t max_steps) {
    SdExplicitEngine engine(t);
    return drive_trial(engine, t.n_sensors, models, th, hypothesis, stream, max_steps);
}

std::vector<SensorVerdict> run_ca_trial(const WeightMatrix& w, const ModelSet& models,
                                        const Thresholds& th, int q, int hypothesis,
                                        const TrialStream& stream, std::uint64_t max_steps) {
    if (w.size() != static_cast<int>(models.size()))
        throw std::invalid_argument("ca trial: model count must match the weight matrix");
    if (w.sigma2 >= 1.0) throw std::invalid_argument("ca trial: sigma2 >= 1, consensus does not mix");
    ConsensusEngine engine(w.w, q);
    return drive_trial(engine, w.size(), models, th, hypothesis, stream, max_steps);
}

Vec ca_statistic_direct(const Matrix& w, int q, const std::vector<LlrVector>& history) {
    const int t = static_cast<int>(history.size());
    const Matrix wq = matrix_power(w, static_cast<unsigned>(q));
    // Powers W^{q i} for i = 1..t, built incrementally.
    std::vector<Matrix> powers;
    powers.reserve(t);
    powers.push_back(wq);
    for (int i = 1; i < t; ++i) powers.push_back(mat_mul(powers.back(), wq));

    Vec eta(w.rows, 0.0);
    Vec term;
    for (int j = 1; j <= t; ++j) {
        mat_vec(powers[t - j], history[j - 1], term);
        for (int k = 0; k < w.rows; ++k) eta[k] += term[k];
    }
    return eta;
}

std::vector<Vec> consensus_statistic_history(const Matrix& w, int q,
                                             const std::vector<LlrVector>& history) {
    ConsensusEngine engine(w, q);
    std::vector<Vec> out;
    out.reserve(history.size());
    for (const auto& s : history) {
        engine.step(s);
        out.push_back(engine.statistics());
    }
    return out;
}

}  // namespace seqnet
