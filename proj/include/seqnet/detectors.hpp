#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include <seqnet/matrix.hpp>
#include <seqnet/models.hpp>
#include <seqnet/topology.hpp>
#include <seqnet/weights.hpp>

namespace seqnet {

// Continuation region is (-a, b); hitting either boundary decides.
struct Thresholds {
    double a = 0.0;
    double b = 0.0;

    void validate() const;
};

enum class SprtDecision { keep_sampling, decide_h1, decide_h0 };

// decide_h1 iff statistic >= b, decide_h0 iff statistic <= -a (boundaries
// inclusive). Throws on NaN.
SprtDecision sprt_decide(double statistic, const Thresholds& th);

struct SensorVerdict {
    std::uint64_t stopping_time = 0;  // slot of the decision; max_steps when censored
    int decision = -1;                // 1 or 0; -1 when censored
    double terminal_statistic = 0.0;
    bool censored = false;

    // Excess of the statistic beyond the boundary that was hit; 0 when censored.
    double overshoot(const Thresholds& th) const {
        if (censored) return 0.0;
        return decision == 1 ? terminal_statistic - th.b : -th.a - terminal_statistic;
    }
};

// ---------------------------------------------------------------------------
// Per-slot statistic engines. Within a slot the order is: sample, then
// message-passing, then the stopping check. Engines are fed one LlrVector per
// slot and expose the post-exchange statistics.
// ---------------------------------------------------------------------------

// Network-sum statistic S_t = sum_k S_t^{(k)} (single decision unit).
class CentralizedEngine {
  public:
    CentralizedEngine() : stat_(1, 0.0) {}
    void step(const LlrVector& s) {
        double inc = 0.0;
        for (double v : s) inc += v;
        stat_[0] += inc;
    }
    const Vec& statistics() const { return stat_; }

  private:
    Vec stat_;
};

// Neighbourhood-sum statistic: sensor k accumulates its own LLRs plus the
// current LLRs of its direct neighbours.
class LocalEngine {
  public:
    explicit LocalEngine(const Topology& t);
    void step(const LlrVector& s);
    const Vec& statistics() const { return stat_; }

  private:
    std::vector<std::vector<int>> closure_;  // {k} + neighbours, ascending
    Vec stat_;
};

// Delayed-cumulative-sum form of the dissemination statistic:
// zeta_t^{(k)} = sum_l S^{(l)}_{(t - nu_{l,k} + 1)+}. Memory is one ring of
// recent prefix sums per sensor, depth max(nu).
class SdClosedFormEngine {
  public:
    SdClosedFormEngine(const Topology& t, const DelayMatrix& nu);
    void step(const LlrVector& s);
    const Vec& statistics() const { return stat_; }
    std::uint64_t time() const { return t_; }

  private:
    int n_;
    int depth_;
    const DelayMatrix& nu_;
    std::vector<double> prefix_;   // S^{(l)}_t
    std::vector<double> history_;  // ring of prefix values, n_ x depth_
    Vec stat_;
    std::uint64_t t_ = 0;
};

// Literal message-set protocol: every slot each sensor broadcasts its fresh
// sample plus the external samples first seen in the previous slot, then
// merges the neighbours' messages into its information set. Kept as the
// oracle for the closed form; samples are indexed (source, time).
class SdExplicitEngine {
  public:
    using Sample = std::pair<int, int>;  // (source sensor, 1-based slot)

    explicit SdExplicitEngine(const Topology& t);
    void step(const LlrVector& s);
    const Vec& statistics() const { return stat_; }
    std::uint64_t time() const { return t_; }

    const std::set<Sample>& information_set(int k) const { return info_[k]; }
    const std::vector<Sample>& last_messages(int k) const { return messages_[k]; }

  private:
    const Topology& topo_;
    int n_;
    std::vector<std::vector<double>> values_;      // values_[l][j-1] = s_j^{(l)}
    std::vector<std::set<Sample>> info_;           // M_t^{(k)}
    std::vector<std::vector<Sample>> fresh_;       // M_t - M_{t-1}, per sensor
    std::vector<std::vector<Sample>> messages_;    // V_t^{(k)} of the current slot
    std::vector<std::vector<double>> source_sum_;  // running sum per (k, source)
    Vec stat_;
    std::uint64_t t_ = 0;
};

// eta <- W^q (eta + s), applied as q successive multiplications by W.
class ConsensusEngine {
  public:
    ConsensusEngine(const Matrix& w, int q);
    void step(const LlrVector& s);
    const Vec& statistics() const { return eta_; }

  private:
    const Matrix& w_;
    int q_;
    Vec eta_;
    Vec scratch_;
};

// ---------------------------------------------------------------------------
// Trial runners. All sensors keep sampling and relaying after they stop;
// the trial ends when every decision unit has stopped or censored at
// max_steps. Thresholds are in the detector's own statistic scale.
// ---------------------------------------------------------------------------

SensorVerdict run_centralized_trial(const ModelSet& models, const Thresholds& th, int hypothesis,
                                    const TrialStream& stream, std::uint64_t max_steps);

std::vector<SensorVerdict> run_local_trial(const Topology& t, const ModelSet& models,
                                           const Thresholds& th, int hypothesis,
                                           const TrialStream& stream, std::uint64_t max_steps);

std::vector<SensorVerdict> run_sd_trial(const Topology& t, const DelayMatrix& nu,
                                        const ModelSet& models, const Thresholds& th,
                                        int hypothesis, const TrialStream& stream,
                                        std::uint64_t max_steps);

std::vector<SensorVerdict> run_sd_trial_explicit(const Topology& t, const ModelSet& models,
                                                 const Thresholds& th, int hypothesis,
                                                 const TrialStream& stream,
                                                 std::uint64_t max_steps);

std::vector<SensorVerdict> run_ca_trial(const WeightMatrix& w, const ModelSet& models,
                                        const Thresholds& th, int q, int hypothesis,
                                        const TrialStream& stream, std::uint64_t max_steps);

// Direct-sum form of the consensus statistic after t = history.size() slots:
// eta_t = sum_j W^{q(t-j+1)} s_j. Oracle for the recursive engine.
Vec ca_statistic_direct(const Matrix& w, int q, const std::vector<LlrVector>& history);

// Full recursion trace, one statistic vector per slot.
std::vector<Vec> consensus_statistic_history(const Matrix& w, int q,
                                             const std::vector<LlrVector>& history);

}  // namespace seqnet
