#pragma once

#include <vector>

#include <seqnet/rng.hpp>

namespace seqnet {

enum class LlrFamily { gaussian_mean_shift, laplace_mean_shift };

// One LLR per sensor for one time slot.
using LlrVector = std::vector<double>;

// Binary mean-shift hypothesis pair at one sensor: null mean 0, alternative
// mean mu, unit scale. Immutable; draws take the caller's stream address.
struct HypothesisModel {
    LlrFamily family = LlrFamily::gaussian_mean_shift;
    double mu = 0.0;

    HypothesisModel() = default;
    HypothesisModel(LlrFamily f, double mean_shift);

    // One sample of log f1(X)/f0(X) with X drawn under the given hypothesis.
    // Gaussian: s = X*mu - mu^2/2. Laplace: s = |x| - |x - mu| evaluated
    // piecewise (-mu below 0, 2x - mu inside [0, mu], +mu above).
    double draw_llr(int hypothesis, const Uniforms& u) const;

    // LLR evaluated at a given observation (no sampling).
    double llr_at(double x) const;

    // Kullback-Leibler divergence under either hypothesis. Symmetric for both
    // families: mu^2/2 (Gaussian), |mu| - 1 + e^{-|mu|} (Laplace).
    double kld(int hypothesis) const;

    // log E_i[ exp(K sqrt(K) |s|) ], the tail-regularity margin, evaluated in
    // the log domain. Finite for both families.
    double condition2_log_margin(int n_sensors) const;
};

using ModelSet = std::vector<HypothesisModel>;

// Independent draws across sensors for one slot.
LlrVector draw_llr_vector(const ModelSet& models, int hypothesis, const TrialStream& stream,
                          std::uint32_t slot);

// n_sensors copies of one model.
ModelSet homogeneous_models(const HypothesisModel& model, int n_sensors);

double kld_sum(const ModelSet& models, int hypothesis);

bool homogeneous(const ModelSet& models);

}  // namespace seqnet
