#pragma once

#include <cstdint>
#include <utility>

#include <seqnet/detectors.hpp>
#include <seqnet/models.hpp>
#include <seqnet/topology.hpp>
#include <seqnet/weights.hpp>

namespace seqnet {

struct ErrorTargets {
    double alpha = 0.0;
    double beta = 0.0;

    void validate() const;  // both strictly inside (0, 1)
};

// Simulation-estimated constants of the refined error approximations,
// alpha ~ C_alpha e^{-KB} and beta ~ C_beta e^{-KA}.
struct RefinedConstants {
    double c_alpha = 0.0;
    double c_beta = 0.0;
    double c_alpha_se = 0.0;
    double c_beta_se = 0.0;
    int t0 = 1;
    std::uint64_t mc_samples = 0;
};

struct Lemma1Prediction {
    double et1_center = 0.0;  // K b / sum D1
    double et0_center = 0.0;  // K a / sum D0
    double gap_scale = 0.0;   // sigma2^q / (1 - sigma2^q)
};

// Wald first-order expected stopping times of the centralized test:
// (-log alpha / sum D1, -log beta / sum D0). Throws on zero divergence.
std::pair<double, double> centralized_asymptotic_et(const ModelSet& models,
                                                    const ErrorTargets& targets);

// Same, with the divergence summed over {k} + neighbours only.
std::pair<double, double> local_asymptotic_et(const Topology& t, const ModelSet& models,
                                              const ErrorTargets& targets, int sensor);

// Order-2 delay term of the dissemination test at one sensor (overshoot
// excluded): sum_l (nu_{l,k} - 1) D_i^{(l)} / sum_l D_i^{(l)}.
double sd_delay_constant(const DelayMatrix& nu, const ModelSet& models, int sensor,
                         int hypothesis);

// a = -log beta, b = -log alpha; valid for statistics that are sums of true
// LLRs (centralized and dissemination tests).
Thresholds simple_thresholds(const ErrorTargets& targets);

// Smallest t with sigma2^{q t} < 1e-3 (1 when sigma2 = 0).
int default_t0(double sigma2, int q);

// Monte Carlo estimate of C_alpha = E_1 exp(K e_k' sum_{j<=t0} Delta_{qj} s_j)
// and C_beta (same expression under H0). Deterministic in the seed, with the
// same substream contract as the experiment driver.
RefinedConstants refined_constants(const WeightMatrix& w, int q, int t0, const ModelSet& models,
                                   int sensor, std::uint64_t mc_samples, std::uint64_t seed);

// a = -(1/K) log(beta / C_beta), b = -(1/K) log(alpha / C_alpha). Throws when
// a target is not below its constant (threshold would not be positive).
Thresholds ca_thresholds(const ErrorTargets& targets, const RefinedConstants& constants, int k);

// Martingale bounds e^{-b}, e^{-a} on (alpha, beta) for sum-of-LLR statistics
// at raw thresholds.
std::pair<double, double> sd_error_bound(const Thresholds& th);

// Log-error slopes (-K b, -K a) of the consensus test.
std::pair<double, double> ca_error_exponent(int k, const Thresholds& th);

// Comparison bounds from the prior consensus + innovation analysis
// (q = 1, homogeneous divergence only).
double sahu_alpha_bound(int k, double sigma2, double b, double kld1);
double sahu_et_factor(int k, double sigma2);

// Expected-stopping-time center and the sigma-dependent gap factor of the
// consensus test (the additive O(1) constant itself is not predicted).
Lemma1Prediction lemma1_et_prediction(int k, const ModelSet& models, const Thresholds& th,
                                      double sigma2, int q);

}  // namespace seqnet
