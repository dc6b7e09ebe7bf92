#include <seqnet/analytics.hpp>

#include <cmath>
#include <stdexcept>

namespace seqnet {

namespace {

// Reserved stream cells for the constants estimator; experiment cells are
// (threshold index << 1) | hypothesis and stay far below these.
constexpr std::uint32_t kCellRefinedH1 = 0xFFFF0001u;
constexpr std::uint32_t kCellRefinedH0 = 0xFFFF0000u;

double checked_kld_sum(const ModelSet& models, int hypothesis) {
    const double d = kld_sum(models, hypothesis);
    if (!(d > 0.0)) throw std::invalid_argument("analytics: zero Kullback-Leibler divergence");
    return d;
}

}  // namespace

void ErrorTargets::validate() const {
    if (!(alpha > 0.0) || !(alpha < 1.0) || !(beta > 0.0) || !(beta < 1.0))
        throw std::invalid_argument("error targets: alpha and beta must lie strictly in (0, 1)");
}

std::pair<double, double> centralized_asymptotic_et(const ModelSet& models,
                                                    const ErrorTargets& targets) {
    targets.validate();
    return {-std::log(targets.alpha) / checked_kld_sum(models, 1),
            -std::log(targets.beta) / checked_kld_sum(models, 0)};
}

std::pair<double, double> local_asymptotic_et(const Topology& t, const ModelSet& models,
                                              const ErrorTargets& targets, int sensor) {
    targets.validate();
    double d1 = models[sensor].kld(1);
    double d0 = models[sensor].kld(0);
    for (int l : t.neighbor_lists[sensor]) {
        d1 += models[l].kld(1);
        d0 += models[l].kld(0);
    }
    if (!(d1 > 0.0) || !(d0 > 0.0))
        throw std::invalid_argument("analytics: zero Kullback-Leibler divergence");
    return {-std::log(targets.alpha) / d1, -std::log(targets.beta) / d0};
}

double sd_delay_constant(const DelayMatrix& nu, const ModelSet& models, int sensor,
                         int hypothesis) {
    double num = 0.0, den = 0.0;
    for (int l = 0; l < nu.n; ++l) {
        const double d = models[l].kld(hypothesis);
        num += (nu.at(l, sensor) - 1) * d;
        den += d;
    }
    if (!(den > 0.0)) throw std::invalid_argument("analytics: zero Kullback-Leibler divergence");
    return num / den;
}

Thresholds simple_thresholds(const ErrorTargets& targets) {
    targets.validate();
    return {-std::log(targets.beta), -std::log(targets.alpha)};
}

int default_t0(double sigma2, int q) {
    if (sigma2 <= 0.0) return 1;
    if (sigma2 >= 1.0) throw std::invalid_argument("default_t0: sigma2 must be < 1");
    const int t = static_cast<int>(std::ceil(std::log(1e-3) / (q * std::log(sigma2)))) ;
    return t < 1 ? 1 : t;
}

RefinedConstants refined_constants(const WeightMatrix& w, int q, int t0, const ModelSet& models,
                                   int sensor, std::uint64_t mc_samples, std::uint64_t seed) {
    if (t0 < 1) throw std::invalid_argument("refined_constants: t0 must be >= 1");
    if (q < 1) throw std::invalid_argument("refined_constants: q must be >= 1");
    if (mc_samples < 2) throw std::invalid_argument("refined_constants: need at least 2 samples");
    const int n = w.size();
    if (sensor < 0 || sensor >= n) throw std::invalid_argument("refined_constants: bad sensor id");
    if (static_cast<int>(models.size()) != n)
        throw std::invalid_argument("refined_constants: model count must match the weight matrix");

    // Row `sensor` of Delta_{q j} = W^{q j} - J for j = 1..t0.
    const Matrix wq = matrix_power(w.w, static_cast<unsigned>(q));
    std::vector<Vec> delta_rows(t0, Vec(n, 0.0));
    Matrix power = wq;
    for (int j = 1; j <= t0; ++j) {
        for (int l = 0; l < n; ++l) delta_rows[j - 1][l] = power.at(sensor, l) - 1.0 / n;
        if (j < t0) power = mat_mul(power, wq);
    }

    RefinedConstants out;
    out.t0 = t0;
    out.mc_samples = mc_samples;

    for (int hyp : {1, 0}) {
        const std::uint32_t cell = hyp == 1 ? kCellRefinedH1 : kCellRefinedH0;
        double sum = 0.0, sum_sq = 0.0;
        for (std::uint64_t m = 0; m < mc_samples; ++m) {
            const TrialStream stream{seed, cell, static_cast<std::uint32_t>(m)};
            double exponent = 0.0;
            for (int j = 1; j <= t0; ++j) {
                const LlrVector s = draw_llr_vector(models, hyp, stream, static_cast<std::uint32_t>(j));
                const Vec& row = delta_rows[j - 1];
                double dot = 0.0;
                for (int l = 0; l < n; ++l) dot += row[l] * s[l];
                exponent += dot;
            }
            const double value = std::exp(n * exponent);
            if (!std::isfinite(value))
                throw std::runtime_error("refined_constants: non-finite Monte Carlo term");
            sum += value;
            sum_sq += value * value;
        }
        const double mean = sum / mc_samples;
        const double var = (sum_sq - mc_samples * mean * mean) / (mc_samples - 1);
        const double se = std::sqrt(var > 0.0 ? var / mc_samples : 0.0);
        if (hyp == 1) {
            out.c_alpha = mean;
            out.c_alpha_se = se;
        } else {
            out.c_beta = mean;
            out.c_beta_se = se;
        }
    }
    return out;
}

Thresholds ca_thresholds(const ErrorTargets& targets, const RefinedConstants& constants, int k) {
    targets.validate();
    if (k < 1) throw std::invalid_argument("ca_thresholds: need K >= 1");
    if (!(constants.c_alpha > 0.0) || !(constants.c_beta > 0.0) ||
        !std::isfinite(constants.c_alpha) || !std::isfinite(constants.c_beta))
        throw std::invalid_argument("ca_thresholds: constants must be positive and finite");
    if (targets.alpha >= constants.c_alpha)
        throw std::invalid_argument("ca_thresholds: alpha >= C_alpha gives a non-positive threshold");
    if (targets.beta >= constants.c_beta)
        throw std::invalid_argument("ca_thresholds: beta >= C_beta gives a non-positive threshold");
    return {-std::log(targets.beta / constants.c_beta) / k,
            -std::log(targets.alpha / constants.c_alpha) / k};
}

std::pair<double, double> sd_error_bound(const Thresholds& th) {
    th.validate();
    return {std::exp(-th.b), std::exp(-th.a)};
}

std::pair<double, double> ca_error_exponent(int k, const Thresholds& th) {
    th.validate();
    return {-static_cast<double>(k) * th.b, -static_cast<double>(k) * th.a};
}

double sahu_alpha_bound(int k, double sigma2, double b, double kld1) {
    const double scale = k * sigma2 * sigma2 + 1.0;
    const double num = 2.0 * std::exp(-sigma2 * k * b / (8.0 * scale));
    const double den = 1.0 - std::exp(-k * kld1 / (4.0 * scale));
    if (den < 1e-300) throw std::domain_error("sahu_alpha_bound: vanishing denominator");
    return num / den;
}

double sahu_et_factor(int k, double sigma2) { return 10.0 * (k * sigma2 * sigma2 + 1.0) / 7.0; }

Lemma1Prediction lemma1_et_prediction(int k, const ModelSet& models, const Thresholds& th,
                                      double sigma2, int q) {
    th.validate();
    const double s2q = std::pow(sigma2, q);
    if (s2q >= 1.0) throw std::invalid_argument("lemma1_et_prediction: sigma2^q must be < 1");
    Lemma1Prediction p;
    p.et1_center = k * th.b / checked_kld_sum(models, 1);
    p.et0_center = k * th.a / checked_kld_sum(models, 0);
    p.gap_scale = s2q / (1.0 - s2q);
    return p;
}

}  // namespace seqnet
