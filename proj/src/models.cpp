#include <seqnet/models.hpp>

#include <cmath>
#include <stdexcept>

namespace seqnet {

namespace {

// log Phi(x) via erfc; accurate for the argument ranges used here (x > -30).
double log_normal_cdf(double x) { return std::log(0.5 * std::erfc(-x / std::sqrt(2.0))); }

double log_sum_exp(double a, double b) {
    const double m = a > b ? a : b;
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

}  // namespace

HypothesisModel::HypothesisModel(LlrFamily f, double mean_shift) : family(f), mu(mean_shift) {
    if (!(mu >= 0.0) || !std::isfinite(mu))
        throw std::invalid_argument("hypothesis model: mu must be finite and >= 0");
}

double HypothesisModel::llr_at(double x) const {
    switch (family) {
        case LlrFamily::gaussian_mean_shift:
            return x * mu - 0.5 * mu * mu;
        case LlrFamily::laplace_mean_shift:
            if (x < 0.0) return -mu;
            if (x > mu) return mu;
            return 2.0 * x - mu;
    }
    return 0.0;
}

double HypothesisModel::draw_llr(int hypothesis, const Uniforms& u) const {
    const double shift = hypothesis == 1 ? mu : 0.0;
    const double x = (family == LlrFamily::gaussian_mean_shift ? standard_normal(u)
                                                               : standard_laplace(u)) +
                     shift;
    return llr_at(x);
}

double HypothesisModel::kld(int) const {
    switch (family) {
        case LlrFamily::gaussian_mean_shift:
            return 0.5 * mu * mu;
        case LlrFamily::laplace_mean_shift:
            return mu - 1.0 + std::exp(-mu);
    }
    return 0.0;
}

double HypothesisModel::condition2_log_margin(int n_sensors) const {
    if (n_sensors < 1) throw std::invalid_argument("condition2_log_margin: need K >= 1");
    const double c = std::pow(static_cast<double>(n_sensors), 1.5);
    switch (family) {
        case LlrFamily::laplace_mean_shift:
            // |s| <= mu, so E[e^{c|s|}] <= e^{c mu}.
            return c * mu;
        case LlrFamily::gaussian_mean_shift: {
            // s ~ N(+-mu^2/2, mu^2) under either hypothesis; split E[e^{c|s|}]
            // at s = 0 and keep both halves in the log domain.
            if (mu == 0.0) return 0.0;
            const double a1 = (c + 1.0) * c * mu * mu / 2.0 + log_normal_cdf((c + 0.5) * mu);
            const double a2 = (c - 1.0) * c * mu * mu / 2.0 + log_normal_cdf((c - 0.5) * mu);
            return log_sum_exp(a1, a2);
        }
    }
    return 0.0;
}

LlrVector draw_llr_vector(const ModelSet& models, int hypothesis, const TrialStream& stream,
                          std::uint32_t slot) {
    LlrVector s(models.size());
    for (std::size_t k = 0; k < models.size(); ++k)
        s[k] = models[k].draw_llr(hypothesis, stream.uniforms(slot, static_cast<std::uint16_t>(k)));
    return s;
}

ModelSet homogeneous_models(const HypothesisModel& model, int n_sensors) {
    return ModelSet(static_cast<std::size_t>(n_sensors), model);
}

double kld_sum(const ModelSet& models, int hypothesis) {
    double s = 0.0;
    for (const auto& m : models) s += m.kld(hypothesis);
    return s;
}

bool homogeneous(const ModelSet& models) {
    for (const auto& m : models)
        if (m.family != models.front().family || m.mu != models.front().mu) return false;
    return true;
}

}  // namespace seqnet
