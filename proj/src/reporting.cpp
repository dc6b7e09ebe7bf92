#include <seqnet/reporting.hpp>

#include <seqnet/analytics.hpp>
#include <seqnet/weights.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <sstream>

namespace seqnet {

namespace {

constexpr const char* kCsvHeader =
    "detector,sensor,hyp,a,b,q,trials,alpha_hat,beta_hat,alpha_lo,alpha_hi,"
    "et0,et0_se,et1,et1_se,overshoot1,censored";

std::string cell(double v) { return std::isnan(v) ? std::string() : format_double(v); }

void append_base_row(std::ostringstream& out, const ExperimentRow& r) {
    const bool h0 = r.hyp == 0;
    out << detector_code(r.detector) << ',' << r.sensor << ',' << r.hyp << ','
        << format_double(r.a_raw) << ',' << format_double(r.b_raw) << ',';
    if (r.detector == DetectorKind::consensus) out << r.q;
    out << ',' << r.stats.trials << ',';
    out << (h0 ? cell(r.stats.error_rate) : std::string()) << ',';
    out << (h0 ? std::string() : cell(r.stats.error_rate)) << ',';
    out << (h0 ? cell(r.stats.err_lo) : std::string()) << ',';
    out << (h0 ? cell(r.stats.err_hi) : std::string()) << ',';
    out << (h0 ? cell(r.stats.et_mean) : std::string()) << ',';
    out << (h0 ? cell(r.stats.et_se) : std::string()) << ',';
    out << (h0 ? std::string() : cell(r.stats.et_mean)) << ',';
    out << (h0 ? std::string() : cell(r.stats.et_se)) << ',';
    out << (h0 ? std::string() : cell(r.stats.overshoot_mean)) << ',';
    out << r.stats.censored;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string to_csv(const SummaryTable& table) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto& r : table.rows) {
        append_base_row(out, r);
        out << '\n';
    }
    return out.str();
}

std::string to_csv_with_references(const SummaryTable& table, const ModelSet& models,
                                   const Topology& topology) {
    const int n = topology.n_sensors;
    const double d1_sum = kld_sum(models, 1);
    const bool homog = homogeneous(models);
    const DelayMatrix nu = delay_matrix(topology);

    double sigma2 = 0.0;
    bool have_sigma2 = false;
    for (const auto& r : table.rows) {
        if (r.detector == DetectorKind::consensus) {
            sigma2 = equal_weight_matrix(topology).sigma2;
            have_sigma2 = true;
            break;
        }
    }

    std::ostringstream out;
    out << kCsvHeader << ",ref_alpha_bound,ref_sahu_alpha,ref_et1_center\n";
    for (const auto& r : table.rows) {
        append_base_row(out, r);

        double alpha_bound = 0.0;
        double et1_center = 0.0;
        std::string sahu;
        switch (r.detector) {
            case DetectorKind::centralized:
            case DetectorKind::sample_dissemination: {
                alpha_bound = std::exp(-r.b_raw);
                et1_center = r.b_raw / d1_sum;
                if (r.detector == DetectorKind::sample_dissemination)
                    et1_center += sd_delay_constant(nu, models, r.sensor, 1);
                break;
            }
            case DetectorKind::local: {
                alpha_bound = std::exp(-r.b_raw);
                double d_local = models[r.sensor].kld(1);
                for (int l : topology.neighbor_lists[r.sensor]) d_local += models[l].kld(1);
                et1_center = r.b_raw / d_local;
                break;
            }
            case DetectorKind::consensus: {
                alpha_bound = std::exp(-static_cast<double>(n) * r.b_raw);
                et1_center = n * r.b_raw / d1_sum;
                if (r.q == 1 && homog && have_sigma2 && sigma2 > 0.0)
                    sahu = format_double(
                        sahu_alpha_bound(n, sigma2, r.b_raw, models.front().kld(1)));
                break;
            }
        }
        out << ',' << format_double(alpha_bound) << ',' << sahu << ','
            << format_double(et1_center) << '\n';
    }
    return out.str();
}

nlohmann::json to_json(const SummaryTable& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : table.rows) {
        nlohmann::json o;
        o["detector"] = detector_code(r.detector);
        if (r.detector == DetectorKind::consensus) o["q"] = r.q;
        o["sensor"] = r.sensor;
        o["hyp"] = r.hyp;
        o["a"] = r.a_raw;
        o["b"] = r.b_raw;
        o["a_common"] = r.a_common;
        o["b_common"] = r.b_common;
        o["trials"] = r.stats.trials;
        o["decide_h1"] = r.stats.decide_h1;
        o["decide_h0"] = r.stats.decide_h0;
        o["censored"] = r.stats.censored;
        const char* err_name = r.hyp == 0 ? "alpha_hat" : "beta_hat";
        o[err_name] = r.stats.error_rate;
        o["err_lo"] = r.stats.err_lo;
        o["err_hi"] = r.stats.err_hi;
        const char* et_name = r.hyp == 0 ? "et0" : "et1";
        if (!std::isnan(r.stats.et_mean)) {
            o[et_name] = r.stats.et_mean;
            o[std::string(et_name) + "_se"] = r.stats.et_se;
            o["overshoot"] = r.stats.overshoot_mean;
        } else {
            o["all_censored"] = true;
        }
        o["under_resolved"] = r.stats.under_resolved;
        rows.push_back(o);
    }
    return nlohmann::json{{"rows", rows}};
}

nlohmann::json RunManifest::to_json() const {
    return nlohmann::json{{"config_digest", config_digest}, {"master_seed", master_seed},
                          {"tool_version", tool_version},   {"started", started},
                          {"finished", finished},           {"outputs", outputs}};
}

std::string iso8601_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace seqnet
