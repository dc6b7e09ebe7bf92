#pragma once

#include <string>

#include <json.hpp>

#include <seqnet/montecarlo.hpp>

namespace seqnet {

inline constexpr const char* kToolVersion = "0.1.0";

// Fixed result schema, one line per (detector, sensor, hyp, a, b, q):
// detector,sensor,hyp,a,b,q,trials,alpha_hat,beta_hat,alpha_lo,alpha_hi,
// et0,et0_se,et1,et1_se,overshoot1,censored
// a and b are the raw thresholds the detector ran at; columns that do not
// apply to the row's hypothesis stay empty.
std::string to_csv(const SummaryTable& table);

// Same rows with analytic-reference columns appended:
// ref_alpha_bound, ref_sahu_alpha, ref_et1_center.
std::string to_csv_with_references(const SummaryTable& table, const ModelSet& models,
                                   const Topology& topology);

// JSON mirror of the table (adds the common-unit thresholds and flags).
nlohmann::json to_json(const SummaryTable& table);

struct RunManifest {
    std::string config_digest;
    std::uint64_t master_seed = 0;
    std::string tool_version = kToolVersion;
    std::string started;
    std::string finished;
    std::vector<std::string> outputs;

    nlohmann::json to_json() const;
};

std::string iso8601_now();

// Shortest round-trip decimal form; empty argument handling is the caller's.
std::string format_double(double v);

}  // namespace seqnet
