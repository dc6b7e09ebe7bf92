#include <seqnet/config.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace seqnet {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ConfigError(field + ": " + what);
}

const json& require(const json& j, const std::string& field, const char* context) {
    const auto it = j.find(field);
    if (it == j.end()) fail(std::string(context) + field, "missing");
    return *it;
}

double require_number(const json& j, const std::string& field, const char* context) {
    const json& v = require(j, field, context);
    if (!v.is_number()) fail(std::string(context) + field, "expected a number");
    return v.get<double>();
}

Topology parse_topology(const json& j) {
    if (!j.is_object()) fail("topology", "expected an object");
    const std::string kind = require(j, "kind", "topology.").get<std::string>();
    try {
        if (kind == "ring") {
            const int n = static_cast<int>(require_number(j, "n", "topology."));
            const int m = static_cast<int>(require_number(j, "m", "topology."));
            return ring_topology(n, m);
        }
        if (kind == "edges") {
            const int n = static_cast<int>(require_number(j, "n", "topology."));
            const json& ed = require(j, "edges", "topology.");
            if (!ed.is_array()) fail("topology.edges", "expected an array of [a,b] pairs");
            std::vector<std::pair<int, int>> edges;
            for (const auto& e : ed) {
                if (!e.is_array() || e.size() != 2) fail("topology.edges", "each edge must be [a,b]");
                edges.push_back({e[0].get<int>(), e[1].get<int>()});
            }
            return from_edge_list(n, edges);
        }
    } catch (const std::invalid_argument& ex) {
        fail("topology", ex.what());
    }
    fail("topology.kind", "must be \"ring\" or \"edges\"");
}

ModelSet parse_models(const json& j, int n_sensors) {
    if (!j.is_object()) fail("model", "expected an object");
    const std::string family_name = require(j, "family", "model.").get<std::string>();
    LlrFamily family;
    if (family_name == "gaussian")
        family = LlrFamily::gaussian_mean_shift;
    else if (family_name == "laplace")
        family = LlrFamily::laplace_mean_shift;
    else
        fail("model.family", "must be \"gaussian\" or \"laplace\"");

    const json& mu = require(j, "mu", "model.");
    ModelSet models;
    try {
        if (mu.is_number()) {
            models = homogeneous_models(HypothesisModel(family, mu.get<double>()), n_sensors);
        } else if (mu.is_array()) {
            if (static_cast<int>(mu.size()) != n_sensors)
                fail("model.mu", "array length must equal the sensor count");
            for (const auto& v : mu) models.emplace_back(family, v.get<double>());
        } else {
            fail("model.mu", "expected a number or an array");
        }
    } catch (const std::invalid_argument& ex) {
        fail("model.mu", ex.what());
    }
    return models;
}

DetectorSpec parse_detector(const json& j) {
    if (!j.is_object()) fail("detector", "expected an object");
    DetectorSpec spec;
    try {
        spec.kind = detector_from_code(require(j, "detector", "detector.").get<std::string>());
    } catch (const std::invalid_argument& ex) {
        fail("detector.detector", ex.what());
    }
    if (j.contains("q")) {
        if (!j["q"].is_number_integer() || j["q"].get<int>() < 1)
            fail("detector.q", "must be a positive integer");
        spec.q = j["q"].get<int>();
    }
    return spec;
}

std::vector<Thresholds> parse_thresholds(const json& root, const json& detector) {
    std::vector<Thresholds> out;
    if (root.contains("thresholds")) {
        const json& list = root["thresholds"];
        if (!list.is_array() || list.empty()) fail("thresholds", "expected a non-empty array");
        for (const auto& v : list) {
            if (v.is_number()) {
                out.push_back({v.get<double>(), v.get<double>()});
            } else if (v.is_object()) {
                out.push_back({require_number(v, "a", "thresholds[]."),
                               require_number(v, "b", "thresholds[].")});
            } else {
                fail("thresholds", "entries must be numbers (a = b) or {a, b} objects");
            }
        }
    } else if (detector.is_object() && detector.contains("thresholds")) {
        const json& th = detector["thresholds"];
        out.push_back({require_number(th, "a", "detector.thresholds."),
                       require_number(th, "b", "detector.thresholds.")});
    }
    for (const auto& th : out)
        if (!(th.a > 0.0) || !(th.b > 0.0)) fail("thresholds", "all thresholds must be positive");
    return out;
}

}  // namespace

LoadedConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config root: expected a JSON object");
    LoadedConfig cfg;
    cfg.raw = j;

    cfg.experiment.topology = parse_topology(require(j, "topology", ""));
    cfg.experiment.models = parse_models(require(j, "model", ""), cfg.experiment.topology.n_sensors);
    cfg.experiment.detector = parse_detector(require(j, "detector", ""));
    cfg.experiment.thresholds = parse_thresholds(j, j["detector"]);

    if (j.contains("threshold_units")) {
        const std::string units = j["threshold_units"].get<std::string>();
        if (units == "raw")
            cfg.experiment.thresholds_raw = true;
        else if (units == "common")
            cfg.experiment.thresholds_raw = false;
        else
            fail("threshold_units", "must be \"common\" or \"raw\"");
    }
    if (j.contains("hypotheses")) {
        cfg.experiment.hypotheses.clear();
        for (const auto& h : j["hypotheses"]) {
            if (!h.is_number_integer() || (h.get<int>() != 0 && h.get<int>() != 1))
                fail("hypotheses", "entries must be 0 or 1");
            cfg.experiment.hypotheses.push_back(h.get<int>());
        }
    }
    if (j.contains("trials")) {
        if (!j["trials"].is_number_integer() || j["trials"].get<std::int64_t>() < 1)
            fail("trials", "must be a positive integer");
        cfg.experiment.trials = j["trials"].get<std::uint64_t>();
    }
    if (j.contains("master_seed")) {
        if (!j["master_seed"].is_number_integer()) fail("master_seed", "must be an integer");
        cfg.experiment.master_seed = j["master_seed"].get<std::uint64_t>();
        cfg.seed_in_config = true;
    }
    if (j.contains("max_steps")) {
        if (!j["max_steps"].is_number_integer() || j["max_steps"].get<std::int64_t>() < 1)
            fail("max_steps", "must be a positive integer");
        cfg.experiment.max_steps = j["max_steps"].get<std::uint64_t>();
    }
    if (j.contains("detector") && j["detector"].contains("max_steps")) {
        const auto& ms = j["detector"]["max_steps"];
        if (!ms.is_number_integer() || ms.get<std::int64_t>() < 1)
            fail("detector.max_steps", "must be a positive integer");
        cfg.experiment.max_steps = ms.get<std::uint64_t>();
    }

    if (j.contains("targets")) {
        ErrorTargets t;
        t.alpha = require_number(j["targets"], "alpha", "targets.");
        t.beta = require_number(j["targets"], "beta", "targets.");
        try {
            t.validate();
        } catch (const std::invalid_argument& ex) {
            fail("targets", ex.what());
        }
        cfg.targets = t;
    }
    if (j.contains("t0")) {
        if (!j["t0"].is_number_integer() || j["t0"].get<int>() < 1)
            fail("t0", "must be a positive integer");
        cfg.t0 = j["t0"].get<int>();
    }
    if (j.contains("sensor")) {
        const int s = j["sensor"].get<int>();
        if (s < 0 || s >= cfg.experiment.topology.n_sensors) fail("sensor", "out of range");
        cfg.sensor = s;
    }
    if (j.contains("mc_samples")) {
        if (!j["mc_samples"].is_number_integer() || j["mc_samples"].get<std::int64_t>() < 2)
            fail("mc_samples", "must be an integer >= 2");
        cfg.mc_samples = j["mc_samples"].get<std::uint64_t>();
    }

    if (!cfg.experiment.thresholds.empty()) {
        try {
            cfg.experiment.validate();
        } catch (const std::invalid_argument& ex) {
            throw ConfigError(ex.what());
        }
    }
    return cfg;
}

LoadedConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& ex) {
        throw ConfigError(std::string("config parse error: ") + ex.what());
    }
    return parse_config(j);
}

std::string canonical_json(const json& j) {
    // nlohmann::json object keys are already sorted; dump() re-serializes
    // numbers in a normalized spelling.
    return j.dump();
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string config_digest(const json& j) {
    std::ostringstream out;
    out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(canonical_json(j));
    return out.str();
}

}  // namespace seqnet
