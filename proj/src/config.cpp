#include "sensorsel/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace sensorsel {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError(path + ": " + msg);
}

void reject_unknown_fields(const json& obj, const std::set<std::string>& allowed,
                           const std::string& path) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (allowed.find(key) == allowed.end()) {
            fail(path + "." + key, "unknown field");
        }
    }
}

const json& require(const json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(path, std::string("missing required field '") + key + "'");
    return *it;
}

double require_number(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
}

std::vector<double> require_number_array(const json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(require_number(v[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

std::vector<std::string> default_alphabet(std::size_t size) {
    std::vector<std::string> out;
    out.reserve(size);
    for (std::size_t i = 0; i < size; ++i) out.push_back(std::to_string(i));
    return out;
}

LoadedConfig parse_root(const json& root, const std::string& origin) {
    if (!root.is_object()) fail(origin, "top level must be an object");
    reject_unknown_fields(root, {"hypotheses", "alphabet", "sensors", "test"}, origin);

    // hypotheses
    const json& hyp = require(root, "hypotheses", origin);
    if (!hyp.is_object()) fail(origin + ".hypotheses", "expected an object");
    reject_unknown_fields(hyp, {"count", "priors"}, origin + ".hypotheses");
    const json& count_j = require(hyp, "count", origin + ".hypotheses");
    if (!count_j.is_number_unsigned() || count_j.get<std::uint64_t>() < 2) {
        fail(origin + ".hypotheses.count", "expected an integer >= 2");
    }
    const std::size_t M = count_j.get<std::size_t>();
    HypothesisSet hypotheses = HypothesisSet::uniform(M);
    if (hyp.contains("priors")) {
        const auto priors = require_number_array(hyp["priors"], origin + ".hypotheses.priors");
        if (priors.size() != M) fail(origin + ".hypotheses.priors", "length must equal count");
        try {
            hypotheses = HypothesisSet(priors);
        } catch (const ValidationError& e) {
            fail(origin + ".hypotheses.priors", e.what());
        }
    }

    // sensors
    const json& sensors_j = require(root, "sensors", origin);
    if (!sensors_j.is_array() || sensors_j.empty()) {
        fail(origin + ".sensors", "expected a non-empty array");
    }
    std::vector<std::string> alphabet;
    if (root.contains("alphabet")) {
        const json& a = root["alphabet"];
        if (!a.is_array() || a.empty()) fail(origin + ".alphabet", "expected a non-empty array");
        for (std::size_t i = 0; i < a.size(); ++i) {
            const std::string path = origin + ".alphabet[" + std::to_string(i) + "]";
            if (a[i].is_string()) {
                alphabet.push_back(a[i].get<std::string>());
            } else if (a[i].is_number_integer()) {
                alphabet.push_back(std::to_string(a[i].get<long long>()));
            } else {
                fail(path, "expected a string or integer label");
            }
        }
    }

    std::vector<SensorModel> sensors;
    for (std::size_t i = 0; i < sensors_j.size(); ++i) {
        const std::string path = origin + ".sensors[" + std::to_string(i) + "]";
        const json& s = sensors_j[i];
        if (!s.is_object()) fail(path, "expected an object");
        reject_unknown_fields(s, {"id", "processing_time", "conditionals"}, path);
        std::string id = std::to_string(i + 1);
        if (s.contains("id")) {
            if (!s["id"].is_string()) fail(path + ".id", "expected a string");
            id = s["id"].get<std::string>();
        }
        const double proc = require_number(require(s, "processing_time", path), path + ".processing_time");
        const json& cond = require(s, "conditionals", path);
        if (!cond.is_array() || cond.size() != M) {
            fail(path + ".conditionals", "expected one pmf per hypothesis (" + std::to_string(M) + ")");
        }
        std::vector<DiscretePMF> pmfs;
        for (std::size_t k = 0; k < M; ++k) {
            const std::string kpath = path + ".conditionals[" + std::to_string(k) + "]";
            const auto probs = require_number_array(cond[k], kpath);
            if (alphabet.empty()) alphabet = default_alphabet(probs.size());
            if (probs.size() != alphabet.size()) {
                fail(kpath, "pmf length " + std::to_string(probs.size()) +
                                " does not match alphabet size " + std::to_string(alphabet.size()));
            }
            try {
                pmfs.emplace_back(alphabet, probs);
            } catch (const ValidationError& e) {
                fail(kpath, e.what());
            }
        }
        try {
            sensors.emplace_back(std::move(id), proc, std::move(pmfs));
        } catch (const ValidationError& e) {
            fail(path, e.what());
        }
    }

    SensorNetwork network = [&] {
        try {
            return SensorNetwork(std::move(sensors), hypotheses);
        } catch (const ValidationError& e) {
            fail(origin + ".sensors", e.what());
        }
    }();

    // test
    const json& test = require(root, "test", origin);
    if (!test.is_object()) fail(origin + ".test", "expected an object");
    reject_unknown_fields(test, {"kind", "error_probabilities", "thresholds", "gammas"},
                          origin + ".test");
    const json& kind_j = require(test, "kind", origin + ".test");
    if (!kind_j.is_string()) fail(origin + ".test.kind", "expected \"sprt\" or \"msprt\"");
    const std::string kind_s = kind_j.get<std::string>();
    const bool has_alphas = test.contains("error_probabilities");
    const bool has_etas = test.contains("thresholds");
    std::vector<double> alphas, etas, gammas;
    if (has_alphas) {
        alphas = require_number_array(test["error_probabilities"], origin + ".test.error_probabilities");
    }
    if (has_etas) {
        etas = require_number_array(test["thresholds"], origin + ".test.thresholds");
    }
    if (test.contains("gammas")) {
        gammas = require_number_array(test["gammas"], origin + ".test.gammas");
    }
    if (has_alphas == has_etas) {
        fail(origin + ".test", "give exactly one of 'error_probabilities' or 'thresholds'");
    }

    LoadedConfig out{std::move(network), TestKind::sprt, SprtThresholds{}, ""};
    try {
        if (kind_s == "sprt") {
            if (M != 2) fail(origin + ".test.kind", "sprt requires hypotheses.count == 2");
            if (!gammas.empty()) fail(origin + ".test.gammas", "gammas apply to msprt only");
            out.kind = TestKind::sprt;
            if (has_alphas) {
                if (alphas.size() != 2) {
                    fail(origin + ".test.error_probabilities", "expected [alpha0, alpha1]");
                }
                out.plan = wald_thresholds(alphas[0], alphas[1], out.network.hypotheses);
            } else {
                if (etas.size() != 2) fail(origin + ".test.thresholds", "expected [eta0, eta1]");
                SprtThresholds t;
                t.eta0 = etas[0];
                t.eta1 = etas[1];
                t.lambda0 = std::log(out.network.hypotheses.priors[1] /
                                     out.network.hypotheses.priors[0]);
                out.plan = t;
            }
        } else if (kind_s == "msprt") {
            out.kind = TestKind::msprt;
            if (has_etas) {
                if (etas.size() != M) fail(origin + ".test.thresholds", "expected one eta per hypothesis");
                if (!gammas.empty()) {
                    fail(origin + ".test.gammas", "gammas only combine with error_probabilities");
                }
                out.plan = MsprtThresholds(etas);
            } else {
                if (alphas.size() != M) {
                    fail(origin + ".test.error_probabilities", "expected one alpha per hypothesis");
                }
                if (gammas.empty()) gammas.assign(M, 1.0);
                if (gammas.size() != M) fail(origin + ".test.gammas", "expected one gamma per hypothesis");
                out.plan = msprt_thresholds_from_errors(alphas, out.network.hypotheses, gammas);
                out.threshold_note =
                    "eta_k = alpha_k/(pi_k gamma_k); gamma_k supplied by the user (computing "
                    "gamma_k from the conditionals is out of scope)";
            }
        } else {
            fail(origin + ".test.kind", "expected \"sprt\" or \"msprt\"");
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        fail(origin + ".test", e.what());
    }
    return out;
}

} // namespace

LoadedConfig parse_config(const std::string& text, const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    return parse_root(root, origin);
}

LoadedConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path.string() + ": cannot open file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string());
}

nlohmann::json config_to_json(const SensorNetwork& network, const TestPlan& plan) {
    json root;
    root["hypotheses"]["count"] = network.hypothesis_count();
    root["hypotheses"]["priors"] = network.hypotheses.priors;
    root["alphabet"] = network.sensors.front().alphabet();
    json sensors = json::array();
    for (const SensorModel& s : network.sensors) {
        json sj;
        sj["id"] = s.id;
        sj["processing_time"] = s.processing_time;
        json cond = json::array();
        for (const DiscretePMF& pmf : s.conditionals) cond.push_back(pmf.probabilities());
        sj["conditionals"] = std::move(cond);
        sensors.push_back(std::move(sj));
    }
    root["sensors"] = std::move(sensors);
    if (std::holds_alternative<SprtThresholds>(plan)) {
        const SprtThresholds& t = std::get<SprtThresholds>(plan);
        root["test"]["kind"] = "sprt";
        root["test"]["thresholds"] = {t.eta0, t.eta1};
    } else {
        root["test"]["kind"] = "msprt";
        root["test"]["thresholds"] = std::get<MsprtThresholds>(plan).etas;
    }
    return root;
}

} // namespace sensorsel
