#include "fvp/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fvp/errors.hpp"

namespace fvp {

const char* scheme_choice_name(SchemeChoice s) {
    switch (s) {
        case SchemeChoice::imex: return "imex";
        case SchemeChoice::explicit_rk2: return "explicit";
        case SchemeChoice::both: return "both";
    }
    return "both";
}

namespace {

using nlohmann::json;

double number_field(const json& j, const char* key) {
    const auto& v = j.at(key);
    if (!v.is_number())
        throw ConfigError(std::string("config: field '") + key + "' must be a number");
    return v.get<double>();
}

void validate(const RunConfig& c) {
    if (!(c.cfl > 0.0 && c.cfl <= 1.0))
        throw ConfigError("config: field 'cfl' must lie in (0, 1]");
    if (c.resolutions.empty())
        throw ConfigError("config: field 'resolutions' must be nonempty");
    for (std::size_t i = 0; i < c.resolutions.size(); ++i) {
        if (c.resolutions[i] < 3)
            throw ConfigError("config: field 'resolutions' entries must be >= 3");
        if (i > 0 && c.resolutions[i] <= c.resolutions[i - 1])
            throw ConfigError("config: field 'resolutions' must be strictly increasing");
    }
    if (c.n_cells < 3)
        throw ConfigError("config: field 'n_cells' must be >= 3");
    if (c.explicit_ceiling < 0)
        throw ConfigError("config: field 'explicit_ceiling' must be nonnegative");
    if (!(c.market.sigma > 0.0))
        throw ConfigError("config: field 'sigma' must be positive");
    if (!(c.market.T > 0.0))
        throw ConfigError("config: field 'T' must be positive");
    if (!(c.market.K > 0.0))
        throw ConfigError("config: field 'K' must be positive");
    if (c.market.R_B < 0.0 || c.market.R_B > 1.0)
        throw ConfigError("config: field 'R_B' must lie in [0, 1]");
    if (c.market.R_C < 0.0 || c.market.R_C > 1.0)
        throw ConfigError("config: field 'R_C' must lie in [0, 1]");
    if (c.market.lambda_B < 0.0)
        throw ConfigError("config: field 'lambda_B' must be nonnegative");
    if (c.market.lambda_C < 0.0)
        throw ConfigError("config: field 'lambda_C' must be nonnegative");
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: malformed JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ConfigError("config: document must be a JSON object");

    static const std::set<std::string> known = {
        "model",   "sigma",    "r",        "q",           "T",
        "K",       "B",        "R_B",      "R_C",         "lambda_B",
        "lambda_C", "scheme",  "resolutions", "cfl",      "n_cells",
        "explicit_ceiling",    "output"};
    for (const auto& [key, value] : doc.items()) {
        if (!known.count(key))
            throw ConfigError("config: unknown key '" + key + "'");
    }

    RunConfig c;
    c.model_id = doc.value("model", std::string("barrier_call"));
    if (c.model_id == "barrier_call") {
        c.market = default_barrier_market();
    } else if (c.model_id == "xva_call") {
        c.market = default_xva_market();
    } else {
        throw ConfigError("config: field 'model' must be barrier_call or xva_call, got '" +
                          c.model_id + "'");
    }

    if (doc.contains("sigma")) c.market.sigma = number_field(doc, "sigma");
    if (doc.contains("r")) c.market.r = number_field(doc, "r");
    if (doc.contains("q")) c.market.q = number_field(doc, "q");
    if (doc.contains("T")) c.market.T = number_field(doc, "T");
    if (doc.contains("K")) c.market.K = number_field(doc, "K");
    if (doc.contains("B")) {
        if (c.model_id != "barrier_call")
            throw ConfigError("config: key 'B' only applies to barrier_call");
        c.market.barrier = number_field(doc, "B");
    }
    if (doc.contains("R_B")) c.market.R_B = number_field(doc, "R_B");
    if (doc.contains("R_C")) c.market.R_C = number_field(doc, "R_C");
    if (doc.contains("lambda_B")) c.market.lambda_B = number_field(doc, "lambda_B");
    if (doc.contains("lambda_C")) c.market.lambda_C = number_field(doc, "lambda_C");
    // the funding spread is tied to the buyer leg, never configured directly
    c.market.s_F = (1.0 - c.market.R_B) * c.market.lambda_B;

    if (doc.contains("scheme")) {
        const std::string s = doc.at("scheme").get<std::string>();
        if (s == "imex") c.scheme = SchemeChoice::imex;
        else if (s == "explicit") c.scheme = SchemeChoice::explicit_rk2;
        else if (s == "both") c.scheme = SchemeChoice::both;
        else throw ConfigError("config: field 'scheme' must be imex, explicit or both");
    }
    if (doc.contains("resolutions")) {
        const auto& arr = doc.at("resolutions");
        if (!arr.is_array())
            throw ConfigError("config: field 'resolutions' must be an array");
        c.resolutions.clear();
        for (const auto& v : arr) {
            if (!v.is_number_integer())
                throw ConfigError("config: field 'resolutions' must contain integers");
            c.resolutions.push_back(v.get<int>());
        }
    }
    if (doc.contains("cfl")) c.cfl = number_field(doc, "cfl");
    if (doc.contains("n_cells")) c.n_cells = doc.at("n_cells").get<int>();
    if (doc.contains("explicit_ceiling"))
        c.explicit_ceiling = doc.at("explicit_ceiling").get<int>();
    if (doc.contains("output")) c.output = doc.at("output").get<std::string>();

    validate(c);
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("config: cannot open '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
    json doc;
    doc["model"] = c.model_id;
    doc["sigma"] = c.market.sigma;
    doc["r"] = c.market.r;
    doc["q"] = c.market.q;
    doc["T"] = c.market.T;
    doc["K"] = c.market.K;
    if (c.model_id == "barrier_call" && c.market.barrier)
        doc["B"] = *c.market.barrier;
    doc["R_B"] = c.market.R_B;
    doc["R_C"] = c.market.R_C;
    doc["lambda_B"] = c.market.lambda_B;
    doc["lambda_C"] = c.market.lambda_C;
    doc["scheme"] = scheme_choice_name(c.scheme);
    doc["resolutions"] = c.resolutions;
    doc["cfl"] = c.cfl;
    doc["n_cells"] = c.n_cells;
    doc["explicit_ceiling"] = c.explicit_ceiling;
    if (!c.output.empty()) doc["output"] = c.output;
    return doc.dump(2);
}

}  // namespace fvp
