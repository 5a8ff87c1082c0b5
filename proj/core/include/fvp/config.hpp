#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fvp/market_data.hpp"
#include "fvp/timestepping.hpp"

namespace fvp {

enum class SchemeChoice { imex, explicit_rk2, both };

const char* scheme_choice_name(SchemeChoice s);

/// Validated run configuration with per-model defaults applied.
struct RunConfig {
    std::string model_id = "barrier_call";
    MarketData market = default_barrier_market();
    SchemeChoice scheme = SchemeChoice::both;
    std::vector<int> resolutions = {50, 100, 200, 400, 800, 1600};
    double cfl = 0.5;
    int n_cells = 800;          ///< resolution for single-run commands
    int explicit_ceiling = 3200;
    std::string output;         ///< default output path; empty = stdout

    bool operator==(const RunConfig&) const = default;
};

/// Parses and validates a JSON document. Unknown keys are rejected; every
/// violation names the offending field. Defaults depend on "model".
RunConfig parse_config(const std::string& json_text);

/// parse_config over a file.
RunConfig load_config(const std::filesystem::path& path);

/// Inverse of parse_config: parse(serialize(c)) == c.
std::string serialize_config(const RunConfig& config);

}  // namespace fvp
