#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fvp/analytics.hpp"
#include "fvp/mesh.hpp"
#include "fvp/models.hpp"
#include "fvp/timestepping.hpp"

namespace fvp {

/// A pricing model paired with the closed-form curve it converges to.
struct Problem {
    ConservativeModel model;
    std::function<double(double s)> exact_at_horizon;   ///< price at t = T
    std::function<GreekSet(double s)> exact_greeks;     ///< sensitivities at t = T
};

/// model_id is "barrier_call" or "xva_call".
Problem make_problem(const std::string& model_id, const MarketData& market);

struct ConvergenceRow {
    Scheme scheme = Scheme::imex;
    int n_cells = 0;
    double l1 = 0.0;
    std::optional<double> observed_order;
    double dt = 0.0;
    double wall_time_s = 0.0;
    std::string status = "ok";  ///< ok | skipped | blowup
};

struct ConvergenceReport {
    std::string model_id;
    double cfl = 0.5;
    int explicit_ceiling = 0;
    MarketData market;
    double s_min = 0.0;
    double s_max = 0.0;
    std::vector<ConvergenceRow> rows;

    bool all_ok() const;
};

struct LadderOptions {
    double cfl = 0.5;
    int explicit_ceiling = 3200;  ///< explicit rows above this are skipped
};

/// Runs the model across a ladder of resolutions and measures the consecutive
/// error decay. A blowup is recorded in the row status instead of propagating.
ConvergenceReport run_convergence(const Problem& problem, Scheme scheme,
                                  std::span<const int> resolutions,
                                  const LadderOptions& opt = {});

/// Convenience overload resolving the model id with its default market data.
ConvergenceReport run_convergence(const std::string& model_id, Scheme scheme,
                                  std::span<const int> resolutions, double cfl);

/// Both schemes on identical grids, merged into one report: all imex rows
/// first, then the explicit ones (those above the ceiling marked skipped).
ConvergenceReport compare_schemes(const Problem& problem,
                                  std::span<const int> resolutions,
                                  const LadderOptions& opt = {});

/// wall_explicit / wall_imex where both rows completed.
std::optional<double> speedup_at(const ConvergenceReport& report, int n_cells);

/// log(e_prev/e_cur) / log(n_cur/n_prev); empty unless both errors are
/// positive and the resolutions increase.
std::optional<double> observed_order(double err_prev, double err_cur,
                                     int n_prev, int n_cur);

/// Central differences of the cell averages; one-sided second-order stencils
/// at the two end cells.
struct GreeksCurve {
    std::vector<double> s;
    std::vector<double> delta;
    std::vector<double> gamma;
};

GreeksCurve extract_greeks(const Grid& grid, const State& state);

/// One full integration of the problem at a single resolution.
struct SolveResult {
    Grid grid;
    State state;
    StepPlan plan;
    double wall_time_s = 0.0;
};

SolveResult solve_problem(const Problem& problem, int n_cells, Scheme scheme,
                          double cfl);

/// CSV schema: scheme,n_cells,l1_error,observed_order,dt,wall_time_s,status
/// ('.' decimal separator, LF line endings, shortest round-trip numbers).
void write_report_csv(const ConvergenceReport& report, std::ostream& os);

/// Writes the CSV to `path` plus a JSON metadata sidecar next to it
/// (extension replaced by ".meta.json").
void emit_report(const ConvergenceReport& report, const std::filesystem::path& path);

/// Parses a CSV produced by emit_report/write_report_csv (metadata sidecar is
/// not read back).
ConvergenceReport read_report(const std::filesystem::path& path);

}  // namespace fvp
