#include "fvp/harness.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "fvp/errors.hpp"
#include "fvp/version.hpp"

namespace fvp {

namespace {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s, const char* field) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw IoError(std::string("report: bad ") + field + " value '" + s + "'");
    return v;
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "imex") return Scheme::imex;
    if (name == "explicit") return Scheme::explicit_rk2;
    throw IoError("report: unknown scheme '" + name + "'");
}

}  // namespace

Problem make_problem(const std::string& model_id, const MarketData& market) {
    Problem p;
    if (model_id == "barrier_call") {
        p.model = black_scholes_barrier_model(market);
        const MarketData m = p.model.market;
        p.exact_at_horizon = [m](double s) { return down_and_out_call(s, m.K, m.T, m).price; };
        p.exact_greeks = [m](double s) { return down_and_out_call(s, m.K, m.T, m); };
    } else if (model_id == "xva_call") {
        p.model = xva_model(market);
        const MarketData m = p.model.market;
        p.exact_at_horizon = [m](double s) { return xva_call(s, m.K, m.T, m).price; };
        p.exact_greeks = [m](double s) { return xva_call(s, m.K, m.T, m); };
    } else {
        throw ConfigError("unknown model '" + model_id +
                          "' (expected barrier_call or xva_call)");
    }
    return p;
}

bool ConvergenceReport::all_ok() const {
    for (const auto& row : rows)
        if (row.status == "blowup") return false;
    return true;
}

std::optional<double> observed_order(double err_prev, double err_cur,
                                     int n_prev, int n_cur) {
    if (!(err_prev > 0.0) || !(err_cur > 0.0) || n_cur <= n_prev) return std::nullopt;
    return std::log(err_prev / err_cur) / std::log(double(n_cur) / double(n_prev));
}

SolveResult solve_problem(const Problem& problem, int n_cells, Scheme scheme,
                          double cfl) {
    SolveResult res;
    res.grid = build_grid(problem.model.s_min, problem.model.s_max, n_cells);
    State initial = project_initial(res.grid, problem.model.payoff,
                                    problem.model.payoff_breakpoints);
    const StabilityEstimate est = estimate_stability(problem.model, res.grid, initial);
    res.plan = select_dt(est, res.grid, problem.model.market.T, cfl, scheme);
    IntegrationResult run = integrate(problem.model, res.grid, initial, res.plan);
    res.state = std::move(run.state);
    res.wall_time_s = run.wall_time_s;
    return res;
}

namespace {

std::vector<ConvergenceRow> ladder_rows(const Problem& problem, Scheme scheme,
                                        std::span<const int> resolutions,
                                        const LadderOptions& opt) {
    std::vector<ConvergenceRow> rows;
    std::optional<std::pair<int, double>> prev_ok;  // (n_cells, l1)
    for (int n : resolutions) {
        ConvergenceRow row;
        row.scheme = scheme;
        row.n_cells = n;
        if (scheme == Scheme::explicit_rk2 && n > opt.explicit_ceiling) {
            row.status = "skipped";
            rows.push_back(row);
            continue;
        }
        try {
            const SolveResult solved = solve_problem(problem, n, scheme, opt.cfl);
            row.l1 = l1_error(solved.grid, solved.state, problem.exact_at_horizon);
            row.dt = solved.plan.dt;
            row.wall_time_s = solved.wall_time_s;
            if (prev_ok)
                row.observed_order =
                    observed_order(prev_ok->second, row.l1, prev_ok->first, row.n_cells);
        } catch (const BlowupError&) {
            row.status = "blowup";
        }
        if (row.status == "ok") prev_ok = {row.n_cells, row.l1};
        rows.push_back(std::move(row));
    }
    return rows;
}

ConvergenceReport report_shell(const Problem& problem, const LadderOptions& opt) {
    ConvergenceReport report;
    report.model_id = problem.model.id;
    report.cfl = opt.cfl;
    report.explicit_ceiling = opt.explicit_ceiling;
    report.market = problem.model.market;
    report.s_min = problem.model.s_min;
    report.s_max = problem.model.s_max;
    return report;
}

}  // namespace

ConvergenceReport run_convergence(const Problem& problem, Scheme scheme,
                                  std::span<const int> resolutions,
                                  const LadderOptions& opt) {
    ConvergenceReport report = report_shell(problem, opt);
    report.rows = ladder_rows(problem, scheme, resolutions, opt);
    return report;
}

ConvergenceReport run_convergence(const std::string& model_id, Scheme scheme,
                                  std::span<const int> resolutions, double cfl) {
    const MarketData market = model_id == "xva_call" ? default_xva_market()
                                                     : default_barrier_market();
    LadderOptions opt;
    opt.cfl = cfl;
    return run_convergence(make_problem(model_id, market), scheme, resolutions, opt);
}

ConvergenceReport compare_schemes(const Problem& problem,
                                  std::span<const int> resolutions,
                                  const LadderOptions& opt) {
    ConvergenceReport report = report_shell(problem, opt);
    report.rows = ladder_rows(problem, Scheme::imex, resolutions, opt);
    const auto explicit_rows = ladder_rows(problem, Scheme::explicit_rk2, resolutions, opt);
    report.rows.insert(report.rows.end(), explicit_rows.begin(), explicit_rows.end());
    return report;
}

std::optional<double> speedup_at(const ConvergenceReport& report, int n_cells) {
    const ConvergenceRow* imex = nullptr;
    const ConvergenceRow* expl = nullptr;
    for (const auto& row : report.rows) {
        if (row.n_cells != n_cells || row.status != "ok") continue;
        (row.scheme == Scheme::imex ? imex : expl) = &row;
    }
    if (!imex || !expl || !(imex->wall_time_s > 0.0)) return std::nullopt;
    return expl->wall_time_s / imex->wall_time_s;
}

GreeksCurve extract_greeks(const Grid& grid, const State& state) {
    const int n = grid.n_cells;
    const auto& u = state.values;
    const double ds = grid.ds;

    GreeksCurve curve;
    curve.s = grid.centers;
    curve.delta.resize(n);
    curve.gamma.resize(n);

    for (int i = 1; i < n - 1; ++i) {
        curve.delta[i] = (u[i + 1] - u[i - 1]) / (2.0 * ds);
        curve.gamma[i] = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (ds * ds);
    }
    // one-sided second-order ends
    curve.delta[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * ds);
    curve.delta[n - 1] = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * ds);
    if (n >= 4) {
        curve.gamma[0] = (2.0 * u[0] - 5.0 * u[1] + 4.0 * u[2] - u[3]) / (ds * ds);
        curve.gamma[n - 1] =
            (2.0 * u[n - 1] - 5.0 * u[n - 2] + 4.0 * u[n - 3] - u[n - 4]) / (ds * ds);
    } else {
        curve.gamma[0] = (u[2] - 2.0 * u[1] + u[0]) / (ds * ds);
        curve.gamma[n - 1] = curve.gamma[0];
    }
    return curve;
}

void write_report_csv(const ConvergenceReport& report, std::ostream& os) {
    os << "scheme,n_cells,l1_error,observed_order,dt,wall_time_s,status\n";
    for (const auto& row : report.rows) {
        os << scheme_name(row.scheme) << ',' << row.n_cells << ','
           << format_double(row.l1) << ',';
        if (row.observed_order) os << format_double(*row.observed_order);
        os << ',' << format_double(row.dt) << ',' << format_double(row.wall_time_s)
           << ',' << row.status << '\n';
    }
}

namespace {

nlohmann::json market_to_json(const MarketData& m) {
    nlohmann::json j{{"sigma", m.sigma}, {"r", m.r},         {"q", m.q},
                     {"T", m.T},         {"K", m.K},         {"R_B", m.R_B},
                     {"R_C", m.R_C},     {"lambda_B", m.lambda_B},
                     {"lambda_C", m.lambda_C}, {"s_F", m.s_F}};
    if (m.barrier) j["B"] = *m.barrier;
    return j;
}

}  // namespace

void emit_report(const ConvergenceReport& report, const std::filesystem::path& path) {
    {
        std::ofstream csv(path, std::ios::binary);
        if (!csv) throw IoError("emit_report: cannot open '" + path.string() + "'");
        write_report_csv(report, csv);
        if (!csv) throw IoError("emit_report: write failed for '" + path.string() + "'");
    }

    nlohmann::json meta;
    meta["version"] = version_string;
    meta["model"] = report.model_id;
    meta["cfl"] = report.cfl;
    meta["explicit_ceiling"] = report.explicit_ceiling;
    meta["domain"] = {{"s_min", report.s_min}, {"s_max", report.s_max}};
    meta["market"] = market_to_json(report.market);
    meta["dt_rule"] =
        "dt = T/ceil(T/(cfl*bound)); bound = ds/alpha_max (imex), "
        "min(ds/alpha_max, ds^2/(2*eta_max)) (explicit)";
    meta["l1_norm"] = "sum_i |u_i - exact(s_i)| * ds, exact sampled at cell centers";
    nlohmann::json speedups = nlohmann::json::array();
    for (const auto& row : report.rows) {
        if (row.scheme != Scheme::imex) continue;
        if (const auto ratio = speedup_at(report, row.n_cells))
            speedups.push_back({{"n_cells", row.n_cells}, {"ratio", *ratio}});
    }
    meta["speedups"] = speedups;

    std::filesystem::path sidecar = path;
    sidecar.replace_extension(".meta.json");
    std::ofstream js(sidecar, std::ios::binary);
    if (!js) throw IoError("emit_report: cannot open '" + sidecar.string() + "'");
    js << meta.dump(2) << '\n';
    if (!js) throw IoError("emit_report: write failed for '" + sidecar.string() + "'");
}

ConvergenceReport read_report(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("read_report: cannot open '" + path.string() + "'");

    ConvergenceReport report;
    std::string line;
    if (!std::getline(in, line))
        throw IoError("read_report: empty file '" + path.string() + "'");
    if (line != "scheme,n_cells,l1_error,observed_order,dt,wall_time_s,status")
        throw IoError("read_report: unexpected header '" + line + "'");

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        while (fields.size() < 7) fields.emplace_back();
        ConvergenceRow row;
        row.scheme = scheme_from_name(fields[0]);
        row.n_cells = static_cast<int>(parse_double(fields[1], "n_cells"));
        row.l1 = parse_double(fields[2], "l1_error");
        if (!fields[3].empty())
            row.observed_order = parse_double(fields[3], "observed_order");
        row.dt = parse_double(fields[4], "dt");
        row.wall_time_s = parse_double(fields[5], "wall_time_s");
        row.status = fields[6];
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace fvp
