// Command-line front end: price / converge / greeks over a JSON run
// configuration. Exit codes: 0 success, 2 configuration error, 3 solver
// blow-up, 4 I/O failure.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fvp/config.hpp"
#include "fvp/errors.hpp"
#include "fvp/harness.hpp"
#include "fvp/version.hpp"

namespace {

constexpr int exit_config = 2;
constexpr int exit_blowup = 3;
constexpr int exit_io = 4;

std::string fmt(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// Stream to --out when given, to the config's output path otherwise, else to
/// stdout.
class OutputTarget {
public:
    OutputTarget(const std::string& cli_path, const std::string& config_path) {
        path_ = !cli_path.empty() ? cli_path : config_path;
        if (!path_.empty()) {
            file_.open(path_, std::ios::binary);
            if (!file_) throw fvp::IoError("cannot open output file '" + path_ + "'");
        }
    }
    std::ostream& stream() { return path_.empty() ? std::cout : file_; }
    const std::string& path() const { return path_; }
    void finish() {
        if (!path_.empty() && !file_)
            throw fvp::IoError("write failed for '" + path_ + "'");
    }

private:
    std::string path_;
    std::ofstream file_;
};

fvp::Scheme single_scheme(fvp::SchemeChoice choice) {
    return choice == fvp::SchemeChoice::explicit_rk2 ? fvp::Scheme::explicit_rk2
                                                     : fvp::Scheme::imex;
}

int run_price(const fvp::RunConfig& config, const std::string& out_path) {
    const fvp::Problem problem = fvp::make_problem(config.model_id, config.market);
    const fvp::SolveResult solved =
        fvp::solve_problem(problem, config.n_cells, single_scheme(config.scheme), config.cfl);

    OutputTarget out(out_path, config.output);
    out.stream() << "s,numeric,exact,abs_error\n";
    for (int i = 0; i < solved.grid.n_cells; ++i) {
        const double s = solved.grid.centers[i];
        const double numeric = solved.state.values[i];
        const double exact = problem.exact_at_horizon(s);
        out.stream() << fmt(s) << ',' << fmt(numeric) << ',' << fmt(exact) << ','
                     << fmt(std::abs(numeric - exact)) << '\n';
    }
    out.finish();
    return 0;
}

int run_converge(fvp::RunConfig config, const std::string& out_path, bool full_tables) {
    if (full_tables) {
        while (config.resolutions.back() < 6400)
            config.resolutions.push_back(config.resolutions.back() * 2);
        config.explicit_ceiling = 6400;
    }
    const fvp::Problem problem = fvp::make_problem(config.model_id, config.market);
    fvp::LadderOptions opt;
    opt.cfl = config.cfl;
    opt.explicit_ceiling = config.explicit_ceiling;

    fvp::ConvergenceReport report;
    if (config.scheme == fvp::SchemeChoice::both)
        report = fvp::compare_schemes(problem, config.resolutions, opt);
    else
        report = fvp::run_convergence(problem, single_scheme(config.scheme),
                                      config.resolutions, opt);

    const std::string path = !out_path.empty() ? out_path : config.output;
    if (path.empty()) {
        fvp::write_report_csv(report, std::cout);
    } else {
        fvp::emit_report(report, path);
    }
    if (!report.all_ok()) {
        std::cerr << "fvpricer: solver blow-up recorded in at least one row\n";
        return exit_blowup;
    }
    return 0;
}

int run_greeks(const fvp::RunConfig& config, const std::string& out_path) {
    const fvp::Problem problem = fvp::make_problem(config.model_id, config.market);
    const fvp::SolveResult solved =
        fvp::solve_problem(problem, config.n_cells, single_scheme(config.scheme), config.cfl);
    const fvp::GreeksCurve curve = fvp::extract_greeks(solved.grid, solved.state);

    OutputTarget out(out_path, config.output);
    out.stream() << "s,delta,gamma,delta_exact,gamma_exact\n";
    for (std::size_t i = 0; i < curve.s.size(); ++i) {
        const fvp::GreekSet exact = problem.exact_greeks(curve.s[i]);
        out.stream() << fmt(curve.s[i]) << ',' << fmt(curve.delta[i]) << ','
                     << fmt(curve.gamma[i]) << ',' << fmt(exact.delta) << ','
                     << fmt(exact.gamma) << '\n';
    }
    out.finish();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite volume pricer for 1-d parabolic option models"};
    app.set_version_flag("--version", fvp::version_string);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    bool full_tables = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON run configuration")->required();
        cmd->add_option("--out", out_path, "output file (default: config output or stdout)");
    };

    CLI::App* price = app.add_subcommand("price", "solve once and print s, numeric, exact, abs error");
    add_common(price);
    CLI::App* converge = app.add_subcommand(
        "converge", "error/order ladder over the configured resolutions");
    add_common(converge);
    converge->add_flag("--full-tables", full_tables,
                       "extend the ladder to N = 6400 and lift the explicit ceiling "
                       "(long-running)");
    CLI::App* greeks = app.add_subcommand("greeks", "numerical and exact delta/gamma curves");
    add_common(greeks);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    try {
        const fvp::RunConfig config = fvp::load_config(config_path);
        if (price->parsed()) return run_price(config, out_path);
        if (converge->parsed()) return run_converge(config, out_path, full_tables);
        if (greeks->parsed()) return run_greeks(config, out_path);
        std::cerr << "fvpricer: no subcommand\n";
        return exit_config;
    } catch (const fvp::ConfigError& e) {
        std::cerr << "fvpricer: " << e.what() << '\n';
        return exit_config;
    } catch (const fvp::BlowupError& e) {
        std::cerr << "fvpricer: " << e.what() << '\n';
        return exit_blowup;
    } catch (const fvp::IoError& e) {
        std::cerr << "fvpricer: " << e.what() << '\n';
        return exit_io;
    } catch (const std::exception& e) {
        std::cerr << "fvpricer: " << e.what() << '\n';
        return 1;
    }
}
