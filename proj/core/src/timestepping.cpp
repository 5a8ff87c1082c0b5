#include "fvp/timestepping.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "fvp/errors.hpp"

namespace fvp {

ButcherPair imex_ssp2_tableau() {
    const double gamma = 1.0 - 1.0 / std::sqrt(2.0);
    ButcherPair tab;
    tab.stages = 2;
    tab.a_ex = {{0.0, 0.0}, {1.0, 0.0}};
    tab.w_ex = {0.5, 0.5};
    tab.c_ex = {0.0, 1.0};
    tab.a_im = {{gamma, 0.0}, {1.0 - 2.0 * gamma, gamma}};
    tab.w_im = {0.5, 0.5};
    tab.c_im = {gamma, 1.0 - gamma};
    return tab;
}

const char* scheme_name(Scheme s) {
    return s == Scheme::imex ? "imex" : "explicit";
}

StabilityEstimate estimate_stability(const ConservativeModel& model,
                                     const Grid& grid, const State& state) {
    StabilityEstimate est;
    const int n = grid.n_cells;
    for (int j = 0; j <= n; ++j) {
        const double s = grid.edges[j];
        const double ul = state.values[std::max(j - 1, 0)];
        const double ur = state.values[std::min(j, n - 1)];
        for (double u : {ul, ur, 0.5 * (ul + ur)})
            est.alpha_max = std::max(est.alpha_max, std::abs(model.flux_du(u, s)));
        if (model.eta) {
            est.eta_max = std::max(est.eta_max, std::abs(model.eta(s)));
        } else {
            // secant slope of g in u_s around zero gradient
            const double d = 1.0;
            const double slope = (model.diffusion(d, s) - model.diffusion(-d, s)) / (2.0 * d);
            est.eta_max = std::max(est.eta_max, std::abs(slope));
        }
    }
    if (!std::isfinite(est.alpha_max) || !std::isfinite(est.eta_max))
        throw BlowupError("estimate_stability: non-finite wave speed", -1);
    return est;
}

StepPlan select_dt(const StabilityEstimate& est, const Grid& grid, double T,
                   double cfl, Scheme scheme) {
    if (!(cfl > 0.0 && cfl <= 1.0))
        throw ConfigError("select_dt: cfl must lie in (0, 1]");
    if (!(T > 0.0))
        throw ConfigError("select_dt: T must be positive");

    double bound = std::numeric_limits<double>::infinity();
    if (est.alpha_max > 0.0)
        bound = std::min(bound, grid.ds / est.alpha_max);
    if (scheme == Scheme::explicit_rk2 && est.eta_max > 0.0)
        bound = std::min(bound, grid.ds * grid.ds / (2.0 * est.eta_max));

    StepPlan plan;
    plan.scheme = scheme;
    if (!std::isfinite(bound)) {
        plan.dt = T;
        plan.n_steps = 1;
        return plan;
    }
    const double raw = cfl * bound;
    // tolerate representation noise when T/raw is an exact integer
    const long n = std::max<long>(1, static_cast<long>(std::ceil(T / raw - 1e-9)));
    plan.n_steps = n;
    plan.dt = T / static_cast<double>(n);
    return plan;
}

std::vector<double> tridiag_solve(const Tridiagonal& a, std::span<const double> rhs) {
    const int n = a.size();
    if (static_cast<int>(rhs.size()) != n)
        throw std::invalid_argument("tridiag_solve: size mismatch");

    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        scale = std::max({scale, std::abs(a.sub[i]), std::abs(a.diag[i]),
                          std::abs(a.super[i])});
    const double tiny = 1e-14 * scale + std::numeric_limits<double>::min();

    std::vector<double> c(n), d(n);
    double piv = a.diag[0];
    if (std::abs(piv) <= tiny)
        throw SingularSystemError("tridiag_solve: zero pivot at row 0");
    c[0] = a.super[0] / piv;
    d[0] = rhs[0] / piv;
    for (int i = 1; i < n; ++i) {
        piv = a.diag[i] - a.sub[i] * c[i - 1];
        if (std::abs(piv) <= tiny)
            throw SingularSystemError("tridiag_solve: zero pivot at row " + std::to_string(i));
        c[i] = a.super[i] / piv;
        d[i] = (rhs[i] - a.sub[i] * d[i - 1]) / piv;
    }
    std::vector<double> x(n);
    x[n - 1] = d[n - 1];
    for (int i = n - 2; i >= 0; --i)
        x[i] = d[i] - c[i] * x[i + 1];
    return x;
}

namespace {

void axpy(double a, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

void check_finite(std::span<const double> u, int stage, const char* where) {
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!std::isfinite(u[i]))
            throw BlowupError(std::string(where) + ": non-finite value at cell " +
                                  std::to_string(i) +
                                  (stage >= 0 ? " (stage " + std::to_string(stage) + ")" : ""),
                              static_cast<int>(i), stage);
    }
}

/// Full right-hand side nonstiff(t,u) + stiff*u + stiff_rhs(t) written into out.
void full_rhs(const SplitSystem& sys, double t, std::span<const double> u,
              std::span<double> out, std::vector<double>& scratch) {
    std::fill(out.begin(), out.end(), 0.0);
    if (sys.nonstiff) sys.nonstiff(t, u, out);
    if (sys.stiff) {
        scratch.resize(u.size());
        sys.stiff->apply(u, scratch);
        axpy(1.0, scratch, out);
    }
    if (sys.stiff_rhs) sys.stiff_rhs(t, out);
}

}  // namespace

std::vector<double> imex_step(const SplitSystem& sys, std::span<const double> u,
                              double t, double dt, const ButcherPair& tableau) {
    const int n = static_cast<int>(u.size());
    const int stages = tableau.stages;

    std::vector<std::vector<double>> nonstiff_at(stages), stiff_at(stages);
    std::vector<double> scratch(n);

    for (int k = 0; k < stages; ++k) {
        // known data: u^n plus all earlier stage contributions
        std::vector<double> accum(u.begin(), u.end());
        for (int l = 0; l < k; ++l) {
            if (tableau.a_ex[k][l] != 0.0) axpy(dt * tableau.a_ex[k][l], nonstiff_at[l], accum);
            if (tableau.a_im[k][l] != 0.0) axpy(dt * tableau.a_im[k][l], stiff_at[l], accum);
        }

        const double akk = tableau.a_im[k][k];
        const double t_im = t + tableau.c_im[k] * dt;
        std::vector<double> stage_u;
        if (sys.stiff && akk != 0.0) {
            if (sys.stiff_rhs) {
                std::fill(scratch.begin(), scratch.end(), 0.0);
                sys.stiff_rhs(t_im, scratch);
                axpy(dt * akk, scratch, accum);
            }
            stage_u = tridiag_solve(identity_minus(*sys.stiff, dt * akk), accum);
        } else {
            stage_u = std::move(accum);
        }
        check_finite(stage_u, k, "imex_step");

        nonstiff_at[k].assign(n, 0.0);
        if (sys.nonstiff)
            sys.nonstiff(t + tableau.c_ex[k] * dt, stage_u, nonstiff_at[k]);
        stiff_at[k].assign(n, 0.0);
        if (sys.stiff) sys.stiff->apply(stage_u, stiff_at[k]);
        if (sys.stiff_rhs) sys.stiff_rhs(t_im, stiff_at[k]);
    }

    std::vector<double> out(u.begin(), u.end());
    for (int k = 0; k < stages; ++k) {
        if (tableau.w_ex[k] != 0.0) axpy(dt * tableau.w_ex[k], nonstiff_at[k], out);
        if (tableau.w_im[k] != 0.0) axpy(dt * tableau.w_im[k], stiff_at[k], out);
    }
    check_finite(out, -1, "imex_step");
    return out;
}

std::vector<double> heun_step(const SplitSystem& sys, std::span<const double> u,
                              double t, double dt) {
    const int n = static_cast<int>(u.size());
    std::vector<double> k1(n), k2(n), scratch;

    full_rhs(sys, t, u, k1, scratch);
    std::vector<double> mid(u.begin(), u.end());
    axpy(dt, k1, mid);
    check_finite(mid, 0, "heun_step");

    full_rhs(sys, t + dt, mid, k2, scratch);
    std::vector<double> out(u.begin(), u.end());
    axpy(0.5 * dt, k1, out);
    axpy(0.5 * dt, k2, out);
    check_finite(out, 1, "heun_step");
    return out;
}

namespace {

/// Model bound to a grid: owns the assembled diffusion operator and exposes
/// the split system the kernels integrate.
class BoundModel {
public:
    BoundModel(const ConservativeModel& model, const Grid& grid)
        : model_(&model), grid_(&grid),
          diffusion_(assemble_diffusion(model, grid, 0.0)) {}

    SplitSystem system() const {
        SplitSystem sys;
        const ConservativeModel* model = model_;
        const Grid* grid = grid_;
        sys.nonstiff = [model, grid](double t, std::span<const double> u,
                                     std::span<double> out) {
            State stage;
            stage.values.assign(u.begin(), u.end());
            stage.time = t;
            const std::vector<double> rhs = explicit_rhs(*model, *grid, stage);
            std::copy(rhs.begin(), rhs.end(), out.begin());
        };
        sys.stiff = &diffusion_.matrix;
        if (model_->boundary_kind == BoundaryKind::dirichlet) {
            const double cl = diffusion_.bc_left_coeff;
            const double cr = diffusion_.bc_right_coeff;
            sys.stiff_rhs = [model, cl, cr](double t, std::span<double> add) {
                add.front() += cl * model->left_bc(t);
                add.back() += cr * model->right_bc(t);
            };
        }
        return sys;
    }

private:
    const ConservativeModel* model_;
    const Grid* grid_;
    DiffusionOperator diffusion_;
};

}  // namespace

State step_imex(const ConservativeModel& model, const Grid& grid,
                const State& state, const ButcherPair& tableau, double dt) {
    const BoundModel bound(model, grid);
    State next;
    next.values = imex_step(bound.system(), state.values, state.time, dt, tableau);
    next.time = state.time + dt;
    return next;
}

State step_explicit(const ConservativeModel& model, const Grid& grid,
                    const State& state, double dt) {
    const BoundModel bound(model, grid);
    State next;
    next.values = heun_step(bound.system(), state.values, state.time, dt);
    next.time = state.time + dt;
    return next;
}

IntegrationResult integrate(const ConservativeModel& model, const Grid& grid,
                            const State& state0, const StepPlan& plan) {
    const BoundModel bound(model, grid);
    const SplitSystem sys = bound.system();
    const ButcherPair tableau = imex_ssp2_tableau();

    const auto start = std::chrono::steady_clock::now();
    State state = state0;
    for (long step = 0; step < plan.n_steps; ++step) {
        const double t = state0.time + static_cast<double>(step) * plan.dt;
        state.values = plan.scheme == Scheme::imex
                           ? imex_step(sys, state.values, t, plan.dt, tableau)
                           : heun_step(sys, state.values, t, plan.dt);
        state.time = t + plan.dt;
    }
    const auto stop = std::chrono::steady_clock::now();

    IntegrationResult res;
    res.state = std::move(state);
    res.wall_time_s = std::chrono::duration<double>(stop - start).count();
    return res;
}

}  // namespace fvp
