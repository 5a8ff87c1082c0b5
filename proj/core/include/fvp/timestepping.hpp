#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fvp/mesh.hpp"
#include "fvp/models.hpp"
#include "fvp/spatial.hpp"
#include "fvp/tridiagonal.hpp"

namespace fvp {

/// Double Butcher tableau of an implicit-explicit Runge-Kutta pair. The
/// explicit part is strictly lower triangular; the implicit part is lower
/// triangular (diagonally implicit).
struct ButcherPair {
    int stages = 0;

    std::vector<std::vector<double>> a_ex;  ///< explicit coefficients
    std::vector<double> w_ex;               ///< explicit weights
    std::vector<double> c_ex;               ///< explicit nodes

    std::vector<std::vector<double>> a_im;  ///< implicit coefficients
    std::vector<double> w_im;               ///< implicit weights
    std::vector<double> c_im;               ///< implicit nodes
};

/// Two-stage, second-order, L-stable pair with implicit diagonal
/// gamma = 1 - 1/sqrt(2).
ButcherPair imex_ssp2_tableau();

/// Extremal wave speeds of the split system on the current data.
struct StabilityEstimate {
    double alpha_max = 0.0;  ///< max |df/du| over interfaces and sampled states
    double eta_max = 0.0;    ///< max |dg/du_s| over interfaces
};

StabilityEstimate estimate_stability(const ConservativeModel& model,
                                     const Grid& grid, const State& state);

enum class Scheme { imex, explicit_rk2 };

const char* scheme_name(Scheme s);

/// Step size and count tiling [0, T] exactly.
struct StepPlan {
    double dt = 0.0;
    long n_steps = 0;
    Scheme scheme = Scheme::imex;
};

/// Largest stable step under the advection bound (imex) or the advection and
/// diffusion bounds (explicit), scaled by cfl, then rounded down so that
/// n_steps * dt lands on T. With no active constraint the plan is one step
/// of size T.
StepPlan select_dt(const StabilityEstimate& est, const Grid& grid, double T,
                   double cfl, Scheme scheme);

/// Thomas elimination; throws SingularSystemError on a vanishing pivot.
std::vector<double> tridiag_solve(const Tridiagonal& a, std::span<const double> rhs);

/// Split ODE system dU/dt = nonstiff(t, U) + stiff * U + stiff_rhs(t).
/// Any part may be absent.
struct SplitSystem {
    std::function<void(double t, std::span<const double> u, std::span<double> out)> nonstiff;
    const Tridiagonal* stiff = nullptr;
    std::function<void(double t, std::span<double> add_into)> stiff_rhs;
};

/// One step of a diagonally-implicit IMEX pair: the nonstiff part enters
/// through the explicit tableau, the stiff part through the implicit one, and
/// each stage solves a shifted tridiagonal system.
std::vector<double> imex_step(const SplitSystem& sys, std::span<const double> u,
                              double t, double dt, const ButcherPair& tableau);

/// One Heun (SSP-RK2) step on the full right-hand side.
std::vector<double> heun_step(const SplitSystem& sys, std::span<const double> u,
                              double t, double dt);

/// Advances a model state by one IMEX step (assembles the diffusion operator
/// internally; use integrate() for multi-step runs).
State step_imex(const ConservativeModel& model, const Grid& grid,
                const State& state, const ButcherPair& tableau, double dt);

/// Advances a model state by one Heun step with the diffusion applied as an
/// explicit matrix-vector product.
State step_explicit(const ConservativeModel& model, const Grid& grid,
                    const State& state, double dt);

struct IntegrationResult {
    State state;
    double wall_time_s = 0.0;
};

/// Runs plan.n_steps steps of the selected scheme from state0; the diffusion
/// operator is assembled once for the whole run.
IntegrationResult integrate(const ConservativeModel& model, const Grid& grid,
                            const State& state0, const StepPlan& plan);

}  // namespace fvp
