#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fvp/market_data.hpp"

namespace fvp {

/// How ghost-cell averages are supplied at the domain ends.
enum class BoundaryKind {
    dirichlet,     ///< mirror through the prescribed boundary value
    transmissive,  ///< copy of the adjacent interior average
};

/// One pricing problem in divergence form
///
///   u_t + (f(u,s))_s = (g(u_s,s))_s + h(u)
///
/// on [s_min, s_max], with boundary data as functions of time.
///
/// `eta` must be set whenever g(u_s, s) = eta(s) * u_s; the implicit solver
/// path only supports that linear case and rejects models without it.
struct ConservativeModel {
    std::string id;
    MarketData market;
    double s_min = 0.0;
    double s_max = 0.0;

    std::function<double(double u, double s)> flux;         ///< f(u, s)
    std::function<double(double u, double s)> flux_du;      ///< df/du (u, s)
    std::function<double(double u_s, double s)> diffusion;  ///< g(u_s, s)
    std::function<double(double s)> eta;                    ///< g = eta(s) * u_s, when linear
    std::function<double(double u)> source;                 ///< h(u)

    std::function<double(double s)> payoff;
    std::vector<double> payoff_breakpoints;  ///< kinks/jumps of the payoff

    BoundaryKind boundary_kind = BoundaryKind::dirichlet;
    std::function<double(double t)> left_bc;
    std::function<double(double t)> right_bc;

    /// Time derivative of u in the original (non-divergence) form; used to
    /// cross-check the conservative rewrite against an independent route.
    std::function<double(double s, double u, double u_s, double u_ss)> primitive_rhs;
};

/// Down-and-out call under lognormal dynamics, domain [B, 5B], value zero at
/// the barrier and forward intrinsic value at the far end. The payoff keeps
/// its jump at the barrier. Requires market.barrier.
ConservativeModel black_scholes_barrier_model(const MarketData& market);

/// Vanilla call with bilateral counterparty-risk adjustments: the reaction
/// term picks up intensity-driven decay, piecewise linear in u. Domain
/// [0, 4K]; the far-field Dirichlet value is the closed-form adjusted price.
/// The funding spread is tied to the buyer leg: s_F = (1 - R_B) * lambda_B.
ConservativeModel xva_model(MarketData market);

/// Twice-differentiable test function with analytic derivatives.
struct SmoothTestFunction {
    std::function<double(double)> value;
    std::function<double(double)> deriv;
    std::function<double(double)> second;
};

/// Max-norm mismatch over a fine sample of the domain between the
/// divergence-form right-hand side, assembled from f, g, h with high-order
/// difference quotients in s, and the model's primitive_rhs.
double verify_conservative_rewrite(const ConservativeModel& model,
                                   const SmoothTestFunction& u);

}  // namespace fvp
