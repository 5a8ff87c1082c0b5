#pragma once

#include <span>
#include <vector>

#include "fvp/mesh.hpp"
#include "fvp/models.hpp"
#include "fvp/tridiagonal.hpp"

namespace fvp {

/// Ghost-cell closure used by the reconstruction. One ghost average per side;
/// ghost cells carry no slope.
struct GhostPolicy {
    BoundaryKind kind = BoundaryKind::transmissive;
    double left_value = 0.0;   ///< prescribed boundary values (dirichlet only)
    double right_value = 0.0;

    static GhostPolicy dirichlet(double left, double right) {
        return {BoundaryKind::dirichlet, left, right};
    }
    static GhostPolicy transmissive() { return {}; }

    double left_ghost(std::span<const double> u) const;
    double right_ghost(std::span<const double> u) const;
};

/// One-sided states at every interface: left[j] and right[j] are the limits
/// from below and from above at edge j.
struct InterfaceStates {
    std::vector<double> left;   ///< size n_cells + 1
    std::vector<double> right;  ///< size n_cells + 1
};

/// sign(a) * min(|a|, |b|) when a and b agree in sign, zero otherwise.
double minmod(double a, double b);

/// Limited linear reconstruction of the cell averages.
InterfaceStates reconstruct(const Grid& grid, const State& state,
                            const GhostPolicy& boundary);

/// Local Lax-Friedrichs flux at coordinate s; the dissipation speed is
/// |df/du| evaluated at the arithmetic mean of the two states.
double llf_flux(const ConservativeModel& model, double s,
                double u_left, double u_right);

/// g((u_{i+1} - u_i)/ds, s_{i+1/2}) at an interior interface.
double diffusive_flux(const ConservativeModel& model, const Grid& grid,
                      const State& state, int interface_index);

/// Convection and reaction right-hand side: entry i is
///   -(F_{i+1/2} - F_{i-1/2}) / ds + h(u_i)
/// with the source integrated by the midpoint rule and ghosts taken from the
/// model's boundary closure at state.time.
std::vector<double> explicit_rhs(const ConservativeModel& model,
                                 const Grid& grid, const State& state);

/// Linear diffusion operator with Dirichlet data folded into an affine term:
///
///   S(U, t) = matrix * U + rhs_boundary(t)
///
/// The matrix row i discretizes (G_{i+1/2} - G_{i-1/2}) / ds; only the two
/// boundary entries of rhs_boundary are nonzero and they scale linearly with
/// the prescribed boundary values.
struct DiffusionOperator {
    Tridiagonal matrix;
    std::vector<double> rhs_boundary;
    double bc_left_coeff = 0.0;   ///< rhs_boundary.front() per unit left value
    double bc_right_coeff = 0.0;  ///< rhs_boundary.back() per unit right value

    /// Re-evaluates rhs_boundary for new boundary values.
    void refresh_boundary(double left_value, double right_value);

    /// out = matrix * u + rhs_boundary
    void apply(std::span<const double> u, std::span<double> out) const;
};

/// Assembles the diffusion operator at the given time. The matrix does not
/// depend on time; the time argument fixes the boundary data snapshot.
/// Rejects models whose diffusion is not linear in u_s.
DiffusionOperator assemble_diffusion(const ConservativeModel& model,
                                     const Grid& grid, double time);

}  // namespace fvp
