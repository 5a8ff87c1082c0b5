#include "fvp/spatial.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fvp/errors.hpp"

namespace fvp {

double GhostPolicy::left_ghost(std::span<const double> u) const {
    return kind == BoundaryKind::dirichlet ? 2.0 * left_value - u.front() : u.front();
}

double GhostPolicy::right_ghost(std::span<const double> u) const {
    return kind == BoundaryKind::dirichlet ? 2.0 * right_value - u.back() : u.back();
}

double minmod(double a, double b) {
    if (a > 0.0 && b > 0.0) return std::min(a, b);
    if (a < 0.0 && b < 0.0) return std::max(a, b);
    return 0.0;
}

InterfaceStates reconstruct(const Grid& grid, const State& state,
                            const GhostPolicy& boundary) {
    const auto& u = state.values;
    const int n = grid.n_cells;
    const double ghost_left = boundary.left_ghost(u);
    const double ghost_right = boundary.right_ghost(u);

    InterfaceStates is;
    is.left.assign(n + 1, 0.0);
    is.right.assign(n + 1, 0.0);

    for (int i = 0; i < n; ++i) {
        const double down = u[i] - (i > 0 ? u[i - 1] : ghost_left);
        const double up = (i + 1 < n ? u[i + 1] : ghost_right) - u[i];
        const double slope = minmod(down, up);
        is.left[i + 1] = u[i] + 0.5 * slope;
        is.right[i] = u[i] - 0.5 * slope;
    }
    // Ghost cells reconstruct linearly through the adjacent average, so the
    // outside state at each boundary interface is the midpoint of the two:
    // exactly the prescribed value for mirrored Dirichlet ghosts.
    is.left[0] = 0.5 * (ghost_left + u.front());
    is.right[n] = 0.5 * (ghost_right + u.back());
    return is;
}

double llf_flux(const ConservativeModel& model, double s,
                double u_left, double u_right) {
    const double alpha = std::abs(model.flux_du(0.5 * (u_left + u_right), s));
    return 0.5 * (model.flux(u_left, s) + model.flux(u_right, s)) -
           0.5 * alpha * (u_right - u_left);
}

double diffusive_flux(const ConservativeModel& model, const Grid& grid,
                      const State& state, int interface_index) {
    if (interface_index < 1 || interface_index > grid.n_cells - 1)
        throw std::out_of_range("diffusive_flux: interface " +
                                std::to_string(interface_index) + " is not interior");
    const double grad =
        (state.values[interface_index] - state.values[interface_index - 1]) / grid.ds;
    return model.diffusion(grad, grid.edges[interface_index]);
}

std::vector<double> explicit_rhs(const ConservativeModel& model,
                                 const Grid& grid, const State& state) {
    const int n = grid.n_cells;
    const GhostPolicy ghosts =
        model.boundary_kind == BoundaryKind::dirichlet
            ? GhostPolicy::dirichlet(model.left_bc(state.time), model.right_bc(state.time))
            : GhostPolicy::transmissive();
    const InterfaceStates is = reconstruct(grid, state, ghosts);

    std::vector<double> flux(n + 1);
    for (int j = 0; j <= n; ++j)
        flux[j] = llf_flux(model, grid.edges[j], is.left[j], is.right[j]);

    std::vector<double> rhs(n);
    const double inv_ds = 1.0 / grid.ds;
    for (int i = 0; i < n; ++i) {
        rhs[i] = -(flux[i + 1] - flux[i]) * inv_ds + model.source(state.values[i]);
        if (!std::isfinite(rhs[i]))
            throw BlowupError("explicit_rhs: non-finite value at cell " + std::to_string(i), i);
    }
    return rhs;
}

void DiffusionOperator::refresh_boundary(double left_value, double right_value) {
    rhs_boundary.front() = bc_left_coeff * left_value;
    rhs_boundary.back() = bc_right_coeff * right_value;
}

void DiffusionOperator::apply(std::span<const double> u, std::span<double> out) const {
    matrix.apply(u, out);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += rhs_boundary[i];
}

DiffusionOperator assemble_diffusion(const ConservativeModel& model,
                                     const Grid& grid, double time) {
    if (!model.eta)
        throw UnsupportedModelError(
            "assemble_diffusion: model '" + model.id +
            "' has no diffusion linear in u_s; the implicit path requires g = eta(s) u_s");

    const int n = grid.n_cells;
    const double inv_ds2 = 1.0 / (grid.ds * grid.ds);

    std::vector<double> eta_edge(n + 1);
    for (int j = 0; j <= n; ++j) eta_edge[j] = model.eta(grid.edges[j]);

    DiffusionOperator op;
    op.matrix = Tridiagonal(n);
    op.rhs_boundary.assign(n, 0.0);

    for (int i = 1; i < n - 1; ++i) {
        op.matrix.sub[i] = eta_edge[i] * inv_ds2;
        op.matrix.diag[i] = -(eta_edge[i] + eta_edge[i + 1]) * inv_ds2;
        op.matrix.super[i] = eta_edge[i + 1] * inv_ds2;
    }

    if (model.boundary_kind == BoundaryKind::dirichlet) {
        // The mirrored ghost (2 u_bc - u_edge_cell) doubles the edge
        // coefficient on the diagonal and leaves a pure boundary term.
        op.matrix.diag[0] = -(eta_edge[1] + 2.0 * eta_edge[0]) * inv_ds2;
        op.matrix.super[0] = eta_edge[1] * inv_ds2;
        op.bc_left_coeff = 2.0 * eta_edge[0] * inv_ds2;

        op.matrix.sub[n - 1] = eta_edge[n - 1] * inv_ds2;
        op.matrix.diag[n - 1] = -(eta_edge[n - 1] + 2.0 * eta_edge[n]) * inv_ds2;
        op.bc_right_coeff = 2.0 * eta_edge[n] * inv_ds2;
        op.refresh_boundary(model.left_bc(time), model.right_bc(time));
    } else {
        // Transmissive ghost equals the edge cell average: zero boundary flux.
        op.matrix.diag[0] = -eta_edge[1] * inv_ds2;
        op.matrix.super[0] = eta_edge[1] * inv_ds2;
        op.matrix.sub[n - 1] = eta_edge[n - 1] * inv_ds2;
        op.matrix.diag[n - 1] = -eta_edge[n - 1] * inv_ds2;
    }
    return op;
}

}  // namespace fvp
