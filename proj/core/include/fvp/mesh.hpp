#pragma once

#include <functional>
#include <span>
#include <vector>

namespace fvp {

/// Uniform cell partition of a truncated price interval [s_min, s_max].
///
/// Cell i is [edges[i], edges[i+1]] with midpoint centers[i]; all cells share
/// the width ds. Immutable after construction.
struct Grid {
    double s_min = 0.0;
    double s_max = 0.0;
    int n_cells = 0;
    double ds = 0.0;
    std::vector<double> centers;  ///< cell midpoints, size n_cells
    std::vector<double> edges;    ///< interface coordinates, size n_cells + 1
};

/// Cell averages of the unknown at one time level.
struct State {
    std::vector<double> values;
    double time = 0.0;
};

/// Builds a uniform grid; requires s_max > s_min and n_cells >= 3 so the
/// three-cell reconstruction stencil fits.
Grid build_grid(double s_min, double s_max, int n_cells);

/// Projects a payoff to cell averages at time zero.
///
/// The integral over each cell is evaluated exactly for piecewise-linear
/// payoffs: cells are split at the given breakpoints (strike, barrier) and
/// each linear piece is integrated by its midpoint value, which never
/// samples the payoff at a kink or jump.
State project_initial(const Grid& grid,
                      const std::function<double(double)>& payoff,
                      std::span<const double> breakpoints = {});

/// ds-weighted discrete L1 distance between cell averages and a reference
/// curve sampled at cell centers: sum_i |values[i] - exact(s_i)| * ds.
double l1_error(const Grid& grid, const State& numeric,
                const std::function<double(double)>& exact);

}  // namespace fvp
