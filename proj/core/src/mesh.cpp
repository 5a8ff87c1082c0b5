#include "fvp/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fvp/errors.hpp"

namespace fvp {

Grid build_grid(double s_min, double s_max, int n_cells) {
    if (!(s_max > s_min))
        throw ConfigError("build_grid: degenerate interval [" + std::to_string(s_min) +
                          ", " + std::to_string(s_max) + "]");
    if (n_cells < 3)
        throw ConfigError("build_grid: need at least 3 cells, got " +
                          std::to_string(n_cells));

    Grid g;
    g.s_min = s_min;
    g.s_max = s_max;
    g.n_cells = n_cells;

    const double width = s_max - s_min;
    g.ds = width / n_cells;

    g.edges.resize(n_cells + 1);
    for (int i = 0; i <= n_cells; ++i)
        g.edges[i] = s_min + width * (static_cast<double>(i) / n_cells);
    g.edges.back() = s_max;

    g.centers.resize(n_cells);
    for (int i = 0; i < n_cells; ++i)
        g.centers[i] = 0.5 * (g.edges[i] + g.edges[i + 1]);

    return g;
}

State project_initial(const Grid& grid,
                      const std::function<double(double)>& payoff,
                      std::span<const double> breakpoints) {
    std::vector<double> cuts(breakpoints.begin(), breakpoints.end());
    std::sort(cuts.begin(), cuts.end());

    State st;
    st.time = 0.0;
    st.values.resize(grid.n_cells);

    for (int i = 0; i < grid.n_cells; ++i) {
        const double a = grid.edges[i];
        const double b = grid.edges[i + 1];

        // Midpoint rule per sub-piece: exact on linear pieces and never
        // evaluates the payoff at a breakpoint.
        double integral = 0.0;
        double lo = a;
        for (double c : cuts) {
            if (c > lo && c < b) {
                integral += (c - lo) * payoff(0.5 * (lo + c));
                lo = c;
            }
        }
        integral += (b - lo) * payoff(0.5 * (lo + b));

        st.values[i] = integral / (b - a);
    }
    return st;
}

double l1_error(const Grid& grid, const State& numeric,
                const std::function<double(double)>& exact) {
    double sum = 0.0;
    for (int i = 0; i < grid.n_cells; ++i)
        sum += std::abs(numeric.values[i] - exact(grid.centers[i]));
    return sum * grid.ds;
}

}  // namespace fvp
