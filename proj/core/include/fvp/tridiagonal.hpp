#pragma once

#include <span>
#include <vector>

namespace fvp {

/// Tridiagonal matrix in banded storage.
///
/// Row i holds (sub[i], diag[i], super[i]); sub[0] and super[n-1] are kept at
/// zero so that sub[i+1] and super[i] refer to the same interface when the
/// matrix comes from a flux difference.
struct Tridiagonal {
    std::vector<double> sub, diag, super;

    Tridiagonal() = default;
    explicit Tridiagonal(int n) : sub(n, 0.0), diag(n, 0.0), super(n, 0.0) {}

    int size() const { return static_cast<int>(diag.size()); }

    /// out = A * x
    void apply(std::span<const double> x, std::span<double> out) const;
};

/// I - scale * A, same storage layout.
Tridiagonal identity_minus(const Tridiagonal& a, double scale);

}  // namespace fvp
