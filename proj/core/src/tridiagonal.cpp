#include "fvp/tridiagonal.hpp"

namespace fvp {

void Tridiagonal::apply(std::span<const double> x, std::span<double> out) const {
    const int n = size();
    for (int i = 0; i < n; ++i) {
        double v = diag[i] * x[i];
        if (i > 0) v += sub[i] * x[i - 1];
        if (i + 1 < n) v += super[i] * x[i + 1];
        out[i] = v;
    }
}

Tridiagonal identity_minus(const Tridiagonal& a, double scale) {
    const int n = a.size();
    Tridiagonal m(n);
    for (int i = 0; i < n; ++i) {
        m.sub[i] = -scale * a.sub[i];
        m.diag[i] = 1.0 - scale * a.diag[i];
        m.super[i] = -scale * a.super[i];
    }
    return m;
}

}  // namespace fvp
