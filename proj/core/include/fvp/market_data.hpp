#pragma once

#include <optional>

namespace fvp {

/// Market and contract parameters shared by the pricing models.
///
/// The counterparty block (recoveries, intensities, funding spread) is only
/// read by the model with valuation adjustments; the barrier is only read by
/// the knock-out model.
struct MarketData {
    double sigma = 0.2;  ///< volatility, per sqrt(year)
    double r = 0.05;     ///< risk-free rate, per year
    double q = 0.0;      ///< continuous dividend yield, per year
    double T = 1.0;      ///< horizon, years
    double K = 70.0;     ///< strike

    std::optional<double> barrier;  ///< down barrier level, if any

    double R_B = 0.4;       ///< recovery rate of the buyer
    double R_C = 0.4;       ///< recovery rate of the seller
    double lambda_B = 0.0;  ///< buyer default intensity, per year
    double lambda_C = 0.0;  ///< seller default intensity, per year
    double s_F = 0.0;       ///< funding spread, per year

    /// Exponential decay rate of the positive-exposure call value under
    /// valuation adjustments: (1 - R_C) * lambda_C + s_F.
    double xva_decay() const { return (1.0 - R_C) * lambda_C + s_F; }

    bool operator==(const MarketData&) const = default;
};

/// Down-and-out call test data: sigma 0.2, r 0.05, q 0, T 1, K 70, B 200.
MarketData default_barrier_market();

/// Counterparty-risk call test data: sigma 0.3, r 0.02, T 5, K 15,
/// R_B = R_C = 0.4, lambda_B 0.04, lambda_C 0.05, s_F = (1 - R_B) * lambda_B.
MarketData default_xva_market();

}  // namespace fvp
