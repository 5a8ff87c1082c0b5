#pragma once

#include "fvp/market_data.hpp"

namespace fvp {

/// Price together with its first and second sensitivities in the underlying.
struct GreekSet {
    double price = 0.0;
    double delta = 0.0;
    double gamma = 0.0;
};

/// Standard normal cumulative distribution, absolute error below 1e-12.
double norm_cdf(double x);

/// Standard normal density.
double norm_pdf(double x);

struct D1D2 {
    double d1 = 0.0;
    double d2 = 0.0;
};

/// Lognormal moneyness arguments; requires s > 0, K > 0, t > 0.
D1D2 d1_d2(double s, double K, double t, const MarketData& market);

/// European vanilla prices and sensitivities with time-to-expiry t. At t = 0
/// the payoff is returned with a step delta and zero gamma.
GreekSet bs_call(double s, double K, double t, const MarketData& market);
GreekSet bs_put(double s, double K, double t, const MarketData& market);

/// Down-and-in call via the reflection decomposition, differentiated
/// analytically in s. Requires s >= B > 0.
GreekSet down_and_in_call(double s, double K, double t, const MarketData& market);

/// Vanilla minus down-and-in, component-wise.
GreekSet down_and_out_call(double s, double K, double t, const MarketData& market);

/// Call under bilateral valuation adjustments: the vanilla set scaled by
/// exp(-beta t) with beta = (1 - R_C) lambda_C + s_F, valid because the call
/// value stays nonnegative.
GreekSet xva_call(double s, double K, double t, const MarketData& market);

}  // namespace fvp
