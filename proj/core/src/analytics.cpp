#include "fvp/analytics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fvp {

namespace {

constexpr double inv_sqrt2 = 0.70710678118654752440;
constexpr double inv_sqrt_2pi = 0.39894228040143267794;

}  // namespace

double norm_cdf(double x) { return 0.5 * std::erfc(-x * inv_sqrt2); }

double norm_pdf(double x) { return inv_sqrt_2pi * std::exp(-0.5 * x * x); }

D1D2 d1_d2(double s, double K, double t, const MarketData& market) {
    if (!(s > 0.0) || !(K > 0.0) || !(t > 0.0))
        throw std::domain_error("d1_d2: requires s > 0, K > 0, t > 0");
    const double nu = market.r - market.q + 0.5 * market.sigma * market.sigma;
    const double srt = market.sigma * std::sqrt(t);
    const double d1 = (std::log(s / K) + nu * t) / srt;
    return {d1, d1 - srt};
}

GreekSet bs_call(double s, double K, double t, const MarketData& market) {
    if (s < 0.0 || K < 0.0 || t < 0.0)
        throw std::domain_error("bs_call: negative input");
    if (t == 0.0) {
        const double step = s > K ? 1.0 : (s < K ? 0.0 : 0.5);
        return {std::max(s - K, 0.0), step, 0.0};
    }
    const auto [d1, d2] = d1_d2(s, K, t, market);
    const double dq = std::exp(-market.q * t);
    const double dr = std::exp(-market.r * t);
    GreekSet g;
    g.price = s * dq * norm_cdf(d1) - K * dr * norm_cdf(d2);
    g.delta = dq * norm_cdf(d1);
    g.gamma = dq * norm_pdf(d1) / (s * market.sigma * std::sqrt(t));
    return g;
}

GreekSet bs_put(double s, double K, double t, const MarketData& market) {
    if (s < 0.0 || K < 0.0 || t < 0.0)
        throw std::domain_error("bs_put: negative input");
    if (t == 0.0) {
        const double step = s < K ? -1.0 : (s > K ? 0.0 : -0.5);
        return {std::max(K - s, 0.0), step, 0.0};
    }
    const auto [d1, d2] = d1_d2(s, K, t, market);
    const double dq = std::exp(-market.q * t);
    const double dr = std::exp(-market.r * t);
    GreekSet g;
    g.price = K * dr * norm_cdf(-d2) - s * dq * norm_cdf(-d1);
    g.delta = -dq * norm_cdf(-d1);
    g.gamma = dq * norm_pdf(d1) / (s * market.sigma * std::sqrt(t));
    return g;
}

GreekSet down_and_in_call(double s, double K, double t, const MarketData& market) {
    if (!market.barrier.has_value() || !(*market.barrier > 0.0))
        throw std::domain_error("down_and_in_call: requires a positive barrier");
    const double B = *market.barrier;
    if (s < B)
        throw std::domain_error("down_and_in_call: s below the barrier");

    const double sigma = market.sigma;
    const double lambda = 2.0 / (sigma * sigma) * (market.r - market.q - 0.5 * sigma * sigma);
    const double Kbar = std::max(B, K);
    const double srt = sigma * std::sqrt(t);
    const double dr = std::exp(-market.r * t);
    const double x = B * B / s;  // reflected spot

    // Reflected leg (B/s)^lambda * W(B^2/s) with
    //   W(x) = C(x, Kbar) + (Kbar - K) e^{-rt} N(d2(x, Kbar)).
    const GreekSet c_img = bs_call(x, Kbar, t, market);
    const auto [d1x, d2x] = d1_d2(x, Kbar, t, market);
    const double cash = (Kbar - K) * dr;
    const double w = c_img.price + cash * norm_cdf(d2x);
    const double wp = c_img.delta + cash * norm_pdf(d2x) / (x * srt);
    const double wpp = c_img.gamma - cash * norm_pdf(d2x) * d1x / (x * x * srt * srt);

    GreekSet g;
    if (w != 0.0) {
        const double pw = std::pow(B / s, lambda);
        g.price = pw * w;
        g.delta = -(pw / s) * (lambda * w + x * wp);
        g.gamma = (pw / (s * s)) *
                  (lambda * (lambda + 1.0) * w + 2.0 * (lambda + 1.0) * x * wp + x * x * wpp);
    }

    if (B > K) {
        const GreekSet pk = bs_put(s, K, t, market);
        const GreekSet pb = bs_put(s, B, t, market);
        const auto [d1b, d2b] = d1_d2(s, B, t, market);
        const double cash_b = (B - K) * dr;
        g.price += pk.price - pb.price + cash_b * norm_cdf(-d2b);
        g.delta += pk.delta - pb.delta - cash_b * norm_pdf(d2b) / (s * srt);
        g.gamma += pk.gamma - pb.gamma + cash_b * norm_pdf(d2b) * d1b / (s * s * srt * srt);
    }
    return g;
}

GreekSet down_and_out_call(double s, double K, double t, const MarketData& market) {
    const GreekSet vanilla = bs_call(s, K, t, market);
    const GreekSet di = down_and_in_call(s, K, t, market);
    return {vanilla.price - di.price, vanilla.delta - di.delta, vanilla.gamma - di.gamma};
}

GreekSet xva_call(double s, double K, double t, const MarketData& market) {
    if (s <= 0.0)
        return {};
    const double damp = std::exp(-market.xva_decay() * t);
    const GreekSet g = bs_call(s, K, t, market);
    return {g.price * damp, g.delta * damp, g.gamma * damp};
}

}  // namespace fvp
