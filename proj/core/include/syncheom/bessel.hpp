#pragma once

namespace syncheom {

/// Bessel function of the first kind J_n(x) for integer order.
///
/// Power series for |x| < 1, otherwise Miller's downward recurrence normalized
/// by J_0 + 2 Σ_k J_2k = 1. Accurate to ~1e-13 absolute for |n| <= 32, |x| <= 200.
/// Negative orders and arguments go through J_{-n}(x) = (-1)^n J_n(x) and
/// J_n(-x) = (-1)^n J_n(x), so both reflections hold exactly.
double bessel_j(int n, double x);

inline constexpr int kMaxBesselZeroIndex = 16;

/// k-th positive zero of J_0, 1 <= k <= kMaxBesselZeroIndex.
/// Throws std::out_of_range outside that range.
double bessel_j0_zero(int k);

}  // namespace syncheom
