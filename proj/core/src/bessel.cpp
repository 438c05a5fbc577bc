#include "syncheom/bessel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

#include "syncheom/complex2x2.hpp"

namespace syncheom {
namespace {

double series_j(int n, double x) {
    // n >= 0, |x| < 1
    const double half = 0.5 * x;
    double term = 1.0;
    for (int i = 1; i <= n; ++i) term *= half / i;
    const double q = -half * half;
    double sum = term;
    for (int m = 1; m < 60; ++m) {
        term *= q / (static_cast<double>(m) * (m + n));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

double miller_j(int n, double x) {
    // n >= 0, x >= 1
    constexpr double kRescale = 1e250;
    const double scale = std::max(static_cast<double>(n), x);
    int start = static_cast<int>(scale + 30.0 + 3.0 * std::sqrt(scale));
    start += start & 1;

    const double two_over_x = 2.0 / x;
    double next = 0.0;    // J_{m+1}
    double cur = 1e-280;  // J_m
    double norm = 0.0;    // J_0 + 2 Σ J_2k, accumulated in the same scale
    double result = 0.0;
    for (int m = start; m > 0; --m) {
        const double prev = m * two_over_x * cur - next;  // J_{m-1}
        next = cur;
        cur = prev;
        if (std::abs(cur) > kRescale) {
            cur /= kRescale;
            next /= kRescale;
            norm /= kRescale;
            result /= kRescale;
        }
        if (m - 1 == n) result = cur;
        if ((m - 1) % 2 == 0 && m - 1 > 0) norm += 2.0 * cur;
    }
    norm += cur;
    return result / norm;
}

double j_nonneg(int n, double x) {
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;
    return x < 1.0 ? series_j(n, x) : miller_j(n, x);
}

}  // namespace

double bessel_j(int n, double x) {
    const int order = n < 0 ? -n : n;
    const bool odd = (order & 1) != 0;
    double sign = 1.0;
    if (n < 0 && odd) sign = -sign;
    if (x < 0.0 && odd) sign = -sign;
    return sign * j_nonneg(order, std::abs(x));
}

double bessel_j0_zero(int k) {
    if (k < 1 || k > kMaxBesselZeroIndex) {
        throw std::out_of_range("bessel_j0_zero: index " + std::to_string(k) + " outside [1, " +
                                std::to_string(kMaxBesselZeroIndex) + "]");
    }
    static std::array<double, kMaxBesselZeroIndex> cache{};
    static std::once_flag once;
    std::call_once(once, [] {
        for (int i = 1; i <= kMaxBesselZeroIndex; ++i) {
            // Asymptotic position (i - 1/4)π; neighbouring zeros are ~π apart,
            // so a ±1 bracket isolates exactly one sign change.
            const double guess = (i - 0.25) * kPi;
            double lo = guess - 1.0;
            double hi = guess + 1.0;
            double f_lo = bessel_j(0, lo);
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) break;
                const double f_mid = bessel_j(0, mid);
                if ((f_mid < 0.0) == (f_lo < 0.0)) {
                    lo = mid;
                    f_lo = f_mid;
                } else {
                    hi = mid;
                }
            }
            cache[static_cast<std::size_t>(i - 1)] = 0.5 * (lo + hi);
        }
    });
    return cache[static_cast<std::size_t>(k - 1)];
}

}  // namespace syncheom
