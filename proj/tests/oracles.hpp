#pragma once

// Independent reference computations for tests. Nothing here calls into the eigensolver or the
// protocol implementation.

#include <cmath>
#include <cstdint>
#include <vector>

namespace spinsim::reference {

inline double factorial(int k) {
    double out = 1.0;
    for (int i = 2; i <= k; ++i) out *= i;
    return out;
}

/// Wigner small-d element d^j_{m', m}(beta) with all of j, m', m passed doubled.
inline double wigner_small_d(int j2, int mp2, int m2, double beta) {
    const int jpmp = (j2 + mp2) / 2, jmmp = (j2 - mp2) / 2;
    const int jpm = (j2 + m2) / 2, jmm = (j2 - m2) / 2;
    const int mp_minus_m = (mp2 - m2) / 2;
    const double prefactor = std::sqrt(factorial(jpmp) * factorial(jmmp) * factorial(jpm) * factorial(jmm));
    const double c = std::cos(beta / 2.0);
    const double s = std::sin(beta / 2.0);
    double sum = 0.0;
    for (int k = 0; k <= j2; ++k) {
        const int d1 = jpm - k, d2 = k, d3 = jmmp - k, d4 = k + mp_minus_m;
        if (d1 < 0 || d3 < 0 || d4 < 0) continue;
        const double sign = ((k + mp_minus_m) % 2 == 0) ? 1.0 : -1.0;
        sum += sign / (factorial(d1) * factorial(d2) * factorial(d3) * factorial(d4)) *
               std::pow(c, j2 - 2 * k - mp_minus_m) * std::pow(s, 2 * k + mp_minus_m);
    }
    return prefactor * sum;
}

/// Born-rule joint table for a = z, b = (sin t, 0, cos t): alice outcome m measured along z leaves
/// Bob in |-m>, so P(m, m'') = |d^s_{m'', -m}(t)|^2 / (2s + 1). Row/column index i holds 2m = two_s - 2i.
inline std::vector<double> singlet_joint_wigner(int two_s, double theta) {
    const int d = two_s + 1;
    std::vector<double> out(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const int m2 = two_s - 2 * i;
            const int mb2 = two_s - 2 * j;
            const double amp = wigner_small_d(two_s, mb2, -m2, theta);
            out[static_cast<std::size_t>(i) * d + j] = amp * amp / d;
        }
    return out;
}

/// Exact joint of the n-bit protocol at a.b = c: bits are independent with P(f_k, g_k) = (1 + f_k g_k c) / 4
/// where 2 alpha = -sum 2^(n-k) f_k and 2 beta = sum 2^(n-k) g_k. Enumerates all 4^n sign patterns.
inline std::vector<double> protocol_joint_exact(int n, double c) {
    const int d = 1 << n;
    const int two_s = d - 1;
    std::vector<double> out(static_cast<std::size_t>(d) * d, 0.0);
    for (int fmask = 0; fmask < d; ++fmask)
        for (int gmask = 0; gmask < d; ++gmask) {
            double p = 1.0;
            int alpha2 = 0;
            int beta2 = 0;
            for (int k = 0; k < n; ++k) {
                const int f = (fmask >> k) & 1 ? 1 : -1;
                const int g = (gmask >> k) & 1 ? 1 : -1;
                p *= (1.0 + f * g * c) / 4.0;
                alpha2 -= (1 << (n - 1 - k)) * f;
                beta2 += (1 << (n - 1 - k)) * g;
            }
            const int row = (two_s - alpha2) / 2;
            const int col = (two_s - beta2) / 2;
            out[static_cast<std::size_t>(row) * d + col] += p;
        }
    return out;
}

/// Var(alpha beta) when beta = -alpha and alpha is uniform over {s, ..., -s}.
inline double anticorrelated_product_variance(int two_s) {
    const int d = two_s + 1;
    double m2 = 0.0;
    double m4 = 0.0;
    for (int i = 0; i < d; ++i) {
        const double m = 0.5 * (two_s - 2 * i);
        m2 += m * m / d;
        m4 += m * m * m * m / d;
    }
    return m4 - m2 * m2;
}

}  // namespace spinsim::reference
