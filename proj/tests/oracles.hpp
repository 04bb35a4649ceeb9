#pragma once

// Reference computations that share no code with the library.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

// O(N^2) DFT with the library's convention: c_n = (1/N) sum_j f_j e^{-2 pi i n j / N}.
inline std::vector<cplx> naive_dft(const std::vector<cplx>& f) {
    const std::size_t n = f.size();
    std::vector<cplx> c(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx s{};
        for (std::size_t j = 0; j < n; ++j)
            s += f[j] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>((k * j) % n) / static_cast<double>(n));
        c[k] = s / static_cast<double>(n);
    }
    return c;
}

// sum_k c_k z^k with every power formed by std::pow.
inline cplx power_sum(const std::vector<cplx>& c, cplx z) {
    cplx s{};
    for (std::size_t k = 0; k < c.size(); ++k)
        s += c[k] * (k == 0 ? cplx{1.0} : std::pow(z, static_cast<double>(k)));
    return s;
}

inline double chebyshev_t(int n, double x) {
    if (n == 0)
        return 1.0;
    double a = 1.0, b = x;
    for (int k = 2; k <= n; ++k) {
        const double c = 2.0 * x * b - a;
        a = b;
        b = c;
    }
    return b;
}

// Modified Bessel function I_n(x) from its power series.
inline double bessel_i(int n, double x) {
    double term = std::pow(x / 2.0, n) / std::tgamma(n + 1.0);
    double s = term;
    for (int k = 1; k < 200; ++k) {
        term *= (x * x / 4.0) / (static_cast<double>(k) * static_cast<double>(k + n));
        s += term;
        if (term < 1e-18 * s)
            break;
    }
    return s;
}

// Lower estimate of sup |L c| over |A_j c| <= 1 for two complex unknowns by
// scanning directions c = (cos a, sin a e^{i p}) and scaling each to the
// boundary. One unknown is handled exactly.
inline double grid_max_modulus(const std::vector<std::vector<cplx>>& a, const std::vector<cplx>& l, int steps = 600) {
    if (l.size() == 1) {
        double worst = 0.0;
        for (const auto& row : a)
            worst = std::max(worst, std::abs(row[0]));
        return worst == 0.0 ? std::numeric_limits<double>::infinity() : std::abs(l[0]) / worst;
    }
    double best = 0.0;
    for (int i = 0; i <= steps; ++i) {
        const double t = std::numbers::pi / 2.0 * i / steps;
        for (int k = 0; k < steps; ++k) {
            const cplx c0 = std::cos(t), c1 = std::polar(std::sin(t), 2.0 * std::numbers::pi * k / steps);
            double m = 0.0;
            for (const auto& row : a)
                m = std::max(m, std::abs(row[0] * c0 + row[1] * c1));
            const double v = std::abs(l[0] * c0 + l[1] * c1);
            if (m == 0.0) {
                if (v > 0.0)
                    return std::numeric_limits<double>::infinity();
                continue;
            }
            best = std::max(best, v / m);
        }
    }
    return best;
}

} // namespace oracle
