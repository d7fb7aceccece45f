// Test-only reference computations, kept independent of the library code
// paths they are used to check.

#ifndef SERRO_TEST_ORACLES_HPP
#define SERRO_TEST_ORACLES_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace oracles {

// Bessel J_n by its power series; converges fast for the arguments used here.
inline double bessel_series(int n, double x) {
    const int na = std::abs(n);
    double term = std::pow(x / 2.0, na);
    for (int i = 2; i <= na; ++i) term /= i;
    double sum = term;
    const double q = x * x / 4.0;
    for (int m = 1; m <= 60; ++m) {
        term *= -q / (static_cast<double>(m) * (m + na));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return (n < 0 && (na & 1)) ? -sum : sum;
}

// Sideband power of exp(i*phi(u)) for a 1-periodic phase, by composite
// Simpson quadrature of the Fourier integral over one period.
inline double sideband_by_quadrature(const std::function<double(double)>& phi,
                                     int k, int panels = 4096) {
    const double h = 1.0 / (2 * panels);
    std::complex<double> acc{0.0, 0.0};
    auto f = [&](double u) {
        const double arg = phi(u) - 2.0 * std::numbers::pi * k * u;
        return std::complex<double>{std::cos(arg), std::sin(arg)};
    };
    for (int i = 0; i < panels; ++i) {
        const double a = 2 * i * h;
        acc += (f(a) + 4.0 * f(a + h) + f(a + 2 * h)) * (h / 3.0);
    }
    return std::norm(acc);
}

inline double sinc(double x) {
    if (std::abs(x) < 1e-12) return 1.0;
    return std::sin(std::numbers::pi * x) / (std::numbers::pi * x);
}

} // namespace oracles

#endif
