#include "fgqa/specfun.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "fgqa/error.hpp"

namespace fgqa::specfun {

namespace {

constexpr double kSwitch = 4.0;
constexpr double kEps = 1e-16;
constexpr int kMaxIter = 200;

SineCosineIntegrals series(double y) {
    const double y2 = y * y;
    // Si: sum (-1)^k y^(2k+1) / ((2k+1)(2k+1)!)
    double term = y;  // y^(2k+1)/(2k+1)!
    double si = y;
    for (int k = 1; k < kMaxIter; ++k) {
        term *= -y2 / ((2.0 * k) * (2.0 * k + 1.0));
        const double add = term / (2.0 * k + 1.0);
        si += add;
        if (std::abs(add) < kEps * std::abs(si)) break;
    }
    // Ci: gamma + ln y + sum_{k>=1} (-1)^k y^(2k) / (2k (2k)!)
    term = 1.0;  // y^(2k)/(2k)!
    double tail = 0.0;
    for (int k = 1; k < kMaxIter; ++k) {
        term *= -y2 / ((2.0 * k - 1.0) * (2.0 * k));
        const double add = term / (2.0 * k);
        tail += add;
        if (std::abs(add) < kEps * (std::abs(tail) + 1.0)) break;
    }
    const double ci = std::numbers::egamma + std::log(y) + tail;
    return {si - 0.5 * std::numbers::pi, ci};
}

// Modified Lentz evaluation of E1(iy) * exp(iy).
SineCosineIntegrals continued_fraction(double y) {
    using cplx = std::complex<double>;
    constexpr double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    cplx b(1.0, y);
    cplx c(1.0 / tiny, 0.0);
    cplx d = 1.0 / b;
    cplx h = d;
    for (int i = 2; i <= kMaxIter; ++i) {
        const double a = -static_cast<double>(i - 1) * (i - 1);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const cplx del = c * d;
        h *= del;
        if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < kEps) break;
    }
    h *= cplx(std::cos(y), -std::sin(y));
    return {h.imag(), -h.real()};
}

}  // namespace

SineCosineIntegrals sici(double y) {
    detail::require(y > 0.0 && std::isfinite(y), "sici: argument must be positive and finite");
    return y <= kSwitch ? series(y) : continued_fraction(y);
}

}  // namespace fgqa::specfun
