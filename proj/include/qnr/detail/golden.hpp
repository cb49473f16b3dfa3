#pragma once

#include <cmath>
#include <utility>

namespace qnr::detail {

/// Golden-section maximisation of a unimodal f on [a, b]; stops when the
/// bracket is narrower than xtol. Returns (argmax, max).
template <class F>
std::pair<double, double> golden_max(F&& f, double a, double b, double xtol, int max_iter = 200) {
    constexpr double r = 0.6180339887498949;
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < max_iter && b - a > xtol; ++it) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

template <class F>
std::pair<double, double> golden_min(F&& f, double a, double b, double xtol, int max_iter = 200) {
    auto [x, v] = golden_max([&](double t) { return -f(t); }, a, b, xtol, max_iter);
    return {x, -v};
}

}  // namespace qnr::detail
