#ifndef FRACHARDY_TEST_SUPPORT_HPP
#define FRACHARDY_TEST_SUPPORT_HPP

#include <cmath>
#include <functional>

// shared helpers for the test suites

namespace testsup {

inline double rel_err(double value, double target) {
    return std::abs(value - target) / std::abs(target);
}

// composite Simpson, used as an independent quadrature oracle
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

// smooth compactly supported bump on [0, R), C^infinity
inline double smooth_bump(double r, double R = 1.0) {
    const double x = r / R;
    if (x >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - x * x));
}

} // namespace testsup

#endif
