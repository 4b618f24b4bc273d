#include "frachardy/special.hpp"

#include <cmath>
#include <limits>

#include "frachardy/errors.hpp"

namespace frachardy {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Lanczos g=7, n=9 coefficient set.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double lanczos_gamma(double x) {
    // valid for x >= 0.5
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (x - 1.0 + i);
    const double t = x + 6.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, x - 0.5) * std::exp(-t) * acc;
}

} // namespace

double gamma_fn(double x) {
    if (x <= 0.0 && x == std::floor(x))
        throw DomainError("gamma_fn: pole at non-positive integer argument");
    if (x < 0.5) {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return kPi / (std::sin(kPi * x) * lanczos_gamma(1.0 - x));
    }
    return lanczos_gamma(x);
}

double sphere_area(int N) {
    if (N < 1) throw DomainError("sphere_area: N must be positive");
    if (N == 1) return 2.0; // counting measure on {-1, +1}
    return 2.0 * std::pow(kPi, 0.5 * N) / gamma_fn(0.5 * N);
}

void bessel_asymptotic_pq(double nu, double z, double& p, double& q) {
    // a_k = prod_{j=1..k} (4 nu^2 - (2j-1)^2) / (k! 8^k);
    // P = sum (-1)^k a_{2k} / z^{2k}, Q = sum (-1)^k a_{2k+1} / z^{2k+1}.
    const double mu = 4.0 * nu * nu;
    double a = 1.0; // a_0
    p = 1.0;
    q = 0.0;
    double zpow = 1.0;
    double prev = 1.0;
    for (int k = 1; k <= 12; ++k) {
        const double odd = 2.0 * k - 1.0;
        a *= (mu - odd * odd) / (8.0 * k);
        if (a == 0.0) break; // half-integer order: expansion terminates
        zpow *= z;
        const double term = a / zpow;
        if (std::abs(term) > prev) break; // asymptotic series turned
        prev = std::abs(term);
        const double sgn = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 1)
            q += sgn * term;
        else
            p += sgn * term;
    }
}

double bessel_j(double nu, double x) {
    if (nu < -0.5) throw DomainError("bessel_j: order below -1/2 unsupported");
    if (x < 0.0) throw DomainError("bessel_j: negative argument");
    if (x == 0.0) {
        if (nu == 0.0) return 1.0;
        return nu > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    if (x < 14.0) {
        // J_nu(x) = (x/2)^nu sum_k (-1)^k (x^2/4)^k / (k! Gamma(nu+k+1))
        const double x2 = 0.25 * x * x;
        double term = std::pow(0.5 * x, nu) / gamma_fn(nu + 1.0);
        double sum = term;
        for (int k = 1; k < 80; ++k) {
            term *= -x2 / (k * (nu + k));
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
        }
        return sum;
    }
    double p, q;
    bessel_asymptotic_pq(nu, x, p, q);
    const double w = x - 0.5 * nu * kPi - 0.25 * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(w) - q * std::sin(w));
}

} // namespace frachardy
