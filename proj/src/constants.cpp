#include "frachardy/constants.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "frachardy/errors.hpp"
#include "frachardy/quadrature.hpp"
#include "frachardy/singular.hpp"
#include "frachardy/special.hpp"

namespace frachardy {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_order(double s) {
    if (!(s > 0.0 && s < 1.0)) throw DomainError("fractional order s must lie in (0,1)");
}
} // namespace

double gamma0(int N, double s) {
    check_order(s);
    if (!(N > 2.0 * s)) throw DomainError("gamma0: requires N > 2s");
    const double num = gamma_fn(0.25 * (N + 2.0 * s));
    const double den = gamma_fn(0.25 * (N - 2.0 * s));
    return std::pow(2.0, 2.0 * s) * (num / den) * (num / den);
}

double gamma_alpha(int N, double s, double alpha) {
    check_order(s);
    if (!(N > 2.0 * s)) throw DomainError("gamma_alpha: requires N > 2s");
    const double amax = 0.5 * (N - 2.0 * s);
    if (alpha < 0.0 || alpha > amax + 1e-14)
        throw DomainError("gamma_alpha: alpha outside [0,(N-2s)/2]");
    if (alpha >= amax - 1e-14) return 0.0; // continuous limit at the pole
    const double g1 = gamma_fn(0.25 * (N + 2.0 * s + 2.0 * alpha));
    const double g2 = gamma_fn(0.25 * (N + 2.0 * s - 2.0 * alpha));
    const double g3 = gamma_fn(0.25 * (N - 2.0 * s - 2.0 * alpha));
    const double g4 = gamma_fn(0.25 * (N - 2.0 * s + 2.0 * alpha));
    return std::pow(2.0, 2.0 * s) * (g1 / g3) * (g2 / g4);
}

double m_alpha(int N, double s, double alpha) {
    check_order(s);
    if (!(alpha > -0.5 * N - s && alpha < 0.5 * (N - 2.0 * s)))
        throw DomainError("m_alpha: alpha outside (-N/2-s,(N-2s)/2)");
    return std::pow(2.0, s + alpha) * gamma_fn(0.25 * (N + 2.0 * s + 2.0 * alpha)) /
           gamma_fn(0.25 * (N - 2.0 * s - 2.0 * alpha));
}

double kappa_s(double s) {
    check_order(s);
    return gamma_fn(1.0 - s) / (std::pow(2.0, 2.0 * s - 1.0) * gamma_fn(s));
}

double powlaw_fourier_coeff(double sigma, int N) {
    if (!(sigma > 0.0 && sigma < N))
        throw DomainError("powlaw_fourier_coeff: sigma outside (0,N)");
    return std::pow(2.0, 0.5 * N - sigma) * gamma_fn(0.5 * (N - sigma)) /
           gamma_fn(0.5 * sigma);
}

double c_sN_closed_form(int N, double s) {
    check_order(s);
    // |Gamma(-s)| via reflection: Gamma(-s) = -pi / (s sin(pi s) Gamma(s)) < 0
    const double abs_gamma_minus_s = kPi / (s * std::sin(kPi * s) * gamma_fn(s));
    return std::pow(2.0, 2.0 * s) * gamma_fn(0.5 * N + s) /
           (std::pow(kPi, 0.5 * N) * abs_gamma_minus_s);
}

double p_Ns_closed_form(int N, double s) {
    check_order(s);
    return gamma_fn(0.5 * (N + 2.0 * s)) / (std::pow(kPi, 0.5 * N) * gamma_fn(s));
}

namespace {

// mass of the unnormalized Poisson kernel: omega * int r^{N-1} (1+r^2)^{-(N+2s)/2} dr
double poisson_raw_mass(int N, double s) {
    const double c = 0.5 * (N + 2.0 * s);
    const double r0 = 1e-3, r1 = 1e5;
    // head: (1+r^2)^{-c} = 1 - c r^2 + c(c+1)/2 r^4 - ...
    double head = std::pow(r0, double(N)) / N - c * std::pow(r0, N + 2.0) / (N + 2.0) +
                  0.5 * c * (c + 1.0) * std::pow(r0, N + 4.0) / (N + 4.0);
    // middle by composite Gauss on log panels
    auto f = [&](double r) { return std::pow(r, N - 1.0) * std::pow(1.0 + r * r, -c); };
    const auto bp = log_panels(r0, r1, 10);
    double mid = panel_integrate(f, bp, 12);
    // tail: r^{N-1-2c} (1+r^{-2})^{-c} expanded in r^{-2}
    const double e = N - 1.0 - 2.0 * c; // = -1-2s
    double tail = -std::pow(r1, e + 1.0) / (e + 1.0) +
                  c * std::pow(r1, e - 1.0) / (e - 1.0) -
                  0.5 * c * (c + 1.0) * std::pow(r1, e - 3.0) / (e - 3.0);
    return sphere_area(N) * (head + mid + tail);
}

// Fourier-side value of (-Lap)^s exp(-|x|^2/(2 sigma^2)) at the origin:
// (2 pi)^{-N/2} sigma^N int |zeta|^{2s} exp(-sigma^2 |zeta|^2/2) dzeta.
double gaussian_flap_origin(int N, double s, double sigma) {
    auto f = [&](double rho) {
        return std::pow(rho, 2.0 * s + N - 1.0) * std::exp(-0.5 * sigma * sigma * rho * rho);
    };
    // rho^{2s+N-1} has a cusp at zero: analytic head plus log-graded panels
    const double eps = 1e-6 / sigma, top = 14.0 / sigma;
    double integral = std::pow(eps, 2.0 * s + N) / (2.0 * s + N);
    integral += panel_integrate(f, log_panels(eps, top, 10), 12);
    return std::pow(sigma, N) * std::pow(2.0 * kPi, -0.5 * N) * sphere_area(N) * integral;
}

} // namespace

KernelConstants kernel_constants(int N, double s) {
    check_order(s);
    if (N < 1 || N > 3) throw DomainError("kernel_constants: N must be 1, 2 or 3");
    static std::map<std::pair<int, double>, KernelConstants> cache;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find({N, s});
        if (it != cache.end()) return it->second;
    }

    KernelConstants kc{};
    kc.p_Ns = 1.0 / poisson_raw_mass(N, s);

    // calibrate c_sN: raw principal value of the Gaussian probe at the origin
    // against the Fourier-side value, then validate on a second width.
    auto gaussian = [](double sigma) {
        return [sigma](std::span<const double> y) {
            double r2 = 0.0;
            for (double c : y) r2 += c * c;
            return std::exp(-0.5 * r2 / (sigma * sigma));
        };
    };
    PVOptions opt;
    opt.delta = 0.004; // quartic Taylor remainder scales as delta^{4-2s}
    opt.outer_radius = 50.0;
    std::vector<double> origin(N, 0.0);
    const double raw1 = pv_integral_raw(gaussian(1.0), origin, N, s, opt).value;
    kc.c_sN = gaussian_flap_origin(N, s, 1.0) / raw1;

    const double sigma2 = 1.5;
    PVOptions opt2 = opt;
    opt2.outer_radius = 75.0;
    const double raw2 = pv_integral_raw(gaussian(sigma2), origin, N, s, opt2).value;
    const double target2 = gaussian_flap_origin(N, s, sigma2);
    const double resid = std::abs(kc.c_sN * raw2 - target2) / std::abs(target2);
    if (resid > 1e-5)
        throw CalibrationError("kernel_constants: cross-backend residual " +
                               std::to_string(resid) + " exceeds tolerance");

    std::lock_guard<std::mutex> lock(mtx);
    cache[{N, s}] = kc;
    return kc;
}

ConstantSet constants_for(const Params& prm) {
    prm.validate_hardy();
    ConstantSet cs{};
    cs.gamma0 = gamma0(prm.N, prm.s);
    cs.gamma_alpha = gamma_alpha(prm.N, prm.s, prm.alpha);
    const double amax = prm.alpha_max();
    if (prm.alpha < amax - 1e-14) {
        cs.m_alpha = m_alpha(prm.N, prm.s, prm.alpha);
        cs.m_minus_alpha = m_alpha(prm.N, prm.s, -prm.alpha);
    } else {
        cs.m_alpha = 0.0;
        cs.m_minus_alpha = m_alpha(prm.N, prm.s, -prm.alpha);
    }
    cs.kappa_s = kappa_s(prm.s);
    const KernelConstants kc = kernel_constants(prm.N, prm.s);
    cs.c_sN = kc.c_sN;
    cs.p_Ns = kc.p_Ns;
    return cs;
}

} // namespace frachardy
