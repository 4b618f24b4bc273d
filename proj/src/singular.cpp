#include "frachardy/singular.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "frachardy/constants.hpp"
#include "frachardy/errors.hpp"
#include "frachardy/quadrature.hpp"
#include "frachardy/special.hpp"

namespace frachardy {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Unit directions and weights for the spherical mean; weights sum to
// sphere_area(N).
struct SphereRule {
    std::vector<std::array<double, 3>> dirs;
    std::vector<double> w;
};

SphereRule make_sphere_rule(int N) {
    SphereRule rule;
    if (N == 1) {
        rule.dirs = {{1.0, 0.0, 0.0}, {-1.0, 0.0, 0.0}};
        rule.w = {1.0, 1.0};
    } else if (N == 2) {
        const int M = 48;
        for (int i = 0; i < M; ++i) {
            const double phi = 2.0 * kPi * (i + 0.5) / M;
            rule.dirs.push_back({std::cos(phi), std::sin(phi), 0.0});
            rule.w.push_back(2.0 * kPi / M);
        }
    } else if (N == 3) {
        const GaussRule& g = gauss_rule(12);
        const int M = 24;
        for (std::size_t j = 0; j < g.x.size(); ++j) {
            const double mu = g.x[j];
            const double sin_th = std::sqrt(1.0 - mu * mu);
            for (int i = 0; i < M; ++i) {
                const double phi = 2.0 * kPi * (i + 0.5) / M;
                rule.dirs.push_back({sin_th * std::cos(phi), sin_th * std::sin(phi), mu});
                rule.w.push_back(g.w[j] * 2.0 * kPi / M);
            }
        }
    } else {
        throw DomainError("singular backend: N must be 1, 2 or 3");
    }
    return rule;
}

const SphereRule& sphere_rule(int N) {
    static const SphereRule r1 = make_sphere_rule(1);
    static const SphereRule r2 = make_sphere_rule(2);
    static const SphereRule r3 = make_sphere_rule(3);
    switch (N) {
        case 1: return r1;
        case 2: return r2;
        default: return r3;
    }
}

} // namespace

PVResult pv_integral_raw(const FieldFn& f, std::span<const double> x, int N, double s,
                         const PVOptions& opt) {
    if (!(s > 0.0 && s < 1.0)) throw DomainError("pv_integral_raw: s outside (0,1)");
    if (static_cast<int>(x.size()) != N) throw DomainError("pv_integral_raw: point size != N");
    const SphereRule& sph = sphere_rule(N);
    const double omega = sphere_area(N);
    const double fx = f(x);

    std::vector<double> y(N);
    auto eval_shifted = [&](const std::array<double, 3>& dir, double r) {
        for (int d = 0; d < N; ++d) y[d] = x[d] + r * dir[d];
        return f(std::span<const double>(y));
    };

    // inner ball: Taylor even part, - Lap f(x)/(2N) * omega * delta^{2-2s}/(2-2s)
    const double h = opt.fd_step_factor * opt.delta;
    double lap = 0.0;
    for (int d = 0; d < N; ++d) {
        std::array<double, 3> e{};
        e[d] = 1.0;
        lap += (eval_shifted(e, h) - 2.0 * fx + eval_shifted(e, -h)) / (h * h);
    }
    const double inner =
        -lap / (2.0 * N) * omega * std::pow(opt.delta, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);

    // shell delta..R: int r^{-1-2s} [omega f(x) - S_f(r)] dr
    auto shell_integrand = [&](double r) {
        double sf = 0.0;
        for (std::size_t i = 0; i < sph.dirs.size(); ++i)
            sf += sph.w[i] * eval_shifted(sph.dirs[i], r);
        return std::pow(r, -1.0 - 2.0 * s) * (omega * fx - sf);
    };
    const auto bp = log_panels(opt.delta, opt.outer_radius, opt.per_decade);
    const double shell = panel_integrate(shell_integrand, bp, 8);

    // beyond R: the f(x) part integrates exactly; f(y) is modeled by its
    // spherical average on the truncation sphere (exact for constants), and
    // the residual is bounded by the sampled spread and the drift to 2R.
    const double R = opt.outer_radius;
    const double tail_weight = omega * std::pow(R, -2.0 * s) / (2.0 * s);
    double avg_R = 0.0, max_R = -1e300, min_R = 1e300;
    double avg_2R = 0.0;
    for (std::size_t i = 0; i < sph.dirs.size(); ++i) {
        const double v = eval_shifted(sph.dirs[i], R);
        avg_R += sph.w[i] * v;
        max_R = std::max(max_R, v);
        min_R = std::min(min_R, v);
        avg_2R += sph.w[i] * eval_shifted(sph.dirs[i], 2.0 * R);
    }
    avg_R /= omega;
    avg_2R /= omega;
    const double fx_tail = (fx - avg_R) * tail_weight;
    const double tail_bound =
        ((max_R - min_R) + 2.0 * std::abs(avg_2R - avg_R)) * tail_weight;

    PVResult res{inner + shell + fx_tail, tail_bound};
    if (opt.check_tail && res.tail_bound > opt.tail_rel_tol * std::abs(res.value) &&
        res.tail_bound > 1e-14)
        throw QuadratureError("pv_integral_raw: tail-truncation bound exceeds tolerance");
    return res;
}

PVResult frac_lap_singular(const FieldFn& f, std::span<const double> x, double s,
                           const PVOptions& opt) {
    const int N = static_cast<int>(x.size());
    PVResult raw = pv_integral_raw(f, x, N, s, opt);
    const double c = kernel_constants(N, s).c_sN;
    return {c * raw.value, c * raw.tail_bound};
}

} // namespace frachardy
