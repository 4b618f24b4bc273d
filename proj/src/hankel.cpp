#include "frachardy/hankel.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "frachardy/constants.hpp"
#include "frachardy/errors.hpp"
#include "frachardy/quadrature.hpp"
#include "frachardy/special.hpp"

namespace frachardy {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kZSwitch = 14.0; // series/asymptotic switch for the kernel

// kern(z) = z^{1/2} J_{(N-2)/2}(z)
double kern_eval(int N, double z) {
    if (N == 1) return std::sqrt(2.0 / kPi) * std::cos(z);
    if (N == 3) return std::sqrt(2.0 / kPi) * std::sin(z);
    return std::sqrt(z) * bessel_j(0.5 * (N - 2.0), z);
}

// kern(z) = Ac(z) cos z + As(z) sin z for z >= kZSwitch.
void kern_trig_coeffs(int N, double z, double& Ac, double& As) {
    const double nu = 0.5 * (N - 2.0);
    const double phi = 0.5 * nu * kPi + 0.25 * kPi;
    double p, q;
    bessel_asymptotic_pq(nu, z, p, q);
    const double c = std::sqrt(2.0 / kPi);
    Ac = c * (p * std::cos(phi) + q * std::sin(phi));
    As = c * (p * std::sin(phi) - q * std::cos(phi));
}

// Filon moments over [-1,1] for a cubic envelope:
//   m0  = int cos(theta xi) dxi        m1s = int xi   sin(theta xi) dxi
//   m2c = int xi^2 cos(theta xi) dxi   m3s = int xi^3 sin(theta xi) dxi
void filon_moments(double theta, double& m0, double& m1s, double& m2c, double& m3s) {
    const double s = std::sin(theta), c = std::cos(theta);
    const double t2 = theta * theta;
    m0 = 2.0 * s / theta;
    m1s = 2.0 * (s - theta * c) / t2;
    m2c = 2.0 * ((t2 - 2.0) * s + 2.0 * theta * c) / (t2 * theta);
    m3s = 2.0 * (-c / theta + 3.0 * s / t2 - 6.0 * (s - theta * c) / (t2 * t2));
}

// monomial coefficients of the cubic through samples at xi = -1, -1/3, 1/3, 1
void cubic_coeffs(double f1, double f2, double f3, double f4, double c[4]) {
    c[0] = (-f1 + 9.0 * f2 + 9.0 * f3 - f4) / 16.0;
    c[1] = (f1 - 27.0 * f2 + 27.0 * f3 - f4) / 16.0;
    c[2] = 9.0 * (f1 - f2 - f3 + f4) / 16.0;
    c[3] = 9.0 * (-f1 + 3.0 * f2 - 3.0 * f3 + f4) / 16.0;
}

struct TransformModel {
    bool present = false;
    double coeff = 0.0; // D in D * r^d
    double d = 0.0;
    double sigma() const { return -d; }
};

struct Workspace {
    const std::vector<double>& x;
    std::vector<double> rest;     // grid values with the tail model removed
    int N;
    TransformModel model;
    double env_scale = 0.0;       // rough magnitude of int |env| dr
    double head_sigma = 0.0;
    bool head_present = false;
    double head_v0 = 0.0;
    std::vector<double> lx;       // log radii
    std::vector<double> ly;       // log |rest| where defined
    std::vector<signed char> cell_cubic; // 1: log-log cubic usable on cell

    // local model of the grid data inside cell ic
    double eval_cell(std::size_t ic, double r) const {
        if (cell_cubic[ic]) {
            const std::size_t j0 = (ic == 0) ? 0 : ic - 1;
            const double t = std::log(r);
            double num = 0.0;
            for (int a = 0; a < 4; ++a) {
                double term = ly[j0 + a];
                for (int b = 0; b < 4; ++b) {
                    if (a == b) continue;
                    term *= (t - lx[j0 + b]) / (lx[j0 + a] - lx[j0 + b]);
                }
                num += term;
            }
            return double(cell_cubic[ic]) * std::exp(num);
        }
        const double va = rest[ic], vb = rest[ic + 1];
        const double a = x[ic], b = x[ic + 1];
        if (va * vb > 0.0) {
            const double sigma = std::log(vb / va) / std::log(b / a);
            if (std::abs(sigma) < 12.0) return va * std::pow(r / a, sigma);
        }
        return va + (vb - va) * (r - a) / (b - a);
    }
};

Workspace prepare(const std::vector<double>& x, const std::vector<double>& v, int N,
                  std::optional<double> tail_d) {
    Workspace ws{x, v, N, {}, 0.0, 0.0, false, 0.0, {}, {}, {}};
    double maxabs = 0.0;
    for (double t : v) maxabs = std::max(maxabs, std::abs(t));

    if (tail_d && std::abs(v.back()) > 1e-13 * maxabs) {
        const double d = *tail_d;
        if (d >= 0.0)
            throw QuadratureError("radial transform: tail exponent >= 0 is not integrable");
        if (d > -double(N)) {
            ws.model.present = true;
            ws.model.d = d;
            ws.model.coeff = v.back() / std::pow(x.back(), d);
            for (std::size_t i = 0; i < v.size(); ++i)
                ws.rest[i] -= ws.model.coeff * std::pow(x[i], d);
        }
        // d <= -N decays fast enough that truncation at x.back() is harmless
    }

    const double half = 0.5 * (N - 1.0);
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double w = x[i + 1] - x[i];
        ws.env_scale += 0.5 * w *
            (std::abs(ws.rest[i]) * std::pow(x[i], half) +
             std::abs(ws.rest[i + 1]) * std::pow(x[i + 1], half));
    }

    // classify cells: a log-log cubic through the four surrounding nodes is
    // used where the data is positive and log-smooth; kinks and sign changes
    // fall back to the two-point local model
    const std::size_t n = x.size();
    ws.lx.resize(n);
    ws.ly.assign(n, 0.0);
    std::vector<signed char> sgn(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        ws.lx[i] = std::log(x[i]);
        if (std::abs(ws.rest[i]) > 1e-300) {
            ws.ly[i] = std::log(std::abs(ws.rest[i]));
            sgn[i] = ws.rest[i] > 0.0 ? 1 : -1;
        }
    }
    ws.cell_cubic.assign(n - 1, 0);
    for (std::size_t ic = 0; ic + 1 < n; ++ic) {
        if (ic == 0 || ic + 2 >= n) continue;
        const std::size_t j0 = ic - 1;
        const signed char s0 = sgn[j0];
        bool ok = s0 != 0 && sgn[j0 + 1] == s0 && sgn[j0 + 2] == s0 && sgn[j0 + 3] == s0;
        if (ok) {
            // kink detection: a genuine corner makes consecutive slope
            // differences disagree violently; smooth curvature does not
            double slope[3], diff[2];
            for (int a = 0; a < 3; ++a)
                slope[a] = (ws.ly[j0 + a + 1] - ws.ly[j0 + a]) /
                           (ws.lx[j0 + a + 1] - ws.lx[j0 + a]);
            diff[0] = slope[1] - slope[0];
            diff[1] = slope[2] - slope[1];
            const double mx = std::max(std::abs(diff[0]), std::abs(diff[1]));
            if (std::abs(diff[1] - diff[0]) > 0.35 * mx + 0.02) ok = false;
        }
        ws.cell_cubic[ic] = ok ? s0 : 0;
    }

    const double v0 = ws.rest[0], v1 = ws.rest[1];
    if (std::abs(v0) > 1e-13 * std::max(maxabs, 1e-300)) {
        ws.head_present = true;
        ws.head_v0 = v0;
        ws.head_sigma = (v0 * v1 > 0.0) ? std::log(v1 / v0) / std::log(x[1] / x[0]) : 0.0;
        const double nu = 0.5 * (N - 2.0);
        if (ws.head_sigma <= -(0.5 * N + nu + 0.5))
            throw QuadratureError("radial transform: head singularity not integrable");
    }
    return ws;
}

// numeric transform of the grid remainder at a single output node
double transform_rest_at(const Workspace& ws, double rho, const HankelOptions& opt,
                         bool refine) {
    const auto& x = ws.x;
    const int N = ws.N;
    const double half = 0.5 * (N - 1.0);
    double acc = 0.0;

    // head region below the grid
    if (ws.head_present) {
        const double x0 = x.front();
        const double lo = x0 * opt.head_extent;
        const int per_dec = std::max(1, std::min(48, int(std::ceil(2.0 * rho * x0))));
        const auto bp = log_panels(lo, x0, per_dec);
        auto f = [&](double r) {
            return kern_eval(N, rho * r) * ws.head_v0 * std::pow(r / x0, ws.head_sigma) *
                   std::pow(r, half);
        };
        acc += panel_integrate(f, bp, 8);
        // analytic tip below lo: kern(z) -> z^{nu+1/2} / (2^nu Gamma(nu+1))
        const double nu = 0.5 * (N - 2.0);
        const double e = ws.head_sigma + half + nu + 0.5;
        acc += ws.head_v0 * std::pow(lo / x0, ws.head_sigma) * std::pow(rho * lo, nu + 0.5) /
               (std::pow(2.0, nu) * gamma_fn(nu + 1.0)) * lo / (e + 1.0);
    }

    const double skip_tol = 1e-15 * std::max(ws.env_scale, 1e-300);
    for (std::size_t ic = 0; ic + 1 < x.size(); ++ic) {
        const int nsub = refine ? 2 : 1;
        for (int sub = 0; sub < nsub; ++sub) {
            const double a0 = x[ic], b0 = x[ic + 1];
            const double va0 = ws.rest[ic], vb0 = ws.rest[ic + 1];
            const double a = a0 + (b0 - a0) * sub / double(nsub);
            const double b = a0 + (b0 - a0) * (sub + 1) / double(nsub);
            const double va = (sub == 0) ? va0 : ws.eval_cell(ic, a);
            const double vb = (sub + 1 == nsub) ? vb0 : ws.eval_cell(ic, b);

            const double m = 0.5 * (a + b);
            const double vm = ws.eval_cell(ic, m);
            const double ea = va * std::pow(a, half);
            const double em = vm * std::pow(m, half);
            const double eb = vb * std::pow(b, half);
            if (std::max({std::abs(ea), std::abs(em), std::abs(eb)}) * (b - a) < skip_tol)
                continue;

            const double za = rho * a;
            const double theta = 0.5 * rho * (b - a);
            if (za < kZSwitch || theta < 0.2) {
                // direct Gauss, subdivided so each piece spans <= ~1.5 rad
                const int msub = std::max(1, std::min(64, int(std::ceil(rho * (b - a) / 1.5))));
                auto f = [&](double r) {
                    return kern_eval(N, rho * r) * ws.eval_cell(ic, r) * std::pow(r, half);
                };
                for (int j = 0; j < msub; ++j) {
                    const double aj = a + (b - a) * j / double(msub);
                    const double bj = a + (b - a) * (j + 1) / double(msub);
                    acc += gauss_integrate(f, aj, bj, 8);
                }
            } else {
                // Filon: cubic envelope times exact trig moments
                const double h = 0.5 * (b - a);
                double r4[4] = {a, m - h / 3.0, m + h / 3.0, b};
                double Sc[4], Ss[4];
                for (int q = 0; q < 4; ++q) {
                    const double rq = r4[q];
                    const double env = ((q == 0) ? va : (q == 3) ? vb : ws.eval_cell(ic, rq)) *
                                       std::pow(rq, half);
                    double Ac, As;
                    kern_trig_coeffs(N, rho * rq, Ac, As);
                    Sc[q] = env * Ac;
                    Ss[q] = env * As;
                }
                double m0, m1s, m2c, m3s;
                filon_moments(theta, m0, m1s, m2c, m3s);
                const double cm = std::cos(rho * m), sm = std::sin(rho * m);
                double c[4];
                cubic_coeffs(Sc[0], Sc[1], Sc[2], Sc[3], c);
                acc += h * (cm * (c[0] * m0 + c[2] * m2c) - sm * (c[1] * m1s + c[3] * m3s));
                cubic_coeffs(Ss[0], Ss[1], Ss[2], Ss[3], c);
                acc += h * (sm * (c[0] * m0 + c[2] * m2c) + cm * (c[1] * m1s + c[3] * m3s));
            }
        }
    }
    return acc;
}

struct TransformResult {
    std::vector<double> values;
    bool pure_model = false;
    TransformModel model;
};

TransformResult radial_fourier(const std::vector<double>& x, const std::vector<double>& v,
                               int N, std::optional<double> tail_d,
                               std::span<const double> out, const HankelOptions& opt) {
    if (x.size() != v.size() || x.size() < 2)
        throw DomainError("radial transform: bad grid");
    Workspace ws = prepare(x, v, N, tail_d);

    double rest_max = 0.0, vmax = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        rest_max = std::max(rest_max, std::abs(ws.rest[i]));
        vmax = std::max(vmax, std::abs(v[i]));
    }
    const bool pure = ws.model.present && rest_max <= 1e-12 * std::max(vmax, 1e-300);

    TransformResult result;
    result.model = ws.model;
    result.pure_model = pure;
    result.values.resize(out.size());

    const double half = 0.5 * (N - 1.0);
    std::vector<double> numeric(out.size(), 0.0);
    double numeric_max = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double rho = out[i];
        if (!(rho > 0.0)) throw DomainError("radial transform: output nodes must be positive");
        if (!pure) numeric[i] = std::pow(rho, -half) * transform_rest_at(ws, rho, opt, false);
        numeric_max = std::max(numeric_max, std::abs(numeric[i]));
    }
    // values at the quadrature noise floor are exact zeros for all purposes;
    // leaving them in poisons chained transforms through the rho^{2s} factor
    const double floor_tol = 1e-14 * numeric_max;
    double out_scale = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        double val = (std::abs(numeric[i]) < floor_tol) ? 0.0 : numeric[i];
        if (ws.model.present)
            val += ws.model.coeff * powlaw_fourier_coeff(ws.model.sigma(), N) *
                   std::pow(out[i], ws.model.sigma() - N);
        result.values[i] = val;
        out_scale = std::max(out_scale, std::abs(val));
    }

    if (opt.quad_check && !pure && out.size() >= 3) {
        const std::size_t probes[3] = {0, out.size() / 2, out.size() - 1};
        for (std::size_t pi : probes) {
            const double rho = out[pi];
            const double coarse = std::pow(rho, -half) * transform_rest_at(ws, rho, opt, false);
            const double fine = std::pow(rho, -half) * transform_rest_at(ws, rho, opt, true);
            if (std::abs(fine - coarse) > opt.quad_check_tol * std::max(out_scale, 1e-300) &&
                std::abs(fine - coarse) > 1e-13)
                throw QuadratureError("radial transform: refinement check failed at rho=" +
                                      std::to_string(rho));
        }
    }
    return result;
}

std::optional<double> fit_tail_exponent(std::span<const double> x, std::span<const double> v,
                                         double floor_rel) {
    // least-squares log-log slope over the last decade; requires one sign,
    // a genuinely decaying law, and magnitude above the engine error floor
    double maxabs = 0.0;
    for (double t : v) maxabs = std::max(maxabs, std::abs(t));
    const double xmax = x.back();
    std::vector<double> xs, vs;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] >= 0.1 * xmax) {
            xs.push_back(x[i]);
            vs.push_back(v[i]);
        }
    }
    if (xs.size() < 4) return std::nullopt;
    double sign = vs.back() > 0.0 ? 1.0 : -1.0;
    for (double& t : vs) {
        t *= sign;
        if (!(t > floor_rel * maxabs)) return std::nullopt;
    }
    double r2 = 0.0;
    double slope;
    try {
        slope = loglog_fit(xs, vs, nullptr, &r2);
    } catch (const FitError&) {
        return std::nullopt;
    }
    if (r2 < 0.995 || slope > -0.05) return std::nullopt;
    return slope;
}

} // namespace

std::vector<double> default_rho_grid(const RadialProfile& u) {
    const double lo = 0.01 / u.r.back();
    const double hi = 100.0 / u.r.front();
    const double decades = std::log10(hi / lo);
    const int n = std::clamp(int(decades * 56.0), 384, 1024);
    return RadialProfile::log_grid(lo, hi, n);
}

SpectralProfile hankel_forward(const RadialProfile& u, std::span<const double> rho_nodes,
                               const HankelOptions& opt) {
    u.check();
    TransformResult tr = radial_fourier(u.r, u.values, u.dim, u.decay_exponent, rho_nodes, opt);
    SpectralProfile sp;
    sp.dim = u.dim;
    sp.rho.assign(rho_nodes.begin(), rho_nodes.end());
    sp.values = std::move(tr.values);
    if (tr.pure_model)
        sp.decay_exponent = tr.model.sigma() - u.dim;
    else
        sp.decay_exponent = fit_tail_exponent(sp.rho, sp.values, opt.spectral_floor);
    return sp;
}

SpectralProfile hankel_forward(const RadialProfile& u, const HankelOptions& opt) {
    return hankel_forward(u, default_rho_grid(u), opt);
}

RadialProfile hankel_inverse(const SpectralProfile& g, std::span<const double> r_nodes,
                             const HankelOptions& opt) {
    TransformResult tr = radial_fourier(g.rho, g.values, g.dim, g.decay_exponent, r_nodes, opt);
    RadialProfile out;
    out.dim = g.dim;
    out.r.assign(r_nodes.begin(), r_nodes.end());
    out.values = std::move(tr.values);
    if (tr.pure_model)
        out.decay_exponent = tr.model.sigma() - g.dim;
    else
        out.decay_exponent = fit_tail_exponent(out.r, out.values, opt.spectral_floor);
    return out;
}

namespace {

// rho^{2s} * F(u) with the insignificant spectral TAIL zeroed: beyond the
// last frequency whose magnitude clears the engine error floor only the
// first pass's quadrature error remains, and the rho^{2s} weight would
// amplify it. Interior near-zeros (sign changes of the symbol) are kept.
SpectralProfile symbol_profile(const RadialProfile& u, double s, const HankelOptions& opt) {
    SpectralProfile g = hankel_forward(u, opt);
    SpectralProfile h = g;
    double gmax = 0.0;
    for (double t : g.values) gmax = std::max(gmax, std::abs(t));
    std::size_t cut = g.values.size();
    if (!g.decay_exponent) {
        while (cut > 8 && std::abs(g.values[cut - 1]) < opt.spectral_floor * gmax) --cut;
    }
    for (std::size_t i = 0; i < h.rho.size(); ++i)
        h.values[i] = (i >= cut) ? 0.0 : std::pow(h.rho[i], 2.0 * s) * g.values[i];
    if (g.decay_exponent)
        h.decay_exponent = *g.decay_exponent + 2.0 * s;
    else
        h.decay_exponent = fit_tail_exponent(h.rho, h.values, opt.spectral_floor);
    return h;
}

} // namespace

RadialProfile frac_lap_radial(const RadialProfile& u, double s, const HankelOptions& opt) {
    if (!(s > 0.0 && s < 1.0)) throw DomainError("frac_lap_radial: s outside (0,1)");
    return hankel_inverse(symbol_profile(u, s, opt), u.r, opt);
}

RadialProfile frac_lap_radial_at(const RadialProfile& u, double s,
                                 std::span<const double> r_nodes, const HankelOptions& opt) {
    if (!(s > 0.0 && s < 1.0)) throw DomainError("frac_lap_radial_at: s outside (0,1)");
    return hankel_inverse(symbol_profile(u, s, opt), r_nodes, opt);
}

double frac_lap_radial_at_origin(const RadialProfile& u, double s, const HankelOptions& opt) {
    if (!(s > 0.0 && s < 1.0)) throw DomainError("frac_lap_radial_at_origin: s outside (0,1)");
    SpectralProfile g = hankel_forward(u, opt);
    if (g.decay_exponent && *g.decay_exponent + u.dim + 2.0 * s >= 0.0)
        throw QuadratureError("frac_lap_radial_at_origin: divergent at the origin");
    SpectralProfile h = g;
    double gmax = 0.0;
    for (double t : g.values) gmax = std::max(gmax, std::abs(t));
    std::size_t cut = g.values.size();
    if (!g.decay_exponent) {
        while (cut > 8 && std::abs(g.values[cut - 1]) < opt.spectral_floor * gmax) --cut;
    }
    for (std::size_t i = 0; i < h.rho.size(); ++i)
        h.values[i] = (i >= cut) ? 0.0 : std::pow(h.rho[i], 2.0 * s) * g.values[i];
    if (g.decay_exponent) h.decay_exponent = *g.decay_exponent + 2.0 * s;
    // evaluate at a radius far below the significant frequency content;
    // the transform is even in r with an O((rho_max r)^2) deviation there
    double rho_sig = h.rho.back();
    for (std::size_t i = h.rho.size(); i-- > 1;) {
        if (h.values[i] != 0.0) {
            rho_sig = h.rho[i];
            break;
        }
    }
    const double r_eval = std::min(1e-3 / rho_sig, u.r.front());
    const double nodes[1] = {r_eval};
    return hankel_inverse(h, nodes, opt).values[0];
}

double spectral_seminorm_sq(const RadialProfile& u, double s, const HankelOptions& opt) {
    if (u.decay_exponent)
        throw DomainError("spectral_seminorm_sq: profile must be compactly supported");
    SpectralProfile g = hankel_forward(u, opt);
    const int N = u.dim;
    if (!g.decay_exponent) {
        double gmax = 0.0;
        for (double t : g.values) gmax = std::max(gmax, std::abs(t));
        std::size_t last = g.values.size();
        while (last > 8 && std::abs(g.values[last - 1]) < opt.spectral_floor * gmax) --last;
        g.rho.resize(last);
        g.values.resize(last);
    }
    std::vector<double> w(g.values.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = g.values[i] * g.values[i];
    double integral = cubic_weighted_integral(g.rho, w, N - 1.0 + 2.0 * s);
    integral += w.front() * std::pow(g.rho.front(), N + 2.0 * s) / (N + 2.0 * s);
    if (g.decay_exponent) {
        const double e = 2.0 * (*g.decay_exponent) + N - 1.0 + 2.0 * s;
        const double fM = w.back() * std::pow(g.rho.back(), N - 1.0 + 2.0 * s);
        if (e < -1.0) integral += fM * g.rho.back() / (-(e + 1.0));
    }
    return sphere_area(N) * integral;
}

double radial_integral(const RadialProfile& u, double extra_r_power, double value_power) {
    const int N = u.dim;
    std::vector<double> w(u.values.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double v = u.values[i];
        w[i] = (value_power == 1.0) ? v
                                    : std::copysign(std::pow(std::abs(v), value_power), v);
    }
    double integral = powercell_integral(u.r, w, N - 1.0 + extra_r_power);
    // head via the profile's fitted power behaviour
    const double v0 = w[0], v1 = w[1];
    if (v0 != 0.0) {
        double sigma = (v0 * v1 > 0.0) ? std::log(v1 / v0) / std::log(u.r[1] / u.r[0]) : 0.0;
        const double e = sigma + N - 1.0 + extra_r_power;
        if (e <= -1.0)
            throw QuadratureError("radial_integral: divergent head");
        const double f0 = v0 * std::pow(u.r.front(), N - 1.0 + extra_r_power);
        integral += f0 * u.r.front() / (e + 1.0);
    }
    if (u.decay_exponent) {
        const double e = value_power * (*u.decay_exponent) + N - 1.0 + extra_r_power;
        if (e >= -1.0) throw QuadratureError("radial_integral: divergent tail");
        const double fM = w.back() * std::pow(u.r.back(), N - 1.0 + extra_r_power);
        integral += fM * u.r.back() / (-(e + 1.0));
    }
    return sphere_area(N) * integral;
}

double hardy_weighted_l2(const RadialProfile& u, double s) {
    return radial_integral(u, -2.0 * s, 2.0);
}

} // namespace frachardy
