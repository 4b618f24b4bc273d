#include "frachardy/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "frachardy/errors.hpp"

namespace frachardy {

namespace {

GaussRule make_rule(int n) {
    GaussRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < n; ++i) {
        // Chebyshev-angle initial guess, Newton on P_n.
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.x[i] = x;
        rule.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

} // namespace

const GaussRule& gauss_rule(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_rule(n)).first;
    return it->second;
}

double gauss_integrate(const std::function<double(double)>& f, double a, double b, int n) {
    const GaussRule& g = gauss_rule(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += g.w[i] * f(mid + half * g.x[i]);
    return acc * half;
}

double panel_integrate(const std::function<double(double)>& f,
                       std::span<const double> breakpoints, int n) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
        acc += gauss_integrate(f, breakpoints[i], breakpoints[i + 1], n);
    return acc;
}

std::vector<double> log_panels(double a, double b, int per_decade) {
    if (!(a > 0.0 && b > a)) throw DomainError("log_panels: need 0 < a < b");
    const double decades = std::log10(b / a);
    const int m = std::max(1, static_cast<int>(std::ceil(decades * per_decade)));
    std::vector<double> bp(m + 1);
    for (int i = 0; i <= m; ++i) bp[i] = a * std::pow(b / a, double(i) / m);
    bp.back() = b;
    return bp;
}

double power_moment(double a, double b, double e) {
    if (std::abs(e + 1.0) < 1e-12) return std::log(b / a);
    return (std::pow(b, e + 1.0) - std::pow(a, e + 1.0)) / (e + 1.0);
}

double powercell_integral(std::span<const double> r, std::span<const double> v,
                          double weight) {
    if (r.size() != v.size() || r.size() < 2)
        throw DomainError("powercell_integral: bad grid");
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        const double a = r[i], b = r[i + 1];
        const double va = v[i], vb = v[i + 1];
        if (va == 0.0 && vb == 0.0) continue;
        if (va * vb > 0.0) {
            // v(x) = va (x/a)^sigma, integrate va a^-sigma x^(sigma+weight)
            const double sigma = std::log(vb / va) / std::log(b / a);
            acc += va * std::pow(a, -sigma) * power_moment(a, b, sigma + weight);
        } else {
            // sign change or zero endpoint: linear interpolation
            const double slope = (vb - va) / (b - a);
            acc += va * power_moment(a, b, weight) +
                   slope * (power_moment(a, b, weight + 1.0) - a * power_moment(a, b, weight));
        }
    }
    return acc;
}

GridInterp::GridInterp(std::span<const double> x, std::span<const double> v)
    : x_(x.begin(), x.end()), v_(v.begin(), v.end()) {
    if (x_.size() != v_.size() || x_.size() < 2) throw DomainError("GridInterp: bad grid");
    const std::size_t n = x_.size();
    lx_.resize(n);
    ly_.assign(n, 0.0);
    std::vector<signed char> sgn(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        lx_[i] = std::log(x_[i]);
        if (std::abs(v_[i]) > 1e-300) {
            ly_[i] = std::log(std::abs(v_[i]));
            sgn[i] = v_[i] > 0.0 ? 1 : -1;
        }
    }
    cubic_.assign(n - 1, 0);
    for (std::size_t ic = 1; ic + 2 < n; ++ic) {
        const std::size_t j0 = ic - 1;
        const signed char s0 = sgn[j0];
        bool ok = s0 != 0 && sgn[j0 + 1] == s0 && sgn[j0 + 2] == s0 && sgn[j0 + 3] == s0;
        if (ok) {
            double slope[3];
            for (int a = 0; a < 3; ++a)
                slope[a] = (ly_[j0 + a + 1] - ly_[j0 + a]) / (lx_[j0 + a + 1] - lx_[j0 + a]);
            const double d0 = slope[1] - slope[0], d1 = slope[2] - slope[1];
            if (std::abs(d1 - d0) > 0.35 * std::max(std::abs(d0), std::abs(d1)) + 0.02)
                ok = false;
        }
        cubic_[ic] = ok ? s0 : 0;
    }
}

double GridInterp::eval_cell(std::size_t ic, double r) const {
    if (cubic_[ic]) {
        const std::size_t j0 = ic - 1;
        const double t = std::log(r);
        double acc = 0.0;
        for (int a = 0; a < 4; ++a) {
            double term = ly_[j0 + a];
            for (int b = 0; b < 4; ++b) {
                if (a == b) continue;
                term *= (t - lx_[j0 + b]) / (lx_[j0 + a] - lx_[j0 + b]);
            }
            acc += term;
        }
        return double(cubic_[ic]) * std::exp(acc);
    }
    const double a = x_[ic], b = x_[ic + 1];
    const double va = v_[ic], vb = v_[ic + 1];
    if (va == 0.0 && vb == 0.0) return 0.0;
    if (va * vb > 0.0) {
        const double sigma = std::log(vb / va) / std::log(b / a);
        if (std::abs(sigma) < 12.0) return va * std::pow(r / a, sigma);
    }
    return va + (vb - va) * (r - a) / (b - a);
}

double GridInterp::eval(double r) const {
    if (r <= x_.front()) return v_.front();
    if (r >= x_.back()) return v_.back();
    std::size_t lo = 0, hi = x_.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (x_[mid] <= r) lo = mid; else hi = mid;
    }
    return eval_cell(lo, r);
}

double cubic_weighted_integral(std::span<const double> x, std::span<const double> v,
                               double weight) {
    GridInterp gi(x, v);
    const GaussRule& g = gauss_rule(6);
    double acc = 0.0;
    for (std::size_t c = 0; c < gi.cells(); ++c) {
        const double a = gi.cell_lo(c), b = gi.cell_hi(c);
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double cell = 0.0;
        for (std::size_t i = 0; i < g.x.size(); ++i) {
            const double r = mid + half * g.x[i];
            cell += g.w[i] * gi.eval_cell(c, r) * std::pow(r, weight);
        }
        acc += cell * half;
    }
    return acc;
}

double loglog_fit(std::span<const double> r, std::span<const double> v,
                  double* c_out, double* r2_out) {
    if (r.size() != v.size() || r.size() < 2) throw FitError("loglog_fit: bad data");
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    const double n = static_cast<double>(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!(v[i] > 0.0) || !(r[i] > 0.0))
            throw FitError("loglog_fit: nonpositive sample");
        const double x = std::log(r[i]), y = std::log(v[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
    }
    const double den = n * sxx - sx * sx;
    if (den == 0.0) throw FitError("loglog_fit: degenerate abscissae");
    const double slope = (n * sxy - sx * sy) / den;
    const double inter = (sy - slope * sx) / n;
    if (c_out) *c_out = std::exp(inter);
    if (r2_out) {
        double ss_res = 0.0;
        const double ybar = sy / n;
        double ss_tot = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            const double y = std::log(v[i]);
            const double yhat = inter + slope * std::log(r[i]);
            ss_res += (y - yhat) * (y - yhat);
            ss_tot += (y - ybar) * (y - ybar);
        }
        *r2_out = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    }
    return slope;
}

} // namespace frachardy
