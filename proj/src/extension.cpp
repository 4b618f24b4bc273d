#include "frachardy/extension.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "frachardy/constants.hpp"
#include "frachardy/errors.hpp"
#include "frachardy/fft.hpp"
#include "frachardy/quadrature.hpp"
#include "frachardy/special.hpp"

namespace frachardy {

namespace {
constexpr double kPi = 3.14159265358979323846;
} // namespace

// ---------------------------------------------------------------------------
// mesh
// ---------------------------------------------------------------------------

ExtensionMesh ExtensionMesh::build(int dim, double s, const MeshSpec& spec) {
    if (dim < 1 || dim > 3) throw DomainError("ExtensionMesh: dim must be 1..3");
    if (!(s > 0.0 && s < 1.0)) throw DomainError("ExtensionMesh: s outside (0,1)");
    if (!(spec.patch_radius > 0.0 && spec.patch_radius <= spec.radius))
        throw DomainError("ExtensionMesh: patch radius outside (0,R]");
    ExtensionMesh m;
    m.dim = dim;
    m.s = s;
    const double a = 1.0 - 2.0 * s;

    // heights: t_k = T * ratio^{K-k}
    m.t.resize(spec.t_levels + 1);
    m.t[0] = 0.0;
    for (int k = 1; k <= spec.t_levels; ++k)
        m.t[k] = spec.height * std::pow(spec.t_ratio, double(spec.t_levels - k));

    // radii: geometric fan around the patch radius, plus r = 0 and r = R
    std::vector<double> down, up;
    const double rmin = spec.radius * spec.r_min_rel;
    for (double x = spec.patch_radius; x > rmin; x *= spec.r_ratio) down.push_back(x);
    for (double x = spec.patch_radius / spec.r_ratio; x < spec.radius; x /= spec.r_ratio)
        up.push_back(x);
    m.r.push_back(0.0);
    for (auto it = down.rbegin(); it != down.rend(); ++it) m.r.push_back(*it);
    for (double x : up) m.r.push_back(x);
    m.r.push_back(spec.radius);
    m.patch_end = 0;
    while (m.r[m.patch_end] < spec.patch_radius - 1e-12) ++m.patch_end;

    const std::size_t K = m.rows(), I = m.cols();
    m.Ct.resize(K);
    for (std::size_t k = 0; k < K; ++k)
        m.Ct[k] = 2.0 * s / (std::pow(m.t[k + 1], 2.0 * s) - std::pow(m.t[k], 2.0 * s));

    m.Wt.assign(K, 0.0);
    for (std::size_t k = 1; k < K; ++k) {
        const double lo = 0.5 * (m.t[k - 1] + m.t[k]);
        const double hi = 0.5 * (m.t[k] + m.t[k + 1]);
        m.Wt[k] = (std::pow(hi, 1.0 + a) - std::pow(lo, 1.0 + a)) / (1.0 + a);
    }

    m.Cr.resize(I);
    for (std::size_t i = 0; i < I; ++i) {
        if (i == 0) {
            // axis cell: linear-element energy coupling (the exact two-point
            // integral diverges at the axis and would decouple the column)
            m.Cr[i] = std::pow(m.r[1], dim - 2.0) / dim;
        } else {
            const double lo = m.r[i], hi = m.r[i + 1];
            double integral;
            if (dim == 1) integral = hi - lo;
            else if (dim == 2) integral = std::log(hi / lo);
            else integral = 1.0 / lo - 1.0 / hi;
            m.Cr[i] = 1.0 / integral;
        }
    }

    m.Vr.resize(I);
    for (std::size_t i = 0; i < I; ++i) {
        const double lo = (i == 0) ? 0.0 : 0.5 * (m.r[i - 1] + m.r[i]);
        const double hi = 0.5 * (m.r[i] + m.r[i + 1]);
        m.Vr[i] = (std::pow(hi, double(dim)) - std::pow(lo, double(dim))) / dim;
    }
    return m;
}

RadialProfile HalfSpaceField::trace_profile() const {
    RadialProfile p;
    p.dim = mesh.dim;
    for (std::size_t i = 1; i < mesh.cols(); ++i) {
        p.r.push_back(mesh.r[i]);
        p.values.push_back(at(0, i));
    }
    return p;
}

void write_csv(const HalfSpaceField& f, std::ostream& os) {
    os << "t,r,value\n";
    char buf[96];
    for (std::size_t k = 0; k <= f.mesh.rows(); ++k)
        for (std::size_t i = 0; i < f.mesh.cols(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", f.mesh.t[k], f.mesh.r[i],
                          f.at(k, i));
            os << buf;
        }
}

// ---------------------------------------------------------------------------
// linear algebra on the tensor mesh
// ---------------------------------------------------------------------------

namespace {

// Hardy mass  int_cell min(gamma rho^{-2s}, cutoff) rho^{N-1} drho on the patch
double hardy_cell_mass(const ExtensionMesh& m, std::size_t i, double gamma, double cutoff) {
    if (gamma == 0.0) return 0.0;
    const int N = m.dim;
    const double s = m.s;
    const double lo = (i == 0) ? 0.0 : 0.5 * (m.r[i - 1] + m.r[i]);
    double hi = 0.5 * (m.r[i] + m.r[i + 1]);
    hi = std::min(hi, m.r[m.patch_end]); // potential lives on the patch only
    if (hi <= lo) return 0.0;
    auto plain = [&](double x0, double x1) {
        return gamma * (std::pow(x1, N - 2.0 * s) - std::pow(x0, N - 2.0 * s)) / (N - 2.0 * s);
    };
    auto capped = [&](double x0, double x1) {
        return cutoff * (std::pow(x1, double(N)) - std::pow(x0, double(N))) / N;
    };
    if (!std::isfinite(cutoff)) return plain(lo, hi);
    const double r_cap = std::pow(gamma / cutoff, 0.5 / s);
    if (hi <= r_cap) return capped(lo, hi);
    if (lo >= r_cap) return plain(lo, hi);
    return capped(lo, r_cap) + plain(r_cap, hi);
}

// Degenerate-problem operator on the (K rows) x (I cols) unknown layout.
// mode: bottom row free on the patch (mixed) or fully Dirichlet (extension).
struct Operator {
    const ExtensionMesh& m;
    bool bottom_free;
    std::vector<double> bottom_diag; // (c - hardy) cell masses on the bottom row

    std::size_t K, I;

    Operator(const ExtensionMesh& mesh, bool free_bottom)
        : m(mesh), bottom_free(free_bottom), K(mesh.rows()), I(mesh.cols()) {
        bottom_diag.assign(I, 0.0);
    }

    bool is_free(std::size_t k, std::size_t i) const {
        if (k == 0) return bottom_free && i < m.patch_end;
        return true;
    }

    std::size_t idx(std::size_t k, std::size_t i) const { return k * I + i; }

    // y = A x on free unknowns; fixed entries of x are ignored (treated 0)
    void apply(const std::vector<double>& x, std::vector<double>& y) const {
        y.assign(K * I, 0.0);
        for (std::size_t k = 0; k < K; ++k) {
            for (std::size_t i = 0; i < I; ++i) {
                if (!is_free(k, i)) continue;
                const double xc = x[idx(k, i)];
                double acc = 0.0;
                // t faces
                if (k > 0) {
                    const double xo = is_free(k - 1, i) ? x[idx(k - 1, i)] : 0.0;
                    acc += m.Ct[k - 1] * m.Vr[i] * (xc - xo);
                }
                {
                    const double xo = (k + 1 < K) ? x[idx(k + 1, i)] : 0.0; // row K Dirichlet
                    acc += m.Ct[k] * m.Vr[i] * (xc - xo);
                }
                // r faces (zero-thickness bottom row carries no r energy)
                if (k > 0) {
                    if (i > 0) acc += m.Wt[k] * m.Cr[i - 1] * (xc - x[idx(k, i - 1)]);
                    const double xo = (i + 1 < I) ? x[idx(k, i + 1)] : 0.0; // col I Dirichlet
                    acc += m.Wt[k] * m.Cr[i] * (xc - xo);
                }
                if (k == 0) acc += bottom_diag[i] * xc;
                y[idx(k, i)] = acc;
            }
        }
    }

    std::vector<double> diagonal() const {
        std::vector<double> d(K * I, 1.0);
        for (std::size_t k = 0; k < K; ++k)
            for (std::size_t i = 0; i < I; ++i) {
                if (!is_free(k, i)) continue;
                double acc = 0.0;
                if (k > 0) acc += m.Ct[k - 1] * m.Vr[i];
                acc += m.Ct[k] * m.Vr[i];
                if (k > 0) {
                    if (i > 0) acc += m.Wt[k] * m.Cr[i - 1];
                    acc += m.Wt[k] * m.Cr[i];
                }
                if (k == 0) acc += bottom_diag[i];
                d[idx(k, i)] = acc;
            }
        return d;
    }
};

struct CgResult {
    int iterations;
    double residual;
};

CgResult pcg(const Operator& op, const std::vector<double>& rhs, std::vector<double>& x,
             double tol = 1e-10, int max_iter = 60000) {
    const std::size_t n = rhs.size();
    std::vector<double> diag = op.diagonal();
    std::vector<double> res(n), z(n), p(n), Ap(n);
    if (x.size() != n) x.assign(n, 0.0);
    op.apply(x, Ap);
    double bnorm = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        res[j] = rhs[j] - Ap[j];
        bnorm += rhs[j] * rhs[j];
    }
    bnorm = std::sqrt(bnorm);
    if (bnorm == 0.0) {
        x.assign(n, 0.0);
        return {0, 0.0};
    }
    double rz = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        z[j] = res[j] / diag[j];
        p[j] = z[j];
        rz += res[j] * z[j];
    }
    double rnorm = 0.0;
    for (double v : res) rnorm += v * v;
    rnorm = std::sqrt(rnorm);
    int it = 0;
    while (rnorm > tol * bnorm && it < max_iter) {
        op.apply(p, Ap);
        double pAp = 0.0;
        for (std::size_t j = 0; j < n; ++j) pAp += p[j] * Ap[j];
        if (!(pAp > 0.0))
            throw ConvergenceError("pcg: quadratic form not positive definite");
        const double alpha = rz / pAp;
        rnorm = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            x[j] += alpha * p[j];
            res[j] -= alpha * Ap[j];
            rnorm += res[j] * res[j];
        }
        rnorm = std::sqrt(rnorm);
        double rz_new = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            z[j] = res[j] / diag[j];
            rz_new += res[j] * z[j];
        }
        const double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t j = 0; j < n; ++j) p[j] = z[j] + beta * p[j];
        ++it;
    }
    if (rnorm > tol * bnorm * 10.0)
        throw ConvergenceError("pcg: no convergence after " + std::to_string(it) +
                               " iterations");
    return {it, rnorm / bnorm};
}

HalfSpaceField field_from_vector(const ExtensionMesh& mesh, const std::vector<double>& x,
                                 std::span<const double> bottom_override = {}) {
    HalfSpaceField f;
    f.mesh = mesh;
    const std::size_t K = mesh.rows(), I = mesh.cols();
    f.values.assign((K + 1) * I, 0.0);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t i = 0; i < I; ++i) f.at(k, i) = x[k * I + i];
    if (!bottom_override.empty())
        for (std::size_t i = 0; i < I; ++i) f.at(0, i) = bottom_override[i];
    return f;
}

} // namespace

HalfSpaceField solve_mixed(const MixedProblem& prob, SolveStats* stats,
                           const std::vector<double>* warm_start) {
    ExtensionMesh mesh = ExtensionMesh::build(prob.dim, prob.s, prob.mesh);
    Operator op(mesh, /*free_bottom=*/true);
    const std::size_t I = mesh.cols();
    for (std::size_t i = 0; i < mesh.patch_end; ++i) {
        op.bottom_diag[i] = prob.zeroth_order * mesh.Vr[i] -
                            hardy_cell_mass(mesh, i, prob.hardy_gamma, prob.hardy_cutoff);
    }
    std::vector<double> rhs(mesh.rows() * I, 0.0);
    const double ks = kappa_s(prob.s);
    for (std::size_t i = 0; i < mesh.patch_end; ++i)
        rhs[i] = ks * prob.neumann_data(mesh.r[i]) * mesh.Vr[i];

    std::vector<double> x;
    if (warm_start && warm_start->size() == rhs.size()) x = *warm_start;
    CgResult cg = pcg(op, rhs, x);
    if (stats) {
        stats->iterations = cg.iterations;
        stats->residual = cg.residual;
    }
    return field_from_vector(mesh, x);
}

HalfSpaceField solve_dirichlet(const ExtensionMesh& mesh, std::span<const double> bottom,
                               SolveStats* stats) {
    if (bottom.size() != mesh.cols())
        throw DomainError("solve_dirichlet: bottom data size mismatch");
    Operator op(mesh, /*free_bottom=*/false);
    const std::size_t I = mesh.cols();
    std::vector<double> rhs(mesh.rows() * I, 0.0);
    for (std::size_t i = 0; i < I; ++i) rhs[I + i] = mesh.Ct[0] * mesh.Vr[i] * bottom[i];
    std::vector<double> x;
    CgResult cg = pcg(op, rhs, x);
    if (stats) {
        stats->iterations = cg.iterations;
        stats->residual = cg.residual;
    }
    return field_from_vector(mesh, x, bottom);
}

// ---------------------------------------------------------------------------
// Poisson-kernel extension
// ---------------------------------------------------------------------------

namespace {

// angular factor K(t,r,rho) = int_{S^{N-1}} (r^2 + rho^2 - 2 r rho mu + t^2)^{-c} dsigma
// with c = (N+2s)/2, so that  u_bar(t,r) = p_Ns t^{2s} int u(rho) rho^{N-1} K drho.
double angular_kernel(int N, double c, double t, double r, double rho) {
    const double A = r * r + rho * rho + t * t;
    const double B = 2.0 * r * rho;
    if (N == 1) return std::pow(A - B, -c) + std::pow(A + B, -c);
    if (N == 3) {
        if (B < 1e-14 * A) return 4.0 * kPi * std::pow(A, -c) * (1.0 + c * (c + 1.0) / 6.0 * (B / A) * (B / A));
        const double e = 1.0 - c;
        return 2.0 * kPi * (std::pow(A - B, e) - std::pow(A + B, e)) / (B * (c - 1.0));
    }
    // N = 2: 4 int_0^{pi/2} (D + 4 r rho sin^2 psi)^{-c} dpsi, graded toward 0
    const double D = (r - rho) * (r - rho) + t * t;
    const double F = 4.0 * r * rho;
    if (F < 1e-14 * D) return 2.0 * kPi * std::pow(D, -c);
    auto f = [&](double psi) {
        const double sp = std::sin(psi);
        return std::pow(D + F * sp * sp, -c);
    };
    const double psi0 = std::min(0.5, std::sqrt(D / F));
    std::vector<double> bp{0.0, psi0};
    for (double x = psi0 * 2.0; x < 0.5 * kPi; x *= 2.0) bp.push_back(x);
    bp.push_back(0.5 * kPi);
    return 4.0 * panel_integrate(f, bp, 12);
}

} // namespace

RadialProfile poisson_extend_slice(const RadialProfile& u, double s, double t,
                                   std::span<const double> r_nodes) {
    u.check();
    if (!(t > 0.0)) throw DomainError("poisson_extend_slice: t must be positive");
    if (!(s > 0.0 && s < 1.0)) throw DomainError("poisson_extend_slice: s outside (0,1)");
    const int N = u.dim;
    const double c = 0.5 * (N + 2.0 * s);
    const double pNs = kernel_constants(N, s).p_Ns;
    RadialProfile out;
    out.dim = N;
    out.r.assign(r_nodes.begin(), r_nodes.end());
    out.values.resize(r_nodes.size());

    const double r_lo_grid = u.r.front();
    const double r_hi = u.r.back();
    // cubic in-grid interpolation; the profile's own head/tail models outside
    const GridInterp interp(u.r, u.values);
    auto u_eval = [&](double rho) {
        if (rho <= r_lo_grid || rho >= r_hi) return u.value_at(rho);
        return interp.eval(rho);
    };
    for (std::size_t j = 0; j < r_nodes.size(); ++j) {
        const double r = r_nodes[j];
        // breakpoints: log panels over the full support plus a dense window
        // around rho = r at scale t where the kernel peaks
        std::vector<double> bp;
        const double lo = std::min(r_lo_grid * 1e-2, 0.01 * t);
        double hi = std::max({10.0 * r_hi, 100.0 * (r + t), 1000.0 * t});
        if (!u.decay_exponent) hi = std::max(1.5 * r_hi, 3.0 * (r + t));
        for (double x : log_panels(lo, hi, 8)) bp.push_back(x);
        // resolve the kernel peak at rho = r: linear panels across the core,
        // geometric grading outward until the distance reaches the r scale
        const double wlo = r - 8.0 * t, whi = r + 8.0 * t;
        for (int q = 0; q <= 32; ++q) {
            const double x = wlo + (whi - wlo) * q / 32.0;
            if (x > lo && x < hi) bp.push_back(x);
        }
        for (double d = 8.0 * t; d < 4.0 * (r + t); d *= 1.35) {
            if (r - d > lo) bp.push_back(r - d);
            if (r + d < hi) bp.push_back(r + d);
        }
        std::sort(bp.begin(), bp.end());
        bp.erase(std::unique(bp.begin(), bp.end()), bp.end());

        auto f = [&](double rho) {
            return u_eval(rho) * std::pow(rho, N - 1.0) * angular_kernel(N, c, t, r, rho);
        };
        double acc = panel_integrate(f, bp, 16);
        // head below the first breakpoint: kernel is flat there
        acc += f(0.5 * lo) * lo;
        out.values[j] = pNs * std::pow(t, 2.0 * s) * acc;
    }
    return out;
}

HalfSpaceField poisson_extend_field(const RadialProfile& u, const ExtensionMesh& mesh) {
    HalfSpaceField f;
    f.mesh = mesh;
    const std::size_t K = mesh.rows(), I = mesh.cols();
    f.values.assign((K + 1) * I, 0.0);
    std::vector<double> nodes(mesh.r.begin(), mesh.r.begin() + I);
    if (nodes[0] == 0.0) nodes[0] = 1e-12; // evaluate on the axis
    for (std::size_t i = 0; i < I; ++i) f.at(0, i) = u.value_at(mesh.r[i]);
    for (std::size_t k = 1; k <= K; ++k) {
        RadialProfile slice = poisson_extend_slice(u, mesh.s, mesh.t[k], nodes);
        for (std::size_t i = 0; i < I; ++i) f.at(k, i) = slice.values[i];
    }
    return f;
}

GridField poisson_extend(const GridField& u, double t, double s) {
    u.check();
    if (!(t > 0.0)) throw DomainError("poisson_extend: t must be positive");
    const int N = u.dim;
    const double c = 0.5 * (N + 2.0 * s);
    auto kernel = [&](double d) { return std::pow(d * d + t * t, -c); };
    return convolve_with_kernel(u, kernel);
}

// ---------------------------------------------------------------------------
// traces and energies
// ---------------------------------------------------------------------------

RadialProfile dtn_trace(const HalfSpaceField& w) {
    const ExtensionMesh& m = w.mesh;
    const double ts = 2.0 * m.s;
    const std::size_t I = m.cols();
    // fit rows k1..k1+3 through  w0 + c1 t^{2s} + c2 t^2 + c3 t^{2+2s};
    // the window sits above the quadrature floor of sampled fields but far
    // below the data scale, so the truncated expansion is accurate
    std::size_t k_lo = 1;
    while (k_lo + 5 < m.rows() && m.t[k_lo] < 7.5e-4 * m.t.back()) ++k_lo;
    auto fit_c1 = [&](std::size_t k1) {
        double M[3][3];
        for (int j = 0; j < 3; ++j) {
            const double ta = m.t[k1 + j], tb = m.t[k1 + j + 1];
            M[j][0] = std::pow(tb, ts) - std::pow(ta, ts);
            M[j][1] = tb * tb - ta * ta;
            M[j][2] = std::pow(tb, 2.0 + ts) - std::pow(ta, 2.0 + ts);
        }
        // invert the 3x3 once (Cramer)
        auto det3 = [](double a[3][3]) {
            return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                   a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                   a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
        };
        const double det = det3(M);
        std::vector<double> c1(I);
        for (std::size_t i = 0; i < I; ++i) {
            double D[3];
            for (int j = 0; j < 3; ++j) D[j] = w.at(k1 + j + 1, i) - w.at(k1 + j, i);
            double Mc[3][3] = {{D[0], M[0][1], M[0][2]},
                               {D[1], M[1][1], M[1][2]},
                               {D[2], M[2][1], M[2][2]}};
            c1[i] = det3(Mc) / det;
        }
        return c1;
    };
    std::vector<double> ca = fit_c1(k_lo), cb = fit_c1(k_lo + 1);
    double scale = 0.0;
    for (std::size_t i = 0; i < I; ++i) scale = std::max(scale, std::abs(ca[i]));
    for (std::size_t i = 0; i < I; ++i) {
        if (std::abs(ca[i] - cb[i]) > 0.25 * scale + 1e-12)
            throw ExtrapolationError("dtn_trace: flux extrapolation unstable at r=" +
                                     std::to_string(m.r[i]));
    }
    RadialProfile out;
    out.dim = m.dim;
    for (std::size_t i = 0; i < I; ++i) {
        out.r.push_back(m.r[i] == 0.0 ? 1e-12 : m.r[i]);
        out.values.push_back(-ts * ca[i]);
    }
    return out;
}

EnergyResult weighted_energy(const HalfSpaceField& w) {
    const ExtensionMesh& m = w.mesh;
    const std::size_t K = m.rows(), I = m.cols();
    const double omega = sphere_area(m.dim);
    double total = 0.0, outer = 0.0;
    const double r_outer = 0.8 * m.r.back();
    const double t_outer = 0.8 * m.t.back();
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t i = 0; i < I; ++i) {
            const double up = (k + 1 <= K) ? w.at(k + 1, i) : 0.0;
            const double d = up - w.at(k, i);
            const double e = m.Ct[k] * m.Vr[i] * d * d;
            total += e;
            if (m.t[k] > t_outer || m.r[i] > r_outer) outer += e;
        }
    for (std::size_t k = 1; k <= K; ++k) {
        const double wt = (k < K) ? m.Wt[k]
                                  : (std::pow(m.t[K], 2.0 - 2.0 * m.s) -
                                     std::pow(0.5 * (m.t[K - 1] + m.t[K]), 2.0 - 2.0 * m.s)) /
                                        (2.0 - 2.0 * m.s);
        for (std::size_t i = 0; i < I; ++i) {
            const double right = (i + 1 < I) ? w.at(k, i + 1) : 0.0;
            const double d = right - w.at(k, i);
            const double e = wt * m.Cr[i] * d * d;
            total += e;
            if (m.t[k] > t_outer || m.r[i] > r_outer) outer += e;
        }
    }
    EnergyResult res;
    res.value = omega * total;
    res.outer_shell_fraction = total > 0.0 ? outer / total : 0.0;
    return res;
}

std::vector<double> apply_dtn(const ExtensionMesh& mesh, std::span<const double> bottom,
                              SolveStats* stats) {
    HalfSpaceField w = solve_dirichlet(mesh, bottom, stats);
    const std::size_t I = mesh.cols();
    std::vector<double> flux(I);
    for (std::size_t i = 0; i < I; ++i)
        flux[i] = mesh.Ct[0] * (bottom[i] - w.at(1, i));
    return flux;
}

// ---------------------------------------------------------------------------
// dense DtN operator via a banded factorization of the interior problem
// ---------------------------------------------------------------------------

namespace {

// symmetric banded Cholesky, upper band storage: band[j][d] = A(j, j+d)
class BandedCholesky {
public:
    BandedCholesky(std::size_t n, std::size_t bw) : n_(n), bw_(bw), a_(n * (bw + 1), 0.0) {}

    double& entry(std::size_t j, std::size_t d) { return a_[j * (bw_ + 1) + d]; }

    void factor() {
        for (std::size_t j = 0; j < n_; ++j) {
            double d = entry(j, 0);
            if (!(d > 0.0)) throw ConvergenceError("banded cholesky: not positive definite");
            d = std::sqrt(d);
            entry(j, 0) = d;
            const std::size_t m = std::min(bw_, n_ - 1 - j);
            for (std::size_t c = 1; c <= m; ++c) entry(j, c) /= d;
            for (std::size_t c = 1; c <= m; ++c) {
                const double ljc = entry(j, c);
                if (ljc == 0.0) continue;
                for (std::size_t e = c; e <= m; ++e)
                    entry(j + c, e - c) -= ljc * entry(j, e);
            }
        }
    }

    void solve(std::vector<double>& x) const {
        // forward: L^T is the stored band; solve L y = x
        for (std::size_t j = 0; j < n_; ++j) {
            x[j] /= a_[j * (bw_ + 1)];
            const std::size_t m = std::min(bw_, n_ - 1 - j);
            for (std::size_t c = 1; c <= m; ++c) x[j + c] -= a_[j * (bw_ + 1) + c] * x[j];
        }
        // backward: L^T x = y
        for (std::size_t j = n_; j-- > 0;) {
            const std::size_t m = std::min(bw_, n_ - 1 - j);
            double acc = x[j];
            for (std::size_t c = 1; c <= m; ++c) acc -= a_[j * (bw_ + 1) + c] * x[j + c];
            x[j] = acc / a_[j * (bw_ + 1)];
        }
    }

private:
    std::size_t n_, bw_;
    std::vector<double> a_;
};

} // namespace

DtnOperator::DtnOperator(const ExtensionMesh& mesh)
    : mesh_(std::make_shared<ExtensionMesh>(mesh)), n_(mesh.patch_end) {
    const ExtensionMesh& m = *mesh_;
    const std::size_t K = m.rows(), I = m.cols();
    const std::size_t nin = (K - 1) * I; // interior rows 1..K-1
    BandedCholesky chol(nin, I);
    for (std::size_t k = 1; k < K; ++k)
        for (std::size_t i = 0; i < I; ++i) {
            const std::size_t j = (k - 1) * I + i;
            double diag = m.Ct[k - 1] * m.Vr[i] + m.Ct[k] * m.Vr[i];
            if (i > 0) diag += m.Wt[k] * m.Cr[i - 1];
            diag += m.Wt[k] * m.Cr[i];
            chol.entry(j, 0) = diag;
            if (i + 1 < I) chol.entry(j, 1) = -m.Wt[k] * m.Cr[i];
            if (k + 1 < K) chol.entry(j, I) = -m.Ct[k] * m.Vr[i];
        }
    chol.factor();

    dense_.assign(n_ * n_, 0.0);
    std::vector<double> rhs(nin);
    for (std::size_t col = 0; col < n_; ++col) {
        std::fill(rhs.begin(), rhs.end(), 0.0);
        rhs[col] = m.Ct[0] * m.Vr[col]; // unit trace feeds row 1
        chol.solve(rhs);
        for (std::size_t i = 0; i < n_; ++i) {
            const double w1 = rhs[i]; // interior row 1, column i
            double flux = m.Ct[0] * ((i == col ? 1.0 : 0.0) - w1);
            dense_[i * n_ + col] = flux;
        }
    }
    // the weak form Vr_i * dense_[i][j] is symmetric; enforce it against
    // factorization round-off
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j) {
            const double wij = m.Vr[i] * dense_[i * n_ + j];
            const double wji = m.Vr[j] * dense_[j * n_ + i];
            const double v = 0.5 * (wij + wji);
            dense_[i * n_ + j] = v / m.Vr[i];
            dense_[j * n_ + i] = v / m.Vr[j];
        }
}

std::vector<double> DtnOperator::apply(std::span<const double> v) const {
    if (v.size() != n_) throw DomainError("DtnOperator::apply: size mismatch");
    std::vector<double> out(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n_; ++j) acc += dense_[i * n_ + j] * v[j];
        out[i] = acc;
    }
    return out;
}

double DtnOperator::energy(std::span<const double> v) const {
    std::vector<double> f = apply(v);
    const ExtensionMesh& m = *mesh_;
    double acc = 0.0;
    for (std::size_t i = 0; i < n_; ++i) acc += f[i] * v[i] * m.Vr[i];
    return sphere_area(m.dim) * acc;
}

} // namespace frachardy
