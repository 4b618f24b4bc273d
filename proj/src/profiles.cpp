#include "frachardy/profiles.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "frachardy/errors.hpp"

namespace frachardy {

namespace {

// power interpolation on [r0,r1] when both values share a sign and the
// implied exponent is moderate (huge exponents arise next to sign
// crossings, where the power model is meaningless), else linear
double cell_interp(double r0, double r1, double v0, double v1, double x) {
    if (v0 * v1 > 0.0) {
        const double sigma = std::log(v1 / v0) / std::log(r1 / r0);
        if (std::abs(sigma) < 12.0) return v0 * std::pow(x / r0, sigma);
    }
    return v0 + (v1 - v0) * (x - r0) / (r1 - r0);
}

double profile_value_at(std::span<const double> r, std::span<const double> v,
                        const std::optional<double>& decay, double x) {
    if (x <= r.front()) {
        if (x <= 0.0) x = 0.0;
        const double v0 = v[0], v1 = v[1];
        if (v0 * v1 > 0.0) {
            double sigma = std::log(v1 / v0) / std::log(r[1] / r[0]);
            if (std::abs(sigma) < 0.01) sigma = 0.0; // noise-level slope: constant head
            if (x == 0.0) {
                if (sigma > 0.0) return 0.0;
                if (sigma == 0.0) return v0;
                return v0 > 0.0 ? std::numeric_limits<double>::infinity()
                                : -std::numeric_limits<double>::infinity();
            }
            return v0 * std::pow(x / r[0], sigma);
        }
        return v0;
    }
    if (x >= r.back()) {
        if (!decay) return 0.0;
        return v.back() * std::pow(x / r.back(), *decay);
    }
    // binary search for the enclosing cell
    std::size_t lo = 0, hi = r.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (r[mid] <= x) lo = mid; else hi = mid;
    }
    return cell_interp(r[lo], r[hi], v[lo], v[hi], x);
}

} // namespace

void RadialProfile::check() const {
    if (r.size() != values.size() || r.size() < 2)
        throw DomainError("RadialProfile: grid/value size mismatch");
    if (!(r.front() > 0.0)) throw DomainError("RadialProfile: r_min must be positive");
    for (std::size_t i = 0; i + 1 < r.size(); ++i)
        if (!(r[i] < r[i + 1])) throw DomainError("RadialProfile: radii not increasing");
    for (double v : values)
        if (!std::isfinite(v)) throw DomainError("RadialProfile: non-finite sample");
}

double RadialProfile::value_at(double x) const {
    return profile_value_at(r, values, decay_exponent, x);
}

double SpectralProfile::value_at(double x) const {
    return profile_value_at(rho, values, decay_exponent, x);
}

RadialProfile RadialProfile::rescaled_argument(double lambda) const {
    RadialProfile out = *this;
    for (std::size_t i = 0; i < r.size(); ++i) out.values[i] = value_at(lambda * r[i]);
    // tail exponent is scale invariant
    return out;
}

std::vector<double> RadialProfile::log_grid(double rmin, double rmax, int n) {
    if (!(rmin > 0.0 && rmax > rmin && n >= 2)) throw DomainError("log_grid: bad span");
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = rmin * std::pow(rmax / rmin, double(i) / (n - 1));
    g.back() = rmax;
    return g;
}

RadialProfile RadialProfile::sample(int dim, std::span<const double> grid,
                                    const std::function<double(double)>& fn,
                                    std::optional<double> decay_exponent) {
    RadialProfile p;
    p.dim = dim;
    p.r.assign(grid.begin(), grid.end());
    p.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) p.values[i] = fn(grid[i]);
    p.decay_exponent = decay_exponent;
    p.check();
    return p;
}

std::size_t GridField::total() const {
    std::size_t t = 1;
    for (int d = 0; d < dim; ++d) t *= n[d];
    return t;
}

void GridField::check() const {
    if (dim < 1 || dim > 3) throw DomainError("GridField: dim must be 1..3");
    for (int d = 0; d < dim; ++d) {
        if (n[d] < 2 || (n[d] & (n[d] - 1)) != 0)
            throw DomainError("GridField: samples per axis must be a power of two");
        if (!(extent[d] > 0.0)) throw DomainError("GridField: extent must be positive");
    }
    if (values.size() != total()) throw DomainError("GridField: value count mismatch");
}

double GridField::coord(int axis, int index) const {
    const double h = extent[axis] / n[axis];
    return -0.5 * extent[axis] + h * index;
}

std::size_t GridField::index(int i, int j, int k) const {
    if (dim == 1) return static_cast<std::size_t>(i);
    if (dim == 2) return static_cast<std::size_t>(j) * n[0] + i;
    return (static_cast<std::size_t>(k) * n[1] + j) * n[0] + i;
}

GridField GridField::sample(int dim, int n_per_axis, double extent_per_axis,
                            const std::function<double(std::span<const double>)>& fn) {
    GridField f;
    f.dim = dim;
    for (int d = 0; d < dim; ++d) {
        f.n[d] = n_per_axis;
        f.extent[d] = extent_per_axis;
    }
    for (int d = dim; d < 3; ++d) f.n[d] = 1;
    f.values.resize(f.total());
    std::vector<double> x(dim);
    for (int k = 0; k < (dim > 2 ? f.n[2] : 1); ++k)
        for (int j = 0; j < (dim > 1 ? f.n[1] : 1); ++j)
            for (int i = 0; i < f.n[0]; ++i) {
                x[0] = f.coord(0, i);
                if (dim > 1) x[1] = f.coord(1, j);
                if (dim > 2) x[2] = f.coord(2, k);
                f.values[f.index(i, j, k)] = fn(x);
            }
    f.check();
    return f;
}

namespace {
void put(std::ostream& os, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
}
} // namespace

void write_csv(const RadialProfile& p, std::ostream& os) {
    os << "r,value\n";
    for (std::size_t i = 0; i < p.r.size(); ++i) {
        put(os, p.r[i]);
        os << ',';
        put(os, p.values[i]);
        os << '\n';
    }
}

void write_csv(const SpectralProfile& p, std::ostream& os) {
    os << "rho,value\n";
    for (std::size_t i = 0; i < p.rho.size(); ++i) {
        put(os, p.rho[i]);
        os << ',';
        put(os, p.values[i]);
        os << '\n';
    }
}

void write_csv(const GridField& f, std::ostream& os) {
    for (int d = 0; d < f.dim; ++d) os << 'x' << (d + 1) << ',';
    os << "value\n";
    for (int k = 0; k < (f.dim > 2 ? f.n[2] : 1); ++k)
        for (int j = 0; j < (f.dim > 1 ? f.n[1] : 1); ++j)
            for (int i = 0; i < f.n[0]; ++i) {
                put(os, f.coord(0, i));
                os << ',';
                if (f.dim > 1) {
                    put(os, f.coord(1, j));
                    os << ',';
                }
                if (f.dim > 2) {
                    put(os, f.coord(2, k));
                    os << ',';
                }
                put(os, f.values[f.index(i, j, k)]);
                os << '\n';
            }
}

} // namespace frachardy
