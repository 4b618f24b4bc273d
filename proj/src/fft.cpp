#include "frachardy/fft.hpp"

#include <cmath>

#include "frachardy/errors.hpp"

namespace frachardy {

namespace {
constexpr double kPi = 3.14159265358979323846;

// frequency k index -> signed wavenumber index in [-n/2, n/2)
int signed_mode(int k, int n) { return k < n / 2 ? k : k - n; }

// apply 1-D transforms along every axis
void fft_all_axes(std::vector<std::complex<double>>& data, const GridField& f, bool inverse) {
    const int nx = f.n[0], ny = f.dim > 1 ? f.n[1] : 1, nz = f.dim > 2 ? f.n[2] : 1;
    std::vector<std::complex<double>> line;
    // axis 0
    line.resize(nx);
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < ny; ++j) {
            for (int i = 0; i < nx; ++i) line[i] = data[f.index(i, j, k)];
            fft_inplace(line.data(), nx, inverse);
            for (int i = 0; i < nx; ++i) data[f.index(i, j, k)] = line[i];
        }
    if (f.dim > 1) {
        line.resize(ny);
        for (int k = 0; k < nz; ++k)
            for (int i = 0; i < nx; ++i) {
                for (int j = 0; j < ny; ++j) line[j] = data[f.index(i, j, k)];
                fft_inplace(line.data(), ny, inverse);
                for (int j = 0; j < ny; ++j) data[f.index(i, j, k)] = line[j];
            }
    }
    if (f.dim > 2) {
        line.resize(nz);
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                for (int k = 0; k < nz; ++k) line[k] = data[f.index(i, j, k)];
                fft_inplace(line.data(), nz, inverse);
                for (int k = 0; k < nz; ++k) data[f.index(i, j, k)] = line[k];
            }
    }
}

} // namespace

void fft_inplace(std::complex<double>* data, std::size_t n, bool inverse) {
    if (n == 0 || (n & (n - 1)) != 0) throw DomainError("fft: length must be a power of two");
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * kPi / double(len) * (inverse ? 1.0 : -1.0);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> u = data[i + j];
                const std::complex<double> v = data[i + j + len / 2] * w;
                data[i + j] = u + v;
                data[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (std::size_t i = 0; i < n; ++i) data[i] /= double(n);
}

std::vector<std::complex<double>> fft_field(const GridField& f) {
    f.check();
    std::vector<std::complex<double>> data(f.values.begin(), f.values.end());
    fft_all_axes(data, f, false);
    return data;
}

GridField frac_lap_fft(const GridField& f, double s) {
    f.check();
    if (!(s > 0.0 && s < 1.0)) throw DomainError("frac_lap_fft: s outside (0,1)");
    std::vector<std::complex<double>> data = fft_field(f);
    const int nx = f.n[0], ny = f.dim > 1 ? f.n[1] : 1, nz = f.dim > 2 ? f.n[2] : 1;
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                double z2 = 0.0;
                const double zx = 2.0 * kPi * signed_mode(i, nx) / f.extent[0];
                z2 += zx * zx;
                if (f.dim > 1) {
                    const double zy = 2.0 * kPi * signed_mode(j, ny) / f.extent[1];
                    z2 += zy * zy;
                }
                if (f.dim > 2) {
                    const double zz = 2.0 * kPi * signed_mode(k, nz) / f.extent[2];
                    z2 += zz * zz;
                }
                data[f.index(i, j, k)] *= (z2 == 0.0) ? 0.0 : std::pow(z2, s);
            }
    fft_all_axes(data, f, true);
    GridField out = f;
    for (std::size_t i = 0; i < data.size(); ++i) out.values[i] = data[i].real();
    return out;
}

GridField convolve_with_kernel(const GridField& f,
                               const std::function<double(double)>& radial_kernel) {
    f.check();
    GridField ker = f;
    const int nx = f.n[0], ny = f.dim > 1 ? f.n[1] : 1, nz = f.dim > 2 ? f.n[2] : 1;
    double mass = 0.0;
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                // min-image distance from the origin on the torus
                double r2 = 0.0;
                const double dx = f.coord(0, i);
                r2 += dx * dx;
                if (f.dim > 1) {
                    const double dy = f.coord(1, j);
                    r2 += dy * dy;
                }
                if (f.dim > 2) {
                    const double dz = f.coord(2, k);
                    r2 += dz * dz;
                }
                const double v = radial_kernel(std::sqrt(r2));
                ker.values[ker.index(i, j, k)] = v;
                mass += v;
            }
    if (mass == 0.0) throw DomainError("convolve_with_kernel: zero kernel mass");
    for (double& v : ker.values) v /= mass;

    auto fd = fft_field(f);
    auto kd = fft_field(ker);
    // kernel sampled with origin at the box center: undo the (-1)^{i+j+k} shift
    std::vector<std::complex<double>> prod(fd.size());
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                const std::size_t id = f.index(i, j, k);
                double sign = ((i + j + k) % 2 == 0) ? 1.0 : -1.0;
                prod[id] = fd[id] * kd[id] * sign;
            }
    fft_all_axes(prod, f, true);
    GridField out = f;
    for (std::size_t i = 0; i < prod.size(); ++i) out.values[i] = prod[i].real();
    return out;
}

} // namespace frachardy
