#ifndef FRACHARDY_FFT_HPP
#define FRACHARDY_FFT_HPP

#include <complex>
#include <vector>

#include "frachardy/profiles.hpp"

namespace frachardy {

/// In-place radix-2 FFT; n must be a power of two. inverse=true applies the
/// conjugate transform with 1/n scaling.
void fft_inplace(std::complex<double>* data, std::size_t n, bool inverse);

/// Multidimensional FFT of a real field; returns the complex spectrum in
/// row-major layout matching GridField::index.
std::vector<std::complex<double>> fft_field(const GridField& f);

/// Discrete fractional Laplacian by the Fourier multiplier |zeta|^{2s} on
/// the periodic box; the zero mode is annihilated.
GridField frac_lap_fft(const GridField& f, double s);

/// Fractional heat/Poisson-type smoothing used by the grid extension path:
/// convolution with a kernel sampled on the (periodized) box, kernel mass
/// normalized to one.
GridField convolve_with_kernel(const GridField& f,
                               const std::function<double(double)>& radial_kernel);

} // namespace frachardy

#endif
