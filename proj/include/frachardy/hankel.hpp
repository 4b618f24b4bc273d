#ifndef FRACHARDY_HANKEL_HPP
#define FRACHARDY_HANKEL_HPP

#include <span>

#include "frachardy/profiles.hpp"

namespace frachardy {

struct HankelOptions {
    double head_extent = 1e-5;   // head region reaches down to r_min * head_extent
    bool quad_check = true;      // probe-node self-refinement check
    double quad_check_tol = 2e-4;
    // spectral values below this fraction of the peak are treated as the
    // quadrature error floor and dropped by chained/weighted consumers
    double spectral_floor = 1e-8;
};

/// Radial Fourier transform
///   F(u)(rho) = rho^{(1-N)/2} int_0^inf (r rho)^{1/2} J_{(N-2)/2}(r rho) u(r) r^{(N-1)/2} dr.
/// Power-law head/tail components are transformed in closed form; the grid
/// remainder by oscillation-aware panel quadrature. The transform is its own
/// inverse on radial functions under this normalization.
SpectralProfile hankel_forward(const RadialProfile& u, std::span<const double> rho_nodes,
                               const HankelOptions& opt = {});
SpectralProfile hankel_forward(const RadialProfile& u, const HankelOptions& opt = {});

RadialProfile hankel_inverse(const SpectralProfile& g, std::span<const double> r_nodes,
                             const HankelOptions& opt = {});

/// Frequency grid adapted to the resolution of u's radial grid.
std::vector<double> default_rho_grid(const RadialProfile& u);

/// (-Lap)^s u on u's own grid, computed as the inverse transform of
/// rho^{2s} * F(u).
RadialProfile frac_lap_radial(const RadialProfile& u, double s,
                              const HankelOptions& opt = {});

/// Same operator evaluated at caller-chosen radii (no output interpolation).
RadialProfile frac_lap_radial_at(const RadialProfile& u, double s,
                                 std::span<const double> r_nodes,
                                 const HankelOptions& opt = {});

/// Pointwise value of (-Lap)^s u at the origin.
double frac_lap_radial_at_origin(const RadialProfile& u, double s,
                                 const HankelOptions& opt = {});

/// int |zeta|^{2s} |F(u)|^2 dzeta for compactly supported u.
double spectral_seminorm_sq(const RadialProfile& u, double s,
                            const HankelOptions& opt = {});

/// int_{R^N} |x|^{-2s} u(x)^2 dx by radial quadrature (head/tail models).
double hardy_weighted_l2(const RadialProfile& u, double s);

/// int_{R^N} w(x) dx for w sampled radially, weight |x|^{power} inserted:
/// omega_{N-1} * int r^{N-1+power} u(r)^{value_power} dr with model head/tail.
double radial_integral(const RadialProfile& u, double extra_r_power, double value_power);

} // namespace frachardy

#endif
