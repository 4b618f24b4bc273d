#ifndef FRACHARDY_SPECIAL_HPP
#define FRACHARDY_SPECIAL_HPP

namespace frachardy {

/// Gamma function, Lanczos approximation with reflection for x < 0.5.
/// Accurate to >= 12 significant digits on the real line away from poles.
/// Throws DomainError at non-positive integers.
double gamma_fn(double x);

/// Bessel function of the first kind, order nu >= -1/2. Power series for
/// small argument, Hankel asymptotic expansion for large argument.
double bessel_j(double nu, double x);

/// Coefficients of the Hankel asymptotic expansion
///   J_nu(z) ~ sqrt(2/(pi z)) [ P(z) cos w - Q(z) sin w ],
///   w = z - nu*pi/2 - pi/4,
/// evaluated at z (valid for z >= ~12). For nu = +-1/2 this is exact
/// (P = 1, Q = 0).
void bessel_asymptotic_pq(double nu, double z, double& p, double& q);

/// Surface measure of the unit sphere S^{N-1} (2 for N = 1).
double sphere_area(int N);

} // namespace frachardy

#endif
