#ifndef FRACHARDY_CONSTANTS_HPP
#define FRACHARDY_CONSTANTS_HPP

#include "frachardy/params.hpp"

namespace frachardy {

/// Optimal Hardy constant  gamma_0 = 2^{2s} Gamma^2((N+2s)/4) / Gamma^2((N-2s)/4).
double gamma0(int N, double s);

/// Perturbed constant
///   gamma_alpha = 2^{2s} G((N+2s+2a)/4) G((N+2s-2a)/4) / [G((N-2s-2a)/4) G((N-2s+2a)/4)],
/// strictly decreasing in alpha on [0,(N-2s)/2), zero at the right endpoint
/// (continuous limit; the raw expression has a Gamma pole there).
double gamma_alpha(int N, double s, double alpha);

/// Radial Fourier symbol factor m_alpha = 2^{s+a} G((N+2s+2a)/4)/G((N-2s-2a)/4),
/// defined for alpha in (-N/2-s, (N-2s)/2); m_alpha * m_{-alpha} = gamma_alpha.
double m_alpha(int N, double s, double alpha);

/// Extension flux constant kappa_s = Gamma(1-s) / (2^{2s-1} Gamma(s)).
double kappa_s(double s);

/// Fourier transform coefficient of the pure power law:
///   F(|x|^{-sigma})(rho) = powlaw_fourier_coeff(sigma,N) * rho^{sigma-N},
/// valid for 0 < sigma < N.
double powlaw_fourier_coeff(double sigma, int N);

/// Kernel normalizations, computed by calibration rather than table lookup:
/// p_Ns normalizes the Poisson kernel to unit mass; c_sN makes the
/// principal-value representation agree with the Fourier definition on a
/// Gaussian probe. Results are cached per (N,s).
struct KernelConstants {
    double c_sN;
    double p_Ns;
};
KernelConstants kernel_constants(int N, double s);

/// Literature closed forms, used as independent cross-checks of the
/// calibration: c_sN = 2^{2s} G(N/2+s) / (pi^{N/2} |G(-s)|),
///              p_Ns = G((N+2s)/2) / (pi^{N/2} G(s)).
double c_sN_closed_form(int N, double s);
double p_Ns_closed_form(int N, double s);

/// Every closed-form constant for one parameter set, for reporting.
struct ConstantSet {
    double gamma0;
    double gamma_alpha;
    double m_alpha;
    double m_minus_alpha;
    double kappa_s;
    double c_sN;
    double p_Ns;
};
ConstantSet constants_for(const Params& prm);

} // namespace frachardy

#endif
