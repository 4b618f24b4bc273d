#ifndef FRACHARDY_SINGULAR_HPP
#define FRACHARDY_SINGULAR_HPP

#include <functional>
#include <span>
#include <vector>

namespace frachardy {

using FieldFn = std::function<double(std::span<const double>)>;

struct PVOptions {
    double delta = 0.02;        // Taylor-regularized ball radius around x
    double outer_radius = 100.0; // tail truncation radius
    int per_decade = 8;          // radial panels per decade in the shell
    double fd_step_factor = 0.25; // FD step for the local Laplacian, as fraction of delta
    double tail_rel_tol = 0.05;  // throw when tail bound exceeds this fraction of |value|
    bool check_tail = true;
};

struct PVResult {
    double value;
    double tail_bound; // bound on the neglected far-field contribution
};

/// Raw principal value  P.V. int (f(x)-f(y)) / |x-y|^{N+2s} dy  (no C_{s,N}).
/// The ball |y-x| < delta is handled by a second-order Taylor model whose
/// even part integrates in closed form.
PVResult pv_integral_raw(const FieldFn& f, std::span<const double> x, int N, double s,
                         const PVOptions& opt = {});

/// Pointwise fractional Laplacian by the singular-integral representation,
/// C_{s,N} * P.V. integral, with C_{s,N} from kernel_constants calibration.
PVResult frac_lap_singular(const FieldFn& f, std::span<const double> x, double s,
                           const PVOptions& opt = {});

} // namespace frachardy

#endif
