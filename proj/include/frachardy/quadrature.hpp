#ifndef FRACHARDY_QUADRATURE_HPP
#define FRACHARDY_QUADRATURE_HPP

#include <functional>
#include <span>
#include <vector>

namespace frachardy {

/// Gauss-Legendre rule on [-1,1]; nodes/weights computed once per order
/// by Newton iteration on the Legendre polynomial and cached.
struct GaussRule {
    std::vector<double> x, w;
};
const GaussRule& gauss_rule(int n);

/// integral of f over [a,b] with an n-point Gauss rule.
double gauss_integrate(const std::function<double(double)>& f, double a, double b, int n = 8);

/// Composite Gauss integration over panels whose endpoints are given.
double panel_integrate(const std::function<double(double)>& f,
                       std::span<const double> breakpoints, int n = 8);

/// Geometrically spaced breakpoints a = b_0 < ... < b_m = b (a > 0).
std::vector<double> log_panels(double a, double b, int per_decade = 4);

/// Integral of v(r) * r^weight over the grid span [r.front(), r.back()],
/// where v is the sampled profile interpolated as a power law on cells with
/// same-sign endpoint values (linear otherwise). Exact on power-law data;
/// robust for singular weights as long as the product is integrable.
double powercell_integral(std::span<const double> r, std::span<const double> v,
                          double weight);

/// Closed form of  int_a^b r^e dr  (handles e = -1).
double power_moment(double a, double b, double e);

/// Interpolating model of grid samples: log-log cubic through the four
/// surrounding nodes where the data is one-signed and log-smooth, local
/// power law / linear otherwise.
class GridInterp {
public:
    GridInterp(std::span<const double> x, std::span<const double> v);
    double eval_cell(std::size_t cell, double r) const;
    /// locate the cell by binary search and evaluate; clamps to grid ends.
    double eval(double r) const;
    std::size_t cells() const { return x_.size() - 1; }
    double cell_lo(std::size_t c) const { return x_[c]; }
    double cell_hi(std::size_t c) const { return x_[c + 1]; }

private:
    std::vector<double> x_, v_, lx_, ly_;
    std::vector<signed char> cubic_;
};

/// integral of model(v)(r) * r^weight over the grid span, Gauss per cell on
/// the GridInterp model. More accurate than powercell_integral on smooth
/// non-power data.
double cubic_weighted_integral(std::span<const double> x, std::span<const double> v,
                               double weight);

/// Least-squares fit of log|v| = c + e*log(r); returns slope e, intercept
/// exp(c) via c_out, and R^2 via r2_out. Entries with v <= 0 are rejected
/// (throws FitError) since the fit is meant for positive power-law data.
double loglog_fit(std::span<const double> r, std::span<const double> v,
                  double* c_out = nullptr, double* r2_out = nullptr);

} // namespace frachardy

#endif
