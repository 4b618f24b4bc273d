#ifndef FRACHARDY_PROFILES_HPP
#define FRACHARDY_PROFILES_HPP

#include <array>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

namespace frachardy {

/// A radial function sampled on a strictly increasing positive grid.
/// decay_exponent, when set, extends the profile beyond r.back() as
/// values.back() * (x/r.back())^decay_exponent; otherwise the profile is
/// treated as compactly supported in [0, r.back()]. Below r.front() the
/// profile follows the power law fitted from the first two samples (or a
/// constant when the fit is unavailable).
struct RadialProfile {
    std::vector<double> r;
    std::vector<double> values;
    int dim = 3;
    std::optional<double> decay_exponent;

    std::size_t size() const { return r.size(); }
    void check() const;

    /// Evaluate with head/tail extension models.
    double value_at(double x) const;

    /// u(lambda * .) sampled on the same grid.
    RadialProfile rescaled_argument(double lambda) const;

    static std::vector<double> log_grid(double rmin, double rmax, int n);
    static RadialProfile sample(int dim, std::span<const double> grid,
                                const std::function<double(double)>& fn,
                                std::optional<double> decay_exponent = std::nullopt);
};

/// Radial samples of a Fourier-side function on frequency nodes rho.
struct SpectralProfile {
    std::vector<double> rho;
    std::vector<double> values;
    int dim = 3;
    std::optional<double> decay_exponent;

    double value_at(double x) const;
};

/// Periodic-box samples on [-L/2, L/2)^N, N <= 3, power-of-two n per axis.
struct GridField {
    int dim = 1;
    std::array<int, 3> n{2, 1, 1};
    std::array<double, 3> extent{1.0, 1.0, 1.0};
    std::vector<double> values;

    std::size_t total() const;
    void check() const;
    double coord(int axis, int index) const; // in [-L/2, L/2)
    std::size_t index(int i, int j = 0, int k = 0) const;

    static GridField sample(int dim, int n_per_axis, double extent_per_axis,
                            const std::function<double(std::span<const double>)>& fn);
};

void write_csv(const RadialProfile& p, std::ostream& os);
void write_csv(const SpectralProfile& p, std::ostream& os);
void write_csv(const GridField& f, std::ostream& os);

} // namespace frachardy

#endif
