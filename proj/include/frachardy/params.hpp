#ifndef FRACHARDY_PARAMS_HPP
#define FRACHARDY_PARAMS_HPP

#include <cmath>
#include <string>

#include "frachardy/errors.hpp"

namespace frachardy {

/// Problem parameters: dimension N, fractional order s in (0,1), Hardy
/// perturbation index alpha in [0, (N-2s)/2], nonlinearity exponent p > 1,
/// remainder-norm exponent q in (1,2).
struct Params {
    int N = 3;
    double s = 0.5;
    double alpha = 0.0;
    double p = 2.0;
    double q = 1.5;

    double a() const { return 1.0 - 2.0 * s; }
    double alpha_max() const { return 0.5 * (N - 2.0 * s); }
    double tau() const { return 0.5 * (1.0 + 2.0 * s) - 1.0 / q; }
    /// Critical exponent (N+2s-2a)/(N-2s-2a) for the index a.
    double p_crit(double a_) const {
        return (N + 2.0 * s - 2.0 * a_) / (N - 2.0 * s - 2.0 * a_);
    }
    double p_crit() const { return p_crit(alpha); }
    /// Lower edge of the supercritical explicit-solution window.
    double p_serrin() const { return (N + 2.0 * s) / (N - 2.0 * s); }

    void validate() const {
        if (N < 1) throw DomainError("Params: N must be a positive integer");
        if (!(s > 0.0 && s < 1.0)) throw DomainError("Params: s must lie in (0,1)");
        if (!(p > 1.0)) throw DomainError("Params: p must exceed 1");
        if (!(q > 1.0 && q < 2.0)) throw DomainError("Params: q must lie in (1,2)");
        if (alpha < 0.0) throw DomainError("Params: alpha must be nonnegative");
    }
    /// Extra requirements shared by every Hardy-potential operation.
    void validate_hardy() const {
        validate();
        if (!(N > 2.0 * s)) throw DomainError("Params: Hardy potential requires N > 2s");
        if (alpha > alpha_max() + 1e-14)
            throw DomainError("Params: alpha must not exceed (N-2s)/2");
    }
    /// Remainder norms additionally need tau > 0, i.e. q > 2/(1+2s).
    void validate_remainder() const {
        validate_hardy();
        if (!(q > 2.0 / (1.0 + 2.0 * s)))
            throw DomainError("Params: remainder norm requires q > max(1, 2/(1+2s))");
    }
};

} // namespace frachardy

#endif
