#ifndef FRACHARDY_EXTENSION_HPP
#define FRACHARDY_EXTENSION_HPP

#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "frachardy/profiles.hpp"

namespace frachardy {

/// Tensor mesh for the degenerate problem div(t^{1-2s} grad w) = 0 on the
/// truncated half space {0 < t < T, 0 <= |x| < R}, radial in x.
/// Heights are geometrically graded toward t = 0, radii toward r = 0 with
/// the patch radius always a node. Face coefficients carry the weight
/// t^{1-2s} through exact integrals, so the discrete bottom flux reproduces
/// the t^{2s} boundary layer exactly.
struct MeshSpec {
    int t_levels = 80;
    double t_ratio = 0.85;
    double height = 20.0;
    double radius = 12.0;
    double r_ratio = 0.89;
    double patch_radius = 1.0;
    double r_min_rel = 2e-4; // smallest positive radius, relative to radius
};

struct ExtensionMesh {
    int dim = 3;
    double s = 0.5;
    std::vector<double> t;  // t[0] = 0, ..., t[K] = T (row K is Dirichlet)
    std::vector<double> r;  // r[0] = 0, ..., r[I] = R (column I is Dirichlet)
    std::size_t patch_end = 0; // columns i < patch_end lie inside the patch

    // face/cell coefficients (see build())
    std::vector<double> Ct; // t-face k <-> k+1: 2s / (t_{k+1}^{2s} - t_k^{2s})
    std::vector<double> Wt; // t-cell weight int tau^{1-2s} over the row cell
    std::vector<double> Cr; // r-face i <-> i+1: 1 / int rho^{1-N}
    std::vector<double> Vr; // r-cell volume int rho^{N-1}

    std::size_t rows() const { return t.size() - 1; }    // unknown rows 0..K-1
    std::size_t cols() const { return r.size() - 1; }    // unknown cols 0..I-1

    static ExtensionMesh build(int dim, double s, const MeshSpec& spec = {});
};

/// w(t_k, r_i) on the mesh, rows k = 0..K (row 0 is the t=0 trace).
struct HalfSpaceField {
    ExtensionMesh mesh;
    std::vector<double> values; // (K+1) x I, row-major

    double& at(std::size_t k, std::size_t i) { return values[k * mesh.cols() + i]; }
    double at(std::size_t k, std::size_t i) const { return values[k * mesh.cols() + i]; }
    std::span<const double> row(std::size_t k) const {
        return std::span<const double>(values).subspan(k * mesh.cols(), mesh.cols());
    }
    RadialProfile trace_profile() const; // positive-radius part of row 0
};

void write_csv(const HalfSpaceField& f, std::ostream& os);

/// Mixed problem: div(t^{1-2s} grad w) = 0, w = 0 on {t=0} outside the
/// patch and on the lateral/top truncation boundary, and on the patch
///   -t^{1-2s} dw/dt + (c - hardy_gamma |x|^{-2s} capped) w = kappa_s g.
struct MixedProblem {
    int dim = 3;
    double s = 0.5;
    std::function<double(double)> neumann_data; // g(r) on the patch
    double zeroth_order = 0.0;                  // c >= 0
    double hardy_gamma = 0.0;                   // coefficient of |x|^{-2s}
    double hardy_cutoff = std::numeric_limits<double>::infinity();
    MeshSpec mesh;
};

struct SolveStats {
    int iterations = 0;
    double residual = 0.0;
};

/// Conjugate-gradient solve of the mixed problem (Jacobi preconditioned,
/// relative residual 1e-10). Throws ConvergenceError when the quadratic
/// form is not positive definite (Hardy coefficient too large).
HalfSpaceField solve_mixed(const MixedProblem& prob, SolveStats* stats = nullptr,
                           const std::vector<double>* warm_start = nullptr);

/// Energy-minimizing extension of given bottom data (Dirichlet at t=0).
HalfSpaceField solve_dirichlet(const ExtensionMesh& mesh, std::span<const double> bottom,
                               SolveStats* stats = nullptr);

/// Poisson-kernel extension P(t,.) * u evaluated on one slice.
RadialProfile poisson_extend_slice(const RadialProfile& u, double s, double t,
                                   std::span<const double> r_nodes);

/// Poisson-kernel extension sampled on every mesh row (row 0 = u itself).
HalfSpaceField poisson_extend_field(const RadialProfile& u, const ExtensionMesh& mesh);

/// Poisson-kernel extension of a periodic-box field at height t.
GridField poisson_extend(const GridField& u, double t, double s);

/// Boundary flux -lim_{t->0} t^{1-2s} dw/dt extrapolated from the three
/// smallest positive rows through the model w0 + c1 t^{2s} + c2 t^2.
/// Throws ExtrapolationError when successive estimates disagree.
RadialProfile dtn_trace(const HalfSpaceField& w);

struct EnergyResult {
    double value = 0.0;          // int t^{1-2s} |grad w|^2 over the truncated domain
    double outer_shell_fraction = 0.0; // share carried by the outer 20% (tail indicator)
};
EnergyResult weighted_energy(const HalfSpaceField& w);

/// Discrete Dirichlet-to-Neumann application: harmonic extension of the
/// bottom data followed by the bottom-face flux. B_s v = apply_dtn(v)/kappa_s.
std::vector<double> apply_dtn(const ExtensionMesh& mesh, std::span<const double> bottom,
                              SolveStats* stats = nullptr);

/// Dense DtN matrix on the patch columns (flux response to unit traces),
/// built once per mesh via a banded factorization of the interior problem.
class DtnOperator {
public:
    explicit DtnOperator(const ExtensionMesh& mesh);
    const ExtensionMesh& mesh() const { return *mesh_; }
    std::size_t size() const { return n_; } // patch column count
    /// flux response to trace v (v indexed over patch columns)
    std::vector<double> apply(std::span<const double> v) const;
    /// harmonic-extension energy  int t^{1-2s} |grad w|^2  of trace v
    double energy(std::span<const double> v) const;
    const std::vector<double>& matrix() const { return dense_; } // n x n

private:
    std::shared_ptr<ExtensionMesh> mesh_;
    std::size_t n_;
    std::vector<double> dense_;
};

} // namespace frachardy

#endif
