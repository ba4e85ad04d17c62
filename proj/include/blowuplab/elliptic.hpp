#pragma once

#include <vector>

#include "blowuplab/grid.hpp"
#include "blowuplab/parallel.hpp"
#include "blowuplab/transform.hpp"

namespace blowuplab {

/// z-direction boundary conditions for the mixed problem. Sides (x1, x2)
/// are always homogeneous Dirichlet. Top::Periodic identifies z = 0 with
/// z = z_size, in which case the bottom kind is ignored.
struct ZBoundary {
    enum class Bottom { Robin, Neumann, Dirichlet };
    enum class Top { Decay, Dirichlet, Neumann, Periodic };

    Bottom bottom = Bottom::Dirichlet;
    double beta = 0.0;  // Robin coefficient in (v_z + beta v)|_{z=0} = 0
    Top top = Top::Dirichlet;

    bool periodic() const { return top == Top::Periodic; }
};

inline ZBoundary robin_bottom(double beta, ZBoundary::Top top) {
    return {ZBoundary::Bottom::Robin, beta, top};
}
inline ZBoundary neumann_bottom(ZBoundary::Top top) {
    return {ZBoundary::Bottom::Neumann, 0.0, top};
}
inline ZBoundary dirichlet_all() {
    return {ZBoundary::Bottom::Dirichlet, 0.0, ZBoundary::Top::Dirichlet};
}

/// Robin coefficients for which the mixed elliptic problem loses unique
/// solvability. Semi-infinite: beta = pi|k|/a for some integer pair k != 0.
/// Bounded with Dirichlet top: additionally beta = (pi|k|/a) coth(pi|k| b/a).
/// Bounded with Neumann top: the second family becomes (pi|k|/a) tanh(pi|k| b/a).
struct ResonanceSet {
    Domain domain;
    int kmax = 64;
    double tol = 1e-6;

    bool excluded(double beta) const;
    bool excluded(double beta, ZBoundary::Top top) const;
};

/// Convenience check used by the CLI and scenario validation: true iff beta
/// is excluded for some mode representable with k1,k2 <= kmax.
bool resonance_check(double beta, const Domain& domain, int kmax = 64);

enum class EllipticMethod {
    FiniteDifference,  ///< tridiagonal 2nd-order solve in z (all BC menus)
    AnalyticKernel     ///< semi-infinite integral representation, exponential
                       ///< kernels against a piecewise-cubic interpolant of fhat
};

enum class OperatorSign { Standard, Flipped };  // Flipped solves  Delta v = f

struct SolveReport {
    bool truncation_warning = false;  // fhat not decayed at the truncation end
    double max_mode_residual = 0.0;   // FD path: max over modes of the operator residual
};

struct EllipticOptions {
    EllipticMethod method = EllipticMethod::FiniteDifference;
    Exec exec = Exec::OpenMP;
    double resonance_tol = 1e-6;
    bool check_residual = true;
    SolveReport* report = nullptr;
};

/// Solve |k|^2 vhat - vhat_zz = fhat on the z-grid for one sine mode.
/// fhat has grid.npz() entries. Throws ResonanceError when the Robin
/// coefficient sits within resonance_tol of an excluded value for this mode.
std::vector<double> solve_mode_bvp(const Grid& grid, int k1, int k2,
                                   const double* fhat, const ZBoundary& bc,
                                   const EllipticOptions& opt = {});

/// Solve -Delta v = f (Standard) or Delta v = f (Flipped) with homogeneous
/// Dirichlet sides and the given z-conditions. f must vanish on the side
/// walls. Per-mode solves run data-parallel with disjoint writes; output is
/// bitwise independent of the thread count.
ScalarField solve_poisson(const ScalarField& f, const ZBoundary& bc,
                          OperatorSign sign = OperatorSign::Standard,
                          const EllipticOptions& opt = {});

/// Spectral-space variant used by the dynamics hot loop (skips the forward
/// transform when fhat is already available).
SpectralField solve_poisson_modes(const SpectralField& fhat, const ZBoundary& bc,
                                  OperatorSign sign = OperatorSign::Standard,
                                  const EllipticOptions& opt = {});

/// Quadratic form sum_k (a/2)^2 <T_k vhat, vhat>_z of the discrete operator
/// behind the FD solve, with trapezoid weights in z. Consistent with
/// int |grad v|^2 - beta * int_Gamma v^2 under the active BCs; the discrete
/// energy identity tests conserve exactly this form.
double dirichlet_form(const SpectralField& vhat, const ZBoundary& bc);

}  // namespace blowuplab
