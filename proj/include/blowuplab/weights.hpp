#pragma once

#include <vector>

#include "blowuplab/grid.hpp"

namespace blowuplab {

/// One weight per blowup/regularity scenario family. Every variant is a
/// positive separable eigenfunction phi = zeta(z) sin(pi x1/a) sin(pi x2/a)
/// with -Lap phi = lambda1 phi and d2/dz2 phi = lambda2 phi (lambda2 signed).
enum class WeightVariant {
    MixedSemiInf,            // e^{-alpha z},   alpha = 2 pi^2/(beta a^2)
    MixedBounded,            // cosh(alpha (z-b)), alpha root of the coth relation
    MixedBoundedNeumannTop,  // sinh(alpha (b-z)), alpha root of the tanh relation
    Generalized,             // sin(pi z/a) on the cube (0,a)^3
    ViscousSemiInf,          // e^{-alpha z},   alpha = gamma = 2 pi^2/(beta a^2)
    ConservedSemiInf,        // e^{-alpha z},   alpha = pi/a
    ConservedBoundedNeumann, // sinh(alpha (b-z)), alpha = pi/a
    ConservedPeriodicZ,      // (e^{-alpha z} + e^{alpha (z-b)})/2, alpha = pi/a
    ConservedDirichletZ      // cosh(alpha (z-b)), alpha = pi/a
};

const char* to_string(WeightVariant v);

struct WeightSpec {
    WeightVariant variant;
    double a = 0.0;
    double b = 0.0;     // z-extent (bounded) or truncation L (semi-infinite)
    double beta = 0.0;  // mixed/viscous variants only
};

struct EigenWeight {
    WeightVariant variant;
    double a = 0.0, b = 0.0;
    double alpha = 0.0;
    double lambda1 = 0.0;  // -Lap phi = lambda1 phi
    double lambda2 = 0.0;  // d2z phi = lambda2 phi (negative for Generalized)
    double int_phi = 0.0;  // closed-form integral of phi over Omega
    ScalarField phi;       // nodal weight
    ScalarField phi_z;     // nodal analytic d(phi)/dz
    std::vector<double> zeta;    // z-profile at grid nodes
    std::vector<double> dzeta;   // analytic profile derivative

    double phi1(double x1, double x2) const;  // sin(pi x1/a) sin(pi x2/a)
};

/// Build the weight on a grid; validates the variant's admissible parameter
/// range (throws ParameterError) but does not check resonance sets.
EigenWeight make_weight(const WeightSpec& spec, const Grid& grid);

/// Root of h(alpha) = 2 (pi/a)^2 (e^{alpha b}+e^{-alpha b}) /
/// (alpha (e^{alpha b}-e^{-alpha b})) = beta in (0, sqrt(2) pi/a), by
/// bisection; h is strictly decreasing there. Requires beta > h(sqrt2 pi/a).
double solve_alpha(double beta, double a, double b);

/// Same for the Neumann-top weight: 2 (pi/a)^2 tanh(alpha b) / alpha = beta,
/// admissible for (sqrt2 pi/a) tanh(sqrt2 pi b/a) < beta < 2 b (pi/a)^2.
double solve_alpha_neumann_top(double beta, double a, double b);

double h_mixed_bounded(double alpha, double a, double b);
double h_neumann_top(double alpha, double a, double b);

/// sup-norm residual of the discrete eigen-relations over interior nodes
/// (7-point Laplacian / centered second difference), normalized by sup|phi|.
double eigen_residual_laplacian(const EigenWeight& w, const Grid& grid);
double eigen_residual_zz(const EigenWeight& w, const Grid& grid);

}  // namespace blowuplab
