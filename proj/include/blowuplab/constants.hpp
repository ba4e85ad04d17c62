#pragma once

#include "blowuplab/grid.hpp"
#include "blowuplab/weights.hpp"

namespace blowuplab {

/// Theorem constants for the active scenario. A and B come from weighted
/// integrals of the initial data; D, C, J, I_inf combine into the upper
/// bound T_star on the singularity time. F-tracking uses
///   F(t) = D_F * int_0^t int_0^s (int u^2 phi) dtau ds + slope0 * t,
/// with F'' = D_F * (int u^2 phi) >= D_F F^2 while the hypotheses hold.
/// For the mixed variants D_F equals the printed D; conserved variants use
/// the exact closed-form (int phi)^{-1/2} and the halved slope B/2.
struct BlowupConstants {
    double A = 0.0;
    double B = 0.0;
    double D = 0.0;
    double C = 0.0;
    double J = 0.0;
    double I_inf = 0.0;
    double T_star = 0.0;

    double lambda = 0.0;  // viscous: nu * (2 (pi/a)^2 - alpha^2)
    double T0 = 0.0;      // viscous: log(2) / lambda

    double D_F = 0.0;
    double slope0 = 0.0;          // F'(0)
    double identity_coeff = 0.0;  // d/dt int psi_z phi = coeff * int u^2 phi
    double log_bound_coeff = 0.0; // int (log u) phi <= coeff * sqrt(int u^2 phi)

    bool A_positive = false;
    bool B_positive = false;
    bool viscous_window_ok = true;  // T_star < T0 when viscous
    bool hypothesis_ok = false;
};

/// aux is psi0 for the inviscid/generalized/conserved families and omega0
/// for the viscous family (B = -int omega0 phi_z there). nu is used only by
/// the viscous variant.
BlowupConstants compute_constants(const ScalarField& u0, const ScalarField& aux,
                                  const EigenWeight& weight, double nu = 0.0);

}  // namespace blowuplab
