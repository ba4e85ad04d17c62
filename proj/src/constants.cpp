#include "blowuplab/constants.hpp"

#include <cmath>
#include <limits>

#include "blowuplab/quadrature.hpp"

namespace blowuplab {

namespace {
const double kPi = std::acos(-1.0);
}

BlowupConstants compute_constants(const ScalarField& u0, const ScalarField& aux,
                                  const EigenWeight& w, double nu) {
    BlowupConstants c;
    const double a = w.a, alpha = w.alpha;
    const double lam1 = w.lambda1;
    const double inv_sqrt_int_phi = 1.0 / std::sqrt(w.int_phi);

    c.I_inf = quad_I_infinity();
    c.A = masked_log_integral(u0, w.phi);
    c.log_bound_coeff = std::sqrt(w.int_phi);

    switch (w.variant) {
        case WeightVariant::MixedSemiInf:
        case WeightVariant::MixedBounded:
        case WeightVariant::MixedBoundedNeumannTop: {
            c.B = 2.0 * weighted_integral(dz(aux), w.phi);
            c.D = kPi * std::pow(alpha, 2.5) / (a * lam1);
            c.D_F = c.D;
            c.slope0 = std::sqrt(alpha) * kPi / (2.0 * a) * c.B;
            c.identity_coeff = alpha * alpha / lam1;
            break;
        }
        case WeightVariant::Generalized: {
            c.B = 2.0 * weighted_integral(dz(aux), w.phi);
            c.D_F = (2.0 / 3.0) * inv_sqrt_int_phi;
            c.D = c.D_F;
            c.slope0 = inv_sqrt_int_phi * c.B;
            c.identity_coeff = 1.0 / 3.0;
            break;
        }
        case WeightVariant::ViscousSemiInf: {
            // aux is omega0 here
            c.B = -weighted_integral(aux, w.phi_z);
            c.D = 2.0 / lam1;
            c.D_F = kPi * std::pow(alpha, 2.5) * c.D / (4.0 * a);
            c.slope0 = kPi * std::sqrt(alpha) * c.D * c.B / (4.0 * a);
            c.identity_coeff = alpha * alpha / lam1;
            c.lambda = nu * lam1;
            c.T0 = (c.lambda > 0.0) ? std::log(2.0) / c.lambda
                                    : std::numeric_limits<double>::infinity();
            break;
        }
        case WeightVariant::ConservedSemiInf:
        case WeightVariant::ConservedBoundedNeumann:
        case WeightVariant::ConservedPeriodicZ:
        case WeightVariant::ConservedDirichletZ: {
            const bool periodic = (w.variant == WeightVariant::ConservedPeriodicZ);
            c.B = 2.0 * weighted_integral(dz(aux, periodic), w.phi);
            c.D_F = inv_sqrt_int_phi * 2.0 * alpha * alpha / lam1;
            c.D = c.D_F;
            c.slope0 = inv_sqrt_int_phi * 0.5 * c.B;
            c.identity_coeff = alpha * alpha / lam1;
            break;
        }
    }

    c.C = c.slope0 * c.slope0;
    c.A_positive = c.A > 0.0;
    c.B_positive = c.B > 0.0;

    if (c.B > 0.0) {
        c.J = std::cbrt(3.0 * c.C / (2.0 * c.D_F));
        if (w.variant == WeightVariant::ViscousSemiInf) {
            // printed bound of the partial-viscosity theorem
            c.T_star =
                std::pow(kPi * std::pow(alpha, 3) * c.D * c.D * c.B / (12.0 * a),
                         -1.0 / 3.0) *
                c.I_inf;
        } else {
            c.T_star = c.J / std::sqrt(c.C) * c.I_inf;
        }
    } else {
        c.T_star = std::numeric_limits<double>::infinity();
    }

    if (w.variant == WeightVariant::ViscousSemiInf)
        c.viscous_window_ok = c.T_star < c.T0;
    c.hypothesis_ok = c.A_positive && c.B_positive && c.viscous_window_ok;
    return c;
}

}  // namespace blowuplab
