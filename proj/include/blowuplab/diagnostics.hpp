#pragma once

#include <vector>

#include "blowuplab/constants.hpp"
#include "blowuplab/dynamics.hpp"

namespace blowuplab {

/// Fill F, dF, ddF on a recorded series:
///   F(t) = D_F * int_0^t int_0^s U dtau ds + slope0 * t,   U = int u^2 phi,
/// by trapezoid double time-quadrature on the (possibly nonuniform) record
/// times; dF = D_F * int_0^t U + slope0; ddF by nonuniform centered second
/// differences of F (end samples keep 0).
void track_F(std::vector<DiagnosticsRecord>& recs, const BlowupConstants& c);

struct SeriesCheck {
    double max_rel_residual = 0.0;  // identity-style checks
    double worst_margin = 0.0;      // inequality-style checks, >= -tol expected
    int samples = 0;
};

/// Residual of d/dt int psi_z phi = coeff * int u^2 phi on records with
/// t <= t_max (nonuniform centered first difference of the recorded series,
/// normalized per sample by |rhs|).
SeriesCheck identity_check_psi(const std::vector<DiagnosticsRecord>& recs, double coeff,
                               double t_max);

/// Margin of int (log u) phi <= log_bound_coeff * sqrt(int u^2 phi); flags
/// violations beyond 1e-8 with kFlagLogBound. worst_margin >= 0 expected.
SeriesCheck log_bound_check(std::vector<DiagnosticsRecord>& recs,
                            const BlowupConstants& c);

/// Comparison inequality F'' >= D_F F^2 - tol (1 + F^2): reports the worst
/// normalized margin (ddF - D_F F^2)/(1 + F^2) over interior samples with
/// t <= t_max. With gate_on_r, samples after the first r > B/2 violation are
/// skipped (the conserved theorems suspend their claim there). Requires
/// track_F to have run.
SeriesCheck comparison_check(const std::vector<DiagnosticsRecord>& recs,
                             const BlowupConstants& c, double t_max,
                             bool gate_on_r = false);

/// Conserved-BC integral inequality
///   int (log u) phi >= 2 coeff * int int U + A + B t / 2
/// while r <= B/2; worst margin normalized by (1 + scale of the terms).
SeriesCheck conserved_inequality_check(const std::vector<DiagnosticsRecord>& recs,
                                       const BlowupConstants& c);

/// max_{t <= t_max} |E(t) - E(0)| / |E(0)|
double energy_drift(const std::vector<DiagnosticsRecord>& recs, double t_max);

/// Viscous runs: residual of the measured int omega phi_z against
///   e^{-lambda t} W(0) - alpha^2 int_0^t e^{-lambda (t-s)} U(s) ds,
/// with U piecewise linear between records (exponential moments exact).
/// Residual normalized by max |W| over the window.
SeriesCheck viscous_kernel_check(const std::vector<DiagnosticsRecord>& recs,
                                 double lambda, double alpha, double t_max);

struct DecayCheck {
    bool u_bound_ok = true;  // sup u <= sup u0 * e^{-7t} (1 + 1e-6) per record
    bool v_bound_ok = true;  // v <= -2 everywhere per record
    double worst_u_ratio = 0.0;
};

/// Regularity-variant decay assertions; flags violations with
/// kFlagDecayViolated.
DecayCheck decay_check(std::vector<DiagnosticsRecord>& recs, double sup_u0);

/// First record index with r > B/2, or recs.size() when the condition holds
/// throughout.
size_t first_r_violation(const std::vector<DiagnosticsRecord>& recs, double B);

}  // namespace blowuplab
