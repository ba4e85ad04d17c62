#pragma once

#include <string>
#include <vector>

#include "blowuplab/constants.hpp"
#include "blowuplab/elliptic.hpp"
#include "blowuplab/grid.hpp"
#include "blowuplab/weights.hpp"

namespace blowuplab {

enum class Variant { Inviscid, Viscous, Generalized, Regularity };

const char* to_string(Variant v);

struct ModelSpec {
    Variant variant = Variant::Inviscid;
    Domain domain;
    ZBoundary psi_bc;    // stream-function conditions in z (sides always Dirichlet)
    double nu = 0.0;     // viscous only
    double gamma = 0.0;  // Robin coefficient of omega at z = 0 (viscous only)
    double cs = 1.0;     // Sobolev constant entering the regularity hypothesis
    EllipticMethod method = EllipticMethod::FiniteDifference;
    Exec exec = Exec::OpenMP;

    EllipticOptions elliptic_options() const {
        EllipticOptions o;
        o.method = method;
        o.exec = exec;
        return o;
    }
};

/// Evolving solution. Active fields per variant:
///   Inviscid/Generalized: u, psi
///   Viscous:              u, omega (psi is recovered from omega on demand)
///   Regularity:           u, v  (u here is the squared swirl variable)
struct SimState {
    double t = 0.0;
    ScalarField u;
    ScalarField psi;
    ScalarField omega;
    ScalarField v;
};

/// 7-point Laplacian with homogeneous Dirichlet sides/top and the
/// Robin(gamma) ghost closure on the z = 0 row (the viscous term of the
/// omega equation).
ScalarField viscous_laplacian(const ScalarField& omega, double gamma);

// Right-hand sides (method of lines). All enforce the boundary structure:
// du vanishes wherever u does, dpsi/domega/dv carry their BCs exactly.
void rhs_inviscid(const SimState& s, const ModelSpec& spec, ScalarField& du,
                  ScalarField& dpsi);
void rhs_viscous(const SimState& s, const ModelSpec& spec, ScalarField& du,
                 ScalarField& domega, ScalarField* psi_out = nullptr);
void rhs_generalized(const SimState& s, const ModelSpec& spec, ScalarField& du,
                     ScalarField& dpsi);
void rhs_regularity(const SimState& s, const ModelSpec& spec, ScalarField& du,
                    ScalarField& dv);

/// One classical 4-stage Runge-Kutta step of the active pair of fields.
/// After the update u is clipped at 0 when the undershoot is below
/// 1e-12 * max(1, sup|u|); a larger undershoot throws StepRejected.
/// Returns true when clipping fired.
bool step(SimState& s, const ModelSpec& spec, double dt);

struct Controls {
    double t_end = 1.0;
    double cfl = 0.25;       // dt = cfl / max(1, rate); rate is sup|psi_z| (or 2 sup|v|)
    double dt_fixed = 0.0;   // > 0 disables the adaptive policy
    double dt_min = 1e-10;   // underflow => blowup declared
    double h2_blowup_factor = 1e6;
    int cadence = 1;         // record every n-th accepted step
    long max_steps = 2000000;
};

enum class RunOutcome { ReachedTEnd, Blowup };

// record flag bits
inline constexpr unsigned kFlagBlowup = 1u;
inline constexpr unsigned kFlagRExceeded = 2u;
inline constexpr unsigned kFlagClip = 4u;
inline constexpr unsigned kFlagLogBound = 8u;
inline constexpr unsigned kFlagHypothesis = 16u;
inline constexpr unsigned kFlagDecayViolated = 32u;

/// One diagnostics row. F/dF/ddF and the check flags are filled by the
/// post-processing passes in diagnostics.hpp; the run loop records the raw
/// weighted integrals. int_w_phiz and max_v are in-memory extras, not part
/// of the emitted column schema.
struct DiagnosticsRecord {
    double t = 0.0, dt = 0.0;
    double int_u2_phi = 0.0, int_psiz_phi = 0.0, int_logu_phi = 0.0;
    double F = 0.0, dF = 0.0, ddF = 0.0;
    double E = 0.0, r = 0.0;
    double h2_u = 0.0, min_u = 0.0, max_u = 0.0;
    unsigned flags = 0;

    double int_w_phiz = 0.0;  // viscous runs
    double max_v = 0.0;       // regularity runs
    double int_u2_ctl = 0.0;   // against the optional control weight
    double int_psiz_ctl = 0.0;
};

struct RunResult {
    std::vector<DiagnosticsRecord> records;
    RunOutcome outcome = RunOutcome::ReachedTEnd;
    std::string stop_reason;  // "t-end", "h2-growth", "dt-underflow", "nonfinite"
    double t_final = 0.0;
    double h2_u0 = 0.0;
    double sup_u0 = 0.0;
    BlowupConstants constants;
};

/// Advance the model to t_end or numerical blowup, recording diagnostics at
/// the configured cadence. Hypothesis flags are evaluated before stepping;
/// a violation is reported on the records, not fatal. Deterministic: the
/// stepping loop is serial, parallelism lives inside the elliptic map.
/// A control weight, when given, has its weighted integrals recorded too
/// (negative-control measurements for the identity checks).
RunResult run_model(const ModelSpec& spec, const EigenWeight& weight, SimState initial,
                    const Controls& controls,
                    const EigenWeight* control_weight = nullptr);

}  // namespace blowuplab
