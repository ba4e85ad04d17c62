#include "blowuplab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace blowuplab {

namespace {

const double kPi = std::acos(-1.0);

// du = 2 * u * psi_z, fused
void multiply_into(const ScalarField& u, const ScalarField& psi_z, double factor,
                   ScalarField& du) {
    const double* up = u.data();
    const double* pz = psi_z.data();
    double* dp = du.data();
    const long n = u.size();
    for (long i = 0; i < n; ++i) dp[i] = factor * up[i] * pz[i];
}

ScalarField squared(const ScalarField& u) {
    ScalarField s(u.grid());
    const double* up = u.data();
    double* sp = s.data();
    const long n = u.size();
    for (long i = 0; i < n; ++i) sp[i] = up[i] * up[i];
    return s;
}

}  // namespace

// Rows on Dirichlet faces are left at zero so omega stays pinned there.
ScalarField viscous_laplacian(const ScalarField& w, double gamma) {
    const Grid& g = w.grid();
    ScalarField out(g);
    const double ihx2 = 1.0 / (g.hx() * g.hx());
    const double ihz2 = 1.0 / (g.hz() * g.hz());
    const double h = g.hz();
    for (int i1 = 1; i1 < g.nx; ++i1)
        for (int i2 = 1; i2 < g.nx; ++i2) {
            const double* p = w.zprofile(i1, i2);
            const double* pxm = w.zprofile(i1 - 1, i2);
            const double* pxp = w.zprofile(i1 + 1, i2);
            const double* pym = w.zprofile(i1, i2 - 1);
            const double* pyp = w.zprofile(i1, i2 + 1);
            double* q = out.zprofile(i1, i2);
            for (int j = 0; j < g.nz; ++j) {
                const double lap_x = (pxp[j] - 2.0 * p[j] + pxm[j]) * ihx2 +
                                     (pyp[j] - 2.0 * p[j] + pym[j]) * ihx2;
                double lap_z;
                if (j == 0) {
                    // ghost w_{-1} = w_1 + 2 h gamma w_0
                    lap_z = (2.0 * p[1] - 2.0 * p[0] + 2.0 * h * gamma * p[0]) * ihz2;
                } else {
                    lap_z = (p[j + 1] - 2.0 * p[j] + p[j - 1]) * ihz2;
                }
                q[j] = lap_x + lap_z;
            }
            q[g.nz] = 0.0;  // Dirichlet top
        }
    return out;
}

const char* to_string(Variant v) {
    switch (v) {
        case Variant::Inviscid: return "inviscid";
        case Variant::Viscous: return "viscous";
        case Variant::Generalized: return "generalized";
        case Variant::Regularity: return "regularity";
    }
    return "?";
}

void rhs_inviscid(const SimState& s, const ModelSpec& spec, ScalarField& du,
                  ScalarField& dpsi) {
    const bool periodic = spec.psi_bc.periodic();
    ScalarField psi_z = dz(s.psi, periodic);
    du = ScalarField(s.u.grid());
    multiply_into(s.u, psi_z, 2.0, du);
    ScalarField g = dz(squared(s.u), periodic);
    dpsi = solve_poisson(g, spec.psi_bc, OperatorSign::Standard, spec.elliptic_options());
}

void rhs_viscous(const SimState& s, const ModelSpec& spec, ScalarField& du,
                 ScalarField& domega, ScalarField* psi_out) {
    ScalarField psi = solve_poisson(s.omega, spec.psi_bc, OperatorSign::Standard,
                                    spec.elliptic_options());
    ScalarField psi_z = dz(psi);
    du = ScalarField(s.u.grid());
    multiply_into(s.u, psi_z, 2.0, du);
    domega = dz(squared(s.u));
    // Dirichlet faces of omega stay pinned; the Gamma row evolves freely.
    {
        const Grid& g = domega.grid();
        for (int i1 = 0; i1 <= g.nx; ++i1)
            for (int i2 = 0; i2 <= g.nx; ++i2) {
                const bool side = (i1 == 0 || i1 == g.nx || i2 == 0 || i2 == g.nx);
                double* q = domega.zprofile(i1, i2);
                if (side) {
                    for (int j = 0; j <= g.nz; ++j) q[j] = 0.0;
                } else {
                    q[g.nz] = 0.0;
                }
            }
    }
    if (spec.nu > 0.0) {
        ScalarField lap = viscous_laplacian(s.omega, spec.gamma);
        axpy(spec.nu, lap, domega);
    }
    if (psi_out) *psi_out = std::move(psi);
}

void rhs_generalized(const SimState& s, const ModelSpec& spec, ScalarField& du,
                     ScalarField& dpsi) {
    ScalarField psi_z = dz(s.psi);
    du = ScalarField(s.u.grid());
    multiply_into(s.u, psi_z, 2.0, du);
    ScalarField g = dz(squared(s.u));
    dpsi = solve_poisson(g, spec.psi_bc, OperatorSign::Flipped, spec.elliptic_options());
}

void rhs_regularity(const SimState& s, const ModelSpec& spec, ScalarField& du,
                    ScalarField& dv) {
    du = ScalarField(s.u.grid());
    multiply_into(s.u, s.v, 4.0, du);
    ScalarField uzz = dzz(s.u);
    dv = solve_poisson(uzz, dirichlet_all(), OperatorSign::Standard,
                       spec.elliptic_options());
}

namespace {

ScalarField& active_field(SimState& s, Variant v) {
    switch (v) {
        case Variant::Viscous: return s.omega;
        case Variant::Regularity: return s.v;
        default: return s.psi;
    }
}

void eval_rhs(const SimState& s, const ModelSpec& spec, ScalarField& du,
              ScalarField& dw) {
    switch (spec.variant) {
        case Variant::Inviscid: rhs_inviscid(s, spec, du, dw); break;
        case Variant::Viscous: rhs_viscous(s, spec, du, dw); break;
        case Variant::Generalized: rhs_generalized(s, spec, du, dw); break;
        case Variant::Regularity: rhs_regularity(s, spec, du, dw); break;
    }
}

}  // namespace

bool step(SimState& s, const ModelSpec& spec, double dt) {
    ScalarField ku1, kw1, ku2, kw2, ku3, kw3, ku4, kw4;
    eval_rhs(s, spec, ku1, kw1);

    SimState tmp = s;
    ScalarField& w = active_field(s, spec.variant);
    ScalarField& wt = active_field(tmp, spec.variant);

    tmp.t = s.t + 0.5 * dt;
    tmp.u = linear_combination(1.0, s.u, 0.5 * dt, ku1);
    wt = linear_combination(1.0, w, 0.5 * dt, kw1);
    eval_rhs(tmp, spec, ku2, kw2);

    tmp.u = linear_combination(1.0, s.u, 0.5 * dt, ku2);
    wt = linear_combination(1.0, w, 0.5 * dt, kw2);
    eval_rhs(tmp, spec, ku3, kw3);

    tmp.t = s.t + dt;
    tmp.u = linear_combination(1.0, s.u, dt, ku3);
    wt = linear_combination(1.0, w, dt, kw3);
    eval_rhs(tmp, spec, ku4, kw4);

    const double c = dt / 6.0;
    axpy(c, ku1, s.u);
    axpy(2.0 * c, ku2, s.u);
    axpy(2.0 * c, ku3, s.u);
    axpy(c, ku4, s.u);
    axpy(c, kw1, w);
    axpy(2.0 * c, kw2, w);
    axpy(2.0 * c, kw3, w);
    axpy(c, kw4, w);
    s.t += dt;

    const double umin = min_value(s.u);
    bool clipped = false;
    if (umin < 0.0) {
        const double tol = 1e-12 * std::max(1.0, sup_norm(s.u));
        if (umin < -tol)
            throw StepRejected("u undershoot " + std::to_string(umin) +
                               " beyond tolerance");
        double* up = s.u.data();
        const long n = s.u.size();
        for (long i = 0; i < n; ++i)
            if (up[i] < 0.0) up[i] = 0.0;
        clipped = true;
    }
    return clipped;
}

namespace {

double weighted_u2(const ScalarField& u, const ScalarField& phi) {
    // trapezoid quadrature of u^2 phi without forming the square
    const Grid& g = u.grid();
    const double hx = g.hx(), hz = g.hz();
    double sum = 0.0;
    for (int i1 = 0; i1 <= g.nx; ++i1) {
        const double w1 = (i1 == 0 || i1 == g.nx) ? 0.5 * hx : hx;
        for (int i2 = 0; i2 <= g.nx; ++i2) {
            const double w12 =
                w1 * ((i2 == 0 || i2 == g.nx) ? 0.5 * hx : hx);
            const double* up = u.zprofile(i1, i2);
            const double* pp = phi.zprofile(i1, i2);
            double sz = 0.5 * (up[0] * up[0] * pp[0] + up[g.nz] * up[g.nz] * pp[g.nz]);
            for (int j = 1; j < g.nz; ++j) sz += up[j] * up[j] * pp[j];
            sum += w12 * sz * hz;
        }
    }
    return sum;
}

// 2nd-order trace of d(psi)/dz on the z = 0 face.
double trace_dz0(const ScalarField& psi, bool periodic,
                 const std::function<double(double, double)>& w2d) {
    const Grid& g = psi.grid();
    const double h = g.hz(), hx = g.hx();
    double sum = 0.0;
    for (int i1 = 0; i1 <= g.nx; ++i1) {
        const double w1 = (i1 == 0 || i1 == g.nx) ? 0.5 * hx : hx;
        for (int i2 = 0; i2 <= g.nx; ++i2) {
            const double w12 = w1 * ((i2 == 0 || i2 == g.nx) ? 0.5 * hx : hx);
            const double* p = psi.zprofile(i1, i2);
            const double d = periodic
                                 ? (p[1] - p[g.nz - 1]) / (2.0 * h)
                                 : (-3.0 * p[0] + 4.0 * p[1] - p[2]) / (2.0 * h);
            sum += w12 * d * w2d(g.x(i1), g.x(i2));
        }
    }
    return sum;
}

struct RMonitor {
    bool active = false;
    bool use_dz_trace = false;
    double prefactor = 0.0;
    double trace0 = 0.0;
};

RMonitor make_r_monitor(const EigenWeight& w, const ScalarField& psi0) {
    RMonitor m;
    const double a = w.a, b = w.b, al = w.alpha, lam1 = w.lambda1;
    const double pa2 = (kPi / a) * (kPi / a);
    auto phi1 = [&](double x1, double x2) { return w.phi1(x1, x2); };
    switch (w.variant) {
        case WeightVariant::ConservedSemiInf:
            m.active = true;
            m.prefactor = 4.0 * pa2 / lam1;
            break;
        case WeightVariant::ConservedBoundedNeumann:
            m.active = true;
            m.prefactor = 2.0 * pa2 * (std::exp(al * b) - std::exp(-al * b)) / lam1;
            break;
        case WeightVariant::ConservedPeriodicZ:
            m.active = true;
            m.use_dz_trace = true;
            m.prefactor = 2.0 * al * (1.0 - std::exp(-al * b)) / lam1;
            break;
        case WeightVariant::ConservedDirichletZ:
            m.active = true;
            m.use_dz_trace = true;
            m.prefactor = al * (std::exp(al * b) - std::exp(-al * b)) / lam1;
            break;
        default:
            break;
    }
    if (m.active) {
        m.trace0 = m.use_dz_trace
                       ? trace_dz0(psi0, w.variant == WeightVariant::ConservedPeriodicZ,
                                   phi1)
                       : trace_z0_integral(psi0, phi1);
    }
    return m;
}

}  // namespace

RunResult run_model(const ModelSpec& spec, const EigenWeight& weight, SimState s,
                    const Controls& controls, const EigenWeight* control_weight) {
    RunResult out;
    const bool viscous = spec.variant == Variant::Viscous;
    const bool regularity = spec.variant == Variant::Regularity;
    const bool inviscid = spec.variant == Variant::Inviscid;
    const bool periodic = spec.psi_bc.periodic();

    const ScalarField& aux0 = viscous ? s.omega : (regularity ? s.v : s.psi);
    out.constants = compute_constants(s.u, aux0, weight, spec.nu);
    if (regularity) {
        // smallness hypothesis of the global-regularity theorem, with the
        // configured Sobolev constant and the discrete H^2 proxy norm
        const double delta = spec.domain.a;
        const double hyp = delta * (4.0 * spec.cs + 1.0) *
                           (sobolev_norm(s.v, 2) + spec.cs * sobolev_norm(s.u, 2));
        out.constants.hypothesis_ok = hyp < 1.0;
        out.constants.A_positive = out.constants.B_positive = true;
    }
    out.h2_u0 = sobolev_norm(s.u, 2);
    out.sup_u0 = sup_norm(s.u);

    RMonitor rmon = viscous || regularity ? RMonitor{} : make_r_monitor(weight, s.psi);

    const double lam_max = 8.0 / (s.u.grid().hx() * s.u.grid().hx()) +
                           4.0 / (s.u.grid().hz() * s.u.grid().hz());
    const double dt_diff_cap =
        (viscous && spec.nu > 0.0) ? 2.5 / (spec.nu * lam_max)
                                   : std::numeric_limits<double>::infinity();

    auto rate_of = [&](SimState& state) {
        if (regularity) return 2.0 * sup_norm(state.v);
        if (viscous) {
            state.psi = solve_poisson(state.omega, spec.psi_bc, OperatorSign::Standard,
                                      spec.elliptic_options());
        }
        return sup_norm(dz(state.psi, periodic));
    };

    auto record = [&](SimState& state, double dt_used, double h2_precomputed = -1.0) {
        if (viscous) {
            state.psi = solve_poisson(state.omega, spec.psi_bc, OperatorSign::Standard,
                                      spec.elliptic_options());
        }
        DiagnosticsRecord rec;
        rec.t = state.t;
        rec.dt = dt_used;
        rec.int_u2_phi = weighted_u2(state.u, weight.phi);
        ScalarField psi_z = regularity ? state.v : dz(state.psi, periodic);
        rec.int_psiz_phi = weighted_integral(psi_z, weight.phi);
        rec.int_logu_phi = masked_log_integral(state.u, weight.phi);
        rec.h2_u = h2_precomputed >= 0.0 ? h2_precomputed : sobolev_norm(state.u, 2);
        rec.min_u = min_value(state.u);
        rec.max_u = max_value(state.u);
        if (inviscid) {
            SpectralField psih = dst_forward(state.psi, spec.exec);
            rec.E = integrate(squared(state.u)) + 2.0 * dirichlet_form(psih, spec.psi_bc);
        }
        if (rmon.active) {
            const double tr =
                rmon.use_dz_trace
                    ? trace_dz0(state.psi,
                                weight.variant == WeightVariant::ConservedPeriodicZ,
                                [&](double x1, double x2) { return weight.phi1(x1, x2); })
                    : trace_z0_integral(
                          state.psi,
                          [&](double x1, double x2) { return weight.phi1(x1, x2); });
            rec.r = rmon.prefactor * (tr - rmon.trace0);
            if (rec.r > 0.5 * out.constants.B) rec.flags |= kFlagRExceeded;
        }
        if (viscous) rec.int_w_phiz = weighted_integral(state.omega, weight.phi_z);
        if (regularity) rec.max_v = max_value(state.v);
        if (control_weight) {
            rec.int_u2_ctl = weighted_u2(state.u, control_weight->phi);
            rec.int_psiz_ctl = weighted_integral(psi_z, control_weight->phi);
        }
        if (!out.constants.hypothesis_ok) rec.flags |= kFlagHypothesis;
        out.records.push_back(rec);
    };

    record(s, 0.0);
    out.t_final = s.t;
    out.stop_reason = "t-end";

    double rate = rate_of(s);
    long accepted = 0;
    while (s.t < controls.t_end - 1e-14 && accepted < controls.max_steps) {
        double dt = controls.dt_fixed > 0.0
                        ? controls.dt_fixed
                        : controls.cfl / std::max(1.0, rate);
        dt = std::min({dt, dt_diff_cap, controls.t_end - s.t});
        if (dt < controls.dt_min) {
            out.outcome = RunOutcome::Blowup;
            out.stop_reason = "dt-underflow";
            break;
        }

        SimState prev = s;
        bool clipped = false;
        bool stepped = false;
        while (!stepped) {
            try {
                clipped = step(s, spec, dt);
                stepped = true;
            } catch (const StepRejected&) {
                s = prev;
                dt *= 0.5;
                if (dt < controls.dt_min) break;
            }
        }
        if (!stepped) {
            out.outcome = RunOutcome::Blowup;
            out.stop_reason = "dt-underflow";
            break;
        }
        if (!all_finite(s.u) || !all_finite(active_field(s, spec.variant))) {
            s = prev;
            out.outcome = RunOutcome::Blowup;
            out.stop_reason = "nonfinite";
            break;
        }
        ++accepted;
        // H^2 is evaluated at record times only (it is the dominant
        // per-step diagnostic cost); between records the step-size collapse
        // bounds how far past the trigger a run can get.
        if (accepted % controls.cadence == 0 || s.t >= controls.t_end - 1e-14) {
            const double h2 = sobolev_norm(s.u, 2);
            record(s, dt, h2);
            if (clipped) out.records.back().flags |= kFlagClip;
            if (h2 > controls.h2_blowup_factor * out.h2_u0) {
                out.t_final = s.t;
                out.outcome = RunOutcome::Blowup;
                out.stop_reason = "h2-growth";
                out.records.back().flags |= kFlagBlowup;
                break;
            }
        }
        out.t_final = s.t;
        rate = rate_of(s);
    }
    if (out.outcome == RunOutcome::Blowup && !out.records.empty() &&
        out.stop_reason != "h2-growth")
        out.records.back().flags |= kFlagBlowup;
    return out;
}

}  // namespace blowuplab
