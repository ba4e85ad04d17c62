#include "blowuplab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace blowuplab {

namespace {

// cumulative trapezoid of y over the record times
std::vector<double> cumtrapz(const std::vector<DiagnosticsRecord>& recs,
                             const std::vector<double>& y) {
    std::vector<double> out(recs.size(), 0.0);
    for (size_t i = 1; i < recs.size(); ++i) {
        const double dt = recs[i].t - recs[i - 1].t;
        out[i] = out[i - 1] + 0.5 * dt * (y[i] + y[i - 1]);
    }
    return out;
}

}  // namespace

void track_F(std::vector<DiagnosticsRecord>& recs, const BlowupConstants& c) {
    if (recs.empty()) return;
    std::vector<double> U(recs.size());
    for (size_t i = 0; i < recs.size(); ++i) U[i] = recs[i].int_u2_phi;
    std::vector<double> G = cumtrapz(recs, U);
    std::vector<double> H = cumtrapz(recs, G);
    for (size_t i = 0; i < recs.size(); ++i) {
        recs[i].F = c.D_F * H[i] + c.slope0 * recs[i].t;
        recs[i].dF = c.D_F * G[i] + c.slope0;
        recs[i].ddF = 0.0;
    }
    for (size_t i = 1; i + 1 < recs.size(); ++i) {
        const double h1 = recs[i].t - recs[i - 1].t;
        const double h2 = recs[i + 1].t - recs[i].t;
        recs[i].ddF = 2.0 *
                      (recs[i + 1].F * h1 - recs[i].F * (h1 + h2) + recs[i - 1].F * h2) /
                      (h1 * h2 * (h1 + h2));
    }
}

SeriesCheck identity_check_psi(const std::vector<DiagnosticsRecord>& recs, double coeff,
                               double t_max) {
    SeriesCheck chk;
    double rhs_scale = 0.0;
    for (const auto& r : recs)
        if (r.t <= t_max) rhs_scale = std::max(rhs_scale, std::abs(coeff * r.int_u2_phi));
    for (size_t i = 1; i + 1 < recs.size(); ++i) {
        if (recs[i + 1].t > t_max) break;
        const double h1 = recs[i].t - recs[i - 1].t;
        const double h2 = recs[i + 1].t - recs[i].t;
        // nonuniform centered first derivative
        const double dP = (h1 * h1 * recs[i + 1].int_psiz_phi +
                           (h2 * h2 - h1 * h1) * recs[i].int_psiz_phi -
                           h2 * h2 * recs[i - 1].int_psiz_phi) /
                          (h1 * h2 * (h1 + h2));
        const double rhs = coeff * recs[i].int_u2_phi;
        const double denom = std::max(std::abs(rhs), 1e-12 * std::max(rhs_scale, 1.0));
        chk.max_rel_residual = std::max(chk.max_rel_residual, std::abs(dP - rhs) / denom);
        ++chk.samples;
    }
    return chk;
}

SeriesCheck log_bound_check(std::vector<DiagnosticsRecord>& recs,
                            const BlowupConstants& c) {
    SeriesCheck chk;
    chk.worst_margin = std::numeric_limits<double>::infinity();
    for (auto& r : recs) {
        const double rhs = c.log_bound_coeff * std::sqrt(std::max(r.int_u2_phi, 0.0));
        const double margin = rhs - r.int_logu_phi;
        chk.worst_margin = std::min(chk.worst_margin, margin);
        if (margin < -1e-8) r.flags |= kFlagLogBound;
        ++chk.samples;
    }
    return chk;
}

SeriesCheck comparison_check(const std::vector<DiagnosticsRecord>& recs,
                             const BlowupConstants& c, double t_max, bool gate_on_r) {
    SeriesCheck chk;
    chk.worst_margin = std::numeric_limits<double>::infinity();
    const size_t gate = gate_on_r ? first_r_violation(recs, c.B) : recs.size();
    for (size_t i = 1; i + 1 < recs.size() && i + 1 <= gate; ++i) {
        if (recs[i].t > t_max) break;
        const double margin =
            (recs[i].ddF - c.D_F * recs[i].F * recs[i].F) / (1.0 + recs[i].F * recs[i].F);
        chk.worst_margin = std::min(chk.worst_margin, margin);
        ++chk.samples;
    }
    return chk;
}

SeriesCheck conserved_inequality_check(const std::vector<DiagnosticsRecord>& recs,
                                       const BlowupConstants& c) {
    SeriesCheck chk;
    chk.worst_margin = std::numeric_limits<double>::infinity();
    std::vector<double> U(recs.size());
    for (size_t i = 0; i < recs.size(); ++i) U[i] = recs[i].int_u2_phi;
    std::vector<double> G = cumtrapz(recs, U);
    std::vector<double> H = cumtrapz(recs, G);
    const double c2 = 2.0 * c.identity_coeff;
    const size_t gate = first_r_violation(recs, c.B);
    for (size_t i = 0; i < recs.size() && i < gate; ++i) {
        const double rhs = c2 * H[i] + c.A + 0.5 * c.B * recs[i].t;
        const double scale = c2 * H[i] + std::abs(c.A) + std::abs(c.B) * recs[i].t;
        const double margin = (recs[i].int_logu_phi - rhs) / (1.0 + scale);
        chk.worst_margin = std::min(chk.worst_margin, margin);
        ++chk.samples;
    }
    return chk;
}

double energy_drift(const std::vector<DiagnosticsRecord>& recs, double t_max) {
    if (recs.empty()) return 0.0;
    const double e0 = recs.front().E;
    double drift = 0.0;
    for (const auto& r : recs)
        if (r.t <= t_max) drift = std::max(drift, std::abs(r.E - e0));
    return drift / std::max(std::abs(e0), 1e-300);
}

SeriesCheck viscous_kernel_check(const std::vector<DiagnosticsRecord>& recs,
                                 double lambda, double alpha, double t_max) {
    SeriesCheck chk;
    if (recs.empty()) return chk;
    double wscale = 0.0;
    for (const auto& r : recs)
        if (r.t <= t_max) wscale = std::max(wscale, std::abs(r.int_w_phiz));
    wscale = std::max(wscale, 1e-300);

    double V = recs.front().int_w_phiz;
    chk.samples = 1;
    for (size_t i = 1; i < recs.size(); ++i) {
        if (recs[i].t > t_max) break;
        const double dt = recs[i].t - recs[i - 1].t;
        const double mu = lambda * dt;
        // N_q = int_0^1 e^{-mu(1-s)} s^q ds, exact for piecewise-linear U
        const double N0 = (mu > 1e-30) ? -std::expm1(-mu) / mu : 1.0;
        const double N1 = (mu > 1e-8) ? (1.0 - N0) / mu : 0.5 - mu / 6.0;
        const double U0 = recs[i - 1].int_u2_phi, U1 = recs[i].int_u2_phi;
        const double conv = dt * (U0 * N0 + (U1 - U0) * N1);
        V = std::exp(-mu) * V - alpha * alpha * conv;
        chk.max_rel_residual =
            std::max(chk.max_rel_residual, std::abs(recs[i].int_w_phiz - V) / wscale);
        ++chk.samples;
    }
    return chk;
}

DecayCheck decay_check(std::vector<DiagnosticsRecord>& recs, double sup_u0) {
    DecayCheck out;
    for (auto& r : recs) {
        const double bound = sup_u0 * std::exp(-7.0 * r.t) * (1.0 + 1e-6);
        if (r.max_u > bound) {
            out.u_bound_ok = false;
            r.flags |= kFlagDecayViolated;
        }
        if (sup_u0 > 0.0)
            out.worst_u_ratio =
                std::max(out.worst_u_ratio, r.max_u / (sup_u0 * std::exp(-7.0 * r.t)));
        if (r.max_v > -2.0) {
            out.v_bound_ok = false;
            r.flags |= kFlagDecayViolated;
        }
    }
    return out;
}

size_t first_r_violation(const std::vector<DiagnosticsRecord>& recs, double B) {
    for (size_t i = 0; i < recs.size(); ++i)
        if (recs[i].r > 0.5 * B) return i;
    return recs.size();
}

}  // namespace blowuplab
