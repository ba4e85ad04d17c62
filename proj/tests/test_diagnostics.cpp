#include <doctest.h>

#include <cmath>

#include "blowuplab/diagnostics.hpp"
#include "blowuplab/scenario.hpp"

using namespace blowuplab;

namespace {
std::vector<DiagnosticsRecord> synthetic_series(int n, double dt,
                                                double (*U)(double)) {
    std::vector<DiagnosticsRecord> recs(n);
    for (int i = 0; i < n; ++i) {
        recs[i].t = i * dt;
        recs[i].dt = (i == 0) ? 0.0 : dt;
        recs[i].int_u2_phi = U(recs[i].t);
    }
    return recs;
}
}  // namespace

TEST_CASE("track_F: u == 0 gives an exactly linear F with slope F'(0)") {
    BlowupConstants c;
    c.D_F = 1.7;
    c.slope0 = 3.25;
    auto recs = synthetic_series(20, 0.05, [](double) { return 0.0; });
    track_F(recs, c);
    CHECK(recs.front().F == 0.0);
    for (const auto& r : recs) {
        CHECK(r.F == doctest::Approx(c.slope0 * r.t).epsilon(1e-15));
        CHECK(r.dF == doctest::Approx(c.slope0).epsilon(1e-15));
    }
}

TEST_CASE("track_F: ddF recovers the curvature of a quadratic U") {
    BlowupConstants c;
    c.D_F = 2.0;
    c.slope0 = 1.0;
    // U = 1 + t^2: F'' = D_F U exactly; the centered estimate is 2nd order
    auto recs = synthetic_series(40, 0.025, [](double t) { return 1.0 + t * t; });
    track_F(recs, c);
    for (size_t i = 2; i + 2 < recs.size(); ++i)
        CHECK(recs[i].ddF ==
              doctest::Approx(c.D_F * (1.0 + recs[i].t * recs[i].t)).epsilon(2e-3));
}

TEST_CASE("identity_check_psi: clean series has tiny residual, corrupted does not") {
    // P' = coeff * U with U = e^t, P = coeff e^t
    const double coeff = 0.7;
    auto recs = synthetic_series(60, 0.01, [](double t) { return std::exp(t); });
    for (auto& r : recs) r.int_psiz_phi = coeff * std::exp(r.t);
    SeriesCheck ok = identity_check_psi(recs, coeff, 1.0);
    CHECK(ok.samples > 10);
    CHECK(ok.max_rel_residual < 2e-5);  // O(dt^2)
    SeriesCheck bad = identity_check_psi(recs, 2.0 * coeff, 1.0);
    CHECK(bad.max_rel_residual > 0.4);
}

TEST_CASE("log_bound_check flags violations beyond 1e-8") {
    BlowupConstants c;
    c.log_bound_coeff = 2.0;
    std::vector<DiagnosticsRecord> recs(3);
    recs[0].int_u2_phi = 4.0;
    recs[0].int_logu_phi = 1.0;  // margin 3
    recs[1].int_u2_phi = 4.0;
    recs[1].int_logu_phi = 4.0;  // margin 0
    recs[2].int_u2_phi = 4.0;
    recs[2].int_logu_phi = 4.1;  // violation
    SeriesCheck chk = log_bound_check(recs, c);
    CHECK(chk.worst_margin == doctest::Approx(-0.1));
    CHECK((recs[2].flags & kFlagLogBound) != 0);
    CHECK((recs[0].flags & kFlagLogBound) == 0);
}

TEST_CASE("first_r_violation and gated checks") {
    std::vector<DiagnosticsRecord> recs(10);
    for (int i = 0; i < 10; ++i) {
        recs[i].t = 0.1 * i;
        recs[i].r = 0.2 * i;  // crosses B/2 = 0.9 at i = 5
    }
    CHECK(first_r_violation(recs, 1.8) == 5);
    CHECK(first_r_violation(recs, 100.0) == recs.size());
}

TEST_CASE("energy_drift on a constant series is zero") {
    std::vector<DiagnosticsRecord> recs(5);
    for (int i = 0; i < 5; ++i) {
        recs[i].t = i * 0.1;
        recs[i].E = 42.0;
    }
    CHECK(energy_drift(recs, 1.0) == 0.0);
    recs[3].E = 42.42;
    CHECK(energy_drift(recs, 1.0) == doctest::Approx(0.01));
}

TEST_CASE("viscous_kernel_check: manufactured exponential series is reproduced") {
    // with U = 0 the formula is W(t) = W0 e^{-lambda t}
    const double lambda = 0.35, alpha = 1.1;
    auto recs = synthetic_series(50, 0.02, [](double) { return 0.0; });
    for (auto& r : recs) r.int_w_phiz = -5.0 * std::exp(-lambda * r.t);
    SeriesCheck chk = viscous_kernel_check(recs, lambda, alpha, 1.0);
    CHECK(chk.max_rel_residual < 1e-12);

    // with U = e^{t}: W(t) = e^{-lambda t} W0 - alpha^2 (e^t - e^{-lambda t})/(1+lambda)
    auto recs2 = synthetic_series(50, 0.02, [](double t) { return std::exp(t); });
    for (auto& r : recs2)
        r.int_w_phiz = -5.0 * std::exp(-lambda * r.t) -
                       alpha * alpha *
                           (std::exp(r.t) - std::exp(-lambda * r.t)) / (1.0 + lambda);
    SeriesCheck chk2 = viscous_kernel_check(recs2, lambda, alpha, 1.0);
    CHECK(chk2.max_rel_residual < 5e-5);  // piecewise-linear U quadrature
}

TEST_CASE("decay_check flags the failing bound") {
    std::vector<DiagnosticsRecord> recs(4);
    for (int i = 0; i < 4; ++i) {
        recs[i].t = 0.5 * i;
        recs[i].max_u = std::exp(-16.0 * recs[i].t);
        recs[i].max_v = -3.9;
    }
    DecayCheck ok = decay_check(recs, 1.0);
    CHECK(ok.u_bound_ok);
    CHECK(ok.v_bound_ok);
    recs[2].max_u = 10.0;
    recs[3].max_v = -1.0;
    DecayCheck bad = decay_check(recs, 1.0);
    CHECK_FALSE(bad.u_bound_ok);
    CHECK_FALSE(bad.v_bound_ok);
    CHECK((recs[2].flags & kFlagDecayViolated) != 0);
}

TEST_CASE("static psi with u == 0 keeps E and r frozen along a real run") {
    Scenario sc = make_scenario("thm5.1");
    Grid g{sc.model.domain, 8, 48};
    EigenWeight w = make_weight(sc.weight_spec, g);
    SimState s;
    sc.make_initial(g, s);
    s.u = ScalarField(g);
    Controls ctl = sc.controls;
    ctl.t_end = 0.05;
    RunResult r = run_model(sc.model, w, std::move(s), ctl);
    for (const auto& rec : r.records) {
        CHECK(rec.r == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
        CHECK(rec.E == doctest::Approx(r.records.front().E).epsilon(1e-13));
    }
}

TEST_CASE("conserved_inequality_check on a short thm5.2 run") {
    Scenario sc = make_scenario("thm5.2");
    Grid g{sc.model.domain, 12, 48};
    EigenWeight w = make_weight(sc.weight_spec, g);
    SimState s;
    sc.make_initial(g, s);
    Controls ctl = sc.controls;
    ctl.t_end = 0.05;
    ctl.cfl = 0.0625;
    RunResult r = run_model(sc.model, w, std::move(s), ctl);
    SeriesCheck chk = conserved_inequality_check(r.records, r.constants);
    CHECK(chk.samples > 0);
    CHECK(chk.worst_margin > -1e-6);
}
