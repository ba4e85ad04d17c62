// Acceptance suite: runs every preset experiment the laboratory claims to
// support and checks the quantitative structure of each theorem at desk
// scale. One PASS/FAIL line per criterion; exit code 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "blowuplab/diagnostics.hpp"
#include "blowuplab/elliptic.hpp"
#include "blowuplab/io.hpp"
#include "blowuplab/quadrature.hpp"
#include "blowuplab/scenario.hpp"

using namespace blowuplab;

namespace {

const double kPi = std::acos(-1.0);

struct Suite {
    bool all_ok = true;
    std::chrono::steady_clock::time_point mark = std::chrono::steady_clock::now();

    double lap() {
        const auto now = std::chrono::steady_clock::now();
        const double s = std::chrono::duration<double>(now - mark).count();
        mark = now;
        return s;
    }
    void line(int num, const char* what, bool ok, const std::string& detail,
              double seconds, double budget) {
        const bool in_budget = seconds < budget;
        std::printf("[%s] criterion %2d: %s (%s) [%.1f s / %.0f s]\n",
                    ok && in_budget ? "PASS" : "FAIL", num, what, detail.c_str(),
                    seconds, budget);
        std::fflush(stdout);
        all_ok = all_ok && ok && in_budget;
    }
};

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return buf;
}

double rel_l2(const ScalarField& a, const ScalarField& b) {
    double num = 0.0, den = 0.0;
    for (long i = 0; i < a.size(); ++i) {
        const double d = a.data()[i] - b.data()[i];
        num += d * d;
        den += b.data()[i] * b.data()[i];
    }
    return std::sqrt(num / den);
}

double blowup_time(const ScenarioRun& r) { return r.result.t_final; }

std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// identity residual of d/dt int psi_z phi = coeff int u^2 phi on the control
// weight's series
SeriesCheck control_identity(const std::vector<DiagnosticsRecord>& recs, double coeff,
                             double t_max) {
    std::vector<DiagnosticsRecord> ctl = recs;
    for (auto& r : ctl) {
        r.int_psiz_phi = r.int_psiz_ctl;
        r.int_u2_phi = r.int_u2_ctl;
    }
    return identity_check_psi(ctl, coeff, t_max);
}

}  // namespace

int main() {
    Suite suite;

    // ----- criterion 1: elliptic correctness -------------------------------
    {
        suite.lap();
        const ZBoundary bc = robin_bottom(1.0, ZBoundary::Top::Decay);
        Grid g{semi_infinite_domain(kPi, 20.0), 32, 256};
        ScalarField f = ScalarField::sample(g, [](double x1, double x2, double z) {
            return std::exp(-z) * std::sin(x1) * std::sin(x2);
        });
        EllipticOptions kopt;
        kopt.method = EllipticMethod::AnalyticKernel;
        const double kerr = rel_l2(solve_poisson(f, bc, OperatorSign::Standard, kopt), f);

        auto fd_err = [&](int nz) {
            Grid gg{semi_infinite_domain(kPi, 20.0), 32, nz};
            ScalarField ff = ScalarField::sample(gg, [](double x1, double x2, double z) {
                return std::exp(-z) * std::sin(x1) * std::sin(x2);
            });
            return rel_l2(solve_poisson(ff, bc), ff);
        };
        const double e256 = fd_err(256), e512 = fd_err(512), e1024 = fd_err(1024);
        const double r1 = e256 / e512, r2 = e512 / e1024;
        const bool ok = kerr <= 1e-6 && r1 >= 3.5 && r1 <= 4.5 && r2 >= 3.5 && r2 <= 4.5;
        suite.line(1, "elliptic manufactured solution", ok,
                   fmt("kernel rel L2 = %.2e <= 1e-6; fd ratios %.2f, %.2f in [3.5,4.5]",
                       kerr, r1, r2),
                   suite.lap(), 5.0);
    }

    // ----- criterion 2: resonance guard ------------------------------------
    {
        suite.lap();
        const Domain semi = semi_infinite_domain(kPi, 20.0);
        const Domain box = bounded_domain(kPi, kPi);
        const double coth1 = (1.0 + std::exp(-2.0 * kPi)) / (1.0 - std::exp(-2.0 * kPi));
        const bool rej1 = resonance_check(std::sqrt(2.0), semi);
        const bool rej2 = resonance_check(coth1, box);
        const bool acc = !resonance_check(1.8, semi) && !resonance_check(1.8, box);
        suite.line(2, "resonance guard", rej1 && rej2 && acc,
                   fmt("sqrt2 rejected = %d; bounded coth value rejected = %d; "
                       "1.8 accepted = %d",
                       rej1, rej2, acc),
                   suite.lap(), 1.0);
    }

    // ----- criterion 3: weight eigen-relations -----------------------------
    {
        suite.lap();
        struct WCase {
            WeightSpec spec;
            Domain dom;
            int nx, nz;
        };
        std::vector<WCase> cases;
        auto semi = [&](WeightVariant v, double beta, double alpha) {
            const double L = 20.0 / alpha;
            cases.push_back({{v, kPi, L, beta}, semi_infinite_domain(kPi, L), 32, 256});
        };
        semi(WeightVariant::MixedSemiInf, 1.8, 2.0 / 1.8);
        semi(WeightVariant::ViscousSemiInf, 1.8, 2.0 / 1.8);
        semi(WeightVariant::ConservedSemiInf, 0.0, 1.0);
        auto box = [&](WeightVariant v, double beta) {
            cases.push_back({{v, kPi, kPi, beta}, bounded_domain(kPi, kPi), 32, 128});
        };
        box(WeightVariant::MixedBounded, 3.2);
        box(WeightVariant::MixedBoundedNeumannTop, 2.2);
        box(WeightVariant::Generalized, 0.0);
        box(WeightVariant::ConservedBoundedNeumann, 0.0);
        box(WeightVariant::ConservedPeriodicZ, 0.0);
        box(WeightVariant::ConservedDirichletZ, 0.0);

        bool ok = true;
        double worst = 0.0, worst_ratio_lo = 1e9, worst_ratio_hi = 0.0;
        for (const auto& c : cases) {
            Grid g{c.dom, c.nx, c.nz};
            EigenWeight w = make_weight(c.spec, g);
            const double res = eigen_residual_laplacian(w, g);
            const double res_zz = eigen_residual_zz(w, g);
            Grid g2{c.dom, 2 * c.nx, 2 * c.nz};
            EigenWeight w2 = make_weight(c.spec, g2);
            const double ratio = res / eigen_residual_laplacian(w2, g2);
            ok = ok && res <= 5e-3 && res_zz <= 5e-3 && ratio >= 3.5 && ratio <= 4.5;
            worst = std::max(worst, res);
            worst_ratio_lo = std::min(worst_ratio_lo, ratio);
            worst_ratio_hi = std::max(worst_ratio_hi, ratio);
        }
        suite.line(3, "nine weight variants eigen-relations", ok,
                   fmt("worst resid %.2e <= 5e-3; refinement ratios in [%.2f, %.2f]",
                       worst, worst_ratio_lo, worst_ratio_hi),
                   suite.lap(), 10.0);
    }

    // ----- criterion 4: root solver ----------------------------------------
    {
        suite.lap();
        const double alpha = solve_alpha(3.0, kPi, kPi);
        const double hres = std::abs(h_mixed_bounded(alpha, kPi, kPi) - 3.0);
        const double alpha50 = solve_alpha(3.0, kPi, 50.0);
        const double lim = std::abs(alpha50 - 2.0 * kPi * kPi / (3.0 * kPi * kPi));
        const bool ok = hres <= 1e-10 && lim <= 1e-6;
        suite.line(4, "alpha root solver", ok,
                   fmt("|h(alpha)-3| = %.2e <= 1e-10; |alpha(b=50) - 2pi^2/(beta a^2)| "
                       "= %.2e <= 1e-6",
                       hres, lim),
                   suite.lap(), 1.0);
    }

    // ----- shared runs ------------------------------------------------------
    suite.lap();
    Scenario sc31 = make_scenario("thm3.1");
    Grid g31 = sc31.make_grid();
    // negative control: same weight family at a mismatched alpha (beta/1.15)
    EigenWeight ctl_weight = make_weight(
        {WeightVariant::MixedSemiInf, kPi, sc31.model.domain.z_size, 1.8 / 1.15}, g31);
    ScenarioRun r31 = run_scenario(sc31, &ctl_weight);
    const double t31 = suite.lap();

    // ----- criterion 5: psi_z identity + negative control ------------------
    {
        const double tb = blowup_time(r31);
        const double coeff = r31.result.constants.identity_coeff;
        SeriesCheck prim = identity_check_psi(r31.result.records, coeff, 0.5 * tb);
        const double actl = ctl_weight.alpha;
        const double coeff_ctl =
            actl * actl / (2.0 * (kPi / kPi) * (kPi / kPi) - actl * actl);
        SeriesCheck ctl = control_identity(r31.result.records, coeff_ctl, 0.5 * tb);
        const bool ok = prim.max_rel_residual <= 1e-3 &&
                        ctl.max_rel_residual >= 10.0 * prim.max_rel_residual &&
                        prim.samples >= 10;
        suite.line(5, "psi_z identity on thm3.1", ok,
                   fmt("residual %.2e <= 1e-3 over [0, t_blow/2] (%d samples); "
                       "mismatched-alpha control %.2e (%.0fx larger)",
                       prim.max_rel_residual, prim.samples, ctl.max_rel_residual,
                       ctl.max_rel_residual / prim.max_rel_residual),
                   t31 + suite.lap(), 120.0);
    }

    // ----- criterion 6: energy identity ------------------------------------
    suite.lap();
    Scenario sc33 = make_scenario("thm3.3");
    ScenarioRun r33 = run_scenario(sc33);
    {
        const double tb = blowup_time(r33);
        const double d1 = energy_drift(r33.result.records, 0.9 * tb);
        Overrides half;
        half.cfl = sc33.controls.cfl * 0.5;
        half.cadence = 8;
        half.t_end = 0.95 * tb;
        ScenarioRun r33h = run_scenario(make_scenario("thm3.3", half));
        const double d2 = energy_drift(r33h.result.records, 0.9 * tb);
        const bool ok = d1 <= 1e-5 && d1 / d2 >= 8.0;
        suite.line(6, "energy identity on thm3.3", ok,
                   fmt("drift %.2e <= 1e-5 over [0, 0.9 t_blow]; halving dt improves "
                       "%.1fx >= 8x",
                       d1, d1 / d2),
                   suite.lap(), 120.0);
    }

    // ----- criterion 7: blowup-bound soundness ------------------------------
    suite.lap();
    Scenario sc34 = make_scenario("thm3.4");
    ScenarioRun r34 = run_scenario(sc34);
    const double t34 = suite.lap();
    Scenario sc41 = make_scenario("thm4.1");
    ScenarioRun r41 = run_scenario(sc41);
    const double t41 = suite.lap();
    {
        struct Item {
            const char* name;
            const ScenarioRun* run;
            double seconds;
        };
        const Item items[] = {{"thm3.1", &r31, t31},
                              {"thm3.3", &r33, 0.0},
                              {"thm3.4", &r34, t34},
                              {"thm4.1", &r41, t41}};
        bool ok = true;
        std::string detail;
        double worst_seconds = 0.0;
        for (const auto& it : items) {
            const BlowupConstants& c = it.run->result.constants;
            const bool blew = it.run->result.outcome == RunOutcome::Blowup;
            const double ratio = it.run->result.t_final / c.T_star;
            ok = ok && c.hypothesis_ok && blew && ratio <= 1.0;
            detail += fmt("%s t_blow/T* = %.3f; ", it.name, ratio);
            worst_seconds = std::max(worst_seconds, it.seconds);
        }
        SeriesCheck kc = viscous_kernel_check(r41.result.records,
                                              r41.result.constants.lambda,
                                              r41.weight.alpha, blowup_time(r41));
        ok = ok && kc.max_rel_residual <= 1e-3;
        detail += fmt("thm4.1 kernel-formula residual %.2e <= 1e-3",
                      kc.max_rel_residual);
        suite.line(7, "blowup no later than T*", ok, detail,
                   worst_seconds, 300.0);
    }

    // ----- criterion 8: comparison dynamics on thm3.1 -----------------------
    {
        suite.lap();
        const auto& recs = r31.result.records;
        const BlowupConstants& c = r31.result.constants;
        const double slope = std::sqrt(r31.weight.alpha) * kPi / (2.0 * kPi) * c.B;
        const bool f0 = recs.front().F == 0.0;
        const double df0_err = std::abs(recs.front().dF - slope);
        SeriesCheck cmp = comparison_check(recs, c, 1e300);
        SeriesCheck lb;
        lb.worst_margin = 1e300;
        for (const auto& r : recs)
            lb.worst_margin = std::min(
                lb.worst_margin,
                c.log_bound_coeff * std::sqrt(std::max(r.int_u2_phi, 0.0)) -
                    r.int_logu_phi);
        const bool ok = f0 && df0_err <= 1e-10 && cmp.worst_margin >= -1e-6 &&
                        lb.worst_margin >= -1e-8;
        suite.line(8, "comparison dynamics F and log-bound", ok,
                   fmt("F(0) = 0: %d; |F'(0) - sqrt(a)pi B/(2a)| = %.1e <= 1e-10; "
                       "worst F''-D F^2 margin %.2e >= -1e-6; log-bound margin %.2e "
                       ">= -1e-8",
                       f0, df0_err, cmp.worst_margin, lb.worst_margin),
                   suite.lap(), 60.0);
    }

    // ----- criterion 9: conservative-BC monitor -----------------------------
    {
        suite.lap();
        ScenarioRun r51 = run_scenario(make_scenario("thm5.1"));
        ScenarioRun r52 = run_scenario(make_scenario("thm5.2"));
        bool ok = true;
        std::string detail;
        for (const ScenarioRun* rr : {&r51, &r52}) {
            const auto& recs = rr->result.records;
            const BlowupConstants& c = rr->result.constants;
            const size_t gate = first_r_violation(recs, c.B);
            bool emitted = false;
            for (const auto& r : recs)
                if (r.r != 0.0) emitted = true;
            SeriesCheck ineq = conserved_inequality_check(recs, c);
            SeriesCheck cmp = comparison_check(recs, c, 1e300, /*gate_on_r=*/true);
            ok = ok && emitted && gate >= 3 && ineq.worst_margin >= -1e-6 &&
                 cmp.worst_margin >= -1e-6;
            detail += fmt("%s r<=B/2 through %zu/%zu records, chain margin %.2e, "
                          "F'' margin %.2e; ",
                          rr->scenario.name.c_str(), gate, recs.size(),
                          ineq.worst_margin, cmp.worst_margin);
        }
        suite.line(9, "conservative-BC r(t) monitor", ok, detail, suite.lap(), 180.0);
    }

    // ----- criterion 10: global regularity ----------------------------------
    {
        suite.lap();
        ScenarioRun r6 = run_scenario(make_scenario("sec6-regularity"));
        const auto& recs = r6.result.records;
        DecayCheck dc;
        // recompute (run_scenario already flagged records)
        {
            auto copy = recs;
            dc = decay_check(copy, r6.result.sup_u0);
        }
        const DiagnosticsRecord* at1 = nullptr;
        for (const auto& r : recs)
            if (r.t >= 1.0) {
                at1 = &r;
                break;
            }
        const bool reached = r6.result.outcome == RunOutcome::ReachedTEnd &&
                             r6.result.t_final >= 2.0 - 1e-12;
        const bool at1_ok =
            at1 && at1->max_u <= std::exp(-7.0) * r6.result.sup_u0;
        const bool ok = reached && dc.u_bound_ok && dc.v_bound_ok && at1_ok;
        suite.line(10, "global regularity decay", ok,
                   fmt("ran to t = %.2f; sup u within e^{-7t} bound (worst ratio "
                       "%.3f); v <= -2 everywhere: %d; at t >= 1 sup u / sup u0 = "
                       "%.2e <= e^{-7} = %.2e",
                       r6.result.t_final, dc.worst_u_ratio, dc.v_bound_ok,
                       at1 ? at1->max_u / r6.result.sup_u0 : 1.0, std::exp(-7.0)),
                   suite.lap(), 120.0);
    }

    // ----- criterion 11: determinism ----------------------------------------
    {
        suite.lap();
        const std::string bin = BLOWUP_LAB_BIN;
        const std::string cmd_a =
            bin + " run --scenario thm3.4 --out det_a.csv > det_a.log 2>&1";
        const std::string cmd_b =
            bin + " run --scenario thm3.4 --out det_b.csv > det_b.log 2>&1";
        const int rc1 = std::system(cmd_a.c_str());
        const int rc2 = std::system(cmd_b.c_str());
        const bool same_csv = slurp("det_a.csv") == slurp("det_b.csv");
        const bool same_sum =
            slurp("det_a.csv.summary.json") == slurp("det_b.csv.summary.json");
        const bool nonempty = !slurp("det_a.csv").empty();
        const bool ok = rc1 == 0 && rc2 == 0 && same_csv && same_sum && nonempty;
        suite.line(11, "determinism of repeated invocations", ok,
                   fmt("exit codes %d/%d; CSV byte-identical: %d; summary "
                       "byte-identical: %d",
                       rc1, rc2, same_csv, same_sum),
                   suite.lap(), 120.0);
    }

    std::printf("%s\n", suite.all_ok ? "ACCEPTANCE: all criteria passed"
                                     : "ACCEPTANCE: FAILURES PRESENT");
    return suite.all_ok ? 0 : 1;
}
