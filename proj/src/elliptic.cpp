#include "blowuplab/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace blowuplab {

namespace {

const double kPi = std::acos(-1.0);

double coth(double x) {
    // (1 + e^{-2x}) / (1 - e^{-2x}), overflow-safe for large x
    const double e = std::exp(-2.0 * x);
    return (1.0 + e) / (1.0 - e);
}

// ---------------------------------------------------------------------------
// Resonance sets
// ---------------------------------------------------------------------------

bool near(double beta, double value, double tol) { return std::abs(beta - value) < tol; }

bool excluded_for_mode(double beta, double m, const Domain& dom, ZBoundary::Top top,
                       double tol) {
    switch (top) {
        case ZBoundary::Top::Decay:
            return near(beta, m, tol);
        case ZBoundary::Top::Dirichlet:
            if (dom.extent == ZExtent::Bounded)
                return near(beta, m, tol) || near(beta, m * coth(m * dom.z_size), tol);
            return near(beta, m, tol);
        case ZBoundary::Top::Neumann:
            return near(beta, m * std::tanh(m * dom.z_size), tol);
        case ZBoundary::Top::Periodic:
            return false;
    }
    return false;
}

}  // namespace

bool ResonanceSet::excluded(double beta) const {
    const ZBoundary::Top top = domain.semi_infinite() ? ZBoundary::Top::Decay
                                                      : ZBoundary::Top::Dirichlet;
    return excluded(beta, top);
}

bool ResonanceSet::excluded(double beta, ZBoundary::Top top) const {
    for (int k1 = 0; k1 <= kmax; ++k1)
        for (int k2 = (k1 == 0 ? 1 : 0); k2 <= kmax; ++k2) {
            const double m = kPi / domain.a *
                             std::sqrt(static_cast<double>(k1) * k1 +
                                       static_cast<double>(k2) * k2);
            if (excluded_for_mode(beta, m, domain, top, tol)) return true;
        }
    return false;
}

bool resonance_check(double beta, const Domain& domain, int kmax) {
    ResonanceSet set{domain, kmax, 1e-6};
    return set.excluded(beta);
}

namespace {

// ---------------------------------------------------------------------------
// Finite-difference path: tridiagonal rows for  m^2 v - v_zz = f  in z.
// Robin bottom uses the ghost closure v_{-1} = v_1 + 2 h beta v_0, which is
// 2nd-order and symmetric under the trapezoid weights (row0 weight h/2).
// ---------------------------------------------------------------------------

struct TriRows {
    std::vector<double> lower, diag, upper;  // size npz
    std::vector<char> bc_row;                // 1 where the row is a Dirichlet pin
};

TriRows assemble_rows(double m2, const ZBoundary& bc, double h, int N) {
    TriRows r;
    r.lower.assign(N + 1, 0.0);
    r.diag.assign(N + 1, 0.0);
    r.upper.assign(N + 1, 0.0);
    r.bc_row.assign(N + 1, 0);
    const double ih2 = 1.0 / (h * h);
    for (int j = 1; j < N; ++j) {
        r.lower[j] = -ih2;
        r.diag[j] = m2 + 2.0 * ih2;
        r.upper[j] = -ih2;
    }
    switch (bc.bottom) {
        case ZBoundary::Bottom::Robin:
        case ZBoundary::Bottom::Neumann: {
            const double beta = (bc.bottom == ZBoundary::Bottom::Robin) ? bc.beta : 0.0;
            r.diag[0] = m2 + 2.0 * ih2 - 2.0 * beta / h;
            r.upper[0] = -2.0 * ih2;
            break;
        }
        case ZBoundary::Bottom::Dirichlet:
            r.diag[0] = 1.0;
            r.bc_row[0] = 1;
            break;
    }
    switch (bc.top) {
        case ZBoundary::Top::Decay:
        case ZBoundary::Top::Dirichlet:
            r.diag[N] = 1.0;
            r.bc_row[N] = 1;
            break;
        case ZBoundary::Top::Neumann:
            r.diag[N] = m2 + 2.0 * ih2;
            r.lower[N] = -2.0 * ih2;
            break;
        case ZBoundary::Top::Periodic:
            break;  // handled by the cyclic solver
    }
    return r;
}

// Thomas algorithm; rhs/out may alias. Scratch arrays sized npz.
void thomas(const TriRows& r, const double* rhs, double* out, int N, double* cp,
            double* dp) {
    cp[0] = r.upper[0] / r.diag[0];
    dp[0] = rhs[0] / r.diag[0];
    for (int j = 1; j <= N; ++j) {
        const double m = r.diag[j] - r.lower[j] * cp[j - 1];
        cp[j] = r.upper[j] / m;
        dp[j] = (rhs[j] - r.lower[j] * dp[j - 1]) / m;
    }
    out[N] = dp[N];
    for (int j = N - 1; j >= 0; --j) out[j] = dp[j] - cp[j] * out[j + 1];
}

// Cyclic tridiagonal (periodic z): unknowns j = 0..N-1, node N duplicates 0.
void solve_periodic(double m2, const double* rhs, double* out, int N, double h) {
    const double ih2 = 1.0 / (h * h);
    const double b = m2 + 2.0 * ih2, a = -ih2, c = -ih2;
    std::vector<double> diag(N, b), low(N, a), up(N, c), x(N), z(N), u(N, 0.0);
    std::vector<double> cp(N), dp(N);
    const double gamma = -b;
    diag[0] = b - gamma;
    diag[N - 1] = b - a * c / gamma;
    u[0] = gamma;
    u[N - 1] = c;

    TriRows r;
    r.lower.assign(low.begin(), low.end());
    r.diag.assign(diag.begin(), diag.end());
    r.upper.assign(up.begin(), up.end());
    r.lower[0] = 0.0;
    r.upper[N - 1] = 0.0;
    r.bc_row.assign(N, 0);

    thomas(r, rhs, x.data(), N - 1, cp.data(), dp.data());
    thomas(r, u.data(), z.data(), N - 1, cp.data(), dp.data());
    const double fact = (x[0] + a * x[N - 1] / gamma) /
                        (1.0 + z[0] + a * z[N - 1] / gamma);
    for (int j = 0; j < N; ++j) out[j] = x[j] - fact * z[j];
    out[N] = out[0];
}

// ---------------------------------------------------------------------------
// Analytic-kernel path (semi-infinite): solution of  m^2 v - v_zz = f  with
// (v_z + beta v)(0) = 0 and decay,
//   v(z) = 1/(2m) int e^{-m|z-z'|} f dz'
//        + (m+beta)/(2m(m-beta)) e^{-mz} int e^{-mz'} f dz'.
// f is replaced by its piecewise-cubic interpolant and each exponential
// moment is integrated exactly, so the path converges at 4th order.
// ---------------------------------------------------------------------------

struct ExpMoments {
    double M[4];  // int_0^1 e^{-mu u} u^q du
    double N[4];  // int_0^1 e^{-mu (1-u)} u^q du
};

ExpMoments exp_moments(double mu) {
    ExpMoments em{};
    const double emu = std::exp(-mu);
    if (mu < 0.5) {
        // series M_q = sum_t (-mu)^t / (t! (q+t+1)); the recurrences cancel badly here
        for (int q = 0; q < 4; ++q) {
            double termM = 1.0, termN = 1.0;
            double sM = 1.0 / (q + 1.0), sN = 1.0 / (q + 1.0);
            for (int t = 1; t < 40; ++t) {
                termM *= -mu / t;
                termN *= mu / t;
                sM += termM / (q + t + 1.0);
                sN += termN / (q + t + 1.0);
                if (std::abs(termM) < 1e-18 && std::abs(termN) < 1e-18) break;
            }
            em.M[q] = sM;
            em.N[q] = emu * sN;
        }
    } else {
        em.M[0] = (1.0 - emu) / mu;
        for (int q = 1; q < 4; ++q) em.M[q] = (q * em.M[q - 1] - emu) / mu;
        em.N[0] = em.M[0];
        for (int q = 1; q < 4; ++q) em.N[q] = (1.0 - q * em.N[q - 1]) / mu;
    }
    return em;
}

// Forward-interpolation cubic through 4 equally spaced values, coefficients
// in the stencil-local coordinate tau in [0,3].
inline void cubic_coeffs(const double* g, double* c) {
    c[0] = g[0];
    c[1] = (-11.0 * g[0] + 18.0 * g[1] - 9.0 * g[2] + 2.0 * g[3]) / 6.0;
    c[2] = (2.0 * g[0] - 5.0 * g[1] + 4.0 * g[2] - g[3]) / 2.0;
    c[3] = (-g[0] + 3.0 * g[1] - 3.0 * g[2] + g[3]) / 6.0;
}

// Shift the cubic to the interval-local coordinate u = tau - tau0.
inline void shift_cubic(const double* c, double t0, double* b) {
    b[0] = c[0] + t0 * (c[1] + t0 * (c[2] + t0 * c[3]));
    b[1] = c[1] + 2.0 * c[2] * t0 + 3.0 * c[3] * t0 * t0;
    b[2] = c[2] + 3.0 * c[3] * t0;
    b[3] = c[3];
}

void solve_mode_kernel(double m, double beta, const double* fhat, double* out, int N,
                       double h) {
    const double mu = m * h;
    const ExpMoments em = exp_moments(mu);
    const double decay = std::exp(-mu);

    std::vector<double> segM(N), segN(N);
    for (int j = 0; j < N; ++j) {
        const int s = std::clamp(j - 1, 0, N - 3);
        const double t0 = j - s;
        double c[4], b[4];
        cubic_coeffs(fhat + s, c);
        shift_cubic(c, t0, b);
        segM[j] = h * (b[0] * em.M[0] + b[1] * em.M[1] + b[2] * em.M[2] + b[3] * em.M[3]);
        segN[j] = h * (b[0] * em.N[0] + b[1] * em.N[1] + b[2] * em.N[2] + b[3] * em.N[3]);
    }

    std::vector<double> P(N + 1), Q(N + 1);
    P[0] = 0.0;
    for (int j = 0; j < N; ++j) P[j + 1] = decay * P[j] + segN[j];
    Q[N] = 0.0;
    for (int j = N - 1; j >= 0; --j) Q[j] = decay * Q[j + 1] + segM[j];

    const double image = (m + beta) / (2.0 * m * (m - beta)) * Q[0];
    double ez = 1.0;
    for (int j = 0; j <= N; ++j) {
        out[j] = (P[j] + Q[j]) / (2.0 * m) + image * ez;
        ez *= decay;
    }
}

void guard_resonance(double m, const ZBoundary& bc, const Domain& dom, double tol) {
    if (bc.bottom != ZBoundary::Bottom::Robin) return;
    if (excluded_for_mode(bc.beta, m, dom, bc.top, tol))
        throw ResonanceError("beta = " + std::to_string(bc.beta) +
                             " within tolerance of the resonance set at |k| = " +
                             std::to_string(m * dom.a / kPi));
}

// Row constants shared by every mode of a solve (only the diagonal shift m^2
// differs per mode), so the hot path allocates nothing.
struct RowConstants {
    double ih2 = 0.0;
    bool pin0 = false, pinN = false;  // Dirichlet pins
    double d0_add = 0.0, u0 = 0.0;    // bottom row: diag = m2 + d0_add
    double dN_add = 0.0, lN = 0.0;
};

RowConstants row_constants(const ZBoundary& bc, double h) {
    RowConstants rc;
    rc.ih2 = 1.0 / (h * h);
    switch (bc.bottom) {
        case ZBoundary::Bottom::Robin:
        case ZBoundary::Bottom::Neumann: {
            const double beta = (bc.bottom == ZBoundary::Bottom::Robin) ? bc.beta : 0.0;
            rc.d0_add = 2.0 * rc.ih2 - 2.0 * beta / h;
            rc.u0 = -2.0 * rc.ih2;
            break;
        }
        case ZBoundary::Bottom::Dirichlet:
            rc.pin0 = true;
            break;
    }
    switch (bc.top) {
        case ZBoundary::Top::Decay:
        case ZBoundary::Top::Dirichlet:
            rc.pinN = true;
            break;
        case ZBoundary::Top::Neumann:
            rc.dN_add = 2.0 * rc.ih2;
            rc.lN = -2.0 * rc.ih2;
            break;
        case ZBoundary::Top::Periodic:
            break;
    }
    return rc;
}

void solve_mode_fd(const RowConstants& rc, double m2, const double* fhat, int N,
                   double* out, double* cp, double* dp, double* residual) {
    const double ih2 = rc.ih2;
    // forward sweep
    double d0 = rc.pin0 ? 1.0 : m2 + rc.d0_add;
    double r0 = rc.pin0 ? 0.0 : fhat[0];
    double u0 = rc.pin0 ? 0.0 : rc.u0;
    cp[0] = u0 / d0;
    dp[0] = r0 / d0;
    const double di = m2 + 2.0 * ih2;
    for (int j = 1; j < N; ++j) {
        const double m = di - (-ih2) * cp[j - 1];
        cp[j] = -ih2 / m;
        dp[j] = (fhat[j] - (-ih2) * dp[j - 1]) / m;
    }
    {
        const double dN = rc.pinN ? 1.0 : m2 + rc.dN_add;
        const double lN = rc.pinN ? 0.0 : rc.lN;
        const double rN = rc.pinN ? 0.0 : fhat[N];
        const double m = dN - lN * cp[N - 1];
        cp[N] = 0.0;
        dp[N] = (rN - lN * dp[N - 1]) / m;
    }
    out[N] = dp[N];
    for (int j = N - 1; j >= 0; --j) out[j] = dp[j] - cp[j] * out[j + 1];

    if (residual) {
        double r = 0.0;
        if (!rc.pin0)
            r = std::abs((m2 + rc.d0_add) * out[0] + rc.u0 * out[1] - fhat[0]);
        for (int j = 1; j < N; ++j)
            r = std::max(r, std::abs(di * out[j] - ih2 * (out[j - 1] + out[j + 1]) -
                                     fhat[j]));
        if (!rc.pinN)
            r = std::max(r, std::abs((m2 + rc.dN_add) * out[N] + rc.lN * out[N - 1] -
                                     fhat[N]));
        *residual = r;
    }
}

void solve_mode_dispatch(const Grid& g, double m2, const double* fhat,
                         const ZBoundary& bc, const RowConstants& rc, double* out,
                         double* cp, double* dp, double* residual) {
    const int N = g.nz;
    const double h = g.hz();
    if (bc.periodic()) {
        solve_periodic(m2, fhat, out, N, h);
        if (residual) {
            const double ih2 = 1.0 / (h * h);
            double r = 0.0;
            for (int j = 0; j < N; ++j) {
                const int jm = (j == 0) ? N - 1 : j - 1;
                const int jp = (j == N - 1) ? 0 : j + 1;
                const double Tv = (m2 + 2.0 * ih2) * out[j] - ih2 * out[jm] - ih2 * out[jp];
                r = std::max(r, std::abs(Tv - fhat[j]));
            }
            *residual = r;
        }
        return;
    }
    solve_mode_fd(rc, m2, fhat, N, out, cp, dp, residual);
}

double tail_max(const double* fhat, int N) {
    double m = 0.0;
    for (int j = (9 * N) / 10; j <= N; ++j) m = std::max(m, std::abs(fhat[j]));
    return m;
}

double sup_profile(const double* fhat, int N) {
    double m = 0.0;
    for (int j = 0; j <= N; ++j) m = std::max(m, std::abs(fhat[j]));
    return m;
}

}  // namespace

std::vector<double> solve_mode_bvp(const Grid& grid, int k1, int k2, const double* fhat,
                                   const ZBoundary& bc, const EllipticOptions& opt) {
    const double m2 = mode_symbol(grid, k1, k2);
    const double m = std::sqrt(m2);
    guard_resonance(m, bc, grid.domain, opt.resonance_tol);

    std::vector<double> out(grid.npz());
    if (opt.method == EllipticMethod::AnalyticKernel) {
        if (!grid.domain.semi_infinite() || bc.top != ZBoundary::Top::Decay)
            throw ParameterError("analytic kernel path requires a semi-infinite domain");
        if (bc.bottom == ZBoundary::Bottom::Dirichlet)
            throw ParameterError("analytic kernel path wants a Robin/Neumann bottom");
        const double beta = (bc.bottom == ZBoundary::Bottom::Robin) ? bc.beta : 0.0;
        if (opt.report &&
            tail_max(fhat, grid.nz) > 1e-6 * std::max(sup_profile(fhat, grid.nz), 1e-300))
            opt.report->truncation_warning = true;
        solve_mode_kernel(m, beta, fhat, out.data(), grid.nz, grid.hz());
    } else {
        std::vector<double> cp(grid.npz()), dp(grid.npz());
        double res = 0.0;
        const RowConstants rc = row_constants(bc, grid.hz());
        solve_mode_dispatch(grid, m2, fhat, bc, rc, out.data(), cp.data(), dp.data(),
                            opt.check_residual ? &res : nullptr);
        double scale = 0.0;
        for (int j = 0; j <= grid.nz; ++j) scale = std::max(scale, std::abs(fhat[j]));
        if (opt.report) opt.report->max_mode_residual = res;
        if (opt.check_residual && res > 1e-10 * std::max(scale, 1e-300))
            throw SolverError("mode residual above tolerance");
    }
    return out;
}

SpectralField solve_poisson_modes(const SpectralField& fhat, const ZBoundary& bc,
                                  OperatorSign sign, const EllipticOptions& opt) {
    const Grid& g = fhat.grid();
    const int m = g.nx - 1, npz = g.npz();

    // Resonance guard over every representable mode, before the parallel map.
    if (bc.bottom == ZBoundary::Bottom::Robin) {
        for (int k1 = 1; k1 <= m; ++k1)
            for (int k2 = 1; k2 <= m; ++k2)
                guard_resonance(std::sqrt(mode_symbol(g, k1, k2)), bc, g.domain,
                                opt.resonance_tol);
    }
    if (opt.method == EllipticMethod::AnalyticKernel &&
        (!g.domain.semi_infinite() || bc.top != ZBoundary::Top::Decay))
        throw ParameterError("analytic kernel path requires a semi-infinite domain");

    SpectralField out(g);
    const double flip = (sign == OperatorSign::Flipped) ? -1.0 : 1.0;
    std::vector<double> residuals(static_cast<size_t>(m) * m, 0.0);
    std::vector<char> tail_warn(static_cast<size_t>(m) * m, 0);
    const RowConstants rc = row_constants(bc, g.hz());

    auto body = [&](int idx, double* cp, double* dp, double* rhs) {
        const int k1 = idx / m + 1, k2 = idx % m + 1;
        const double m2 = mode_symbol(g, k1, k2);
        const double* fp = fhat.zprofile(k1, k2);
        for (int j = 0; j < npz; ++j) rhs[j] = flip * fp[j];
        double* op = out.zprofile(k1, k2);
        if (opt.method == EllipticMethod::AnalyticKernel) {
            const double beta =
                (bc.bottom == ZBoundary::Bottom::Robin) ? bc.beta : 0.0;
            if (tail_max(rhs, g.nz) > 1e-6 * std::max(sup_profile(rhs, g.nz), 1e-300))
                tail_warn[idx] = 1;
            solve_mode_kernel(std::sqrt(m2), beta, rhs, op, g.nz, g.hz());
        } else {
            solve_mode_dispatch(g, m2, rhs, bc, rc, op, cp, dp,
                                opt.check_residual ? &residuals[idx] : nullptr);
            if (opt.check_residual) {
                const double scale = std::max(sup_profile(rhs, g.nz), 1e-300);
                residuals[idx] = residuals[idx] / scale;
            }
        }
    };

    const int nmodes = m * m;
    if (opt.exec == Exec::OpenMP) {
#pragma omp parallel num_threads(thread_cap())
        {
            std::vector<double> cp(npz), dp(npz), rhs(npz);
#pragma omp for schedule(static)
            for (int idx = 0; idx < nmodes; ++idx) body(idx, cp.data(), dp.data(), rhs.data());
        }
    } else {
        std::vector<double> cp(npz), dp(npz), rhs(npz);
        for (int idx = 0; idx < nmodes; ++idx) body(idx, cp.data(), dp.data(), rhs.data());
    }

    if (opt.check_residual && opt.method == EllipticMethod::FiniteDifference) {
        double worst = 0.0;
        for (double r : residuals) worst = std::max(worst, r);
        if (opt.report) opt.report->max_mode_residual = worst;
        if (worst > 1e-10) throw SolverError("per-mode residual above 1e-10 tolerance");
    }
    if (opt.report)
        for (char w : tail_warn)
            if (w) opt.report->truncation_warning = true;

    return out;
}

ScalarField solve_poisson(const ScalarField& f, const ZBoundary& bc, OperatorSign sign,
                          const EllipticOptions& opt) {
    SpectralField fhat = dst_forward(f, opt.exec);
    SpectralField vhat = solve_poisson_modes(fhat, bc, sign, opt);
    return dst_inverse(vhat, opt.exec);
}

double dirichlet_form(const SpectralField& vhat, const ZBoundary& bc) {
    const Grid& g = vhat.grid();
    const int m = g.nx - 1, N = g.nz;
    const double h = g.hz();
    const double gamma = parseval_weight(g);
    double total = 0.0;
    for (int k1 = 1; k1 <= m; ++k1)
        for (int k2 = 1; k2 <= m; ++k2) {
            const double m2 = mode_symbol(g, k1, k2);
            const double* v = vhat.zprofile(k1, k2);
            double s = 0.0;
            if (bc.periodic()) {
                const double ih2 = 1.0 / (h * h);
                for (int j = 0; j < N; ++j) {
                    const int jm = (j == 0) ? N - 1 : j - 1;
                    const int jp = (j == N - 1) ? 0 : j + 1;
                    const double Tv =
                        (m2 + 2.0 * ih2) * v[j] - ih2 * v[jm] - ih2 * v[jp];
                    s += h * Tv * v[j];
                }
            } else {
                TriRows rows = assemble_rows(m2, bc, h, N);
                for (int j = 0; j <= N; ++j) {
                    if (rows.bc_row[j]) continue;  // pinned rows carry v = 0
                    double Tv = rows.diag[j] * v[j];
                    if (j > 0) Tv += rows.lower[j] * v[j - 1];
                    if (j < N) Tv += rows.upper[j] * v[j + 1];
                    const double w = (j == 0 || j == N) ? 0.5 * h : h;
                    s += w * Tv * v[j];
                }
            }
            total += gamma * s;
        }
    return total;
}

}  // namespace blowuplab
