#include "blowuplab/weights.hpp"

#include <cmath>
#include <functional>
#include <string>

namespace blowuplab {

namespace {
const double kPi = std::acos(-1.0);

double bisect_decreasing(const std::function<double(double)>& h, double beta, double lo,
                         double hi) {
    // h strictly decreasing, h(lo) > beta > h(hi)
    for (int it = 0; it < 200 && (hi - lo) > 1e-15 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (h(mid) > beta)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}
}  // namespace

const char* to_string(WeightVariant v) {
    switch (v) {
        case WeightVariant::MixedSemiInf: return "mixed-semi-infinite";
        case WeightVariant::MixedBounded: return "mixed-bounded";
        case WeightVariant::MixedBoundedNeumannTop: return "mixed-bounded-neumann-top";
        case WeightVariant::Generalized: return "generalized";
        case WeightVariant::ViscousSemiInf: return "viscous-semi-infinite";
        case WeightVariant::ConservedSemiInf: return "conserved-semi-infinite";
        case WeightVariant::ConservedBoundedNeumann: return "conserved-bounded-neumann";
        case WeightVariant::ConservedPeriodicZ: return "conserved-periodic-z";
        case WeightVariant::ConservedDirichletZ: return "conserved-dirichlet-z";
    }
    return "?";
}

double h_mixed_bounded(double alpha, double a, double b) {
    const double e = std::exp(-2.0 * alpha * b);
    return 2.0 * (kPi / a) * (kPi / a) * (1.0 + e) / (alpha * (1.0 - e));
}

double h_neumann_top(double alpha, double a, double b) {
    return 2.0 * (kPi / a) * (kPi / a) * std::tanh(alpha * b) / alpha;
}

double solve_alpha(double beta, double a, double b) {
    const double hi = std::sqrt(2.0) * kPi / a;
    const double threshold = h_mixed_bounded(hi, a, b);
    if (!(beta > threshold))
        throw ParameterError("solve_alpha: beta = " + std::to_string(beta) +
                             " must exceed h(sqrt(2) pi / a) = " +
                             std::to_string(threshold));
    return bisect_decreasing([=](double al) { return h_mixed_bounded(al, a, b); }, beta,
                             1e-12, hi);
}

double solve_alpha_neumann_top(double beta, double a, double b) {
    const double hi = std::sqrt(2.0) * kPi / a;
    const double lo_val = h_neumann_top(hi, a, b);
    const double hi_val = 2.0 * b * (kPi / a) * (kPi / a);
    if (!(beta > lo_val) || !(beta < hi_val))
        throw ParameterError("solve_alpha_neumann_top: beta outside (" +
                             std::to_string(lo_val) + ", " + std::to_string(hi_val) + ")");
    return bisect_decreasing([=](double al) { return h_neumann_top(al, a, b); }, beta,
                             1e-12, hi);
}

double EigenWeight::phi1(double x1, double x2) const {
    return std::sin(kPi * x1 / a) * std::sin(kPi * x2 / a);
}

EigenWeight make_weight(const WeightSpec& spec, const Grid& grid) {
    EigenWeight w;
    w.variant = spec.variant;
    w.a = spec.a;
    w.b = spec.b;
    const double a = spec.a, b = spec.b;
    const double pa2 = (kPi / a) * (kPi / a);
    const double sqrt2pa = std::sqrt(2.0) * kPi / a;

    std::function<double(double)> zeta, dzeta;
    switch (spec.variant) {
        case WeightVariant::MixedSemiInf:
        case WeightVariant::ViscousSemiInf: {
            if (!(spec.beta > sqrt2pa))
                throw ParameterError("mixed semi-infinite weight needs beta > sqrt(2) pi/a");
            w.alpha = 2.0 * kPi * kPi / (spec.beta * a * a);
            w.int_phi = (2.0 * a / kPi) * (2.0 * a / kPi) / w.alpha;
            const double al = w.alpha;
            zeta = [al](double z) { return std::exp(-al * z); };
            dzeta = [al](double z) { return -al * std::exp(-al * z); };
            w.lambda2 = al * al;
            break;
        }
        case WeightVariant::MixedBounded: {
            w.alpha = solve_alpha(spec.beta, a, b);
            const double al = w.alpha;
            w.int_phi = (2.0 * a / kPi) * (2.0 * a / kPi) * std::sinh(al * b) / al;
            zeta = [al, b](double z) { return std::cosh(al * (z - b)); };
            dzeta = [al, b](double z) { return al * std::sinh(al * (z - b)); };
            w.lambda2 = al * al;
            break;
        }
        case WeightVariant::MixedBoundedNeumannTop: {
            w.alpha = solve_alpha_neumann_top(spec.beta, a, b);
            const double al = w.alpha;
            w.int_phi =
                (2.0 * a / kPi) * (2.0 * a / kPi) * (std::cosh(al * b) - 1.0) / al;
            zeta = [al, b](double z) { return std::sinh(al * (b - z)); };
            dzeta = [al, b](double z) { return -al * std::cosh(al * (b - z)); };
            w.lambda2 = al * al;
            break;
        }
        case WeightVariant::Generalized: {
            if (std::abs(b - a) > 1e-12 * a)
                throw ParameterError("generalized weight lives on the cube (0,a)^3");
            w.alpha = kPi / a;
            const double al = w.alpha;
            w.int_phi = std::pow(2.0 * a / kPi, 3);
            zeta = [al](double z) { return std::sin(al * z); };
            dzeta = [al](double z) { return al * std::cos(al * z); };
            w.lambda2 = -al * al;
            break;
        }
        case WeightVariant::ConservedSemiInf: {
            w.alpha = kPi / a;
            const double al = w.alpha;
            w.int_phi = (2.0 * a / kPi) * (2.0 * a / kPi) / al;
            zeta = [al](double z) { return std::exp(-al * z); };
            dzeta = [al](double z) { return -al * std::exp(-al * z); };
            w.lambda2 = al * al;
            break;
        }
        case WeightVariant::ConservedBoundedNeumann: {
            w.alpha = kPi / a;
            const double al = w.alpha;
            w.int_phi =
                (2.0 * a / kPi) * (2.0 * a / kPi) * (std::cosh(al * b) - 1.0) / al;
            zeta = [al, b](double z) { return std::sinh(al * (b - z)); };
            dzeta = [al, b](double z) { return -al * std::cosh(al * (b - z)); };
            w.lambda2 = al * al;
            break;
        }
        case WeightVariant::ConservedPeriodicZ: {
            w.alpha = kPi / a;
            const double al = w.alpha;
            w.int_phi =
                (2.0 * a / kPi) * (2.0 * a / kPi) * (1.0 - std::exp(-al * b)) / al;
            zeta = [al, b](double z) {
                return 0.5 * (std::exp(-al * z) + std::exp(al * (z - b)));
            };
            dzeta = [al, b](double z) {
                return 0.5 * al * (-std::exp(-al * z) + std::exp(al * (z - b)));
            };
            w.lambda2 = al * al;
            break;
        }
        case WeightVariant::ConservedDirichletZ: {
            w.alpha = kPi / a;
            const double al = w.alpha;
            w.int_phi = (2.0 * a / kPi) * (2.0 * a / kPi) * std::sinh(al * b) / al;
            zeta = [al, b](double z) { return std::cosh(al * (z - b)); };
            dzeta = [al, b](double z) { return al * std::sinh(al * (z - b)); };
            w.lambda2 = al * al;
            break;
        }
    }
    if (spec.variant != WeightVariant::Generalized && !(w.alpha < sqrt2pa))
        throw ParameterError("weight alpha outside (0, sqrt(2) pi/a)");
    w.lambda1 = 2.0 * pa2 - w.lambda2;

    w.zeta.resize(grid.npz());
    w.dzeta.resize(grid.npz());
    for (int j = 0; j <= grid.nz; ++j) {
        w.zeta[j] = zeta(grid.z(j));
        w.dzeta[j] = dzeta(grid.z(j));
    }
    w.phi = ScalarField(grid);
    w.phi_z = ScalarField(grid);
    for (int i1 = 0; i1 <= grid.nx; ++i1)
        for (int i2 = 0; i2 <= grid.nx; ++i2) {
            const double p1 = w.phi1(grid.x(i1), grid.x(i2));
            for (int j = 0; j <= grid.nz; ++j) {
                w.phi(i1, i2, j) = p1 * w.zeta[j];
                w.phi_z(i1, i2, j) = p1 * w.dzeta[j];
            }
        }
    return w;
}

namespace {
double interior_sup_residual(const ScalarField& f, const ScalarField& ref,
                             const std::function<double(int, int, int)>& op) {
    const Grid& g = f.grid();
    double num = 0.0, den = sup_norm(ref);
    for (int i1 = 1; i1 < g.nx; ++i1)
        for (int i2 = 1; i2 < g.nx; ++i2)
            for (int j = 1; j < g.nz; ++j)
                num = std::max(num, std::abs(op(i1, i2, j)));
    return num / den;
}
}  // namespace

double eigen_residual_laplacian(const EigenWeight& w, const Grid& g) {
    const double ihx2 = 1.0 / (g.hx() * g.hx());
    const double ihz2 = 1.0 / (g.hz() * g.hz());
    const ScalarField& p = w.phi;
    return interior_sup_residual(p, p, [&](int i1, int i2, int j) {
        const double lap =
            (p(i1 + 1, i2, j) - 2.0 * p(i1, i2, j) + p(i1 - 1, i2, j)) * ihx2 +
            (p(i1, i2 + 1, j) - 2.0 * p(i1, i2, j) + p(i1, i2 - 1, j)) * ihx2 +
            (p(i1, i2, j + 1) - 2.0 * p(i1, i2, j) + p(i1, i2, j - 1)) * ihz2;
        return -lap - w.lambda1 * p(i1, i2, j);
    });
}

double eigen_residual_zz(const EigenWeight& w, const Grid& g) {
    const double ihz2 = 1.0 / (g.hz() * g.hz());
    const ScalarField& p = w.phi;
    return interior_sup_residual(p, p, [&](int i1, int i2, int j) {
        const double dzz =
            (p(i1, i2, j + 1) - 2.0 * p(i1, i2, j) + p(i1, i2, j - 1)) * ihz2;
        return dzz - w.lambda2 * p(i1, i2, j);
    });
}

}  // namespace blowuplab
