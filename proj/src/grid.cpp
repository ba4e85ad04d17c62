#include "blowuplab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace blowuplab {

namespace {

void require_same_grid(const ScalarField& f, const ScalarField& g) {
    if (!f.grid().same_shape(g.grid()))
        throw ShapeMismatch("fields live on different grids");
}

// Trapezoid weight along one direction with n+1 nodes and spacing h.
inline double wt(int i, int n, double h) { return (i == 0 || i == n) ? 0.5 * h : h; }

}  // namespace

ScalarField ScalarField::sample(const Grid& g,
                                const std::function<double(double, double, double)>& f) {
    ScalarField out(g);
    for (int i1 = 0; i1 <= g.nx; ++i1)
        for (int i2 = 0; i2 <= g.nx; ++i2)
            for (int j = 0; j <= g.nz; ++j)
                out(i1, i2, j) = f(g.x(i1), g.x(i2), g.z(j));
    return out;
}

void axpy(double alpha, const ScalarField& x, ScalarField& y) {
    require_same_grid(x, y);
    const double* xs = x.data();
    double* ys = y.data();
    const long n = x.size();
    for (long i = 0; i < n; ++i) ys[i] += alpha * xs[i];
}

ScalarField linear_combination(double alpha, const ScalarField& x, double beta,
                               const ScalarField& y) {
    require_same_grid(x, y);
    ScalarField out(x.grid());
    const double* xs = x.data();
    const double* ys = y.data();
    double* os = out.data();
    const long n = x.size();
    for (long i = 0; i < n; ++i) os[i] = alpha * xs[i] + beta * ys[i];
    return out;
}

double integrate(const ScalarField& f) {
    const Grid& g = f.grid();
    const double hx = g.hx(), hz = g.hz();
    double sum = 0.0;
    for (int i1 = 0; i1 <= g.nx; ++i1) {
        const double w1 = wt(i1, g.nx, hx);
        for (int i2 = 0; i2 <= g.nx; ++i2) {
            const double w12 = w1 * wt(i2, g.nx, hx);
            const double* p = f.zprofile(i1, i2);
            double s = 0.5 * (p[0] + p[g.nz]);
            for (int j = 1; j < g.nz; ++j) s += p[j];
            sum += w12 * s * hz;
        }
    }
    return sum;
}

double weighted_integral(const ScalarField& f, const ScalarField& w) {
    require_same_grid(f, w);
    const Grid& g = f.grid();
    const double hx = g.hx(), hz = g.hz();
    double sum = 0.0;
    for (int i1 = 0; i1 <= g.nx; ++i1) {
        const double w1 = wt(i1, g.nx, hx);
        for (int i2 = 0; i2 <= g.nx; ++i2) {
            const double w12 = w1 * wt(i2, g.nx, hx);
            const double* p = f.zprofile(i1, i2);
            const double* q = w.zprofile(i1, i2);
            double s = 0.5 * (p[0] * q[0] + p[g.nz] * q[g.nz]);
            for (int j = 1; j < g.nz; ++j) s += p[j] * q[j];
            sum += w12 * s * hz;
        }
    }
    return sum;
}

double sup_norm(const ScalarField& f) {
    double m = 0.0;
    const double* p = f.data();
    const long n = f.size();
    for (long i = 0; i < n; ++i) m = std::max(m, std::abs(p[i]));
    return m;
}

double min_value(const ScalarField& f) {
    const double* p = f.data();
    return *std::min_element(p, p + f.size());
}

double max_value(const ScalarField& f) {
    const double* p = f.data();
    return *std::max_element(p, p + f.size());
}

bool all_finite(const ScalarField& f) {
    const double* p = f.data();
    const long n = f.size();
    for (long i = 0; i < n; ++i)
        if (!std::isfinite(p[i])) return false;
    return true;
}

namespace {

// One-dimensional first derivative along a line of n+1 values with spacing h:
// centered interior, first-order one-sided end rows (trapezoid-compatible pair).
inline double d1(const double* v, int i, int n, double h, long stride) {
    if (i == 0) return (v[stride] - v[0]) / h;
    if (i == n) return (v[static_cast<long>(n) * stride] - v[(n - 1L) * stride]) / h;
    return (v[(i + 1L) * stride] - v[(i - 1L) * stride]) / (2.0 * h);
}

inline double d1_periodic(const double* v, int i, int n, double h, long stride) {
    // Nodes 0 and n are the same physical point.
    const int ip = (i + 1 <= n) ? i + 1 : 1;
    const int im = (i - 1 >= 0) ? i - 1 : n - 1;
    return (v[static_cast<long>(ip) * stride] - v[static_cast<long>(im) * stride]) / (2.0 * h);
}

// Second derivative: centered interior, one-sided 3-point at the ends.
inline double d2(const double* v, int i, int n, double h, long stride) {
    auto at = [&](int k) { return v[static_cast<long>(k) * stride]; };
    if (i == 0) return (at(0) - 2.0 * at(1) + at(2)) / (h * h);
    if (i == n) return (at(n) - 2.0 * at(n - 1) + at(n - 2)) / (h * h);
    return (at(i + 1) - 2.0 * at(i) + at(i - 1)) / (h * h);
}

}  // namespace

ScalarField dz(const ScalarField& f, bool periodic) {
    const Grid& g = f.grid();
    ScalarField out(g);
    const double h = g.hz();
    for (int i1 = 0; i1 <= g.nx; ++i1)
        for (int i2 = 0; i2 <= g.nx; ++i2) {
            const double* p = f.zprofile(i1, i2);
            double* q = out.zprofile(i1, i2);
            if (periodic) {
                for (int j = 0; j <= g.nz; ++j) q[j] = d1_periodic(p, j, g.nz, h, 1);
            } else {
                for (int j = 0; j <= g.nz; ++j) q[j] = d1(p, j, g.nz, h, 1);
            }
        }
    return out;
}

ScalarField dx(const ScalarField& f, int axis) {
    const Grid& g = f.grid();
    ScalarField out(g);
    const double h = g.hx();
    const long stride = (axis == 0) ? static_cast<long>(g.npx()) * g.npz() : g.npz();
    for (int i1 = 0; i1 <= g.nx; ++i1)
        for (int i2 = 0; i2 <= g.nx; ++i2)
            for (int j = 0; j <= g.nz; ++j) {
                const int i = (axis == 0) ? i1 : i2;
                const double* base = f.data() +
                    ((static_cast<long>(i1) * g.npx() + i2) * g.npz() + j) -
                    static_cast<long>(i) * stride;
                out(i1, i2, j) = d1(base, i, g.nx, h, stride);
            }
    return out;
}

ScalarField dzz(const ScalarField& f) {
    const Grid& g = f.grid();
    ScalarField out(g);
    const double h = g.hz();
    for (int i1 = 0; i1 <= g.nx; ++i1)
        for (int i2 = 0; i2 <= g.nx; ++i2) {
            const double* p = f.zprofile(i1, i2);
            double* q = out.zprofile(i1, i2);
            for (int j = 0; j <= g.nz; ++j) q[j] = d2(p, j, g.nz, h, 1);
        }
    return out;
}

namespace {

double l2sq(const ScalarField& f) {
    const Grid& g = f.grid();
    const double hx = g.hx(), hz = g.hz();
    double sum = 0.0;
    for (int i1 = 0; i1 <= g.nx; ++i1) {
        const double w1 = wt(i1, g.nx, hx);
        for (int i2 = 0; i2 <= g.nx; ++i2) {
            const double w12 = w1 * wt(i2, g.nx, hx);
            const double* p = f.zprofile(i1, i2);
            double s = 0.5 * (p[0] * p[0] + p[g.nz] * p[g.nz]);
            for (int j = 1; j < g.nz; ++j) s += p[j] * p[j];
            sum += w12 * s * hz;
        }
    }
    return sum;
}

ScalarField second_derivative(const ScalarField& f, int axis) {
    const Grid& g = f.grid();
    ScalarField out(g);
    const double h = (axis == 2) ? g.hz() : g.hx();
    const long stride = (axis == 0) ? static_cast<long>(g.npx()) * g.npz()
                        : (axis == 1) ? static_cast<long>(g.npz())
                                      : 1L;
    const int n = (axis == 2) ? g.nz : g.nx;
    for (int i1 = 0; i1 <= g.nx; ++i1)
        for (int i2 = 0; i2 <= g.nx; ++i2)
            for (int j = 0; j <= g.nz; ++j) {
                const int i = (axis == 0) ? i1 : (axis == 1) ? i2 : j;
                const double* base = f.data() +
                    ((static_cast<long>(i1) * g.npx() + i2) * g.npz() + j) -
                    static_cast<long>(i) * stride;
                out(i1, i2, j) = d2(base, i, n, h, stride);
            }
    return out;
}

}  // namespace

double sobolev_norm(const ScalarField& f, int s) {
    if (s < 0 || s > 2) throw ParameterError("sobolev_norm: s must be 0, 1 or 2");
    double sum = l2sq(f);
    if (s >= 1) {
        ScalarField f1 = dx(f, 0), f2 = dx(f, 1), fz = dz(f);
        sum += l2sq(f1) + l2sq(f2) + l2sq(fz);
        if (s == 2) {
            sum += l2sq(second_derivative(f, 0)) + l2sq(second_derivative(f, 1)) +
                   l2sq(second_derivative(f, 2));
            sum += l2sq(dx(f1, 1)) + l2sq(dz(f1)) + l2sq(dz(f2));
        }
    }
    return std::sqrt(sum);
}

double trace_z0_integral(const ScalarField& f,
                         const std::function<double(double, double)>& w2d) {
    const Grid& g = f.grid();
    const double hx = g.hx();
    double sum = 0.0;
    for (int i1 = 0; i1 <= g.nx; ++i1) {
        const double w1 = wt(i1, g.nx, hx);
        for (int i2 = 0; i2 <= g.nx; ++i2)
            sum += w1 * wt(i2, g.nx, hx) * f(i1, i2, 0) * w2d(g.x(i1), g.x(i2));
    }
    return sum;
}

double masked_log_integral(const ScalarField& u, const ScalarField& phi) {
    require_same_grid(u, phi);
    const Grid& g = u.grid();
    const double hx = g.hx(), hz = g.hz();
    double sum = 0.0;
    for (int i1 = 1; i1 < g.nx; ++i1)
        for (int i2 = 1; i2 < g.nx; ++i2) {
            const double w12 = hx * hx;
            const double* up = u.zprofile(i1, i2);
            const double* pp = phi.zprofile(i1, i2);
            for (int j = 1; j < g.nz; ++j)
                if (up[j] > 0.0) sum += w12 * hz * std::log(up[j]) * pp[j];
        }
    return sum;
}

}  // namespace blowuplab
