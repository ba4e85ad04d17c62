#pragma once

#include <functional>
#include <vector>

#include "blowuplab/errors.hpp"

namespace blowuplab {

enum class ZExtent { Bounded, SemiInfinite };

/// Cylinder Omega = (0,a) x (0,a) x (0, z_size). For semi-infinite runs
/// z_size is a truncation L of (0,inf), chosen so the active weight's
/// e^{-alpha z} tail is below 1e-8 at z = L.
struct Domain {
    double a = 0.0;
    ZExtent extent = ZExtent::Bounded;
    double z_size = 0.0;

    bool semi_infinite() const { return extent == ZExtent::SemiInfinite; }
};

inline Domain bounded_domain(double a, double b) { return {a, ZExtent::Bounded, b}; }
inline Domain semi_infinite_domain(double a, double L) { return {a, ZExtent::SemiInfinite, L}; }

/// Tensor-product grid: nodes x_i = i*a/nx (i=0..nx, sides are homogeneous
/// Dirichlet rows), z_j = j*hz (j=0..nz). Uniform spacing per direction.
struct Grid {
    Domain domain;
    int nx = 0;
    int nz = 0;

    double hx() const { return domain.a / nx; }
    double hz() const { return domain.z_size / nz; }
    double x(int i) const { return i * hx(); }
    double z(int j) const { return j * hz(); }
    int npx() const { return nx + 1; }
    int npz() const { return nz + 1; }
    long npts() const { return static_cast<long>(npx()) * npx() * npz(); }

    bool same_shape(const Grid& o) const {
        return nx == o.nx && nz == o.nz && domain.a == o.domain.a &&
               domain.z_size == o.domain.z_size;
    }
};

/// Nodal real-valued field on a Grid, indexed (i1, i2, j) with j fastest
/// (z-profiles contiguous).
class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(const Grid& g) : grid_(g), v_(g.npts(), 0.0) {}

    const Grid& grid() const { return grid_; }
    bool empty() const { return v_.empty(); }

    double& operator()(int i1, int i2, int j) { return v_[idx(i1, i2, j)]; }
    double operator()(int i1, int i2, int j) const { return v_[idx(i1, i2, j)]; }

    double* data() { return v_.data(); }
    const double* data() const { return v_.data(); }
    long size() const { return static_cast<long>(v_.size()); }

    /// Pointer to the contiguous z-profile at (i1, i2).
    double* zprofile(int i1, int i2) { return v_.data() + idx(i1, i2, 0); }
    const double* zprofile(int i1, int i2) const { return v_.data() + idx(i1, i2, 0); }

    void fill(double c) { std::fill(v_.begin(), v_.end(), c); }

    /// Nodal map f(x1, x2, z).
    static ScalarField sample(const Grid& g,
                              const std::function<double(double, double, double)>& f);

private:
    long idx(int i1, int i2, int j) const {
        return (static_cast<long>(i1) * grid_.npx() + i2) * grid_.npz() + j;
    }
    Grid grid_;
    std::vector<double> v_;
};

// In-place linear algebra on matching grids.
void axpy(double alpha, const ScalarField& x, ScalarField& y);  // y += alpha*x
ScalarField linear_combination(double alpha, const ScalarField& x, double beta,
                               const ScalarField& y);

/// Trapezoidal tensor quadrature of f over Omega. Exact for constants on
/// bounded domains; semi-infinite integrals are truncated at z = L.
double integrate(const ScalarField& f);

/// Quadrature of f*w on a shared grid; identical rule to integrate(f*w).
double weighted_integral(const ScalarField& f, const ScalarField& w);

/// max |f|
double sup_norm(const ScalarField& f);

double min_value(const ScalarField& f);
double max_value(const ScalarField& f);
bool all_finite(const ScalarField& f);

/// Discrete H^s norm, s in {0,1,2}: centered differences interior,
/// one-sided at boundaries; all multi-indices |a| <= s. A proxy norm:
/// blowup detection only uses its relative growth.
double sobolev_norm(const ScalarField& f, int s);

/// d/dz with the trapezoid-compatible closure: centered interior,
/// one-sided first-order rows at j=0 and j=nz (periodic wraps instead).
/// Together with the trapezoid weights this pair satisfies exact discrete
/// integration by parts, which the energy identity tests rely on.
ScalarField dz(const ScalarField& f, bool periodic = false);

/// d/dx_i (axis 0 or 1), same closure as dz.
ScalarField dx(const ScalarField& f, int axis);

/// d2/dz2, centered interior, one-sided 3-point end rows.
ScalarField dzz(const ScalarField& f);

/// Integral over the z = 0 face of f * w2d(x1,x2), 2-D trapezoid.
double trace_z0_integral(const ScalarField& f,
                         const std::function<double(double, double)>& w2d);

/// Quadrature of log(u)*phi over nodes with u > 0; boundary rows of the
/// grid are excluded (u and the side weights vanish there, and the
/// log-singularity is integrable, so the continuum limit is unchanged).
double masked_log_integral(const ScalarField& u, const ScalarField& phi);

}  // namespace blowuplab
