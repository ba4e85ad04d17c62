#pragma once

#include <vector>

#include "blowuplab/grid.hpp"
#include "blowuplab/parallel.hpp"

namespace blowuplab {

/// Sine-series coefficients vhat(k1, k2, j) for k1,k2 = 1..nx-1, j = 0..nz,
/// representing sum vhat * sin(k1 pi x1/a) * sin(k2 pi x2/a) per z-level.
/// Stored with j fastest (mode z-profiles contiguous).
class SpectralField {
public:
    SpectralField() = default;
    explicit SpectralField(const Grid& g)
        : grid_(g), c_(static_cast<long>(g.nx - 1) * (g.nx - 1) * g.npz(), 0.0) {}

    const Grid& grid() const { return grid_; }
    int nmodes() const { return grid_.nx - 1; }  // per direction

    double& operator()(int k1, int k2, int j) { return c_[idx(k1, k2, j)]; }
    double operator()(int k1, int k2, int j) const { return c_[idx(k1, k2, j)]; }

    double* zprofile(int k1, int k2) { return c_.data() + idx(k1, k2, 0); }
    const double* zprofile(int k1, int k2) const { return c_.data() + idx(k1, k2, 0); }

    double* data() { return c_.data(); }
    const double* data() const { return c_.data(); }
    long size() const { return static_cast<long>(c_.size()); }

private:
    long idx(int k1, int k2, int j) const {
        return (static_cast<long>(k1 - 1) * (grid_.nx - 1) + (k2 - 1)) * grid_.npz() + j;
    }
    Grid grid_;
    std::vector<double> c_;
};

/// Type-I discrete sine transform on interior nodes along x1 and x2, one
/// z-level at a time. Exactly encodes homogeneous Dirichlet sides and
/// diagonalizes the cross-sectional Laplacian: mode (k1,k2) carries symbol
/// (k1 pi/a)^2 + (k2 pi/a)^2. Normalization (2/nx)^2 on the forward
/// transform makes dst_inverse(dst_forward(f)) = f on interior nodes to
/// round-off. Direct summation via precomputed sine matrices; per-level
/// work is independent, so OpenMP runs bitwise-identical to Serial.
SpectralField dst_forward(const ScalarField& f, Exec exec = Exec::OpenMP);
ScalarField dst_inverse(const SpectralField& F, Exec exec = Exec::OpenMP);

/// Squared cross-sectional wavenumber (k1 pi/a)^2 + (k2 pi/a)^2.
double mode_symbol(const Grid& g, int k1, int k2);

/// Parseval weight per mode: the nodal x-quadrature inner product equals
/// (a/2)^2 * sum_k fhat_k * ghat_k exactly.
inline double parseval_weight(const Grid& g) { return 0.25 * g.domain.a * g.domain.a; }

}  // namespace blowuplab
