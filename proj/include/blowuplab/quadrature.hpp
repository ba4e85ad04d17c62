#pragma once

#include <functional>

namespace blowuplab {

/// Adaptive Gauss-Kronrod (7-15) quadrature on [a, b] to the requested
/// absolute tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-12, int max_depth = 48);

/// I(x) = int_0^x dy / sqrt(y^3 + 1). Strictly increasing, 1-Lipschitz,
/// I(x) -> I_infinity as x -> inf. The tail beyond y = 1 is computed with
/// the substitution y = 1/s^2, which removes the improper endpoint.
double quad_I(double x, double abs_tol = 1e-10);

/// I_infinity = int_0^inf dy / sqrt(y^3 + 1) via [0,1] plus the substituted
/// tail 2 int_0^1 ds / sqrt(1 + s^6).
double quad_I_infinity(double abs_tol = 1e-12);

}  // namespace blowuplab
