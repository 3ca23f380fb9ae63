#ifndef QNET_QUADRATURE_HPP
#define QNET_QUADRATURE_HPP

#include <cmath>
#include <functional>

namespace qnet {

/// Adaptive Gauss-Kronrod (G7/K15) integration on [a, b] to absolute
/// tolerance abs_tol. Bisects intervals whose error estimate exceeds the
/// locally apportioned tolerance; subdivision stops at machine precision.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-11, int max_depth = 40);

}  // namespace qnet

#endif
