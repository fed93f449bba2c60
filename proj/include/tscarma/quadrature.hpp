#pragma once

// Thin wrappers over Boost.Math quadrature that enforce a relative tolerance
// and raise QuadratureError with diagnostics when it is not met.

#include <functional>

namespace tscarma::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss–Kronrod (61 point) on a finite interval.
Result finite(const Integrand& f, double a, double b, double rel_tol = 1e-11);

/// Double-exponential rule on a finite interval; tolerates endpoint singularities.
Result finite_singular(const Integrand& f, double a, double b, double rel_tol = 1e-11);

/// ∫_a^b f(r) dr for 0 < a < b via r = e^u; suited to power-law integrands
/// spanning many decades.
Result log_scale(const Integrand& f, double a, double b, double rel_tol = 1e-11);

/// ∫_a^∞ f for a ≥ 0 using the exp-sinh rule.
Result half_line(const Integrand& f, double a, double rel_tol = 1e-11);

/// ∫_a^∞ f for a > 0 split at 1 and 10: log scale below 1, Gauss–Kronrod on
/// [1, 10], exp-sinh beyond.
Result tail(const Integrand& f, double a, double rel_tol = 1e-11);

}  // namespace tscarma::quad
