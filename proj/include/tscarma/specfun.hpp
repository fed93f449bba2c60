#pragma once

// Real-valued special functions used by the truncated-moment closed forms and
// the series centering constants. All functions are pure and reentrant.

#include <cstdint>

namespace tscarma::specfun {

struct EvalResult {
  double value = 0.0;
  double est_abs_error = 0.0;
};

/// Stopping rules for the series and continued fractions below.
struct Tolerances {
  double rel = 1e-16;      // term-ratio / convergence threshold
  int max_terms = 100000;  // hard cap before ConvergenceError
};

inline constexpr Tolerances default_tolerances{};

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

/// Γ(s) for s > 0.
double gamma(double s);

/// Upper incomplete gamma Γ(s, x) for s > 0, x ≥ 0.
double gamma_upper(double s, double x, const Tolerances& tol = default_tolerances);
EvalResult gamma_upper_eval(double s, double x, const Tolerances& tol = default_tolerances);

/// Lower incomplete gamma γ(s, x) = Γ(s) − Γ(s, x), evaluated without the
/// subtraction so that small x keeps full relative accuracy.
double gamma_lower(double s, double x, const Tolerances& tol = default_tolerances);

/// Generalised exponential integral E_m(x) = ∫_1^∞ e^{−xt} t^{−m} dt, m > 0.
/// x = 0 is accepted only for m > 1.
double expint(double m, double x, const Tolerances& tol = default_tolerances);
EvalResult expint_eval(double m, double x, const Tolerances& tol = default_tolerances);

/// Same integral for any real order m (x > 0). Non-positive orders show up in
/// the second truncated moment for small p.
EvalResult expint_any_order(double m, double x, const Tolerances& tol = default_tolerances);

/// Gauss hypergeometric ₂F₁(a, b; c; x) for x ≤ 0.
double hyp2f1(double a, double b, double c, double x,
              const Tolerances& tol = default_tolerances);
EvalResult hyp2f1_eval(double a, double b, double c, double x,
                       const Tolerances& tol = default_tolerances);

/// Riemann zeta for s > 0, s ≠ 1 (analytic continuation on (0, 1)).
double zeta(double s);

/// Rising factorial (q)_j. Overflows to ±inf.
double pochhammer(double q, std::int64_t j);

struct PochhammerResult {
  double value;
  bool overflow;
};
PochhammerResult pochhammer_checked(double q, std::int64_t j);

/// Digamma ψ(x) for x > 0.
double digamma(double x);

}  // namespace tscarma::specfun
