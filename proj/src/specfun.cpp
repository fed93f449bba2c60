#include "tscarma/specfun.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include "tscarma/errors.hpp"

namespace tscarma::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

std::string fmt(const char* name, double a, double b) {
  std::ostringstream os;
  os.precision(17);
  os << name << "(" << a << ", " << b << ")";
  return os.str();
}

bool is_nonpositive_integer(double c) { return c <= 0.0 && c == std::floor(c); }

// Series for γ(s,x) e^{x} x^{-s}: Σ x^k / (s (s+1) ... (s+k)).
double lower_series(double s, double x, const Tolerances& tol, int& terms) {
  double ap = s;
  double del = 1.0 / s;
  double sum = del;
  for (terms = 1; terms <= tol.max_terms; ++terms) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) <= std::fabs(sum) * tol.rel) return sum;
  }
  throw ConvergenceError("gamma series did not converge at " + fmt("gamma_lower", s, x));
}

// Lentz continued fraction for Γ(s,x) e^{x} x^{-s}, valid for x ≥ s+1.
double upper_cf(double s, double x, const Tolerances& tol, int& terms) {
  double b = x + 1.0 - s;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (terms = 1; terms <= tol.max_terms; ++terms) {
    const double an = -terms * (terms - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= tol.rel * 4.0) return h;
  }
  throw ConvergenceError("gamma continued fraction did not converge at " +
                         fmt("gamma_upper", s, x));
}

void check_gamma_args(double s, double x, const char* name) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError(fmt(name, s, x) + ": s must be > 0");
  if (!(x >= 0.0)) throw DomainError(fmt(name, s, x) + ": x must be >= 0");
}

// E_m(x) e^{x} by continued fraction, x ≥ 1, any real m.
double expint_cf(double m, double x, const Tolerances& tol, int& terms) {
  double b = x + m;
  double c = 1.0 / kTiny;
  double d = std::fabs(b) < kTiny ? 1.0 / kTiny : 1.0 / b;
  double h = d;
  for (terms = 1; terms <= tol.max_terms; ++terms) {
    const double an = -terms * (m - 1.0 + terms);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = c * d;
    h *= del;
    if (std::fabs(del - 1.0) <= tol.rel * 4.0) return h;
  }
  throw ConvergenceError("expint continued fraction did not converge at " + fmt("expint", m, x));
}

// Σ_{k ≥ 0, k ≠ skip} (−x)^k / (k! (1 − m + k)).
double expint_power_sum(double m, double x, long skip, const Tolerances& tol, int& terms) {
  double sum = 0.0;
  double pw = 1.0;  // (−x)^k / k!
  for (long k = 0; k <= tol.max_terms; ++k) {
    if (k > 0) pw *= -x / static_cast<double>(k);
    if (k == skip) continue;
    const double term = pw / (1.0 - m + static_cast<double>(k));
    sum += term;
    if (k > skip && k > 2 && std::fabs(term) <= std::fabs(sum) * tol.rel) {
      terms = static_cast<int>(k);
      return sum;
    }
  }
  throw ConvergenceError("expint series did not converge at " + fmt("expint", m, x));
}

// For m = n + eps near a positive integer n, the pair
//   x^{m−1} Γ(1−m) + (−x)^{n−1} / ((n−1)! eps)
// has two poles that cancel. Written as (−x)^{n−1}/(n−1)! · (−expm1(L))/eps with
// L = eps(ln x + γ) − Σ_{k≥2}(−1)^k ζ(k) eps^k/k + Σ_{k≥1} ζ(2k) eps^{2k}/k
//     − Σ_{i=1}^{n−1} log1p(eps/i),
// every term of L is O(eps) and is formed without cancellation.
double expint_pole_pair(long n, double eps, double x) {
  const long k0 = n - 1;
  double L_over_eps = std::log(x) + euler_gamma;
  double epow = 1.0;  // eps^{k-1}
  for (int k = 2; k <= 30; ++k) {
    epow *= eps;
    const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    const double t = sgn * zeta(static_cast<double>(k)) * epow / k;
    L_over_eps -= t;
    if (std::fabs(t) < 1e-18 * (1.0 + std::fabs(L_over_eps))) break;
  }
  double e2 = eps;  // eps^{2k-1}
  for (int k = 1; k <= 15; ++k) {
    const double t = zeta(2.0 * k) * e2 / k;
    L_over_eps += t;
    if (std::fabs(t) < 1e-18 * (1.0 + std::fabs(L_over_eps))) break;
    e2 *= eps * eps;
  }
  double harmonic_part = 0.0;
  for (long i = 1; i <= k0; ++i) {
    const double di = static_cast<double>(i);
    harmonic_part += (eps == 0.0) ? 1.0 / di : std::log1p(eps / di) / eps;
  }
  L_over_eps -= harmonic_part;

  double factor;  // (1 − e^{L}) / eps
  if (eps == 0.0) {
    factor = -L_over_eps;
  } else {
    factor = -std::expm1(eps * L_over_eps) / eps;
  }
  double lead = 1.0;  // (−x)^{k0} / k0!
  for (long i = 1; i <= k0; ++i) lead *= -x / static_cast<double>(i);
  return lead * factor;
}

constexpr double kPoleWindow = 0.1;

}  // namespace

double gamma(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    std::ostringstream os;
    os.precision(17);
    os << "gamma(" << s << "): argument must be > 0";
    throw DomainError(os.str());
  }
  return std::tgamma(s);
}

double gamma_lower(double s, double x, const Tolerances& tol) {
  check_gamma_args(s, x, "gamma_lower");
  if (x == 0.0) return 0.0;
  int terms = 0;
  if (x < s + 1.0) {
    return std::exp(s * std::log(x) - x) * lower_series(s, x, tol, terms);
  }
  return gamma(s) - std::exp(s * std::log(x) - x) * upper_cf(s, x, tol, terms);
}

EvalResult gamma_upper_eval(double s, double x, const Tolerances& tol) {
  check_gamma_args(s, x, "gamma_upper");
  const double full = gamma(s);
  if (x == 0.0) return {full, full * 4.0 * kEps};
  int terms = 0;
  double value;
  if (x < s + 1.0) {
    const double low = std::exp(s * std::log(x) - x) * lower_series(s, x, tol, terms);
    value = full - low;
    return {value, (std::fabs(full) + std::fabs(low)) * (terms + 4) * kEps};
  }
  value = std::exp(s * std::log(x) - x) * upper_cf(s, x, tol, terms);
  return {value, std::fabs(value) * (terms + 4) * kEps};
}

double gamma_upper(double s, double x, const Tolerances& tol) {
  return gamma_upper_eval(s, x, tol).value;
}

EvalResult expint_any_order(double m, double x, const Tolerances& tol) {
  if (!std::isfinite(m) || !(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError(fmt("expint", m, x) + ": invalid argument");
  }
  if (x == 0.0) {
    if (m > 1.0) return {1.0 / (m - 1.0), kEps / (m - 1.0)};
    throw DomainError(fmt("expint", m, x) + ": x = 0 requires m > 1");
  }
  int terms = 0;
  if (x >= 1.0) {
    const double v = std::exp(-x) * expint_cf(m, x, tol, terms);
    return {v, std::fabs(v) * (terms + 4) * kEps};
  }
  const double nearest = std::round(m);
  const double eps = m - nearest;
  double head;
  long skip;
  if (nearest >= 1.0 && std::fabs(eps) < kPoleWindow) {
    const long n = static_cast<long>(nearest);
    head = expint_pole_pair(n, eps, x);
    skip = n - 1;
  } else {
    // Γ(1−m) with 1−m > 0 away from poles, or negative non-integer 1−m.
    head = std::pow(x, m - 1.0) * std::tgamma(1.0 - m);
    skip = -1;
  }
  const double tail = expint_power_sum(m, x, skip, tol, terms);
  const double v = head - tail;
  const double scale = std::fabs(head) + std::fabs(tail);
  return {v, scale * (terms + 16) * kEps};
}

EvalResult expint_eval(double m, double x, const Tolerances& tol) {
  if (!(m > 0.0)) throw DomainError(fmt("expint", m, x) + ": order must be > 0");
  if (!(x >= 0.0)) throw DomainError(fmt("expint", m, x) + ": x must be >= 0");
  return expint_any_order(m, x, tol);
}

double expint(double m, double x, const Tolerances& tol) { return expint_eval(m, x, tol).value; }

EvalResult hyp2f1_eval(double a, double b, double c, double x, const Tolerances& tol) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || is_nonpositive_integer(c)) {
    throw DomainError("hyp2f1: c must not be a non-positive integer");
  }
  if (!(x <= 0.0)) throw DomainError("hyp2f1: x must be <= 0");
  if (x == 0.0) return {1.0, 0.0};
  if (b < a) std::swap(a, b);

  // Pfaff: ₂F₁(a,b;c;x) = (1−x)^{−a} ₂F₁(a, c−b; c; x/(x−1)).
  const double z = x / (x - 1.0);
  const double bb = c - b;
  double term = 1.0;
  double sum = 1.0;
  double abs_sum = 1.0;
  int j = 0;
  for (; j < tol.max_terms; ++j) {
    const double ratio = (a + j) * (bb + j) / ((c + j) * (j + 1.0)) * z;
    term *= ratio;
    sum += term;
    abs_sum += std::fabs(term);
    if (term == 0.0) break;
    if (std::fabs(ratio) < 1.0 && std::fabs(term) <= tol.rel * std::fabs(sum)) break;
  }
  if (j >= tol.max_terms) {
    std::ostringstream os;
    os.precision(17);
    os << "hyp2f1(" << a << ", " << b << ", " << c << ", " << x << "): series after Pfaff map z="
       << z << " not converged in " << tol.max_terms << " terms, last term " << term
       << ", partial sum " << sum;
    throw ConvergenceError(os.str());
  }
  const double pref = std::pow(1.0 - x, -a);
  const double tail = std::fabs(term) * z / (1.0 - z);
  const double v = pref * sum;
  return {v, std::fabs(pref) * (tail + abs_sum * (j + 4) * kEps)};
}

double hyp2f1(double a, double b, double c, double x, const Tolerances& tol) {
  return hyp2f1_eval(a, b, c, x, tol).value;
}

double zeta(double s) {
  if (!(s > 0.0) || s == 1.0 || !std::isfinite(s)) {
    std::ostringstream os;
    os.precision(17);
    os << "zeta(" << s << "): requires s > 0 and s != 1";
    throw DomainError(os.str());
  }
  constexpr int N = 20;
  // B_2, B_4, ..., B_12 divided by (2j)!.
  static constexpr double kB[6] = {
      1.0 / 6.0 / 2.0,
      -1.0 / 30.0 / 24.0,
      1.0 / 42.0 / 720.0,
      -1.0 / 30.0 / 40320.0,
      5.0 / 66.0 / 3628800.0,
      -691.0 / 2730.0 / 479001600.0,
  };
  double sum = 0.0;
  for (int k = N - 1; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
  const double Nd = N;
  const double n_s = std::pow(Nd, -s);
  sum += 0.5 * n_s + Nd * n_s / (s - 1.0);
  double rising = s;        // s (s+1) ... (s+2j−2)
  double npow = n_s / Nd;   // N^{−s−2j+1}
  for (int j = 0; j < 6; ++j) {
    sum += kB[j] * rising * npow;
    rising *= (s + 2 * j + 1) * (s + 2 * j + 2);
    npow /= Nd * Nd;
  }
  return sum;
}

PochhammerResult pochhammer_checked(double q, std::int64_t j) {
  if (j < 0) throw DomainError("pochhammer: j must be >= 0");
  double v = 1.0;
  for (std::int64_t i = 0; i < j; ++i) {
    v *= q + static_cast<double>(i);
    if (v == 0.0) return {0.0, false};
    if (std::isinf(v)) return {v, true};
  }
  return {v, false};
}

double pochhammer(double q, std::int64_t j) { return pochhammer_checked(q, j).value; }

double digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream os;
    os.precision(17);
    os << "digamma(" << x << "): argument must be > 0";
    throw DomainError(os.str());
  }
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double r = 1.0 / (x * x);
  // Bernoulli tail: B_{2k}/(2k) for k = 1..7.
  const double series =
      r * (1.0 / 12.0 -
           r * (1.0 / 120.0 -
                r * (1.0 / 252.0 -
                     r * (1.0 / 240.0 - r * (1.0 / 132.0 - r * (691.0 / 32760.0 - r / 12.0))))));
  return acc + std::log(x) - 0.5 / x - series;
}

}  // namespace tscarma::specfun
