#include "tscarma/moments.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "tscarma/errors.hpp"
#include "tscarma/quadrature.hpp"
#include "tscarma/specfun.hpp"

namespace tscarma {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kQuadTol = 1e-12;

// Contributions of one half-line. For the minus side the first moments are
// magnitudes; the caller applies the sign.
struct SideMoments {
  double m1_n = 0.0;
  double m2_n = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  double sig2 = 0.0;
  double d1 = 0.0;
};

void check_n(std::int64_t n) {
  if (n < 1) throw DomainError("truncated moments: n must be >= 1");
}

// Side with q(s) = e^{−λ^p s}, i.e. scaled density δ e^{−(λr)^p}.
SideMoments exponential_side(double alpha, double p, double delta, double lambda, double c,
                             double zs) {
  using namespace specfun;
  const double y = std::pow(lambda * zs, p);
  auto low = [&](double s) { return gamma_lower(s, y); };
  auto E = [&](double m) { return expint_any_order(m, y).value; };

  const double tail0 = delta * std::pow(zs, -alpha) / p * E(1.0 + alpha / p);  // M((z*, ∞))
  SideMoments s;
  s.m1_n = c * delta / (1.0 + alpha) * low(1.0 / p) / (p * lambda) +
           delta * std::pow(zs, 1.0 - alpha) / p * E(1.0 + (alpha - 1.0) / p) -
           zs * alpha / (1.0 + alpha) * tail0;
  s.m2_n = 2.0 * c * delta / (2.0 + alpha) * low(2.0 / p) / (p * lambda * lambda) +
           delta * std::pow(zs, 2.0 - alpha) / p * E(1.0 + (alpha - 2.0) / p) -
           zs * zs * alpha / (2.0 + alpha) * tail0;
  s.m2 = delta * std::pow(lambda, alpha - 2.0) * gamma((2.0 - alpha) / p) / p;
  s.sig2 = delta * low((2.0 - alpha) / p) / (p * std::pow(lambda, 2.0 - alpha)) -
           2.0 * c * delta / (2.0 + alpha) * low(2.0 / p) / (p * lambda * lambda) +
           zs * zs * alpha / (2.0 + alpha) * tail0;
  if (alpha < 1.0) {
    s.m1 = delta * std::pow(lambda, alpha - 1.0) * gamma((1.0 - alpha) / p) / p;
    s.d1 = delta * low((1.0 - alpha) / p) / (p * std::pow(lambda, 1.0 - alpha)) -
           c * delta / (1.0 + alpha) * low(1.0 / p) / (p * lambda) +
           zs * alpha / (1.0 + alpha) * tail0;
  } else {
    s.m1 = kNaN;
    s.d1 = kNaN;
  }
  return s;
}

// ∫_0^∞ r^{k−1−α} r^{1+α} m(r) dr by quadrature, split at 1.
double full_moment_quadrature(const TemperingModel& model, Side side, int k) {
  const double a = model.alpha();
  auto f = [&](double r) { return model.scaled_density(side, r) * std::pow(r, k - 1.0 - a); };
  return quad::finite_singular(f, 0.0, 1.0, kQuadTol).value + quad::tail(f, 1.0, kQuadTol).value;
}

void cross_check(const char* family, const char* what, double closed, double numeric) {
  if (!std::isfinite(closed) && !std::isfinite(numeric)) return;
  if (std::fabs(closed - numeric) <= 1e-8 * std::fabs(numeric)) return;
  std::ostringstream os;
  os.precision(17);
  os << family << ": closed-form " << what << " = " << closed << " disagrees with quadrature "
     << numeric;
  throw ConsistencyError(os.str());
}

void cross_check_full(const TemperingModel& model, const TruncatedMoments& tm) {
  const bool two_sided = !model.is_subordinator();
  double m2 = full_moment_quadrature(model, Side::plus, 2);
  if (two_sided) m2 += full_moment_quadrature(model, Side::minus, 2);
  cross_check(model.name().c_str(), "second moment", tm.m2, m2);
  if (model.alpha() < 1.0) {
    double m1 = full_moment_quadrature(model, Side::plus, 1);
    if (two_sided) m1 -= full_moment_quadrature(model, Side::minus, 1);
    if (model.is_symmetric()) {
      if (tm.m1 != 0.0) throw ConsistencyError(model.name() + ": symmetric model with non-zero mean");
    } else {
      cross_check(model.name().c_str(), "first moment", tm.m1, m1);
    }
  }
}

SideMoments numeric_side(const TemperingModel& model, Side side, double c, double zs) {
  const double a = model.alpha();
  auto sd = [&](double r) { return model.scaled_density(side, r); };
  SideMoments s;
  const double tail0 = quad::tail([&](double r) { return sd(r) * std::pow(r, -1.0 - a); }, zs, kQuadTol).value;

  auto inner = [&](auto&& f) { return quad::finite_singular(f, 0.0, zs, kQuadTol).value; };
  auto outer = [&](auto&& f) { return quad::tail(f, zs, kQuadTol).value; };

  for (int k = 1; k <= 2; ++k) {
    const double w = std::pow(zs, k) * a / (k + a);
    const double below = k * c / (k + a) * inner([&](double r) { return sd(r) * std::pow(r, k - 1.0); });
    const double above = outer([&](double r) { return sd(r) * std::pow(r, -1.0 - a) * (std::pow(r, k) - w); });
    (k == 1 ? s.m1_n : s.m2_n) = below + above;
  }
  s.m2 = inner([&](double r) { return sd(r) * std::pow(r, 1.0 - a); }) +
         outer([&](double r) { return sd(r) * std::pow(r, 1.0 - a); });
  s.sig2 = inner([&](double r) { return sd(r) * (std::pow(r, 1.0 - a) - 2.0 * c * r / (2.0 + a)); }) +
           zs * zs * a / (2.0 + a) * tail0;
  if (a < 1.0) {
    s.m1 = inner([&](double r) { return sd(r) * std::pow(r, -a); }) +
           outer([&](double r) { return sd(r) * std::pow(r, -a); });
    s.d1 = inner([&](double r) { return sd(r) * (std::pow(r, -a) - c / (1.0 + a)); }) +
           zs * a / (1.0 + a) * tail0;
  } else {
    s.m1 = kNaN;
    s.d1 = kNaN;
  }
  return s;
}

TruncatedMoments combine(const SideMoments& plus, const SideMoments* minus, bool symmetric,
                         double alpha, std::int64_t n) {
  TruncatedMoments tm;
  tm.n = n;
  if (!minus) {
    tm.m1_n = plus.m1_n;
    tm.m2_n = plus.m2_n;
    tm.m1 = plus.m1;
    tm.m2 = plus.m2;
    tm.sigma_n_sq = plus.sig2;
    tm.m1_discarded = plus.d1;
    return tm;
  }
  tm.m1_n = plus.m1_n - minus->m1_n;
  tm.m2_n = plus.m2_n + minus->m2_n;
  tm.m2 = plus.m2 + minus->m2;
  tm.sigma_n_sq = plus.sig2 + minus->sig2;
  if (symmetric) {
    tm.m1_n = 0.0;
    tm.m1 = 0.0;
    tm.m1_discarded = 0.0;
  } else if (alpha < 1.0) {
    tm.m1 = plus.m1 - minus->m1;
    tm.m1_discarded = plus.d1 - minus->d1;
  } else {
    tm.m1 = kNaN;
    tm.m1_discarded = kNaN;
    tm.m1_diverges = true;
  }
  return tm;
}

// ---- generalized gamma tempering: f(r) = (1 + r^p/λ)^{−β/p} ---------------

class GammaTemperedIntegrals {
 public:
  GammaTemperedIntegrals(double p, double beta, double lambda, double zs)
      : p_(p), beta_(beta), lambda_(lambda), zs_(zs), a_(beta / p),
        rho_(std::pow(zs, p) / lambda) {}

  // ∫_0^∞ r^{s−1} f(r) dr, analytically continued to s < 0.
  double full(double s) const {
    const double t = s / p_;
    return std::pow(lambda_, t) / p_ * std::tgamma(t) *
           std::exp(std::lgamma(a_ - t) - std::lgamma(a_));
  }

  // ∫_0^{z*} r^{s−1} f(r) dr, s > 0.
  double lower(double s) const {
    if (rho_ <= 2.0) {
      return std::pow(zs_, s) / s * specfun::hyp2f1(a_, s / p_, 1.0 + s / p_, -rho_);
    }
    return full(s) - upper_inverted(s);
  }

  // ∫_{z*}^∞ r^{s−1} f(r) dr, s < β.
  double upper(double s) const {
    if (rho_ > 0.5) return upper_inverted(s);
    if (s > 0.0) return full(s) - lower(s);
    return upper_negative(s);
  }

 private:
  double upper_inverted(double s) const {
    const double e = (beta_ - s) / p_;
    return std::exp(a_ * std::log(lambda_) + (s - beta_) * std::log(zs_)) / (beta_ - s) *
           specfun::hyp2f1(a_, e, 1.0 + e, -1.0 / rho_);
  }

  // Term-wise continuation of the lower integral for s < 0 and small ρ.
  double upper_negative(double s) const {
    const double t = -s / p_;
    const double j0d = std::round(t);
    const bool integer = std::fabs(t - j0d) < 1e-9;
    const long j0 = integer ? static_cast<long>(j0d) : -1;
    double sum = 0.0;
    double coef = 1.0;  // (a)_j (−ρ)^j / j!
    for (long j = 0; j < 100000; ++j) {
      if (j > 0) coef *= (a_ + j - 1.0) * (-rho_) / static_cast<double>(j);
      if (j == j0) continue;
      const double term = coef / (s + p_ * j);
      sum += term;
      if (j > j0 + 2 && j > 2 && std::fabs(term) <= 1e-17 * std::fabs(sum)) break;
    }
    const double head = -std::pow(zs_, s) * sum;
    if (!integer) return full(s) + head;
    double a_j0 = 1.0;  // λ^{−j0} (−1)^{j0} (a)_{j0} / j0!
    for (long i = 0; i < j0; ++i) a_j0 *= -(a_ + i) / (lambda_ * (i + 1.0));
    const double bracket = (std::log(lambda_) + specfun::digamma(j0 + 1.0) -
                            specfun::digamma(a_ + j0)) / p_ -
                           std::log(zs_);
    return head + a_j0 * bracket;
  }

  double p_, beta_, lambda_, zs_, a_, rho_;
};

}  // namespace

double clamp_point(double alpha, double sigma_mass, double n) {
  return std::pow(sigma_mass / (n * alpha), 1.0 / alpha);
}

TruncatedMoments trunc_moments_ptss(const PTSSParams& params, std::int64_t n) {
  validate_params(params);
  check_n(n);
  const double a = params.alpha;
  const double c = n * a / params.delta;
  const double zs = clamp_point(a, params.delta, static_cast<double>(n));
  const auto side = exponential_side(a, params.p, params.delta, params.lambda, c, zs);
  TruncatedMoments tm = combine(side, nullptr, false, a, n);
  cross_check_full(make_ptss(params), tm);
  return tm;
}

TruncatedMoments trunc_moments_pcts(const PCTSParams& params, std::int64_t n) {
  validate_params(params);
  check_n(n);
  const double a = params.alpha;
  const double mass = params.delta_plus + params.delta_minus;
  const double c = n * a / mass;
  const double zs = clamp_point(a, mass, static_cast<double>(n));
  const auto plus = exponential_side(a, params.p, params.delta_plus, params.lambda_plus, c, zs);
  const auto minus = exponential_side(a, params.p, params.delta_minus, params.lambda_minus, c, zs);
  const TemperingModel model = make_pcts(params);
  TruncatedMoments tm = combine(plus, &minus, model.is_symmetric(), a, n);
  cross_check_full(model, tm);
  return tm;
}

TruncatedMoments trunc_moments_pgts(const PGTSParams& params, std::int64_t n) {
  validate_params(params);
  check_n(n);
  const double a = params.alpha;
  const double beta = params.beta;
  if (beta == 1.0 || beta == 2.0) {
    throw DomainError("pgts: no closed form for beta in {1, 2}; use the quadrature route");
  }
  if (a + beta <= 2.0) {
    throw DomainError("pgts: closed form needs alpha + beta > 2; use the quadrature route");
  }
  const double c = n * a;  // ||σ|| = 1
  const double zs = clamp_point(a, 1.0, static_cast<double>(n));
  const GammaTemperedIntegrals g(params.p, beta, params.lambda, zs);

  SideMoments s;
  const double tail0 = g.upper(-a);
  s.m1_n = c / (1.0 + a) * g.lower(1.0) + g.upper(1.0 - a) - zs * a / (1.0 + a) * tail0;
  s.m2_n = 2.0 * c / (2.0 + a) * g.lower(2.0) + g.upper(2.0 - a) - zs * zs * a / (2.0 + a) * tail0;
  s.m1 = g.full(1.0 - a);
  s.m2 = g.full(2.0 - a);
  s.sig2 = g.lower(2.0 - a) - 2.0 * c / (2.0 + a) * g.lower(2.0) + zs * zs * a / (2.0 + a) * tail0;
  s.d1 = g.lower(1.0 - a) - c / (1.0 + a) * g.lower(1.0) + zs * a / (1.0 + a) * tail0;
  TruncatedMoments tm = combine(s, nullptr, false, a, n);
  cross_check_full(make_pgts(params), tm);
  return tm;
}

TruncatedMoments trunc_moments_numeric(const TemperingModel& model, std::int64_t n) {
  check_n(n);
  const double a = model.alpha();
  const double c = n * a / model.sigma_mass();
  const double zs = clamp_point(a, model.sigma_mass(), static_cast<double>(n));
  const auto plus = numeric_side(model, Side::plus, c, zs);
  if (model.is_subordinator()) return combine(plus, nullptr, false, a, n);
  const auto minus = numeric_side(model, Side::minus, c, zs);
  return combine(plus, &minus, model.is_symmetric(), a, n);
}

TruncatedMoments truncated_moments(const TemperingModel& model, std::int64_t n) {
  const auto& fam = model.family();
  if (const auto* q = std::get_if<PTSSParams>(&fam)) return trunc_moments_ptss(*q, n);
  if (const auto* q = std::get_if<PCTSParams>(&fam)) return trunc_moments_pcts(*q, n);
  if (const auto* q = std::get_if<PGTSParams>(&fam)) {
    if (q->beta != 1.0 && q->beta != 2.0 && q->alpha + q->beta > 2.0) return trunc_moments_pgts(*q, n);
  }
  TruncatedMoments tm = trunc_moments_numeric(model, n);
  tm.used_quadrature_fallback = true;
  return tm;
}

}  // namespace tscarma
