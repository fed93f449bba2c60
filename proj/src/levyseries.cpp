#include "tscarma/levyseries.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "tscarma/csv.hpp"
#include "tscarma/errors.hpp"
#include "tscarma/moments.hpp"
#include "tscarma/specfun.hpp"

namespace tscarma {

namespace {

constexpr double kNegligibleJump = 1e-300;

// x^e with cheap paths for the exponents that the standard parameter sets hit.
inline double power(double x, double e) {
  if (e == 1.0) return x;
  if (e == 2.0) return x * x;
  if (e == 0.5) return std::sqrt(x);
  if (e == -1.0) return 1.0 / x;
  if (e == -2.0) return 1.0 / (x * x);
  return std::pow(x, e);
}

bool needs_centering(const TemperingModel& model) {
  return model.alpha() >= 1.0 && !model.is_symmetric();
}

}  // namespace

void validate_series_config(const SeriesConfig& c) {
  if (!(c.T > 0.0) || !std::isfinite(c.T)) throw ValidationError("series: T must be > 0");
  if (!(c.kappa >= 0.0) || !std::isfinite(c.kappa)) throw ValidationError("series: kappa must be >= 0");
  if (c.n < 1) throw ValidationError("series: n must be >= 1");
}

double h_value(const TemperingModel& model, double gamma_scaled, double e, double u, double v) {
  if (!(gamma_scaled > 0.0) || !(e > 0.0) || !(u > 0.0 && u <= 1.0) || v == 0.0 ||
      !std::isfinite(gamma_scaled) || !std::isfinite(e) || !std::isfinite(v)) {
    throw DomainError("h_value: arguments out of range");
  }
  const double a = model.alpha();
  const double p = model.p();
  const double first = std::pow(gamma_scaled, -1.0 / a);
  const double second = std::pow(e, 1.0 / p) * std::pow(u, 1.0 / a) / std::pow(std::fabs(v), 1.0 / p);
  return std::copysign(std::min(first, second), v);
}

double rosinski_wlogw(const TemperingModel& model) {
  if (!model.v_law()) {
    throw UnsupportedError("rosinski_wlogw: model '" + model.name() + "' has no law of V");
  }
  const VLaw& law = *model.v_law();
  const double p = model.p();
  double acc = 0.0;  // E[sign(V) ln|V|]
  if (law.kind == VLaw::Kind::gamma) {
    acc = specfun::digamma(law.shape) - std::log(law.rate);
  } else {
    for (const auto& [value, prob] : law.atoms) {
      acc += (value > 0.0 ? 1.0 : -1.0) * prob * std::log(std::fabs(value));
    }
  }
  return -model.sigma_mass() * acc / p;
}

double centering_constant(const TemperingModel& model, double horizon) {
  const double a = model.alpha();
  const double p = model.p();
  if (a < 1.0) throw DomainError("centering_constant: only defined for alpha >= 1");
  const auto rf = rosinski_functionals(model);
  const double mass = model.sigma_mass();
  if (a == 1.0) {
    return ((specfun::euler_gamma + p) / p + std::log(mass * horizon)) * rf.x1 - rosinski_wlogw(model);
  }
  if (1.0 + p == a) throw DomainError("centering_constant: requires 1 + p != alpha");
  return std::pow(a, -1.0 / a) * specfun::zeta(1.0 / a) * std::pow(mass * horizon, 1.0 / a) /
             horizon * rf.x0 +
         std::tgamma((1.0 + p - a) / p) * rf.x1 / (a - 1.0);
}

JumpSkeleton sample_skeleton(const TemperingModel& model, const SeriesConfig& config) {
  RngStream rng(config.seed, config.stream_index);
  return sample_skeleton(model, config, rng);
}

JumpSkeleton sample_skeleton(const TemperingModel& model, const SeriesConfig& config, RngStream& rng) {
  validate_series_config(config);
  const bool centered = needs_centering(model);
  if (centered && !config.allow_case_ii) {
    throw UnsupportedError(
        "sample_skeleton: alpha >= 1 with an asymmetric tempering law needs allow_case_ii");
  }
  const double a = model.alpha();
  const double inv_a = 1.0 / a;
  const double inv_p = 1.0 / model.p();
  const double window = config.T + config.kappa;
  const double upper = a * static_cast<double>(config.n) / model.sigma_mass();

  JumpSkeleton sk;
  sk.config = config;
  sk.model_name = model.name();

  std::poisson_distribution<std::int64_t> poisson(window * static_cast<double>(config.n));
  const std::int64_t z = poisson(rng);
  sk.count = z;

  std::vector<double> lambdas(static_cast<std::size_t>(z));
  for (auto& l : lambdas) l = upper * rng.uniform();
  std::sort(lambdas.begin(), lambdas.end());
  sk.lambda_min = z > 0 ? lambdas.front() : 0.0;

  sk.jumps.reserve(lambdas.size());
  for (std::int64_t j = 0; j < z; ++j) {
    const double t = rng.uniform(-config.kappa, config.T);
    const double e = rng.exponential();
    const double u = rng.uniform();
    const double v = model.sample_v(rng);
    const double first = power(lambdas[j], -inv_a);
    const double second = power(e, inv_p) * power(u, inv_a) / power(std::fabs(v), inv_p);
    const double size = std::copysign(std::min(first, second), v);
    if (std::fabs(size) < kNegligibleJump) continue;
    sk.jumps.push_back({t, size});
  }
  std::sort(sk.jumps.begin(), sk.jumps.end(),
            [](const Jump& x, const Jump& y) { return x.time < y.time; });

  if (centered) {
    const double x0 = rosinski_functionals(model).x0;
    const double base = a / (model.sigma_mass() * window);
    double c = 0.0;
    for (std::int64_t j = 1; j <= z; ++j) c += std::pow(base * static_cast<double>(j), -inv_a);
    sk.drift = centering_constant(model, window) - c * x0 / window;
  }
  return sk;
}

double truncated_tail(const TemperingModel& model, std::int64_t n, double x, Side side) {
  if (n < 1) throw DomainError("truncated_tail: n must be >= 1");
  if (!(x > 0.0)) throw DomainError("truncated_tail: x must be > 0");
  const double w = std::min(static_cast<double>(n) * model.alpha() * std::pow(x, model.alpha()) /
                                model.sigma_mass(),
                            1.0);
  return w * levy_tail(model, x, side);
}

double truncated_density(const TemperingModel& model, std::int64_t n, double z) {
  if (n < 1) throw DomainError("truncated_density: n must be >= 1");
  const double m = model.levy_density(z);
  const double a = model.alpha();
  const double x = std::fabs(z);
  const double zs = clamp_point(a, model.sigma_mass(), static_cast<double>(n));
  if (x >= zs) return m;
  const double c = static_cast<double>(n) * a / model.sigma_mass();
  const double tail = levy_tail(model, x, z > 0.0 ? Side::plus : Side::minus);
  return c * std::pow(x, a - 1.0) * (x * m - a * tail);
}

void write_skeleton_csv(std::ostream& os, const JumpSkeleton& skeleton) {
  os << "time,size\n";
  for (const auto& j : skeleton.jumps) csv::write_row(os, {j.time, j.size}, 17);
}

}  // namespace tscarma
