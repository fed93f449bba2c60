#include "tscarma/tempering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "tscarma/errors.hpp"
#include "tscarma/quadrature.hpp"

namespace tscarma {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

bool positive(double x) { return std::isfinite(x) && x > 0.0; }

void validate_stability(double alpha, double p, double alpha_max, const char* family) {
  std::ostringstream os;
  os << family << ": alpha must lie in (0, " << alpha_max << "), got " << alpha;
  require(std::isfinite(alpha) && alpha > 0.0 && alpha < alpha_max, os.str());
  require(positive(p), std::string(family) + ": p must be > 0");
}

}  // namespace

void validate_params(const PTSSParams& q) {
  validate_stability(q.alpha, q.p, 1.0, "ptss");
  require(positive(q.delta), "ptss: delta must be > 0");
  require(positive(q.lambda), "ptss: lambda must be > 0");
}

void validate_params(const PCTSParams& q) {
  validate_stability(q.alpha, q.p, 2.0, "pcts");
  require(positive(q.delta_plus), "pcts: delta_plus must be > 0");
  require(positive(q.delta_minus), "pcts: delta_minus must be > 0");
  require(positive(q.lambda_plus), "pcts: lambda_plus must be > 0");
  require(positive(q.lambda_minus), "pcts: lambda_minus must be > 0");
}

void validate_params(const PGTSParams& q) {
  validate_stability(q.alpha, q.p, 1.0, "pgts");
  require(positive(q.beta), "pgts: beta must be > 0");
  require(positive(q.lambda), "pgts: lambda must be > 0");
}

TemperingModel make_ptss(const PTSSParams& params) {
  validate_params(params);
  TemperingModel m;
  m.name_ = "ptss";
  m.stab_ = {params.alpha, params.p};
  m.sigma_mass_ = params.delta;
  m.subordinator_ = true;
  m.symmetric_ = false;
  m.family_ = params;
  VLaw law;
  law.kind = VLaw::Kind::atoms;
  law.atoms = {{std::pow(params.lambda, params.p), 1.0}};
  m.v_law_ = law;
  return m;
}

TemperingModel make_pcts(const PCTSParams& params) {
  validate_params(params);
  TemperingModel m;
  m.name_ = "pcts";
  m.stab_ = {params.alpha, params.p};
  m.sigma_mass_ = params.delta_plus + params.delta_minus;
  m.subordinator_ = false;
  m.symmetric_ =
      params.delta_plus == params.delta_minus && params.lambda_plus == params.lambda_minus;
  m.family_ = params;
  VLaw law;
  law.kind = VLaw::Kind::atoms;
  const double w_plus = params.delta_plus / m.sigma_mass_;
  law.atoms = {{std::pow(params.lambda_plus, params.p), w_plus},
               {-std::pow(params.lambda_minus, params.p), 1.0 - w_plus}};
  m.v_law_ = law;
  return m;
}

TemperingModel make_pgts(const PGTSParams& params) {
  validate_params(params);
  TemperingModel m;
  m.name_ = "pgts";
  m.stab_ = {params.alpha, params.p};
  m.sigma_mass_ = 1.0;
  m.subordinator_ = true;
  m.symmetric_ = false;
  m.family_ = params;
  VLaw law;
  law.kind = VLaw::Kind::gamma;
  law.shape = params.beta / params.p;
  law.rate = params.lambda;
  m.v_law_ = law;
  return m;
}

TemperingModel make_custom(CustomModelSpec spec) {
  const double alpha = spec.stability.alpha;
  const double p = spec.stability.p;
  validate_stability(alpha, p, 2.0, "custom");
  require(positive(spec.sigma_mass), "custom: sigma_mass must be > 0");
  require(static_cast<bool>(spec.levy_density), "custom: levy_density is required");
  require(static_cast<bool>(spec.v_sampler), "custom: v_sampler is required");
  if (spec.is_subordinator) {
    require(alpha < 1.0, "custom: a subordinator needs alpha < 1");
  }
  for (int i = 0; i <= 200; ++i) {
    const double r = std::pow(10.0, -4.0 + 6.0 * i / 200.0);
    const double up = spec.levy_density(r);
    const double down = spec.levy_density(-r);
    require(std::isfinite(up) && std::isfinite(down) && up >= 0.0 && down >= 0.0,
            "custom: levy_density must be finite and non-negative");
    if (spec.is_subordinator) require(down == 0.0, "custom: subordinator density must vanish for z < 0");
    if (spec.is_symmetric) {
      require(std::fabs(up - down) <= 1e-12 * std::max(up, down),
              "custom: density flagged symmetric but m(-z) != m(z)");
    }
  }
  TemperingModel m;
  m.name_ = spec.name;
  m.stab_ = spec.stability;
  m.sigma_mass_ = spec.sigma_mass;
  m.subordinator_ = spec.is_subordinator;
  m.symmetric_ = spec.is_symmetric;
  m.v_law_ = spec.v_law;
  m.custom_density_ = std::move(spec.levy_density);
  m.custom_sampler_ = std::move(spec.v_sampler);
  return m;
}

double TemperingModel::scaled_density(Side side, double r) const {
  const double a = stab_.alpha;
  const double p = stab_.p;
  if (const auto* q = std::get_if<PTSSParams>(&family_)) {
    if (side == Side::minus) return 0.0;
    return q->delta * std::exp(-std::pow(q->lambda * r, p));
  }
  if (const auto* q = std::get_if<PCTSParams>(&family_)) {
    if (side == Side::plus) return q->delta_plus * std::exp(-std::pow(q->lambda_plus * r, p));
    return q->delta_minus * std::exp(-std::pow(q->lambda_minus * r, p));
  }
  if (const auto* q = std::get_if<PGTSParams>(&family_)) {
    if (side == Side::minus) return 0.0;
    return std::pow(1.0 + std::pow(r, p) / q->lambda, -q->beta / p);
  }
  const double z = side == Side::plus ? r : -r;
  return custom_density_(z) * std::pow(r, 1.0 + a);
}

double TemperingModel::levy_density(double z) const {
  if (z == 0.0 || !std::isfinite(z)) throw DomainError("levy_density: z must be finite and non-zero");
  if (std::holds_alternative<std::monostate>(family_)) return custom_density_(z);
  const double r = std::fabs(z);
  return scaled_density(z > 0.0 ? Side::plus : Side::minus, r) * std::pow(r, -1.0 - stab_.alpha);
}

double TemperingModel::sample_v(RngStream& rng) const {
  if (custom_sampler_) return custom_sampler_(rng);
  const VLaw& law = *v_law_;
  if (law.kind == VLaw::Kind::gamma) {
    std::gamma_distribution<double> g(law.shape, 1.0 / law.rate);
    double v = g(rng);
    while (v == 0.0) v = g(rng);
    return v;
  }
  if (law.atoms.size() == 1) return law.atoms.front().first;
  const double u = rng.uniform();
  double acc = 0.0;
  for (const auto& [value, prob] : law.atoms) {
    acc += prob;
    if (u < acc) return value;
  }
  return law.atoms.back().first;
}

double levy_tail(const TemperingModel& model, double x, Side side) {
  if (!(x > 0.0)) throw DomainError("levy_tail: x must be > 0");
  if (std::isinf(x)) return 0.0;
  if (model.is_subordinator() && side == Side::minus) return 0.0;
  const double a = model.alpha();
  auto f = [&](double r) { return model.scaled_density(side, r) * std::pow(r, -1.0 - a); };
  return quad::tail(f, x, 1e-11).value;
}

RosinskiFunctionals rosinski_functionals(const TemperingModel& model) {
  if (!model.v_law()) {
    throw UnsupportedError("rosinski_functionals: model '" + model.name() +
                           "' has no description of the law of V");
  }
  const VLaw& law = *model.v_law();
  const double r = (model.alpha() - 1.0) / model.p();
  RosinskiFunctionals out;
  if (law.kind == VLaw::Kind::gamma) {
    out.x0 = 1.0;
    if (law.shape + r <= 0.0) {
      out.x1 = std::numeric_limits<double>::infinity();
    } else {
      out.x1 = model.sigma_mass() *
               std::exp(std::lgamma(law.shape + r) - std::lgamma(law.shape) - r * std::log(law.rate));
    }
    return out;
  }
  for (const auto& [value, prob] : law.atoms) {
    const double s = value > 0.0 ? 1.0 : -1.0;
    out.x0 += s * prob;
    out.x1 += s * prob * std::pow(std::fabs(value), r);
  }
  out.x1 *= model.sigma_mass();
  return out;
}

}  // namespace tscarma
