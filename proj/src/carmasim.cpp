#include "tscarma/carmasim.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "tscarma/csv.hpp"
#include "tscarma/errors.hpp"

namespace tscarma {

namespace {

void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw ValidationError("grid must not be empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw ValidationError("grid has a non-finite point");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw ValidationError("grid must be strictly increasing");
  }
}

Eigen::MatrixXd stationary_cov(const CarmaDecomposition& d) {
  const int p = d.order();
  Eigen::MatrixXd c(p, p);
  for (int j = 0; j < p; ++j)
    for (int k = 0; k < p; ++k) c(j, k) = -1.0 / (d.lambdas[j] + d.lambdas[k]);
  return c;
}

Eigen::MatrixXd cholesky(const Eigen::MatrixXd& a) {
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  Eigen::MatrixXd b = a;
  const double jitter = 1e-12 * std::max(1.0, a.diagonal().cwiseAbs().maxCoeff());
  b.diagonal().array() += jitter;
  Eigen::LLT<Eigen::MatrixXd> retry(b);
  if (retry.info() != Eigen::Success) {
    throw LinearAlgebraError("gaussian_carma: covariance factorization failed");
  }
  return retry.matrixL();
}

// Σ_k (−α_k/λ_k) e^{λ_k s}, i.e. ∫_s^∞ g.
double tail_integral(const CarmaDecomposition& d, double s) {
  double v = 0.0;
  for (int k = 0; k < d.order(); ++k) v += -d.residues[k] * std::exp(d.lambdas[k] * s) / d.lambdas[k];
  return v;
}

}  // namespace

const char* scheme_name(Scheme s) { return s == Scheme::general ? "general" : "subordinator"; }

Scheme default_scheme(const TemperingModel& model) {
  return model.is_subordinator() ? Scheme::subordinator : Scheme::general;
}

std::vector<double> jump_response(const CarmaDecomposition& d, const std::vector<Jump>& jumps,
                                  const std::vector<double>& grid) {
  const int p = d.order();
  std::vector<double> state(p, 0.0);
  std::vector<double> out(grid.size(), 0.0);
  double cur = 0.0;
  bool started = false;
  std::size_t idx = 0;
  auto advance = [&](double to) {
    if (started && to != cur) {
      const double dt = to - cur;
      for (int k = 0; k < p; ++k) state[k] *= std::exp(d.lambdas[k] * dt);
    }
    cur = to;
  };
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double g = grid[i];
    while (idx < jumps.size() && jumps[idx].time <= g) {
      advance(jumps[idx].time);
      started = true;
      for (int k = 0; k < p; ++k) state[k] += jumps[idx].size;
      ++idx;
    }
    if (!started) continue;
    advance(g);
    double v = 0.0;
    for (int k = 0; k < p; ++k) v += d.residues[k] * state[k];
    out[i] = v;
  }
  return out;
}

std::vector<double> gaussian_carma(const CarmaDecomposition& d, const std::vector<double>& grid,
                                   RngStream& rng) {
  check_grid(grid);
  const int p = d.order();
  const Eigen::MatrixXd cov = stationary_cov(d);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto draw = [&]() {
    Eigen::VectorXd z(p);
    for (int k = 0; k < p; ++k) z[k] = normal(rng);
    return z;
  };

  Eigen::VectorXd state = cholesky(cov) * draw();
  std::vector<double> out(grid.size());
  Eigen::VectorXd alpha(p);
  for (int k = 0; k < p; ++k) alpha[k] = d.residues[k];
  out[0] = alpha.dot(state);

  double last_dt = -1.0;
  Eigen::MatrixXd chol_innov;
  Eigen::VectorXd decay(p);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double dt = grid[i] - grid[i - 1];
    if (std::fabs(dt - last_dt) > 1e-13 * dt) {
      Eigen::MatrixXd innov(p, p);
      for (int j = 0; j < p; ++j) {
        decay[j] = std::exp(d.lambdas[j] * dt);
        for (int k = 0; k < p; ++k) {
          innov(j, k) = cov(j, k) * -std::expm1((d.lambdas[j] + d.lambdas[k]) * dt);
        }
      }
      chol_innov = cholesky(innov);
      last_dt = dt;
    }
    state = decay.cwiseProduct(state) + chol_innov * draw();
    out[i] = alpha.dot(state);
  }
  return out;
}

PathSimulator::PathSimulator(TemperingModel model, CarmaSpec spec, SeriesConfig config, Scheme scheme,
                             SimulationOptions options)
    : model_(std::move(model)),
      spec_(std::move(spec)),
      config_(config),
      scheme_(scheme),
      options_(options) {
  validate_series_config(config_);
  decomp_ = validate(spec_);
  if (scheme_ == Scheme::subordinator) {
    if (!model_.is_subordinator()) {
      throw ValidationError("subordinator scheme requires a subordinator model");
    }
    kernel_warning_ = !decomp_.nonnegative_kernel;
  } else if (model_.alpha() >= 1.0 && !model_.is_symmetric() && !config_.allow_case_ii) {
    throw UnsupportedError(
        "general scheme: alpha >= 1 with an asymmetric tempering law needs allow_case_ii");
  }
  moments_ = truncated_moments(model_, config_.n);
}

std::vector<double> PathSimulator::simulate_values(const std::vector<double>& grid,
                                                   std::uint64_t stream_index) const {
  check_grid(grid);
  if (grid.front() < 0.0 || grid.back() > config_.T * (1.0 + 1e-12)) {
    throw ValidationError("grid must lie in [0, T]");
  }
  SeriesConfig cfg = config_;
  cfg.stream_index = stream_index;
  RngStream rng(cfg.seed, cfg.stream_index);

  std::vector<double> values(grid.size(), 0.0);
  double drift = 0.0;
  if (options_.include_jumps) {
    const JumpSkeleton sk = sample_skeleton(model_, cfg, rng);
    values = jump_response(decomp_, sk.jumps, grid);
    drift = sk.drift;
  }
  const double kappa = cfg.kappa;

  if (scheme_ == Scheme::subordinator) {
    const double small_mean = moments_.m1_discarded * tail_integral(decomp_, 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      values[i] += small_mean + moments_.m1_n * tail_integral(decomp_, grid[i] + kappa);
    }
    return values;
  }

  const double sigma = options_.sigma_n_override ? *options_.sigma_n_override
                                                 : std::sqrt(std::max(moments_.sigma_n_sq, 0.0));
  if (sigma > 0.0) {
    const auto g = gaussian_carma(decomp_, grid, rng);
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] += sigma * g[i];
  }
  if (drift != 0.0) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double resp = 0.0;
      for (int k = 0; k < decomp_.order(); ++k) {
        resp += decomp_.residues[k] * std::expm1(decomp_.lambdas[k] * (grid[i] + kappa)) /
                decomp_.lambdas[k];
      }
      values[i] += drift * resp;
    }
  }
  if (options_.replace_discarded_by_mean && std::isfinite(moments_.m1_n)) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      values[i] += moments_.m1_n * tail_integral(decomp_, grid[i] + kappa);
    }
  }
  return values;
}

SampledPath PathSimulator::simulate(const std::vector<double>& grid, std::uint64_t stream_index) const {
  SampledPath path;
  path.values = simulate_values(grid, stream_index);
  path.grid = grid;
  path.scheme = scheme_;
  path.config = config_;
  path.config.stream_index = stream_index;
  path.provenance = {model_.name(), spec_, config_.seed, stream_index};
  return path;
}

SampledPath simulate_subordinator_path(const TemperingModel& model, const CarmaSpec& spec,
                                       const SeriesConfig& config, const std::vector<double>& grid) {
  return PathSimulator(model, spec, config, Scheme::subordinator).simulate(grid, config.stream_index);
}

SampledPath simulate_general_path(const TemperingModel& model, const CarmaSpec& spec,
                                  const SeriesConfig& config, const std::vector<double>& grid,
                                  SimulationOptions options) {
  return PathSimulator(model, spec, config, Scheme::general, options).simulate(grid, config.stream_index);
}

StationaryMoments stationary_moments(const TemperingModel& model, const CarmaDecomposition& d) {
  const TruncatedMoments tm = truncated_moments(model, 1);
  const KernelIntegrals ki = kernel_integrals(d);
  return {tm.m1 * ki.int_g, tm.m2 * ki.int_g2};
}

ErrorBound error_bound(const TemperingModel& model, const CarmaDecomposition& d, std::int64_t n,
                       double kappa, double t, Scheme scheme) {
  if (!(kappa >= 0.0) || !(t >= 0.0)) throw DomainError("error_bound: need kappa >= 0 and t >= 0");
  const TruncatedMoments tm = truncated_moments(model, n);
  double inv2l = 0.0, a2 = 0.0, al = 0.0, e2l = 0.0, ael = 0.0;
  for (int k = 0; k < d.order(); ++k) {
    const double l = d.lambdas[k];
    const double a = d.residues[k];
    inv2l += 1.0 / (2.0 * l);
    a2 += a * a;
    al += a / l;
    e2l += std::exp(2.0 * l * (kappa + t)) / (2.0 * l);
    ael += a * std::exp(l * (kappa + t)) / l;
  }
  ErrorBound eb;
  eb.t = t;
  eb.scheme = scheme;
  eb.c1 = -tm.sigma_n_sq * inv2l * a2;
  eb.c3 = -tm.m2_n * e2l * a2;
  if (scheme == Scheme::general) {
    eb.c2 = tm.m1_discarded * tm.m1_discarded * al * al;
    eb.c4 = tm.m1_n * tm.m1_n * ael * ael;
  }
  eb.bound = eb.c1 + eb.c2 + eb.c3 + eb.c4;
  return eb;
}

DiscardedStats discarded_component_stats(const TemperingModel& model, const CarmaDecomposition& d,
                                         std::int64_t n, double kappa, double t) {
  const TruncatedMoments tm = truncated_moments(model, n);
  const ErrorBound eb = error_bound(model, d, n, kappa, t, Scheme::subordinator);
  DiscardedStats s;
  s.mean_small = tm.m1_discarded * tail_integral(d, 0.0);
  s.var_small_bound = eb.c1;
  s.mean_old = tm.m1_n * tail_integral(d, kappa + t);
  s.var_old_bound = eb.c3;
  return s;
}

std::vector<double> uniform_grid(double T, double step) {
  if (!(T > 0.0) || !(step > 0.0)) throw ValidationError("grid: need T > 0 and step > 0");
  const double m = std::round(T / step);
  if (m < 1.0 || std::fabs(m * step - T) > 1e-9 * std::max(1.0, T)) {
    throw ValidationError("grid: grid_step must divide T");
  }
  const auto count = static_cast<std::size_t>(m);
  std::vector<double> grid(count + 1);
  for (std::size_t i = 0; i < count; ++i) grid[i] = static_cast<double>(i) * step;
  grid[count] = T;
  return grid;
}

void write_path_csv(std::ostream& os, const SampledPath& path) {
  os << "t,value\n";
  for (std::size_t i = 0; i < path.grid.size(); ++i) csv::write_row(os, {path.grid[i], path.values[i]}, 17);
}

}  // namespace tscarma
