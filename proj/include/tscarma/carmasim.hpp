#pragma once

// CARMA paths driven by the truncated series. The retained jumps enter through
// the kernel g; the discarded small jumps are either replaced by a scaled
// Gaussian CARMA path (general scheme) or by their mean (subordinator scheme).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tscarma/carma.hpp"
#include "tscarma/levyseries.hpp"
#include "tscarma/moments.hpp"
#include "tscarma/rng.hpp"
#include "tscarma/tempering.hpp"

namespace tscarma {

enum class Scheme { general, subordinator };

const char* scheme_name(Scheme s);

struct Provenance {
  std::string model_name;
  CarmaSpec carma;
  std::uint64_t seed = 0;
  std::uint64_t stream_index = 0;
};

struct SampledPath {
  std::vector<double> grid;
  std::vector<double> values;
  Scheme scheme = Scheme::general;
  SeriesConfig config;
  Provenance provenance;
};

struct SimulationOptions {
  // Add E[R_t], the mean of the jumps before −κ, in the general scheme.
  bool replace_discarded_by_mean = false;
  // Test hooks: switch off the jump part or pin the Gaussian scale.
  bool include_jumps = true;
  std::optional<double> sigma_n_override;
};

/// Kernel response Σ_j g(t − T_j) J_j on the grid, starting from rest at −κ.
std::vector<double> jump_response(const CarmaDecomposition& d, const std::vector<Jump>& jumps,
                                  const std::vector<double>& grid);

/// Exact stationary samples of ∫_{−∞}^t g(t − s) dW_s on an increasing grid.
std::vector<double> gaussian_carma(const CarmaDecomposition& d, const std::vector<double>& grid,
                                   RngStream& rng);

/// Reusable simulator: decomposition and truncated moments are computed once.
class PathSimulator {
 public:
  PathSimulator(TemperingModel model, CarmaSpec spec, SeriesConfig config, Scheme scheme,
                SimulationOptions options = {});

  /// One path on the stream (config.seed, stream_index).
  SampledPath simulate(const std::vector<double>& grid, std::uint64_t stream_index) const;

  /// Values only; avoids copying provenance in Monte Carlo loops.
  std::vector<double> simulate_values(const std::vector<double>& grid, std::uint64_t stream_index) const;

  const TemperingModel& model() const { return model_; }
  const CarmaSpec& spec() const { return spec_; }
  const CarmaDecomposition& decomposition() const { return decomp_; }
  const TruncatedMoments& moments() const { return moments_; }
  const SeriesConfig& config() const { return config_; }
  Scheme scheme() const { return scheme_; }
  bool kernel_warning() const { return kernel_warning_; }

 private:
  TemperingModel model_;
  CarmaSpec spec_;
  SeriesConfig config_;
  Scheme scheme_;
  SimulationOptions options_;
  CarmaDecomposition decomp_;
  TruncatedMoments moments_;
  bool kernel_warning_ = false;
};

SampledPath simulate_subordinator_path(const TemperingModel& model, const CarmaSpec& spec,
                                       const SeriesConfig& config, const std::vector<double>& grid);

SampledPath simulate_general_path(const TemperingModel& model, const CarmaSpec& spec,
                                  const SeriesConfig& config, const std::vector<double>& grid,
                                  SimulationOptions options = {});

struct StationaryMoments {
  double mean = 0.0;
  double variance = 0.0;
};

StationaryMoments stationary_moments(const TemperingModel& model, const CarmaDecomposition& d);

struct ErrorBound {
  double t = 0.0;
  double bound = 0.0;
  double c1 = 0.0;  // Gaussian-replaced small jumps
  double c2 = 0.0;  // mean of the small jumps (general scheme only)
  double c3 = 0.0;  // jumps before −κ
  double c4 = 0.0;  // mean of the jumps before −κ (general scheme only)
  Scheme scheme = Scheme::general;
};

ErrorBound error_bound(const TemperingModel& model, const CarmaDecomposition& d, std::int64_t n,
                       double kappa, double t, Scheme scheme);

/// Scheme chosen by default: subordinator models use mean compensation.
Scheme default_scheme(const TemperingModel& model);

struct DiscardedStats {
  double mean_small = 0.0;      // E[Q_t(n)]
  double var_small_bound = 0.0;
  double mean_old = 0.0;        // E[R_t(κ, n)]
  double var_old_bound = 0.0;
};

DiscardedStats discarded_component_stats(const TemperingModel& model, const CarmaDecomposition& d,
                                         std::int64_t n, double kappa, double t);

/// Uniform grid 0, h, 2h, ..., T. Requires h to divide T within 1e-9.
std::vector<double> uniform_grid(double T, double step);

/// CSV `t,value` with 17 significant digits.
void write_path_csv(std::ostream& os, const SampledPath& path);

}  // namespace tscarma
