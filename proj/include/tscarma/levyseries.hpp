#pragma once

// Truncated shot-noise series for the driving Lévy process on (−κ, T].
// Z ~ Poisson((T+κ)n) jumps; the j-th smallest of Z uniforms on (0, αn/||σ||)
// is paired with i.i.d. marks (T_j, E_j, U_j, V_j) in index order.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "tscarma/tempering.hpp"

namespace tscarma {

struct SeriesConfig {
  double T = 1.0;
  double kappa = 0.0;
  std::int64_t n = 1;
  std::uint64_t seed = 0;
  std::uint64_t stream_index = 0;
  // Asymmetric models with α ≥ 1 need a centering drift; off unless asked for.
  bool allow_case_ii = false;
};

struct Jump {
  double time;
  double size;
};

struct JumpSkeleton {
  std::vector<Jump> jumps;  // sorted by time
  SeriesConfig config;
  std::string model_name;
  std::int64_t count = 0;       // Poisson draw, before dropping negligible jumps
  double lambda_min = 0.0;      // smallest generated Λ (0 when no jumps)
  double drift = 0.0;           // deterministic drift per unit time (centering)
};

void validate_series_config(const SeriesConfig& config);

/// sign(v) · min(Λ^{−1/α}, e^{1/p} u^{1/α} / |v|^{1/p}) for Λ, e > 0, u ∈ (0, 1], v ≠ 0.
double h_value(const TemperingModel& model, double gamma_scaled, double e, double u, double v);

/// Draws the skeleton on the stream (config.seed, config.stream_index).
JumpSkeleton sample_skeleton(const TemperingModel& model, const SeriesConfig& config);

/// Same, continuing an already positioned stream.
JumpSkeleton sample_skeleton(const TemperingModel& model, const SeriesConfig& config, RngStream& rng);

/// M_n((x, ∞)) or M_n((−∞, −x)).
double truncated_tail(const TemperingModel& model, std::int64_t n, double x, Side side);

/// Density of M_n at z ≠ 0.
double truncated_density(const TemperingModel& model, std::int64_t n, double z);

/// b_{T} centering constant for α ∈ [1, 2) (horizon passed explicitly).
double centering_constant(const TemperingModel& model, double horizon);

/// ∫ w log|w| R(dw), needed by the α = 1 centering.
double rosinski_wlogw(const TemperingModel& model);

/// CSV with header `time,size`, 17 significant digits.
void write_skeleton_csv(std::ostream& os, const JumpSkeleton& skeleton);

}  // namespace tscarma
