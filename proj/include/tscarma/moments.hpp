#pragma once

// First and second moments of the Lévy measure M and of its truncation M_n,
// the measure with tail M_n((x, ∞)) = min(c x^α, 1) M((x, ∞)), c = nα/||σ||.
// Below the clamp point z* = c^{−1/α} the truncated measure is thinner than M;
// above it the two coincide.

#include <cstdint>

#include "tscarma/tempering.hpp"

namespace tscarma {

struct TruncatedMoments {
  double m1_n = 0.0;        // ∫ z M_n(dz)
  double m2_n = 0.0;        // ∫ z² M_n(dz)
  double m1 = 0.0;          // ∫ z M(dz); NaN when it diverges
  double m2 = 0.0;          // ∫ z² M(dz)
  double sigma_n_sq = 0.0;  // ∫ z² (M − M_n)(dz)
  double m1_discarded = 0.0;  // ∫ z (M − M_n)(dz); NaN when it diverges
  std::int64_t n = 0;
  bool m1_diverges = false;
  bool used_quadrature_fallback = false;
};

/// Clamp point z* = (||σ|| / (nα))^{1/α}.
double clamp_point(double alpha, double sigma_mass, double n);

TruncatedMoments trunc_moments_ptss(const PTSSParams& params, std::int64_t n);
TruncatedMoments trunc_moments_pcts(const PCTSParams& params, std::int64_t n);

/// Throws DomainError for β ∈ {1, 2} or α + β ≤ 2.
TruncatedMoments trunc_moments_pgts(const PGTSParams& params, std::int64_t n);

/// Quadrature of the layer-cake representation; applies to any model.
TruncatedMoments trunc_moments_numeric(const TemperingModel& model, std::int64_t n);

/// Closed form for built-ins, quadrature otherwise (flagged in the result).
TruncatedMoments truncated_moments(const TemperingModel& model, std::int64_t n);

}  // namespace tscarma
