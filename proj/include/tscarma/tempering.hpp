#pragma once

// One-dimensional p-tempered α-stable laws. The Lévy measure has density
//   m(±r) = σ_± q_±(r^p) r^{−1−α},  r > 0,
// where q_± is the Laplace transform of the tempering measure. V denotes a
// draw from that measure normalised by the total spherical mass.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tscarma/rng.hpp"

namespace tscarma {

enum class Side { plus, minus };

struct StabilityPair {
  double alpha = 0.5;
  double p = 1.0;
};

struct PTSSParams {
  double alpha = 0.5;
  double p = 1.0;
  double delta = 1.0;
  double lambda = 1.0;

  bool operator==(const PTSSParams&) const = default;
};

struct PCTSParams {
  double alpha = 0.5;
  double p = 1.0;
  double delta_plus = 1.0;
  double delta_minus = 1.0;
  double lambda_plus = 1.0;
  double lambda_minus = 1.0;

  bool operator==(const PCTSParams&) const = default;
};

struct PGTSParams {
  double alpha = 0.5;
  double p = 1.0;
  double beta = 3.0;
  double lambda = 1.0;

  bool operator==(const PGTSParams&) const = default;
};

using FamilyParams = std::variant<std::monostate, PTSSParams, PCTSParams, PGTSParams>;

/// Law of V. Either finitely many signed atoms or a gamma law on (0, ∞).
struct VLaw {
  enum class Kind { atoms, gamma };
  Kind kind = Kind::atoms;
  std::vector<std::pair<double, double>> atoms;  // (value, probability)
  double shape = 0.0;
  double rate = 0.0;
};

/// Ingredients for a model outside the built-in families. The caller is
/// responsible for the tempering function being completely monotone.
struct CustomModelSpec {
  std::string name = "custom";
  StabilityPair stability;
  double sigma_mass = 1.0;
  std::function<double(double)> levy_density;
  std::function<double(RngStream&)> v_sampler;
  std::optional<VLaw> v_law;
  bool is_subordinator = false;
  bool is_symmetric = false;
};

class TemperingModel {
 public:
  const std::string& name() const { return name_; }
  const StabilityPair& stability() const { return stab_; }
  double alpha() const { return stab_.alpha; }
  double p() const { return stab_.p; }
  double sigma_mass() const { return sigma_mass_; }
  bool is_subordinator() const { return subordinator_; }
  bool is_symmetric() const { return symmetric_; }
  const FamilyParams& family() const { return family_; }
  const std::optional<VLaw>& v_law() const { return v_law_; }

  /// Lévy density at z ≠ 0.
  double levy_density(double z) const;

  /// r^{1+α} m(±r): bounded near the origin, used by quadrature.
  double scaled_density(Side side, double r) const;

  /// One draw of V.
  double sample_v(RngStream& rng) const;

 private:
  friend TemperingModel make_ptss(const PTSSParams&);
  friend TemperingModel make_pcts(const PCTSParams&);
  friend TemperingModel make_pgts(const PGTSParams&);
  friend TemperingModel make_custom(CustomModelSpec);

  TemperingModel() = default;

  std::string name_;
  StabilityPair stab_;
  double sigma_mass_ = 1.0;
  bool subordinator_ = false;
  bool symmetric_ = false;
  FamilyParams family_;
  std::optional<VLaw> v_law_;
  std::function<double(double)> custom_density_;
  std::function<double(RngStream&)> custom_sampler_;
};

void validate_params(const PTSSParams& p);
void validate_params(const PCTSParams& p);
void validate_params(const PGTSParams& p);

TemperingModel make_ptss(const PTSSParams& params);
TemperingModel make_pcts(const PCTSParams& params);
TemperingModel make_pgts(const PGTSParams& params);
TemperingModel make_custom(CustomModelSpec spec);

/// M((x, ∞)) for side plus, M((−∞, −x)) for side minus.
double levy_tail(const TemperingModel& model, double x, Side side);

struct RosinskiFunctionals {
  double x0 = 0.0;
  double x1 = 0.0;
};

/// x0 = E[sign V]; x1 = ∫ sign(v)|v|^{(α−1)/p} Q(dv) with Q = ||σ|| law(V).
RosinskiFunctionals rosinski_functionals(const TemperingModel& model);

}  // namespace tscarma
