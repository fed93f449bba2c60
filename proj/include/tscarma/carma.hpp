#pragma once

// CARMA(p̄, q̄) algebra. With a(z) = z^p̄ + a_1 z^{p̄−1} + ... + a_p̄ and
// b(z) = b_0 + b_1 z + ... + b_q̄ z^q̄, the kernel is
//   g(t) = Σ_k α_k e^{λ_k t},  α_k = b(λ_k) / a'(λ_k),
// where λ_k are the (real, negative, distinct) roots of a.

#include <vector>

namespace tscarma {

struct CarmaSpec {
  std::vector<double> a;  // a_1 .. a_p̄
  std::vector<double> b;  // b_0 .. b_q̄, last entry 1

  int p_bar() const { return static_cast<int>(a.size()); }
  int q_bar() const { return static_cast<int>(b.size()) - 1; }
  bool operator==(const CarmaSpec&) const = default;
};

struct CarmaDecomposition {
  std::vector<double> lambdas;   // strictly decreasing, all negative
  std::vector<double> residues;  // α_k matched to lambdas
  bool nonnegative_kernel = false;

  int order() const { return static_cast<int>(lambdas.size()); }
};

/// Structural checks only (lengths, b_q̄ = 1, q̄ < p̄); throws ValidationError.
void check_structure(const CarmaSpec& spec);

/// Roots and residues. Throws one of ComplexRootError, NonNegativeRootError,
/// RepeatedRootError, CommonRootError naming the offending root.
CarmaDecomposition validate(const CarmaSpec& spec);

/// Decomposition from explicit eigenvalues and residues (no polynomial).
CarmaDecomposition make_decomposition(std::vector<double> lambdas, std::vector<double> residues);

double kernel(const CarmaDecomposition& d, double t);

struct KernelIntegrals {
  double int_g = 0.0;
  double int_g2 = 0.0;
};

/// ∫_0^∞ g and ∫_0^∞ g².
KernelIntegrals kernel_integrals(const CarmaDecomposition& d);

/// ∫_s^∞ g and ∫_s^∞ g² for s ≥ 0.
KernelIntegrals partial_kernel_integrals(const CarmaDecomposition& d, double s);

/// Evaluates a(z) and b(z) as defined above.
double eval_ar_poly(const CarmaSpec& spec, double z);
double eval_ma_poly(const CarmaSpec& spec, double z);

}  // namespace tscarma
