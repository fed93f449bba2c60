#include "tscarma/carma.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "tscarma/errors.hpp"

namespace tscarma {

namespace {

std::string num(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

double eval_ar_deriv(const CarmaSpec& spec, double z) {
  const int p = spec.p_bar();
  double v = p;
  for (int i = 1; i < p; ++i) v = v * z + (p - i) * spec.a[i - 1];
  return v;
}

void compute_nonnegative_flag(CarmaDecomposition& d) {
  const double span = 20.0 / std::fabs(d.lambdas.back());
  d.nonnegative_kernel = true;
  for (int i = 0; i < 10000; ++i) {
    const double t = span * i / 9999.0;
    if (kernel(d, t) < -1e-12) {
      d.nonnegative_kernel = false;
      return;
    }
  }
}

}  // namespace

double eval_ar_poly(const CarmaSpec& spec, double z) {
  double v = 1.0;
  for (double c : spec.a) v = v * z + c;
  return v;
}

double eval_ma_poly(const CarmaSpec& spec, double z) {
  double v = 0.0;
  for (auto it = spec.b.rbegin(); it != spec.b.rend(); ++it) v = v * z + *it;
  return v;
}

void check_structure(const CarmaSpec& spec) {
  if (spec.a.empty()) throw ValidationError("carma: a must have at least one coefficient");
  if (spec.b.empty()) throw ValidationError("carma: b must have at least one coefficient");
  if (spec.b.back() != 1.0) throw ValidationError("carma: last entry of b must be exactly 1");
  if (spec.q_bar() > spec.p_bar() - 1) {
    throw ValidationError("carma: need q_bar <= p_bar - 1 (len(b) <= len(a))");
  }
  for (double c : spec.a) {
    if (!std::isfinite(c)) throw ValidationError("carma: a has a non-finite entry");
  }
  for (double c : spec.b) {
    if (!std::isfinite(c)) throw ValidationError("carma: b has a non-finite entry");
  }
}

CarmaDecomposition validate(const CarmaSpec& spec) {
  check_structure(spec);
  const int p = spec.p_bar();

  std::vector<std::complex<double>> roots;
  if (p == 1) {
    roots.emplace_back(-spec.a[0], 0.0);
  } else {
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(p, p);
    for (int i = 0; i + 1 < p; ++i) comp(i + 1, i) = 1.0;
    for (int i = 0; i < p; ++i) comp(0, i) = -spec.a[i];
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    if (es.info() != Eigen::Success) throw LinearAlgebraError("carma: eigenvalue solver failed");
    for (int i = 0; i < p; ++i) roots.push_back(es.eigenvalues()[i]);
  }

  std::vector<double> lambdas;
  for (const auto& r : roots) {
    if (std::fabs(r.imag()) > 1e-10 * (1.0 + std::abs(r))) {
      // A real double root is typically returned as a conjugate pair split by
      // O(sqrt(eps)); report it as repeated rather than complex.
      if (std::fabs(r.imag()) < 1e-6 * (1.0 + std::abs(r)) &&
          std::fabs(eval_ar_deriv(spec, r.real())) < 1e-6 * (1.0 + std::abs(r))) {
        throw RepeatedRootError("carma: a(z) has repeated root " + num(r.real()));
      }
      throw ComplexRootError("carma: a(z) has complex root " + num(r.real()) + (r.imag() < 0 ? "-" : "+") +
                             num(std::fabs(r.imag())) + "i");
    }
    double z = r.real();
    const double dz = eval_ar_deriv(spec, z);
    if (dz != 0.0) {
      const double step = eval_ar_poly(spec, z) / dz;
      if (std::isfinite(step) && std::fabs(step) < 1e-3 * (1.0 + std::fabs(z))) z -= step;
    }
    lambdas.push_back(z);
  }
  std::sort(lambdas.begin(), lambdas.end(), std::greater<>());

  for (double l : lambdas) {
    if (!(l < 0.0)) throw NonNegativeRootError("carma: a(z) has non-negative root " + num(l));
  }
  for (int i = 0; i + 1 < p; ++i) {
    const double gap = std::fabs(lambdas[i] - lambdas[i + 1]);
    if (gap <= 1e-8 * std::max(std::fabs(lambdas[i]), std::fabs(lambdas[i + 1]))) {
      throw RepeatedRootError("carma: a(z) has repeated root " + num(lambdas[i]));
    }
  }
  const double q = spec.q_bar();
  for (double l : lambdas) {
    if (std::fabs(eval_ma_poly(spec, l)) <= 1e-10 * std::pow(1.0 + std::fabs(l), q)) {
      throw CommonRootError("carma: a(z) and b(z) share the root " + num(l));
    }
  }

  CarmaDecomposition d;
  d.lambdas = lambdas;
  for (double l : lambdas) d.residues.push_back(eval_ma_poly(spec, l) / eval_ar_deriv(spec, l));
  compute_nonnegative_flag(d);
  return d;
}

CarmaDecomposition make_decomposition(std::vector<double> lambdas, std::vector<double> residues) {
  if (lambdas.empty() || lambdas.size() != residues.size()) {
    throw ValidationError("carma: need matching non-empty eigenvalue and residue lists");
  }
  std::vector<std::size_t> idx(lambdas.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](auto i, auto j) { return lambdas[i] > lambdas[j]; });
  CarmaDecomposition d;
  for (auto i : idx) {
    if (!(lambdas[i] < 0.0)) throw NonNegativeRootError("carma: non-negative eigenvalue " + num(lambdas[i]));
    d.lambdas.push_back(lambdas[i]);
    d.residues.push_back(residues[i]);
  }
  for (int i = 0; i + 1 < d.order(); ++i) {
    if (std::fabs(d.lambdas[i] - d.lambdas[i + 1]) <=
        1e-8 * std::max(std::fabs(d.lambdas[i]), std::fabs(d.lambdas[i + 1]))) {
      throw RepeatedRootError("carma: repeated eigenvalue " + num(d.lambdas[i]));
    }
  }
  compute_nonnegative_flag(d);
  return d;
}

double kernel(const CarmaDecomposition& d, double t) {
  if (t < 0.0) return 0.0;
  double g = 0.0;
  for (int k = 0; k < d.order(); ++k) g += d.residues[k] * std::exp(d.lambdas[k] * t);
  return g;
}

KernelIntegrals kernel_integrals(const CarmaDecomposition& d) { return partial_kernel_integrals(d, 0.0); }

KernelIntegrals partial_kernel_integrals(const CarmaDecomposition& d, double s) {
  if (!(s >= 0.0)) throw DomainError("partial_kernel_integrals: s must be >= 0");
  KernelIntegrals out;
  const int p = d.order();
  for (int j = 0; j < p; ++j) {
    out.int_g += -d.residues[j] * std::exp(d.lambdas[j] * s) / d.lambdas[j];
    for (int k = 0; k < p; ++k) {
      const double lsum = d.lambdas[j] + d.lambdas[k];
      out.int_g2 += -d.residues[j] * d.residues[k] * std::exp(lsum * s) / lsum;
    }
  }
  return out;
}

}  // namespace tscarma
