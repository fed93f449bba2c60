#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "tscarma/errors.hpp"
#include "tscarma/moments.hpp"

using namespace tscarma;

namespace {
bool rel_close(double a, double b, double rel) { return std::fabs(a - b) <= rel * std::fabs(b); }
}  // namespace

TEST_CASE("full pTSS moments") {
  const auto tm = trunc_moments_ptss({0.5, 1.0, 1.0, 1.0}, 10);
  CHECK(tm.m1 == doctest::Approx(std::tgamma(0.5)).epsilon(1e-13));
  CHECK(tm.m2 == doctest::Approx(std::tgamma(1.5)).epsilon(1e-13));
  // δλ^{α−k}Γ((k−α)/p)/p
  const auto t2 = trunc_moments_ptss({0.8, 2.0, 1.5, 0.7}, 10);
  CHECK(t2.m1 == doctest::Approx(1.5 * std::pow(0.7, -0.2) * std::tgamma(0.1) / 2.0).epsilon(1e-12));
  CHECK(t2.m2 == doctest::Approx(1.5 * std::pow(0.7, -1.2) * std::tgamma(0.6) / 2.0).epsilon(1e-12));
}

TEST_CASE("truncated moments saturate for large n") {
  const auto tm = trunc_moments_ptss({0.5, 1.0, 1.0, 1.0}, 100000000);
  CHECK(rel_close(tm.m1_n, tm.m1, 1e-6));
  CHECK(rel_close(tm.m2_n, tm.m2, 1e-6));
}

TEST_CASE("pTSS p=2 against direct quadrature of the truncated density") {
  // m1_n = ∫ z · min(nαz^α, 1) e^{−z²} z^{−1.5} dz is NOT the truncated
  // measure (the truncation acts on the tail); check the layer-cake oracle.
  const auto tm = trunc_moments_ptss({0.5, 2.0, 1.0, 1.0}, 100);
  const auto ref = oracle::layer_cake(oracle::ptss_sides(0.5, 2.0, 1.0, 1.0), 0.5, 1.0, 100);
  CHECK(rel_close(tm.m1_n, ref.m1_n, 1e-8));
  CHECK(rel_close(tm.m2_n, ref.m2_n, 1e-8));
}

TEST_CASE("pCTS moments") {
  const auto sym = trunc_moments_pcts({1.4, 1.0, 1.0, 1.0, 1.0, 1.0}, 100);
  CHECK(sym.m1_n == 0.0);
  CHECK(sym.m1 == 0.0);
  const auto ref = oracle::layer_cake(oracle::pcts_sides(1.4, 1.0, 1.0, 1.0, 1.0, 1.0), 1.4, 2.0, 100, false);
  CHECK(rel_close(sym.m2_n, ref.m2_n, 1e-8));
  CHECK(rel_close(sym.sigma_n_sq, ref.sigma_n_sq, 1e-8));

  // Asymmetric, α < 1: signed first moments.
  const auto asym = trunc_moments_pcts({0.8, 1.0, 2.0, 1.0, 1.0, 3.0}, 50);
  const auto ra = oracle::layer_cake(oracle::pcts_sides(0.8, 1.0, 2.0, 1.0, 1.0, 3.0), 0.8, 3.0, 50);
  CHECK(rel_close(asym.m1_n, ra.m1_n, 1e-8));
  CHECK(rel_close(asym.m1, ra.m1, 1e-8));
  CHECK(rel_close(asym.m1_discarded, ra.m1_discarded, 1e-8));
  CHECK(rel_close(asym.m2_n, ra.m2_n, 1e-8));

  // Asymmetric, α ≥ 1: the first moment diverges at the origin.
  const auto div = trunc_moments_pcts({1.5, 1.0, 2.0, 1.0, 1.0, 1.0}, 50);
  CHECK(div.m1_diverges);
  CHECK(std::isnan(div.m1));
  CHECK(std::isfinite(div.m1_n));
  CHECK(std::isfinite(div.m2));
}

TEST_CASE("pGTS moments") {
  // ∫ z (z+1)^{−3} z^{−1.5} dz = B(1/2, 5/2)
  const auto tm = trunc_moments_pgts({0.5, 1.0, 3.0, 1.0}, 10);
  const double beta_half = std::tgamma(0.5) * std::tgamma(2.5) / std::tgamma(3.0);
  CHECK(tm.m1 == doctest::Approx(beta_half).epsilon(1e-10));
  auto integrand = [](double z) { return std::pow(z + 1.0, -3.0) * std::pow(z, -0.5); };
  const double direct = oracle::integrate_finite(integrand, 0.0, 1.0) + oracle::integrate_to_inf(integrand, 1.0);
  CHECK(tm.m1 == doctest::Approx(direct).epsilon(1e-8));

  const auto t8 = trunc_moments_pgts({0.8, 1.0, 3.0, 1.0}, 1000);
  const auto ref = oracle::layer_cake(oracle::pgts_sides(0.8, 1.0, 3.0, 1.0), 0.8, 1.0, 1000);
  CHECK(rel_close(t8.m2_n, ref.m2_n, 1e-7));
  CHECK(rel_close(t8.m1_n, ref.m1_n, 1e-7));
}

TEST_CASE("pGTS excluded parameters") {
  CHECK_THROWS_AS(trunc_moments_pgts({0.5, 1.0, 2.0, 1.0}, 10), DomainError);
  CHECK_THROWS_AS(trunc_moments_pgts({0.5, 1.0, 1.0, 1.0}, 10), DomainError);
  CHECK_THROWS_AS(trunc_moments_pgts({0.5, 1.0, 1.4, 1.0}, 10), DomainError);
  const auto fallback = truncated_moments(make_pgts({0.5, 1.0, 2.0, 1.0}), 10);
  CHECK(fallback.used_quadrature_fallback);
  // β = 2 has an infinite second moment: ∫ z² (z+1)^{-2} z^{-1.5} dz diverges.
  CHECK(std::isfinite(fallback.m1_n));
  const auto b25 = truncated_moments(make_pgts({0.5, 1.0, 2.5, 1.0}), 10);
  CHECK_FALSE(b25.used_quadrature_fallback);
}

TEST_CASE("numeric route agrees with closed forms") {
  const auto m = make_ptss({0.5, 1.0, 1.0, 1.0});
  const auto a = trunc_moments_numeric(m, 1000);
  const auto b = trunc_moments_ptss({0.5, 1.0, 1.0, 1.0}, 1000);
  CHECK(rel_close(a.m1_n, b.m1_n, 1e-7));
  CHECK(rel_close(a.m2_n, b.m2_n, 1e-7));
  CHECK(a.m1_n >= 0.0);
}

TEST_CASE("property: closed forms match the layer-cake oracle on the full grid") {
  for (double p : {0.5, 1.0, 2.0}) {
    for (double n : {10.0, 100.0, 1000.0, 10000.0}) {
      for (double alpha : {0.5, 0.8}) {
        const auto n64 = static_cast<std::int64_t>(n);
        const auto t = trunc_moments_ptss({alpha, p, 1.0, 1.0}, n64);
        const auto rt = oracle::layer_cake(oracle::ptss_sides(alpha, p, 1.0, 1.0), alpha, 1.0, n);
        const auto g = trunc_moments_pgts({alpha, p, 3.0, 1.0}, n64);
        const auto rg = oracle::layer_cake(oracle::pgts_sides(alpha, p, 3.0, 1.0), alpha, 1.0, n);
        CAPTURE(alpha);
        CAPTURE(p);
        CAPTURE(n);
        for (auto [x, y] : {std::pair{t.m1_n, rt.m1_n}, {t.m2_n, rt.m2_n}, {t.sigma_n_sq, rt.sigma_n_sq},
                            {t.m1, rt.m1}, {t.m2, rt.m2}, {g.m1_n, rg.m1_n}, {g.m2_n, rg.m2_n},
                            {g.sigma_n_sq, rg.sigma_n_sq}, {g.m1, rg.m1}, {g.m2, rg.m2}}) {
          CHECK(rel_close(x, y, 1e-6));
        }
      }
      for (double alpha : {1.4, 1.8}) {
        const auto c = trunc_moments_pcts({alpha, p, 1.0, 1.0, 1.0, 1.0}, static_cast<std::int64_t>(n));
        const auto rc = oracle::layer_cake(oracle::pcts_sides(alpha, p, 1.0, 1.0, 1.0, 1.0), alpha, 2.0, n, false);
        CAPTURE(alpha);
        CAPTURE(p);
        CAPTURE(n);
        CHECK(c.m1_n == 0.0);
        CHECK(rel_close(c.m2_n, rc.m2_n, 1e-6));
        CHECK(rel_close(c.sigma_n_sq, rc.sigma_n_sq, 1e-6));
        CHECK(rel_close(c.m2, rc.m2, 1e-6));
      }
    }
  }
}

TEST_CASE("property: sigma_n^2 decreases in n and the decomposition holds") {
  const std::vector<TemperingModel> models{make_ptss({0.5, 1.0, 1.0, 1.0}), make_pgts({0.8, 2.0, 3.0, 1.0}),
                                           make_pcts({1.8, 0.5, 1.0, 1.0, 1.0, 1.0})};
  for (const auto& m : models) {
    double prev_sigma = std::numeric_limits<double>::infinity();
    double prev_m2n = 0.0;
    for (std::int64_t n = 1; n <= 100000; n *= 10) {
      const auto tm = truncated_moments(m, n);
      CAPTURE(m.name());
      CAPTURE(n);
      CHECK(tm.sigma_n_sq < prev_sigma);
      CHECK(tm.sigma_n_sq >= 0.0);
      CHECK(std::fabs(tm.sigma_n_sq - (tm.m2 - tm.m2_n)) <= 1e-12);
      CHECK(tm.m2_n >= prev_m2n);
      CHECK(tm.m2_n <= tm.m2);
      if (m.is_subordinator()) {
        CHECK(tm.m1_n >= 0.0);
        CHECK(tm.m1_n <= tm.m1);
      }
      prev_sigma = tm.sigma_n_sq;
      prev_m2n = tm.m2_n;
    }
  }
}

TEST_CASE("clamp point") {
  CHECK(clamp_point(0.5, 1.0, 10.0) == doctest::Approx(0.04));
  CHECK_THROWS_AS(trunc_moments_ptss({0.5, 1.0, 1.0, 1.0}, 0), DomainError);
}
