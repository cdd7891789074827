#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include <hcdtn/errors.hpp>
#include <hcdtn/specfun.hpp>

#include "support/reference.hpp"

using namespace hcdtn;
using doctest::Approx;

TEST_CASE("zeta constants match the frozen table") {
  const auto z = compute_zeta_constants();
  for (int j = 0; j <= kZetaExpansionOrder; ++j)
    CHECK(std::abs(z.zeta_half_minus_j[static_cast<std::size_t>(j)] - ref::kZetaHalfMinusJ[j]) <=
          1e-12 * std::abs(ref::kZetaHalfMinusJ[j]) + 1e-15);
  CHECK(z.zeta_half == Approx(-1.460354508809587).epsilon(1e-14));
  CHECK(z.zeta_minus_half == Approx(-0.207886224977355).epsilon(1e-13));
  CHECK(z.zeta_half < 0.0);
  CHECK(z.zeta_minus_half < 0.0);
  CHECK(&zeta_constants() == &zeta_constants());
}

TEST_CASE("eta and zeta at positive arguments") {
  CHECK(dirichlet_eta(1.0) == Approx(std::numbers::ln2).epsilon(1e-14));
  CHECK(riemann_zeta_positive(2.0) == Approx(std::numbers::pi * std::numbers::pi / 6.0).epsilon(1e-14));
  CHECK_THROWS_AS(riemann_zeta_positive(1.0), DomainError);
  CHECK_THROWS_AS(riemann_zeta_positive(-0.5), DomainError);
}

TEST_CASE("polylog matches the frozen table") {
  for (const auto& p : ref::kPolylog) {
    INFO("x = " << p.x);
    CHECK(std::abs(polylog_half(p.x) - p.value) <= 1e-12 * p.value);
  }
}

TEST_CASE("polylog examples") {
  CHECK(polylog_half(50.0) == Approx(std::exp(-50.0)).epsilon(1e-10));
  CHECK(polylog_half(1.0) == Approx(0.5060301198729361).epsilon(1e-14));
  CHECK(ref::direct_polylog_series(1.0, 60) == Approx(0.5060301198729361).epsilon(1e-15));
  // Two-term expansion at x = 2 eps.
  const double eps = 0.01, x = 2.0 * eps;
  const auto& z = zeta_constants();
  const double two_term = std::sqrt(std::numbers::pi / x) + z.zeta_half - x * z.zeta_minus_half;
  CHECK(std::abs(polylog_half(x) - two_term) <= std::pow(eps, 1.5));
}

TEST_CASE("polylog rejects bad arguments") {
  CHECK_THROWS_AS(polylog_half(0.0), DomainError);
  CHECK_THROWS_AS(polylog_half(-1.0), DomainError);
  CHECK_THROWS_AS(polylog_half(std::numeric_limits<double>::infinity()), DomainError);
  CHECK_THROWS_AS(polylog_half(std::nan("")), DomainError);
}

TEST_CASE("polylog is decreasing") {
  double prev = std::numeric_limits<double>::infinity();
  for (double lx = -4.0; lx <= 1.5; lx += 0.01) {
    const double v = polylog_half(std::pow(10.0, lx));
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("branches agree at the crossover") {
  CHECK(std::abs(polylog_half_series(kPolylogCrossover) - polylog_half_expansion(kPolylogCrossover)) <= 1e-10);
  CHECK(polylog_half(std::nextafter(kPolylogCrossover, 0.0)) == Approx(polylog_half(kPolylogCrossover)).epsilon(1e-10));
}

TEST_CASE("expansion branch equals the brute-force series") {
  for (double lx = -4.0; lx <= std::log10(0.4); lx += 0.1) {
    const double x = std::pow(10.0, lx);
    const long terms = static_cast<long>(std::ceil(40.0 / x));
    INFO("x = " << x);
    CHECK(std::abs(polylog_half(x) - ref::direct_polylog_series(x, terms)) <= 1e-9);
  }
}
