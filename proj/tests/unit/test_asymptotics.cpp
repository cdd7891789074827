#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <hcdtn/asymptotics.hpp>
#include <hcdtn/errors.hpp>
#include <hcdtn/generators.hpp>
#include <hcdtn/specfun.hpp>

#include "support/reference.hpp"

using namespace hcdtn;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

struct Fixture {
  GeometryAnalysis analysis;
  Network network;
};

Fixture make(const Packing& p, ConductivityMode mode = ConductivityMode::identical) {
  Fixture f;
  f.analysis = analyze_geometry(p);
  f.network = build_network(f.analysis, mode);
  return f;
}

Fixture ring8() { return make(ring_packing(8, 0.85, 0.1)); }

// One disk of radius R whose boundary gap is delta, centered on the positive x axis.
Fixture single_disk(double R, double delta) {
  Packing p;
  p.inclusions = {{{1.0 - R - delta, 0.0}, R}};
  return make(p);
}

FourierPotential random_potential(int K, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> c(static_cast<std::size_t>(K) + 1), s(static_cast<std::size_t>(K) + 1, 0.0);
  for (int k = 0; k <= K; ++k) {
    c[static_cast<std::size_t>(k)] = unit(rng);
    if (k > 0) s[static_cast<std::size_t>(k)] = unit(rng);
  }
  return FourierPotential(c, s);
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("Fourier potential basics") {
  CHECK_THROWS_AS(FourierPotential({1.0, 2.0}, {0.5, 0.0}), DomainError);
  CHECK_THROWS_AS(FourierPotential({1.0, 2.0}, {0.0}), DomainError);
  CHECK_THROWS_AS(FourierPotential({std::nan("")}, {0.0}), DomainError);
  CHECK_THROWS_AS(FourierPotential::sine(0), DomainError);
  const auto psi = FourierPotential::cosine(2) + FourierPotential::sine(5, 3.0);
  CHECK(psi.max_frequency() == 5);
  CHECK(psi(0.3) == Approx(std::cos(0.6) + 3.0 * std::sin(1.5)));
  const auto r = psi.rotated(0.4);
  for (double t : {0.0, 1.0, 2.5}) CHECK(r(t) == Approx(psi(t - 0.4)).epsilon(1e-13));
  CHECK((psi * 2.0)(1.1) == Approx(2.0 * psi(1.1)));
}

TEST_CASE("boundary excitation") {
  const auto r8 = ring8();
  const auto e0 = boundary_excitation(FourierPotential::constant(1.0), r8.analysis);
  CHECK((e0.array() - 1.0).abs().maxCoeff() == 0.0);

  const auto one = single_disk(0.1, 0.001);
  const auto e = boundary_excitation(FourierPotential::cosine(10), one.analysis);
  CHECK(e(0) == Approx(0.8681234453945849).epsilon(1e-12));

  double prev = 2.0;
  for (int k = 1; k <= 200; k += 7) {
    const double v = boundary_excitation(FourierPotential::cosine(k), one.analysis)(0);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("reference energy") {
  CHECK(reference_energy(FourierPotential::cosine(3)) == Approx(1.5 * kPi));
  CHECK(reference_energy(FourierPotential::constant(4.0)) == 0.0);
  CHECK(reference_energy(FourierPotential::cosine(2) + FourierPotential::sine(5, 3.0)) == Approx(23.5 * kPi));
}

TEST_CASE("resonance of a single inclusion") {
  const auto f = single_disk(0.1, 0.001);
  const double sigma = f.network.boundary_sigma(0);
  CHECK(resonance_single(0, 0, f.analysis, sigma) == 0.0);
  CHECK_THROWS_AS(resonance_single(0, -1, f.analysis, sigma), DomainError);
  const double expected =
      0.25 * sigma * (std::sqrt(1.0 / kPi) * 0.5060301198729361 - std::exp(-1000.0 * std::sqrt(0.0002)));
  CHECK(resonance_single(0, 500, f.analysis, sigma) == Approx(expected).epsilon(1e-12));
  CHECK(resonance_single(0, 500, f.analysis, sigma) / (0.25 * sigma) == Approx(0.2854962012395803).epsilon(1e-12));
}

TEST_CASE("resonance is small for small epsilon") {
  // Only inside regime 1: eta = kR/L <= 1 as well.  With eta large the
  // -exp(-2 kappa) term alone is O(sigma), whatever epsilon is.
  const auto f = single_disk(0.001, 1e-5);
  const double sigma = f.network.boundary_sigma(0);
  for (int k = 1; k <= 1000; k *= 3) {
    const double eps = k * 1e-5;
    const double r = std::abs(resonance_single(0, k, f.analysis, sigma));
    CHECK(r <= sigma * std::sqrt(eps));
  }
}

TEST_CASE("resonance_mode sums equal inclusions and decays") {
  const auto f = make(equal_gap_ring(16, 0.12, 0.006));
  const int n = f.analysis.boundary_count;
  REQUIRE(n == 16);
  const double delta = f.analysis.boundary_gaps[0];
  const double sigma = f.network.boundary_sigma(0);
  for (int k : {0, 1, 7, 40}) CHECK(resonance_mode(k, f.analysis, f.network) == Approx(n * resonance_single(0, k, f.analysis, sigma)).epsilon(1e-12));
  for (int k = 1;; ++k) {
    const double eps = k * delta;
    if (eps < 3.0) continue;
    if (eps > 20.0) break;
    const double bound = n * 0.25 * sigma * std::sqrt(2.0 * eps / kPi) * 2.0 * std::exp(-2.0 * eps);
    CHECK(resonance_mode(k, f.analysis, f.network) <= bound);
  }
}

TEST_CASE("general resonance collapses to single modes") {
  const auto f = ring8();
  for (int k = 0; k <= 40; ++k) {
    const double rk = resonance_mode(k, f.analysis, f.network);
    CHECK(resonance_general(FourierPotential::cosine(k), f.analysis, f.network) == Approx(rk).epsilon(1e-13));
    if (k > 0) CHECK(resonance_general(FourierPotential::sine(k), f.analysis, f.network) == Approx(rk).epsilon(1e-13));
  }
  CHECK(resonance_general(FourierPotential::constant(3.0), f.analysis, f.network) == 0.0);
}

TEST_CASE("equidistant closed form equals the double sum") {
  const auto f = ring8();
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const auto psi = random_potential(30, rng);
    const double general = resonance_general(psi, f.analysis, f.network);
    const double closed = resonance_equidistant(psi, f.analysis, f.network);
    CHECK(std::abs(closed - general) <= 1e-12 * std::max(1.0, std::abs(general)));
  }
  const auto other = make(random_packing(10, 0.06, 1.0, 0.01, 4));
  CHECK_THROWS_AS(resonance_equidistant(FourierPotential::cosine(1), other.analysis, other.network), DomainError);
}

TEST_CASE("total energy: trivial cases") {
  const auto f = ring8();
  const auto b = total_energy(FourierPotential::constant(1.7), f.analysis, f.network);
  CHECK(std::abs(b.E_net) < 1e-20);
  CHECK(b.E_ref == 0.0);
  CHECK(b.R_res == 0.0);
  CHECK(b.quad_form == 2.0 * b.total);

  const auto empty = GeometryAnalysis::empty(1.0);
  for (int k = 0; k <= 10; ++k) {
    const auto e = total_energy(FourierPotential::cosine(k), empty, Network{});
    CHECK(e.total == Approx(0.5 * kPi * k));
    CHECK(e.quad_form == Approx(kPi * k));
  }
}

TEST_CASE("total energy of the two-disk series geometry") {
  Packing p;
  p.L = 2.015;
  p.inclusions = {{{-1.005, 0.0}, 1.0}, {{1.005, 0.0}, 1.0}};
  const auto f = make(p);
  REQUIRE(f.analysis.boundary_count == 2);
  const auto psi = FourierPotential::cosine(1);
  const auto b = total_energy(psi, f.analysis, f.network);
  const double g = ref::series_conductance({f.network.boundary_sigma(0), f.network.gap_edges[0].sigma, f.network.boundary_sigma(1)});
  const double d = b.excitation(0) - b.excitation(1);
  CHECK(b.E_net == Approx(0.5 * g * d * d).epsilon(1e-12));
  CHECK(b.E_ref == Approx(0.5 * kPi));
  CHECK(b.R_res == Approx(resonance_mode(1, f.analysis, f.network)).epsilon(1e-13));
  CHECK(b.total == b.E_net + b.E_ref + b.R_res);
}

TEST_CASE("regime classification") {
  // delta = 1e-4, R = 1e-2, L = 1.
  const auto f = single_disk(0.01, 1e-4);
  auto r = regime_classify(10, f.analysis);
  CHECK(r.epsilon == Approx(1e-3));
  CHECK(r.eta == Approx(0.1));
  CHECK(r.regime == 1);
  // k = 10000 sits on the threshold; the gap 1 - 0.9899 - 0.01 rounds just
  // below 1e-4, so step one past it.
  r = regime_classify(10000, f.analysis);
  CHECK(r.epsilon == Approx(1.0));
  r = regime_classify(10001, f.analysis);
  CHECK(r.regime == 2);
  r = regime_classify(300, f.analysis);
  CHECK(r.epsilon == Approx(0.03));
  CHECK(r.eta == Approx(3.0));
  CHECK(r.regime == 3);
}

TEST_CASE("regime estimates") {
  SUBCASE("regime 1 drops only the resonance") {
    const auto f = make(equal_gap_ring(16, 0.12, 0.0006));
    const auto est = regime_estimate(1, f.analysis, f.network);
    REQUIRE(est.regime.regime == 1);
    REQUIRE(est.regime.epsilon <= 1e-3);
    const auto full = total_energy(FourierPotential::cosine(1), f.analysis, f.network);
    const double rk = resonance_mode(1, f.analysis, f.network);
    CHECK(est.approx_total - full.total == Approx(-rk).epsilon(1e-10));
    CHECK(std::abs(rk) / full.total <= 0.05);
  }
  SUBCASE("regime 2 keeps the reference medium") {
    const auto f = ring8();
    for (int k = 34; k <= 200; k += 11) {
      const auto est = regime_estimate(k, f.analysis, f.network);
      REQUIRE(est.regime.epsilon >= 5.0);
      const auto full = total_energy(FourierPotential::cosine(k), f.analysis, f.network);
      CHECK(est.approx_total == Approx(0.5 * kPi * k));
      CHECK(rel(est.approx_total, full.total) <= 0.05);
    }
  }
  SUBCASE("regime 3 keeps everything") {
    const auto f = single_disk(0.01, 1e-4);
    const auto est = regime_estimate(300, f.analysis, f.network);
    REQUIRE(est.regime.regime == 3);
    CHECK(est.approx_total == total_energy(FourierPotential::cosine(300), f.analysis, f.network).total);
    CHECK_FALSE(est.description.empty());
  }
}

TEST_CASE("regime 2 limit of the quadratic form") {
  const auto f = ring8();
  for (int k = 1; k <= 400; ++k) {
    const auto r = regime_classify(k, f.analysis);
    if (r.epsilon < 5.0) continue;
    const double ratio = total_energy(FourierPotential::cosine(k), f.analysis, f.network).quad_form / (kPi * k);
    CHECK(ratio >= 0.999);
    CHECK(ratio <= 1.05);
  }
}

TEST_CASE("quadratic form obeys the parallelogram law") {
  const auto f = make(random_packing(12, 0.06, 1.0, 0.01, 8));
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(-2.0, 2.0);
  auto Q = [&](const FourierPotential& p) { return total_energy(p, f.analysis, f.network).quad_form; };
  for (int trial = 0; trial < 10; ++trial) {
    const auto u = random_potential(12, rng), v = random_potential(12, rng);
    const double a = unit(rng), b = unit(rng);
    const double lhs = Q(u * a + v * b) + Q(u * a + v * (-b));
    const double rhs = 2.0 * a * a * Q(u) + 2.0 * b * b * Q(v);
    CHECK(rel(lhs, rhs) <= 1e-9);
  }
}

TEST_CASE("rotating packing and data together leaves the form unchanged") {
  const Packing p = random_packing(12, 0.06, 1.0, 0.01, 31);
  const auto f = make(p);
  std::mt19937_64 rng(2);
  const auto psi = random_potential(8, rng);
  const double q0 = total_energy(psi, f.analysis, f.network).quad_form;
  for (double phi : {0.25, 2.0, 5.5}) {
    Packing q = p;
    for (auto& d : q.inclusions) {
      const double x = d.center.x, y = d.center.y;
      d.center = {x * std::cos(phi) - y * std::sin(phi), x * std::sin(phi) + y * std::cos(phi)};
    }
    const auto g = make(q);
    CHECK(rel(total_energy(psi.rotated(phi), g.analysis, g.network).quad_form, q0) <= 1e-10);
  }
}

TEST_CASE("generalized mode uses local radii") {
  Packing p;
  p.inclusions = {{{-0.55, 0.0}, 0.3}, {{0.5, 0.0}, 0.2}, {{0.0, 0.6}, 0.25}};
  const auto f = make(p, ConductivityMode::generalized);
  const auto b = total_energy(FourierPotential::cosine(2), f.analysis, f.network);
  CHECK(b.E_net > 0.0);
  for (int i = 0; i < f.analysis.boundary_count; ++i) {
    const double R = f.analysis.radius(i), d = f.analysis.boundary_gaps[static_cast<std::size_t>(i)];
    const double t = f.analysis.boundary_angles[static_cast<std::size_t>(i)];
    CHECK(b.excitation(i) == Approx(std::cos(2.0 * t) * std::exp(-2.0 * std::sqrt(2.0 * R * d))));
  }
}

TEST_CASE("boundary layer energy") {
  const auto f = ring8();
  const int nb = f.analysis.boundary_count;
  CHECK(boundary_layer_energy(Eigen::VectorXd::Ones(nb), 0, f.analysis, f.network) == Approx(0.0));
  const int k = 5;
  const Eigen::VectorXd target = boundary_excitation(FourierPotential::cosine(k), f.analysis);
  double expected = 0.5 * kPi * k;
  for (int i = 0; i < nb; ++i) {
    const double sigma = f.network.boundary_sigma(i);
    const double kappa = k * std::sqrt(2.0 * 0.1 * 0.05);
    const double x = 2.0 * k * 0.05;
    expected += 0.25 * sigma * (std::sqrt(x / kPi) * polylog_half(x) - std::exp(-kappa));
  }
  CHECK(boundary_layer_energy(target, k, f.analysis, f.network) == Approx(expected).epsilon(1e-12));
  // Convex quadratic with Hessian diag(sigma): second differences.
  const double h = 1e-3;
  for (int i = 0; i < nb; ++i) {
    Eigen::VectorXd up = target, dn = target;
    up(i) += h;
    dn(i) -= h;
    const double second = (boundary_layer_energy(up, k, f.analysis, f.network) - 2.0 * boundary_layer_energy(target, k, f.analysis, f.network) +
                           boundary_layer_energy(dn, k, f.analysis, f.network)) / (h * h);
    CHECK(second == Approx(f.network.boundary_sigma(i)).epsilon(1e-5));
  }
  CHECK_THROWS_AS(boundary_layer_energy(Eigen::VectorXd::Ones(3), 1, f.analysis, f.network), DomainError);
}

TEST_CASE("decomposition discrepancy equals the exponential mismatch") {
  const auto f = ring8();
  const auto d0 = total_energy_decomposed(0, f.analysis, f.network);
  CHECK(std::abs(d0.value) < 1e-12);
  CHECK(std::abs(d0.discrepancy) < 1e-12);
  for (int k : {1, 5, 20, 100}) {
    const auto d = total_energy_decomposed(k, f.analysis, f.network);
    const double m = decomposition_mismatch(k, f.analysis, f.network);
    CHECK(rel(d.discrepancy, m) <= 1e-9);
  }
  // kappa >= 10 for every boundary inclusion.
  const int k = static_cast<int>(std::ceil(10.0 / std::sqrt(2.0 * 0.1 * 0.05)));
  double bound = 0.0;
  for (int i = 0; i < f.analysis.boundary_count; ++i) bound += 0.25 * f.network.boundary_sigma(i) * std::exp(-10.0);
  CHECK(std::abs(total_energy_decomposed(k, f.analysis, f.network).discrepancy) <= bound);
}

TEST_CASE("decomposition on a geometry with interior inclusions") {
  const auto f = make(hex_grid_packing(1.0, 0.08, 0.01));
  REQUIRE(f.analysis.boundary_count < f.analysis.size());
  for (int k : {1, 3, 8}) {
    const auto d = total_energy_decomposed(k, f.analysis, f.network);
    CHECK(rel(d.discrepancy, decomposition_mismatch(k, f.analysis, f.network)) <= 1e-9);
  }
}
