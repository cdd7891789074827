#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <hcdtn/errors.hpp>
#include <hcdtn/generators.hpp>
#include <hcdtn/geometry.hpp>

#include "support/reference.hpp"

using namespace hcdtn;
using doctest::Approx;

namespace {

Packing two_disks(double half, double R, double L) {
  Packing p;
  p.L = L;
  p.inclusions = {{{-half, 0.0}, R}, {{half, 0.0}, R}};
  return p;
}

bool has_edge(const NeighborSets& n, int i, int j) {
  const auto& s = n[static_cast<std::size_t>(i)];
  return std::find(s.begin(), s.end(), j) != s.end();
}

Packing rotate(const Packing& p, double phi) {
  Packing q = p;
  for (auto& d : q.inclusions) {
    const double x = d.center.x, y = d.center.y;
    d.center = {x * std::cos(phi) - y * std::sin(phi), x * std::sin(phi) + y * std::cos(phi)};
  }
  return q;
}

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<double> gap_values(const GeometryAnalysis& a) {
  std::vector<double> v;
  for (const auto& g : a.gaps) v.push_back(g.delta);
  return sorted(v);
}

}  // namespace

TEST_CASE("validate accepts a near-touching pair") {
  const Packing p = two_disks(1.005, 1.0, 10.0);
  CHECK(validate_packing(p).size() == 2);
}

TEST_CASE("validate rejects tangent disks") {
  CHECK_THROWS_AS(validate_packing(two_disks(1.0, 1.0, 10.0)), OverlapError);
}

TEST_CASE("validate rejects a disk crossing the boundary") {
  Packing p;
  p.inclusions = {{{0.95, 0.0}, 0.1}};
  CHECK_THROWS_AS(validate_packing(p), OutsideDomainError);
}

TEST_CASE("validate rejects empty and degenerate input") {
  CHECK_THROWS_AS(validate_packing(Packing{}), EmptyPackingError);
  Packing p;
  p.inclusions = {{{0.0, 0.0}, -0.1}};
  CHECK_THROWS_AS(validate_packing(p), DomainError);
  p.inclusions = {{{std::nan(""), 0.0}, 0.1}};
  CHECK_THROWS_AS(validate_packing(p), DomainError);
}

TEST_CASE("two disks are always neighbors") {
  const auto n = compute_adjacency(two_disks(1.005, 1.0, 10.0));
  CHECK(n[0] == std::vector<int>{1});
  CHECK(n[1] == std::vector<int>{0});
}

TEST_CASE("equilateral triangle: all pairs adjacent") {
  Packing p;
  p.L = 20.0;
  const double side = 2.02, circ = side / std::sqrt(3.0);
  for (int i = 0; i < 3; ++i) {
    const double t = 2.0 * std::numbers::pi * i / 3.0 + 0.5 * std::numbers::pi;
    p.inclusions.push_back({{circ * std::cos(t), circ * std::sin(t)}, 1.0});
  }
  const auto n = compute_adjacency(p);
  for (int i = 0; i < 3; ++i) CHECK(n[static_cast<std::size_t>(i)].size() == 2);
}

TEST_CASE("four disks on a line form a chain") {
  Packing p;
  p.L = 20.0;
  for (double x : {-3.03, -1.01, 1.01, 3.03}) p.inclusions.push_back({{x, 0.0}, 1.0});
  const auto n = compute_adjacency(p);
  CHECK(has_edge(n, 0, 1));
  CHECK(has_edge(n, 1, 2));
  CHECK(has_edge(n, 2, 3));
  CHECK_FALSE(has_edge(n, 0, 2));
  CHECK_FALSE(has_edge(n, 1, 3));
  CHECK_FALSE(has_edge(n, 0, 3));
}

TEST_CASE("adjacency agrees with a nearest-center grid") {
  constexpr int grid = 900;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const int count = 6 + static_cast<int>(seed) * 2;  // up to 18
    const Packing p = random_packing(count, 0.05, 1.0, 0.01, seed);
    const auto exact = compute_adjacency(p);
    const auto coarse = ref::grid_adjacency(p, grid);
    const double h = 2.0 * p.L / grid;
    // Every grid contact is a true neighbor, and every long shared edge is seen.
    for (const auto& [i, j] : coarse) CHECK(has_edge(exact, i, j));
    for (int i = 0; i < p.size(); ++i)
      for (int j : exact[static_cast<std::size_t>(i)])
        if (i < j && voronoi_edge_length(p, i, j) >= 5.0 * h) CHECK(coarse.count({i, j}) == 1);
    // Symmetry.
    for (int i = 0; i < p.size(); ++i)
      for (int j : exact[static_cast<std::size_t>(i)]) CHECK(has_edge(exact, j, i));
  }
}

TEST_CASE("delta_max_edge drops wide gaps") {
  const Packing p = ring_packing(8, 0.85, 0.1);
  AdjacencyOptions opt;
  opt.delta_max_edge = 0.3;
  const auto n = compute_adjacency(p, opt);
  for (const auto& s : n) CHECK(s.empty());
  CHECK(compute_adjacency(p)[0].size() == 2);
}

TEST_CASE("ring of eight: all on the boundary, equal gaps and spacing") {
  const auto a = analyze_geometry(ring_packing(8, 0.85, 0.1));
  REQUIRE(a.boundary_count == 8);
  for (int i = 0; i < 8; ++i) {
    CHECK(a.boundary_gaps[static_cast<std::size_t>(i)] == Approx(0.05).epsilon(1e-13));
    CHECK(a.boundary_angles[static_cast<std::size_t>(i)] == Approx(2.0 * std::numbers::pi * i / 8).epsilon(1e-13));
    const auto& x = a.boundary_nodes[static_cast<std::size_t>(i)];
    CHECK(std::hypot(x.x, x.y) == Approx(1.0).epsilon(1e-15));
  }
  CHECK(a.gaps.size() == 8);
  for (const auto& g : a.gaps) CHECK(g.delta == Approx(0.45056183502065256).epsilon(1e-13));
}

TEST_CASE("single centered disk: angle convention") {
  Packing p;
  p.inclusions = {{{0.0, 0.0}, 0.1}};
  const auto a = analyze_geometry(p);
  CHECK(a.boundary_count == 1);
  CHECK(a.boundary_gaps[0] == Approx(0.9));
  CHECK(a.boundary_angles[0] == 0.0);
  CHECK(a.centered_disk);
  const auto r = scale_report(a);
  CHECK(std::find(r.warnings.begin(), r.warnings.end(), "centered_disk_angle_convention") != r.warnings.end());
}

TEST_CASE("ring plus center: the center is interior") {
  Packing p = ring_packing(8, 0.85, 0.1);
  p.inclusions.push_back({{0.0, 0.0}, 0.1});
  const auto a = analyze_geometry(p);
  CHECK(a.boundary_count == 8);
  CHECK(a.original_index[8] == 8);
  CHECK_FALSE(a.centered_disk);
}

TEST_CASE("renumbering orders boundary inclusions counterclockwise") {
  Packing p;
  p.inclusions = {{{0.0, -0.8}, 0.1}, {{0.0, 0.0}, 0.1}, {{0.8, 0.0}, 0.1}, {{0.0, 0.8}, 0.1}, {{-0.8, 0.0}, 0.1}};
  const auto a = analyze_geometry(p);
  REQUIRE(a.boundary_count == 4);
  CHECK(a.original_index == std::vector<int>{2, 3, 4, 0, 1});
  for (int i = 1; i < a.boundary_count; ++i)
    CHECK(a.boundary_angles[static_cast<std::size_t>(i)] > a.boundary_angles[static_cast<std::size_t>(i - 1)]);
}

TEST_CASE("two boundary disks on one ray are rejected") {
  Packing p;
  p.inclusions = {{{0.5, 0.0}, 0.05}, {{0.8, 0.0}, 0.05}};
  CHECK(boundary_arc_measure(p, 0) > 0.0);
  CHECK(boundary_arc_measure(p, 1) > 0.0);
  CHECK_THROWS_AS(analyze_geometry(p), DegenerateAngleError);
}

TEST_CASE("scale report on the ring") {
  const auto r = scale_report(analyze_geometry(ring_packing(8, 0.85, 0.1)));
  CHECK(r.ratio_R_L == Approx(0.1));
  CHECK(r.delta_min == Approx(0.05));
  CHECK(r.delta_max == Approx(0.45056183502065256));
  CHECK(std::find(r.warnings.begin(), r.warnings.end(), "gaps_not_small") != r.warnings.end());
}

TEST_CASE("scale report counts boundary gaps") {
  // The neighbor gap is small; the boundary gaps of a large domain are not.
  const auto a = analyze_geometry(two_disks(1.005, 1.0, 100.0));
  const auto r = scale_report(a);
  CHECK(r.delta_min == Approx(0.01));
  CHECK(r.ratio_delta_R == Approx(100.0 - 2.005));
  const auto tight = scale_report(analyze_geometry(two_disks(1.005, 1.0, 2.015)));
  CHECK(tight.ratio_delta_R == Approx(0.01));
  CHECK(std::find(tight.warnings.begin(), tight.warnings.end(), "gaps_not_small") == tight.warnings.end());
}

TEST_CASE("single inclusion: boundary gaps only") {
  Packing p;
  p.inclusions = {{{0.5, 0.0}, 0.2}};
  const auto a = analyze_geometry(p);
  CHECK(a.gaps.empty());
  const auto r = scale_report(a);
  CHECK(r.delta_min == Approx(0.3));
  CHECK(r.delta_max == Approx(0.3));
}

TEST_CASE("rotation shifts angles and keeps gaps") {
  const Packing p = random_packing(12, 0.06, 1.0, 0.01, 42);
  const auto a = analyze_geometry(p);
  for (double phi : {0.3, 1.7, 4.0}) {
    const auto b = analyze_geometry(rotate(p, phi));
    REQUIRE(b.boundary_count == a.boundary_count);
    const auto ga = gap_values(a), gb = gap_values(b);
    for (std::size_t e = 0; e < ga.size(); ++e) CHECK(gb[e] == Approx(ga[e]).epsilon(1e-12));
    // Angles shift by phi; indices are a cyclic shift of the original order.
    std::vector<double> shifted;
    for (double t : a.boundary_angles) shifted.push_back(std::fmod(t + phi, 2.0 * std::numbers::pi));
    const auto sa = sorted(shifted), sb = sorted(b.boundary_angles);
    for (std::size_t e = 0; e < sa.size(); ++e) CHECK(sb[e] == Approx(sa[e]).epsilon(1e-12));
    const int nb = a.boundary_count;
    const auto first = std::find(a.original_index.begin(), a.original_index.begin() + nb, b.original_index[0]);
    REQUIRE(first != a.original_index.begin() + nb);
    const int offset = static_cast<int>(first - a.original_index.begin());
    for (int i = 0; i < nb; ++i)
      CHECK(b.original_index[static_cast<std::size_t>(i)] ==
            a.original_index[static_cast<std::size_t>((i + offset) % nb)]);
  }
}

TEST_CASE("scaling scales gaps and keeps structure") {
  const Packing p = random_packing(10, 0.06, 1.0, 0.01, 9);
  Packing q = p;
  const double s = 3.5;
  q.L *= s;
  for (auto& d : q.inclusions) {
    d.center = {d.center.x * s, d.center.y * s};
    d.radius *= s;
  }
  const auto a = analyze_geometry(p), b = analyze_geometry(q);
  CHECK(a.neighbors == b.neighbors);
  CHECK(a.original_index == b.original_index);
  for (std::size_t e = 0; e < a.gaps.size(); ++e) CHECK(b.gaps[e].delta == Approx(s * a.gaps[e].delta).epsilon(1e-12));
  for (std::size_t e = 0; e < a.boundary_gaps.size(); ++e) {
    CHECK(b.boundary_gaps[e] == Approx(s * a.boundary_gaps[e]).epsilon(1e-12));
    CHECK(b.boundary_angles[e] == Approx(a.boundary_angles[e]).epsilon(1e-12));
  }
}

TEST_CASE("gap lookup") {
  const auto a = analyze_geometry(ring_packing(8, 0.85, 0.1));
  CHECK(a.gap(0, 1) == Approx(0.45056183502065256));
  CHECK(a.gap(1, 0) == Approx(0.45056183502065256));
  CHECK_THROWS_AS(a.gap(0, 4), DomainError);
}
