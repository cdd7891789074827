#include "hcdtn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <utility>

#include "hcdtn/errors.hpp"

namespace hcdtn {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Edges and arcs shorter than this (relative to L, resp. in radians) are
// treated as Voronoi vertices rather than shared edges.
constexpr double kEdgeTolerance = 1e-9;
constexpr double kArcTolerance = 1e-12;
constexpr double kAngleTieTolerance = 1e-12;

double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
double norm(Point a) { return std::hypot(a.x, a.y); }
Point sub(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }

double normalize_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t -= kTwoPi;
  return t;
}

using Interval = std::pair<double, double>;

// Intersection of two sorted lists of disjoint intervals.
std::vector<Interval> intersect(const std::vector<Interval>& a, const std::vector<Interval>& b) {
  std::vector<Interval> out;
  std::size_t p = 0, q = 0;
  while (p < a.size() && q < b.size()) {
    const double lo = std::max(a[p].first, b[q].first);
    const double hi = std::min(a[p].second, b[q].second);
    if (lo < hi) out.emplace_back(lo, hi);
    if (a[p].second < b[q].second) ++p; else ++q;
  }
  return out;
}

// Arc (center - half, center + half) of the circle as sorted intervals in [0, 2pi).
std::vector<Interval> arc_intervals(double center, double half) {
  const double start = normalize_angle(center - half);
  const double end = start + 2.0 * half;
  if (end <= kTwoPi) return {{start, end}};
  return {{0.0, end - kTwoPi}, {start, kTwoPi}};
}

}  // namespace

Packing validate_packing(Packing packing) {
  if (!std::isfinite(packing.L) || packing.L <= 0.0)
    throw DomainError("domain radius L must be positive and finite");
  const int n = packing.size();
  if (n == 0) throw EmptyPackingError("packing has no inclusions");
  for (int i = 0; i < n; ++i) {
    const Disk& d = packing.inclusions[static_cast<std::size_t>(i)];
    if (!std::isfinite(d.center.x) || !std::isfinite(d.center.y) || !std::isfinite(d.radius))
      throw DomainError("inclusion " + std::to_string(i) + " has non-finite data");
    if (d.radius <= 0.0)
      throw DomainError("inclusion " + std::to_string(i) + " has non-positive radius");
    if (norm(d.center) + d.radius >= packing.L) throw OutsideDomainError(i);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Disk& a = packing.inclusions[static_cast<std::size_t>(i)];
      const Disk& b = packing.inclusions[static_cast<std::size_t>(j)];
      if (norm(sub(a.center, b.center)) <= a.radius + b.radius) throw OverlapError(i, j);
    }
  }
  return packing;
}

double voronoi_edge_length(const Packing& packing, int i, int j) {
  const auto& inc = packing.inclusions;
  const Point xi = inc[static_cast<std::size_t>(i)].center;
  const Point xj = inc[static_cast<std::size_t>(j)].center;
  const Point m{0.5 * (xi.x + xj.x), 0.5 * (xi.y + xj.y)};
  const Point dij = sub(xj, xi);
  const double len = norm(dij);
  if (len == 0.0) return 0.0;
  const Point d{-dij.y / len, dij.x / len};

  // Bisector m + t d clipped to the domain disk.
  const double md = dot(m, d);
  const double disc = md * md - (dot(m, m) - packing.L * packing.L);
  if (disc <= 0.0) return 0.0;
  double lo = -md - std::sqrt(disc);
  double hi = -md + std::sqrt(disc);

  // Every other center k cuts the bisector to the half-line where x_i (and
  // hence x_j) is strictly closer than x_k:  (x_i - x_k).(2z - x_i - x_k) > 0.
  for (int k = 0; k < packing.size() && lo < hi; ++k) {
    if (k == i || k == j) continue;
    const Point xk = inc[static_cast<std::size_t>(k)].center;
    const Point v = sub(xi, xk);
    const double a = 2.0 * dot(v, d);
    const double b = dot(v, Point{2.0 * m.x - xi.x - xk.x, 2.0 * m.y - xi.y - xk.y});
    if (std::abs(a) <= 1e-300) {
      if (b <= 0.0) return 0.0;
      continue;
    }
    const double root = -b / a;
    if (a > 0.0) lo = std::max(lo, root); else hi = std::min(hi, root);
  }
  return std::max(0.0, hi - lo);
}

NeighborSets compute_adjacency(const Packing& packing, const AdjacencyOptions& options) {
  const int n = packing.size();
  NeighborSets neighbors(static_cast<std::size_t>(n));
  const double tol = kEdgeTolerance * packing.L;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (voronoi_edge_length(packing, i, j) <= tol) continue;
      const Disk& a = packing.inclusions[static_cast<std::size_t>(i)];
      const Disk& b = packing.inclusions[static_cast<std::size_t>(j)];
      const double delta = norm(sub(a.center, b.center)) - a.radius - b.radius;
      if (delta > options.delta_max_edge) continue;
      neighbors[static_cast<std::size_t>(i)].push_back(j);
      neighbors[static_cast<std::size_t>(j)].push_back(i);
    }
  }
  for (auto& s : neighbors) std::sort(s.begin(), s.end());
  return neighbors;
}

double boundary_arc_measure(const Packing& packing, int i) {
  const auto& inc = packing.inclusions;
  const Point xi = inc[static_cast<std::size_t>(i)].center;
  std::vector<Interval> feasible{{0.0, kTwoPi}};
  // Nearest-center condition at p = L(cos t, sin t) against center k:
  //   2 L (x_i - x_k).(cos t, sin t) > |x_i|^2 - |x_k|^2.
  for (int k = 0; k < packing.size() && !feasible.empty(); ++k) {
    if (k == i) continue;
    const Point xk = inc[static_cast<std::size_t>(k)].center;
    const Point v = sub(xi, xk);
    const double r = norm(v);
    if (r == 0.0) return 0.0;
    const double c = (dot(xi, xi) - dot(xk, xk)) / (2.0 * packing.L * r);
    if (c >= 1.0) return 0.0;
    if (c <= -1.0) continue;
    feasible = intersect(feasible, arc_intervals(std::atan2(v.y, v.x), std::acos(c)));
  }
  double total = 0.0;
  for (const auto& [lo, hi] : feasible) total += hi - lo;
  return total;
}

double GeometryAnalysis::gap(int i, int j) const {
  if (i > j) std::swap(i, j);
  for (const auto& e : gaps)
    if (e.i == i && e.j == j) return e.delta;
  throw DomainError("inclusions " + std::to_string(i) + " and " + std::to_string(j) +
                    " are not adjacent");
}

GeometryAnalysis GeometryAnalysis::empty(double L) {
  GeometryAnalysis a;
  a.packing.L = L;
  return a;
}

GeometryAnalysis classify_boundary(const Packing& packing, const NeighborSets& neighbors) {
  const int n = packing.size();
  struct Entry {
    int index;
    double theta;
  };
  std::vector<Entry> boundary;
  std::vector<int> interior;
  bool centered = false;
  for (int i = 0; i < n; ++i) {
    if (boundary_arc_measure(packing, i) > kArcTolerance) {
      const Point c = packing.inclusions[static_cast<std::size_t>(i)].center;
      double theta = 0.0;
      if (norm(c) <= 1e-14 * packing.L) centered = true;
      else theta = normalize_angle(std::atan2(c.y, c.x));
      boundary.push_back({i, theta});
    } else {
      interior.push_back(i);
    }
  }
  std::stable_sort(boundary.begin(), boundary.end(),
                   [](const Entry& a, const Entry& b) { return a.theta < b.theta; });
  for (std::size_t b = 0; b + 1 < boundary.size(); ++b) {
    if (boundary[b + 1].theta - boundary[b].theta <= kAngleTieTolerance)
      throw DegenerateAngleError("boundary inclusions " + std::to_string(boundary[b].index) +
                                 " and " + std::to_string(boundary[b + 1].index) +
                                 " share the same angle");
  }
  if (boundary.size() > 1 &&
      boundary.front().theta + kTwoPi - boundary.back().theta <= kAngleTieTolerance)
    throw DegenerateAngleError("boundary inclusions " + std::to_string(boundary.front().index) +
                               " and " + std::to_string(boundary.back().index) +
                               " share the same angle");

  GeometryAnalysis a;
  a.packing.L = packing.L;
  a.boundary_count = static_cast<int>(boundary.size());
  a.centered_disk = centered;
  for (const auto& e : boundary) a.original_index.push_back(e.index);
  a.original_index.insert(a.original_index.end(), interior.begin(), interior.end());

  std::vector<int> new_index(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) new_index[static_cast<std::size_t>(a.original_index[static_cast<std::size_t>(k)])] = k;

  a.neighbors.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const int old = a.original_index[static_cast<std::size_t>(k)];
    a.packing.inclusions.push_back(packing.inclusions[static_cast<std::size_t>(old)]);
    for (int nb : neighbors[static_cast<std::size_t>(old)])
      a.neighbors[static_cast<std::size_t>(k)].push_back(new_index[static_cast<std::size_t>(nb)]);
    std::sort(a.neighbors[static_cast<std::size_t>(k)].begin(), a.neighbors[static_cast<std::size_t>(k)].end());
  }
  for (int i = 0; i < n; ++i) {
    for (int j : a.neighbors[static_cast<std::size_t>(i)]) {
      if (j <= i) continue;
      const Disk& di = a.packing.inclusions[static_cast<std::size_t>(i)];
      const Disk& dj = a.packing.inclusions[static_cast<std::size_t>(j)];
      a.gaps.push_back({i, j, norm(sub(di.center, dj.center)) - di.radius - dj.radius});
    }
  }
  for (const auto& e : boundary) {
    const Disk& d = packing.inclusions[static_cast<std::size_t>(e.index)];
    a.boundary_gaps.push_back(packing.L - norm(d.center) - d.radius);
    a.boundary_angles.push_back(e.theta);
    a.boundary_nodes.push_back({packing.L * std::cos(e.theta), packing.L * std::sin(e.theta)});
  }
  return a;
}

GeometryAnalysis analyze_geometry(const Packing& packing, const AdjacencyOptions& options) {
  const Packing valid = validate_packing(packing);
  return classify_boundary(valid, compute_adjacency(valid, options));
}

ScaleReport scale_report(const GeometryAnalysis& analysis) {
  ScaleReport r;
  std::vector<double> deltas;
  for (const auto& e : analysis.gaps) deltas.push_back(e.delta);
  deltas.insert(deltas.end(), analysis.boundary_gaps.begin(), analysis.boundary_gaps.end());
  if (!deltas.empty()) {
    const auto [lo, hi] = std::minmax_element(deltas.begin(), deltas.end());
    r.delta_min = *lo;
    r.delta_max = *hi;
  }
  if (analysis.size() > 0) {
    const auto& inc = analysis.packing.inclusions;
    const auto [lo, hi] = std::minmax_element(
        inc.begin(), inc.end(), [](const Disk& a, const Disk& b) { return a.radius < b.radius; });
    r.R_min = lo->radius;
    r.R_max = hi->radius;
    r.ratio_delta_R = r.delta_max / r.R_min;
    r.ratio_R_L = r.R_max / analysis.L();
  }
  if (r.ratio_delta_R > kGapRatioWarning) r.warnings.emplace_back("gaps_not_small");
  if (r.ratio_R_L > kRadiusRatioWarning) r.warnings.emplace_back("radii_not_small");
  if (analysis.centered_disk) r.warnings.emplace_back("centered_disk_angle_convention");
  return r;
}

}  // namespace hcdtn
