#pragma once

#include <limits>
#include <string>
#include <vector>

namespace hcdtn {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Disk {
  Point center;
  double radius = 0.0;
};

/// Raw geometry: a disk domain of radius L centered at the origin holding
/// perfectly conducting disk inclusions.  Lengths are dimensionless; L sets
/// the unit.
struct Packing {
  double L = 1.0;
  std::vector<Disk> inclusions;

  int size() const { return static_cast<int>(inclusions.size()); }
};

/// Returns `packing` unchanged when every inclusion has positive radius, lies
/// strictly inside the domain, and no two inclusions touch.
///
/// Throws EmptyPackingError, OutsideDomainError(i), OverlapError(i, j), or
/// DomainError for non-finite / non-positive data.
Packing validate_packing(Packing packing);

using NeighborSets = std::vector<std::vector<int>>;

struct AdjacencyOptions {
  /// Drop gap edges whose width exceeds this value.  Default keeps all.
  double delta_max_edge = std::numeric_limits<double>::infinity();
};

/// Length of the edge shared by the Voronoi cells of centers i and j, both
/// cells clipped to the domain disk.  Zero when the cells meet in at most a
/// point.
double voronoi_edge_length(const Packing& packing, int i, int j);

/// Voronoi neighbor sets of the inclusion centers (cells clipped to the
/// domain).  Each set is sorted ascending; the relation is symmetric.
NeighborSets compute_adjacency(const Packing& packing, const AdjacencyOptions& options = {});

/// Angular measure of the arc of the outer boundary on which center i is the
/// nearest center.
double boundary_arc_measure(const Packing& packing, int i);

struct GapEdge {
  int i = 0;  // i < j
  int j = 0;
  double delta = 0.0;
};

/// Derived structure of a packing.  Inclusions are renumbered: indices
/// [0, boundary_count) are the boundary-neighboring ones, ordered by strictly
/// increasing angle; the interior ones follow in their original order.
struct GeometryAnalysis {
  Packing packing;
  std::vector<int> original_index;  // original_index[new] = index in the input
  NeighborSets neighbors;
  std::vector<GapEdge> gaps;        // one entry per unordered adjacent pair
  int boundary_count = 0;
  std::vector<double> boundary_gaps;    // distance from inclusion i to the outer boundary
  std::vector<double> boundary_angles;  // in [0, 2*pi)
  std::vector<Point> boundary_nodes;    // L (cos, sin) of the angle
  bool centered_disk = false;           // a boundary disk sits at the origin; its angle is 0

  int size() const { return packing.size(); }
  double L() const { return packing.L; }
  double radius(int i) const { return packing.inclusions[static_cast<std::size_t>(i)].radius; }

  /// Gap width between adjacent inclusions; throws DomainError otherwise.
  double gap(int i, int j) const;

  /// Analysis of a domain without inclusions (reference medium only).
  static GeometryAnalysis empty(double L);
};

/// Classifies boundary-neighboring inclusions and renumbers all structures.
/// Throws DegenerateAngleError if two boundary inclusions share an angle.
GeometryAnalysis classify_boundary(const Packing& packing, const NeighborSets& neighbors);

/// validate_packing + compute_adjacency + classify_boundary.
GeometryAnalysis analyze_geometry(const Packing& packing, const AdjacencyOptions& options = {});

struct ScaleReport {
  double delta_max = 0.0;
  double delta_min = 0.0;
  double R_min = 0.0;
  double R_max = 0.0;
  double ratio_delta_R = 0.0;  // delta_max / R_min
  double ratio_R_L = 0.0;      // R_max / L
  std::vector<std::string> warnings;
};

inline constexpr double kGapRatioWarning = 0.2;
inline constexpr double kRadiusRatioWarning = 0.3;

ScaleReport scale_report(const GeometryAnalysis& analysis);

}  // namespace hcdtn
