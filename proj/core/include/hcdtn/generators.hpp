#pragma once

#include <cstdint>

#include "hcdtn/geometry.hpp"

namespace hcdtn {

/// n disks of radius R, centers on the circle of radius rho_c at angles
/// 2 pi i / n.  Throws InfeasibleError when neighbors touch or a disk reaches
/// the outer boundary.
Packing ring_packing(int n, double rho_c, double R, double L = 1.0);

/// Ring in which the gap between neighbors equals the gap to the outer
/// boundary (both = delta relative to R before rescaling), rescaled so the
/// domain radius is L.  The result depends only on n, delta / R and L.
Packing equal_gap_ring(int n, double R, double delta, double L = 1.0);

/// Hexagonal patch of disks of radius R with uniform neighbor gap, keeping the
/// disks at distance at least `gap` from the outer boundary.
Packing hex_grid_packing(double L, double R, double gap);

/// n disks of radius R placed by rejection sampling with every gap (to other
/// disks and to the boundary) at least delta_min.  Deterministic in `seed`.
/// Throws InfeasibleError after too many rejected draws.
Packing random_packing(int n, double R, double L, double delta_min, std::uint64_t seed);

}  // namespace hcdtn
