#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hcdtn/geometry.hpp"

namespace hcdtn {

/// How gap conductivities are derived from the radii.  `identical` requires
/// all radii equal; `generalized` uses the local radius of each inclusion.
enum class ConductivityMode { identical, generalized };

struct GapConductance {
  int i = 0;  // i < j
  int j = 0;
  double sigma = 0.0;
};

/// Edge between boundary node `i` and inclusion `i` (i < boundary_count).
struct BoundaryConductance {
  int i = 0;
  double sigma = 0.0;
  double theta = 0.0;
};

/// Resistor network with one node per inclusion center and one boundary node
/// per boundary-neighboring inclusion.  Immutable after construction.
struct Network {
  std::vector<Point> interior_nodes;
  std::vector<Point> boundary_nodes;
  std::vector<GapConductance> gap_edges;
  std::vector<BoundaryConductance> boundary_edges;

  int inclusion_count() const { return static_cast<int>(interior_nodes.size()); }
  int boundary_count() const { return static_cast<int>(boundary_nodes.size()); }
  double boundary_sigma(int i) const { return boundary_edges[static_cast<std::size_t>(i)].sigma; }
};

/// pi sqrt(R / delta)
double identical_gap_conductivity(double R, double delta);
/// pi sqrt(2 R_i R_j / (delta (R_i + R_j)))
double generalized_gap_conductivity(double Ri, double Rj, double delta);
/// pi sqrt(2 R / delta)
double boundary_gap_conductivity(double R, double delta);

/// Throws ModeError for `identical` with unequal radii.
Network build_network(const GeometryAnalysis& analysis, ConductivityMode mode);

/// True when inclusion and boundary nodes form a single connected graph.
bool is_connected(const Network& network);

struct KirchhoffSolution {
  Eigen::VectorXd potentials;  // one per inclusion
  double energy = 0.0;
  double residual_norm = 0.0;
};

/// Minimizes the network energy for boundary potentials `psi` (one per
/// boundary node).  Throws SingularSystemError when some group of inclusions
/// has no path to a boundary node, DomainError on a size mismatch.
KirchhoffSolution solve_kirchhoff(const Network& network, const Eigen::VectorXd& psi);

double net_energy(const Network& network, const Eigen::VectorXd& psi);

/// Schur complement of the weighted graph Laplacian onto the boundary nodes.
/// Throws SingularSystemError for disconnected networks.
Eigen::MatrixXd dtn_matrix(const Network& network);

/// Energy of the gap edges alone, minimized over the potentials of interior
/// inclusions with the boundary-inclusion potentials fixed to `u_gamma`.
/// Throws FloatingComponentError if an interior group has no gap path to a
/// boundary inclusion.
double interior_gap_energy(const Network& network, const Eigen::VectorXd& u_gamma);

/// Schur complement of the gap-edge Laplacian onto the boundary inclusions:
/// interior_gap_energy(u) == u^T S u / 2.
Eigen::MatrixXd gap_schur_complement(const Network& network);

}  // namespace hcdtn
