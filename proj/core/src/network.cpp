#include "hcdtn/network.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "hcdtn/errors.hpp"

namespace hcdtn {

namespace {

// Inclusions reachable from a boundary inclusion through gap edges.
std::vector<bool> reached_from_boundary(const Network& net) {
  const int n = net.inclusion_count();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const auto& e : net.gap_edges) {
    adj[static_cast<std::size_t>(e.i)].push_back(e.j);
    adj[static_cast<std::size_t>(e.j)].push_back(e.i);
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<int> stack;
  for (const auto& b : net.boundary_edges) {
    if (!seen[static_cast<std::size_t>(b.i)]) {
      seen[static_cast<std::size_t>(b.i)] = true;
      stack.push_back(b.i);
    }
  }
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

Eigen::MatrixXd gap_laplacian(const Network& net) {
  const int n = net.inclusion_count();
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : net.gap_edges) {
    G(e.i, e.i) += e.sigma;
    G(e.j, e.j) += e.sigma;
    G(e.i, e.j) -= e.sigma;
    G(e.j, e.i) -= e.sigma;
  }
  return G;
}

// Kirchhoff matrix: gap Laplacian plus the boundary conductances on the
// diagonal of the boundary inclusions.
Eigen::MatrixXd kirchhoff_matrix(const Network& net) {
  Eigen::MatrixXd A = gap_laplacian(net);
  for (const auto& b : net.boundary_edges) A(b.i, b.i) += b.sigma;
  return A;
}

void require_grounded(const Network& net) {
  const auto seen = reached_from_boundary(net);
  for (std::size_t v = 0; v < seen.size(); ++v)
    if (!seen[v])
      throw SingularSystemError("inclusion " + std::to_string(v) +
                                " has no path to a boundary node");
}

double network_energy(const Network& net, const Eigen::VectorXd& U, const Eigen::VectorXd& psi) {
  double e = 0.0;
  for (const auto& b : net.boundary_edges) {
    const double d = U(b.i) - psi(b.i);
    e += 0.5 * b.sigma * d * d;
  }
  for (const auto& g : net.gap_edges) {
    const double d = U(g.i) - U(g.j);
    e += 0.5 * g.sigma * d * d;
  }
  return e;
}

#ifndef NDEBUG
// Quadratic-form identity psi.Lambda psi = 2 E(psi) on a few random vectors.
double worst_dtn_identity_error(const Network& net, const Eigen::MatrixXd& lambda) {
  std::mt19937_64 rng(20240917);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 4; ++trial) {
    Eigen::VectorXd psi(net.boundary_count());
    for (int i = 0; i < psi.size(); ++i) psi(i) = unit(rng);
    const double q = psi.dot(lambda * psi);
    const double e2 = 2.0 * net_energy(net, psi);
    const double scale = std::max(std::abs(e2), 1e-12 * lambda.norm() * psi.squaredNorm());
    if (scale > 0.0) worst = std::max(worst, std::abs(q - e2) / scale);
  }
  return worst;
}
#endif

}  // namespace

double identical_gap_conductivity(double R, double delta) {
  return std::numbers::pi * std::sqrt(R / delta);
}

double generalized_gap_conductivity(double Ri, double Rj, double delta) {
  return std::numbers::pi * std::sqrt(2.0 * Ri * Rj / (delta * (Ri + Rj)));
}

double boundary_gap_conductivity(double R, double delta) {
  return std::numbers::pi * std::sqrt(2.0 * R / delta);
}

Network build_network(const GeometryAnalysis& analysis, ConductivityMode mode) {
  const int n = analysis.size();
  if (mode == ConductivityMode::identical) {
    for (int i = 1; i < n; ++i)
      if (analysis.radius(i) != analysis.radius(0))
        throw ModeError("identical conductivity mode needs equal radii; use generalized");
  }
  Network net;
  for (const auto& d : analysis.packing.inclusions) net.interior_nodes.push_back(d.center);
  net.boundary_nodes = analysis.boundary_nodes;
  for (const auto& g : analysis.gaps) {
    const double sigma = mode == ConductivityMode::identical
                             ? identical_gap_conductivity(analysis.radius(g.i), g.delta)
                             : generalized_gap_conductivity(analysis.radius(g.i), analysis.radius(g.j), g.delta);
    net.gap_edges.push_back({g.i, g.j, sigma});
  }
  for (int i = 0; i < analysis.boundary_count; ++i) {
    const double delta = analysis.boundary_gaps[static_cast<std::size_t>(i)];
    net.boundary_edges.push_back({i, boundary_gap_conductivity(analysis.radius(i), delta),
                                  analysis.boundary_angles[static_cast<std::size_t>(i)]});
  }
  return net;
}

bool is_connected(const Network& network) {
  if (network.inclusion_count() == 0) return network.boundary_count() <= 1;
  if (network.boundary_count() == 0) {
    // Only the inclusion graph; reuse the search by seeding from node 0.
    Network seeded = network;
    seeded.boundary_edges.push_back({0, 1.0, 0.0});
    const auto seen = reached_from_boundary(seeded);
    for (bool s : seen) if (!s) return false;
    return true;
  }
  // Boundary nodes have degree one, so connectivity reduces to every
  // inclusion being reachable from a single boundary inclusion.
  Network seeded = network;
  seeded.boundary_edges.resize(1);
  const auto seen = reached_from_boundary(seeded);
  for (bool s : seen) if (!s) return false;
  return true;
}

KirchhoffSolution solve_kirchhoff(const Network& network, const Eigen::VectorXd& psi) {
  if (psi.size() != network.boundary_count())
    throw DomainError("boundary potential has " + std::to_string(psi.size()) +
                      " entries, network has " + std::to_string(network.boundary_count()) +
                      " boundary nodes");
  KirchhoffSolution sol;
  const int n = network.inclusion_count();
  if (n == 0) return sol;
  require_grounded(network);

  const Eigen::MatrixXd A = kirchhoff_matrix(network);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  for (const auto& b : network.boundary_edges) rhs(b.i) = b.sigma * psi(b.i);

  const Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success) throw SingularSystemError("Kirchhoff matrix is not positive definite");
  sol.potentials = llt.solve(rhs);
  sol.residual_norm = (A * sol.potentials - rhs).norm();
  sol.energy = network_energy(network, sol.potentials, psi);
  return sol;
}

double net_energy(const Network& network, const Eigen::VectorXd& psi) {
  return solve_kirchhoff(network, psi).energy;
}

Eigen::MatrixXd dtn_matrix(const Network& network) {
  const int nb = network.boundary_count();
  if (!is_connected(network)) throw SingularSystemError("network is not connected");
  if (network.inclusion_count() == 0) return Eigen::MatrixXd::Zero(nb, nb);

  const Eigen::LLT<Eigen::MatrixXd> llt(kirchhoff_matrix(network));
  if (llt.info() != Eigen::Success) throw SingularSystemError("Kirchhoff matrix is not positive definite");

  // Lambda = D - D A^{-1} D restricted to boundary inclusions, D = diag(sigma_i).
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(network.inclusion_count(), nb);
  Eigen::VectorXd d(nb);
  for (const auto& b : network.boundary_edges) {
    rhs(b.i, b.i) = b.sigma;
    d(b.i) = b.sigma;
  }
  const Eigen::MatrixXd X = llt.matrixL().solve(rhs);
  Eigen::MatrixXd lambda = -X.transpose() * X;
  lambda.diagonal() += d;
  lambda = 0.5 * (lambda + lambda.transpose()).eval();
#ifndef NDEBUG
  if (worst_dtn_identity_error(network, lambda) > 1e-8)
    throw NumericalError("NumericalError", "DtN matrix violates the energy identity");
#endif
  return lambda;
}

Eigen::MatrixXd gap_schur_complement(const Network& network) {
  const int n = network.inclusion_count();
  const int nb = network.boundary_count();
  const auto seen = reached_from_boundary(network);
  for (int v = nb; v < n; ++v)
    if (!seen[static_cast<std::size_t>(v)])
      throw FloatingComponentError("interior inclusion " + std::to_string(v) +
                                   " is not connected to any boundary inclusion");
  const Eigen::MatrixXd G = gap_laplacian(network);
  const int ni = n - nb;
  Eigen::MatrixXd S = G.topLeftCorner(nb, nb);
  if (ni > 0) {
    const Eigen::LLT<Eigen::MatrixXd> llt(G.bottomRightCorner(ni, ni));
    if (llt.info() != Eigen::Success) throw FloatingComponentError("interior gap system is singular");
    S -= G.topRightCorner(nb, ni) * llt.solve(G.bottomLeftCorner(ni, nb));
    S = 0.5 * (S + S.transpose()).eval();
  }
  return S;
}

double interior_gap_energy(const Network& network, const Eigen::VectorXd& u_gamma) {
  const int n = network.inclusion_count();
  const int nb = network.boundary_count();
  if (u_gamma.size() != nb)
    throw DomainError("u_gamma has " + std::to_string(u_gamma.size()) + " entries, expected " +
                      std::to_string(nb));
  const auto seen = reached_from_boundary(network);
  for (int v = nb; v < n; ++v)
    if (!seen[static_cast<std::size_t>(v)])
      throw FloatingComponentError("interior inclusion " + std::to_string(v) +
                                   " is not connected to any boundary inclusion");

  Eigen::VectorXd U(n);
  U.head(nb) = u_gamma;
  const int ni = n - nb;
  if (ni > 0) {
    const Eigen::MatrixXd G = gap_laplacian(network);
    const Eigen::LLT<Eigen::MatrixXd> llt(G.bottomRightCorner(ni, ni));
    if (llt.info() != Eigen::Success) throw FloatingComponentError("interior gap system is singular");
    U.tail(ni) = llt.solve(-G.bottomLeftCorner(ni, nb) * u_gamma);
  }
  double e = 0.0;
  for (const auto& g : network.gap_edges) {
    const double d = U(g.i) - U(g.j);
    e += 0.5 * g.sigma * d * d;
  }
  return e;
}

}  // namespace hcdtn
