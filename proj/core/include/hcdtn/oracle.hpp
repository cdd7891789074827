#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "hcdtn/asymptotics.hpp"
#include "hcdtn/geometry.hpp"

namespace hcdtn {

// Direct numerical solution of the continuum problem: harmonic in the
// matrix, prescribed on the outer circle, an unknown constant on each
// inclusion with zero net flux.  The field is expanded in regular harmonics
// (r/L)^m of the domain plus decaying harmonics (R_i/r_i)^m of every
// inclusion; with no logarithmic terms the zero-flux condition holds exactly.
// The coefficients solve a least-squares collocation problem with 4 points
// per harmonic on every circle, factored once by Householder QR and reused
// for any number of boundary potentials.

struct OracleOptions {
  int order = 32;                    // M: domain harmonics, and the default per inclusion
  int inclusion_order = 0;           // per-inclusion harmonics; 0 means `order`
  double residual_tolerance = 1e-6;  // larger boundary residuals attach a warning
  double max_condition = 1e14;
  double min_gap_ratio = 1e-3;       // refuse when min gap / min radius falls below
};

struct SpectralSolution {
  double L = 1.0;
  std::vector<Disk> inclusions;
  // u = sum_m (r/L)^m (domain_cos[m] cos m t + domain_sin[m] sin m t)
  //   + sum_i sum_{m>=1} (R_i/r_i)^m (inclusion_cos[i][m] cos m t_i + inclusion_sin[i][m] sin m t_i)
  Eigen::VectorXd domain_cos;
  Eigen::VectorXd domain_sin;
  std::vector<Eigen::VectorXd> inclusion_cos;  // entry 0 unused
  std::vector<Eigen::VectorXd> inclusion_sin;
  Eigen::VectorXd potentials;  // constant value on each inclusion
  double energy = 0.0;
  double boundary_residual = 0.0;  // max |u - data| over a check grid on all circles
  std::vector<std::string> warnings;

  double evaluate(Point p) const;
  /// d u / d r on the outer circle.
  double boundary_flux(double theta) const;
};

class DirichletOracle {
 public:
  /// Assembles and factors the collocation system.  Throws OracleGuardError
  /// when the packing is too close to touching, IllConditionedError when the
  /// condition estimate exceeds options.max_condition.
  DirichletOracle(const Packing& packing, const OracleOptions& options);

  /// Throws DomainError if psi has frequencies above the domain order.
  SpectralSolution solve(const FourierPotential& psi) const;

  double condition_estimate() const { return condition_; }
  int order() const { return order_; }
  int inclusion_order() const { return inclusion_order_; }
  int unknowns() const { return static_cast<int>(qr_.cols()); }

 private:
  Packing packing_;
  OracleOptions options_;
  int order_ = 0;
  int inclusion_order_ = 0;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr_;
  double condition_ = 0.0;
};

SpectralSolution solve_dirichlet(const Packing& packing, const FourierPotential& psi, int order);

/// <psi, Lambda psi> = 2 E(psi).
double quad_form_oracle(const Packing& packing, const FourierPotential& psi, int order);

/// <psi_a, Lambda psi_b> by polarization.
double cross_form_oracle(const Packing& packing, const FourierPotential& psi_a,
                         const FourierPotential& psi_b, int order);
double cross_form_oracle(const DirichletOracle& oracle, const FourierPotential& psi_a,
                         const FourierPotential& psi_b);

/// (1/2) int_{-X}^{X} dx / h(x), h(x) = delta + R_i(1 - sqrt(1 - x^2/R_i^2))
/// + R_j(1 - sqrt(1 - x^2/R_j^2)), X = min(R_i, R_j).
double gap_energy_quadrature(double Ri, double Rj, double delta);

/// Same integral for a disk facing a flat wall: h(x) = delta + R(1 - sqrt(1 - x^2/R^2)).
double wall_gap_energy_quadrature(double R, double delta);

struct MaxPrincipleReport {
  bool passed = false;
  double psi_min = 0.0;
  double psi_max = 0.0;
  double u_min = 0.0;  // over inclusion potentials and interior samples
  double u_max = 0.0;
  double tolerance = 0.0;
  double boundary_residual = 0.0;
  int violations = 0;
  int samples = 0;
};

/// Checks min psi - tol <= U_i, u(x) <= max psi + tol with tol = 10 x the
/// boundary residual, on the inclusion potentials and a polar grid in the matrix.
MaxPrincipleReport max_principle_check(const SpectralSolution& solution, const FourierPotential& psi,
                                       int grid = 48);

}  // namespace hcdtn
