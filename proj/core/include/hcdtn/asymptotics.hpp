#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "hcdtn/geometry.hpp"
#include "hcdtn/network.hpp"

namespace hcdtn {

/// Boundary potential psi(theta) = sum_k a_k^c cos(k theta) + a_k^s sin(k theta),
/// k = 0..K.  The sine coefficient of k = 0 is identically zero.
class FourierPotential {
 public:
  FourierPotential() = default;

  /// Throws DomainError on size mismatch, non-finite entries, or a nonzero
  /// sin_coeffs[0].
  FourierPotential(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

  static FourierPotential constant(double value);
  static FourierPotential cosine(int k, double amplitude = 1.0);
  static FourierPotential sine(int k, double amplitude = 1.0);

  int max_frequency() const { return static_cast<int>(cos_.size()) - 1; }
  double cos_coeff(int k) const;
  double sin_coeff(int k) const;
  const std::vector<double>& cos_coeffs() const { return cos_; }
  const std::vector<double>& sin_coeffs() const { return sin_; }

  /// Adds `amplitude` to the coefficient, growing K as needed.
  void add_cos(int k, double amplitude);
  void add_sin(int k, double amplitude);

  double operator()(double theta) const;

  /// The potential shifted by phi: result(theta) = (*this)(theta - phi).
  FourierPotential rotated(double phi) const;

  FourierPotential operator+(const FourierPotential& other) const;
  FourierPotential operator*(double scale) const;

 private:
  std::vector<double> cos_{0.0};
  std::vector<double> sin_{0.0};
};

struct ModeRegime {
  int k = 0;
  double epsilon = 0.0;  // k delta_char / L
  double eta = 0.0;      // k R_char / L
  int regime = 1;        // 1 network, 2 reference medium, 3 resonant
};

struct EnergyBreakdown {
  double E_net = 0.0;
  double E_ref = 0.0;
  double R_res = 0.0;
  double total = 0.0;
  double quad_form = 0.0;
  std::vector<ModeRegime> per_mode;
  Eigen::VectorXd excitation;  // boundary potentials driving the network
};

/// Psi_i = sum_k psi_k(theta_i) exp(-k sqrt(2 R_i delta_i) / L).
Eigen::VectorXd boundary_excitation(const FourierPotential& psi, const GeometryAnalysis& analysis);

/// sum_k (k pi / 2) ((a_k^c)^2 + (a_k^s)^2): energy of the homogeneous disk.
double reference_energy(const FourierPotential& psi);

/// Anomalous boundary-gap energy of mode k at boundary inclusion i.  The k = 0
/// value is the limit 0.  Throws DomainError for k < 0.
double resonance_single(int i, int k, const GeometryAnalysis& analysis, double sigma_i);

double resonance_mode(int k, const GeometryAnalysis& analysis, const Network& network);

/// Resonance term for a general potential: the double sum over mode pairs.
double resonance_general(const FourierPotential& psi, const GeometryAnalysis& analysis,
                         const Network& network);

/// Closed form of resonance_general for identical boundary gaps and boundary
/// angles 2 pi i / N (starting at 0).  Throws DomainError if the geometry is
/// not of that form (relative tolerance 1e-9).
double resonance_equidistant(const FourierPotential& psi, const GeometryAnalysis& analysis,
                             const Network& network);

ModeRegime regime_classify(int k, const GeometryAnalysis& analysis);

EnergyBreakdown total_energy(const FourierPotential& psi, const GeometryAnalysis& analysis,
                             const Network& network);

struct RegimeEstimate {
  double approx_total = 0.0;
  ModeRegime regime;
  std::string description;
};

/// Leading-order energy of cos(k theta) keeping only the terms that matter in
/// the regime of k.
RegimeEstimate regime_estimate(int k, const GeometryAnalysis& analysis, const Network& network);

/// Leading-order energy of the boundary layer for cos(k theta) data and given
/// potentials on the boundary inclusions.
double boundary_layer_energy(const Eigen::VectorXd& u_gamma, int k, const GeometryAnalysis& analysis,
                             const Network& network);

struct Decomposition {
  double value = 0.0;        // min over u_gamma of boundary layer + gap energy
  double discrepancy = 0.0;  // total_energy(cos k theta).total - value
};

Decomposition total_energy_decomposed(int k, const GeometryAnalysis& analysis, const Network& network);

/// sum_i (sigma_i / 4)(exp(-kappa_i) - exp(-2 kappa_i)), kappa_i = k sqrt(2 R_i delta_i) / L:
/// the gap between the boundary-layer damping exponent and the resonance one.
double decomposition_mismatch(int k, const GeometryAnalysis& analysis, const Network& network);

}  // namespace hcdtn
