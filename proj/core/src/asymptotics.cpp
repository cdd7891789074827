#include "hcdtn/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "hcdtn/errors.hpp"
#include "hcdtn/specfun.hpp"

namespace hcdtn {

namespace {

constexpr double kPi = std::numbers::pi;

// sqrt(2 R_i delta_i) / L: damping rate per unit frequency at boundary inclusion i.
double damping_rate(int i, const GeometryAnalysis& a) {
  return std::sqrt(2.0 * a.radius(i) * a.boundary_gaps[static_cast<std::size_t>(i)]) / a.L();
}

// sqrt(2 k delta_i / (pi L)) Li_{1/2}(exp(-2 k delta_i / L)); tends to 1 as k -> 0.
double polylog_term(int i, int k, const GeometryAnalysis& a) {
  if (k == 0) return 1.0;
  const double x = 2.0 * k * a.boundary_gaps[static_cast<std::size_t>(i)] / a.L();
  return std::sqrt(x / kPi) * polylog_half(x);
}

void require_nonnegative(int k) {
  if (k < 0) throw DomainError("frequency must be nonnegative (got " + std::to_string(k) + ")");
}

}  // namespace

FourierPotential::FourierPotential(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs)
    : cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
  if (cos_.empty()) cos_.push_back(0.0);
  if (sin_.empty()) sin_.push_back(0.0);
  if (cos_.size() != sin_.size())
    throw DomainError("cosine and sine coefficient lists differ in length");
  for (std::size_t k = 0; k < cos_.size(); ++k)
    if (!std::isfinite(cos_[k]) || !std::isfinite(sin_[k]))
      throw DomainError("Fourier coefficient of mode " + std::to_string(k) + " is not finite");
  if (sin_[0] != 0.0) throw DomainError("the sine coefficient of mode 0 must be zero");
}

FourierPotential FourierPotential::constant(double value) {
  FourierPotential p;
  p.add_cos(0, value);
  return p;
}

FourierPotential FourierPotential::cosine(int k, double amplitude) {
  FourierPotential p;
  p.add_cos(k, amplitude);
  return p;
}

FourierPotential FourierPotential::sine(int k, double amplitude) {
  FourierPotential p;
  p.add_sin(k, amplitude);
  return p;
}

double FourierPotential::cos_coeff(int k) const {
  return k >= 0 && k <= max_frequency() ? cos_[static_cast<std::size_t>(k)] : 0.0;
}

double FourierPotential::sin_coeff(int k) const {
  return k >= 0 && k <= max_frequency() ? sin_[static_cast<std::size_t>(k)] : 0.0;
}

void FourierPotential::add_cos(int k, double amplitude) {
  require_nonnegative(k);
  if (!std::isfinite(amplitude)) throw DomainError("Fourier coefficient is not finite");
  if (k > max_frequency()) {
    cos_.resize(static_cast<std::size_t>(k) + 1, 0.0);
    sin_.resize(static_cast<std::size_t>(k) + 1, 0.0);
  }
  cos_[static_cast<std::size_t>(k)] += amplitude;
}

void FourierPotential::add_sin(int k, double amplitude) {
  if (k <= 0) throw DomainError("sine modes need k >= 1");
  if (!std::isfinite(amplitude)) throw DomainError("Fourier coefficient is not finite");
  if (k > max_frequency()) {
    cos_.resize(static_cast<std::size_t>(k) + 1, 0.0);
    sin_.resize(static_cast<std::size_t>(k) + 1, 0.0);
  }
  sin_[static_cast<std::size_t>(k)] += amplitude;
}

double FourierPotential::operator()(double theta) const {
  double v = 0.0;
  for (int k = 0; k <= max_frequency(); ++k)
    v += cos_[static_cast<std::size_t>(k)] * std::cos(k * theta) +
         sin_[static_cast<std::size_t>(k)] * std::sin(k * theta);
  return v;
}

FourierPotential FourierPotential::rotated(double phi) const {
  // cos(k(t - phi)) = cos kt cos k phi + sin kt sin k phi, and likewise for sin.
  FourierPotential r = *this;
  for (int k = 1; k <= max_frequency(); ++k) {
    const double c = std::cos(k * phi), s = std::sin(k * phi);
    const double ac = cos_[static_cast<std::size_t>(k)], as = sin_[static_cast<std::size_t>(k)];
    r.cos_[static_cast<std::size_t>(k)] = ac * c - as * s;
    r.sin_[static_cast<std::size_t>(k)] = ac * s + as * c;
  }
  return r;
}

FourierPotential FourierPotential::operator+(const FourierPotential& other) const {
  FourierPotential r = *this;
  for (int k = 0; k <= other.max_frequency(); ++k) {
    r.add_cos(k, other.cos_coeff(k));
    if (k > 0) r.add_sin(k, other.sin_coeff(k));
  }
  return r;
}

FourierPotential FourierPotential::operator*(double scale) const {
  FourierPotential r = *this;
  for (auto& c : r.cos_) c *= scale;
  for (auto& s : r.sin_) s *= scale;
  return r;
}

Eigen::VectorXd boundary_excitation(const FourierPotential& psi, const GeometryAnalysis& analysis) {
  const int nb = analysis.boundary_count;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(nb);
  for (int i = 0; i < nb; ++i) {
    const double theta = analysis.boundary_angles[static_cast<std::size_t>(i)];
    const double rate = damping_rate(i, analysis);
    double v = 0.0;
    for (int k = 0; k <= psi.max_frequency(); ++k)
      v += (psi.cos_coeff(k) * std::cos(k * theta) + psi.sin_coeff(k) * std::sin(k * theta)) *
           std::exp(-k * rate);
    out(i) = v;
  }
  return out;
}

double reference_energy(const FourierPotential& psi) {
  double e = 0.0;
  for (int k = 1; k <= psi.max_frequency(); ++k) {
    const double c = psi.cos_coeff(k), s = psi.sin_coeff(k);
    e += 0.5 * kPi * k * (c * c + s * s);
  }
  return e;
}

double resonance_single(int i, int k, const GeometryAnalysis& analysis, double sigma_i) {
  require_nonnegative(k);
  if (k == 0) return 0.0;
  const double decay = std::exp(-2.0 * k * damping_rate(i, analysis));
  return 0.25 * sigma_i * (polylog_term(i, k, analysis) - decay);
}

double resonance_mode(int k, const GeometryAnalysis& analysis, const Network& network) {
  double sum = 0.0;
  for (int i = 0; i < analysis.boundary_count; ++i)
    sum += resonance_single(i, k, analysis, network.boundary_sigma(i));
  return sum;
}

double resonance_general(const FourierPotential& psi, const GeometryAnalysis& analysis,
                         const Network& network) {
  const int K = psi.max_frequency();
  std::vector<int> active;  // modes with a nonzero coefficient
  for (int k = 0; k <= K; ++k)
    if (psi.cos_coeff(k) != 0.0 || psi.sin_coeff(k) != 0.0) active.push_back(k);
  double total = 0.0;
  std::vector<double> res(static_cast<std::size_t>(K) + 1);
  for (int i = 0; i < analysis.boundary_count; ++i) {
    const double sigma = network.boundary_sigma(i);
    for (int k : active) res[static_cast<std::size_t>(k)] = resonance_single(i, k, analysis, sigma);
    const double theta = analysis.boundary_angles[static_cast<std::size_t>(i)];
    const double rate = damping_rate(i, analysis);
    double sum_i = 0.0;
    for (int k : active) {
      const double ck = psi.cos_coeff(k), sk = psi.sin_coeff(k);
      for (int m : active) {
        const double cm = psi.cos_coeff(m), sm = psi.sin_coeff(m);
        const double r = res[static_cast<std::size_t>(std::min(k, m))];
        if (r == 0.0) continue;
        const double phase = (k - m) * theta;
        sum_i += std::exp(-std::abs(k - m) * rate) * r *
                 ((ck * cm + sk * sm) * std::cos(phase) + (sk * cm - ck * sm) * std::sin(phase));
      }
    }
    total += sum_i;
  }
  return total;
}

double resonance_equidistant(const FourierPotential& psi, const GeometryAnalysis& analysis,
                             const Network& network) {
  const int n = analysis.boundary_count;
  if (n == 0) return 0.0;
  const double delta = analysis.boundary_gaps[0];
  constexpr double tol = 1e-9;
  for (int i = 0; i < n; ++i) {
    if (std::abs(analysis.boundary_gaps[static_cast<std::size_t>(i)] - delta) > tol * delta ||
        std::abs(analysis.radius(i) - analysis.radius(0)) > tol * analysis.radius(0) ||
        std::abs(analysis.boundary_angles[static_cast<std::size_t>(i)] - 2.0 * kPi * i / n) > tol)
      throw DomainError("boundary inclusions are not equidistant with identical gaps");
  }
  const int K = psi.max_frequency();
  const double sigma = network.boundary_sigma(0);
  const double rate = damping_rate(0, analysis);
  double diagonal = 0.0, cross = 0.0;
  for (int k = 0; k <= K; ++k) {
    const double r = resonance_single(0, k, analysis, sigma);
    const double ck = psi.cos_coeff(k), sk = psi.sin_coeff(k);
    diagonal += r * (ck * ck + sk * sk);
    for (int q = 1; k + q * n <= K; ++q) {
      const int m = k + q * n;
      cross += r * std::exp(-q * n * rate) * (ck * psi.cos_coeff(m) + sk * psi.sin_coeff(m));
    }
  }
  return n * diagonal + 2.0 * n * cross;
}

ModeRegime regime_classify(int k, const GeometryAnalysis& analysis) {
  require_nonnegative(k);
  ModeRegime r;
  r.k = k;
  double log_sum = 0.0;
  int count = 0;
  for (const auto& g : analysis.gaps) { log_sum += std::log(g.delta); ++count; }
  for (double d : analysis.boundary_gaps) { log_sum += std::log(d); ++count; }
  double radius_sum = 0.0;
  for (const auto& d : analysis.packing.inclusions) radius_sum += d.radius;
  if (count > 0) r.epsilon = k * std::exp(log_sum / count) / analysis.L();
  if (analysis.size() > 0) r.eta = k * (radius_sum / analysis.size()) / analysis.L();
  r.regime = r.epsilon >= 1.0 ? 2 : (r.eta <= 1.0 ? 1 : 3);
  return r;
}

EnergyBreakdown total_energy(const FourierPotential& psi, const GeometryAnalysis& analysis,
                             const Network& network) {
  EnergyBreakdown b;
  b.excitation = boundary_excitation(psi, analysis);
  if (analysis.size() > 0) {
    b.E_net = net_energy(network, b.excitation);
    b.R_res = resonance_general(psi, analysis, network);
  }
  b.E_ref = reference_energy(psi);
  b.total = b.E_net + b.E_ref + b.R_res;
  b.quad_form = 2.0 * b.total;
  for (int k = 0; k <= psi.max_frequency(); ++k) b.per_mode.push_back(regime_classify(k, analysis));
  return b;
}

RegimeEstimate regime_estimate(int k, const GeometryAnalysis& analysis, const Network& network) {
  RegimeEstimate est;
  est.regime = regime_classify(k, analysis);
  const auto psi = FourierPotential::cosine(k);
  const double e_net = analysis.size() > 0 ? net_energy(network, boundary_excitation(psi, analysis)) : 0.0;
  const double e_ref = reference_energy(psi);
  const double res = analysis.size() > 0 ? resonance_mode(k, analysis, network) : 0.0;
  std::ostringstream text;
  text.precision(6);
  switch (est.regime.regime) {
    case 1:
      est.approx_total = e_net + e_ref;
      text << "regime 1 (network): eps << eta <~ 1; resonance dropped (R_k = " << res
           << ", of order sigma eps^(1/2))";
      break;
    case 2:
      est.approx_total = e_ref;
      text << "regime 2 (reference medium): eps >~ 1; network and resonance dropped (E_net = " << e_net
           << ", R_k = " << res << ", R_k ~ sqrt(kL/R) exp(-eps))";
      break;
    default: {
      est.approx_total = e_net + e_ref + res;
      const double scale = est.regime.epsilon * est.regime.eta > 0.0
                               ? k / std::sqrt(est.regime.epsilon * est.regime.eta)
                               : 0.0;
      text << "regime 3 (resonant): eps << 1 <~ eta; all terms kept (R_k ~ k/sqrt(eps eta) = " << scale
           << ")";
      break;
    }
  }
  est.description = text.str();
  return est;
}

double boundary_layer_energy(const Eigen::VectorXd& u_gamma, int k, const GeometryAnalysis& analysis,
                             const Network& network) {
  require_nonnegative(k);
  const int nb = analysis.boundary_count;
  if (u_gamma.size() != nb)
    throw DomainError("u_gamma has " + std::to_string(u_gamma.size()) + " entries, expected " +
                      std::to_string(nb));
  double e = 0.5 * kPi * k;
  for (int i = 0; i < nb; ++i) {
    const double sigma = network.boundary_sigma(i);
    const double damp = std::exp(-k * damping_rate(i, analysis));
    const double target = std::cos(k * analysis.boundary_angles[static_cast<std::size_t>(i)]) * damp;
    const double d = u_gamma(i) - target;
    e += 0.5 * sigma * d * d + 0.25 * sigma * (polylog_term(i, k, analysis) - damp);
  }
  return e;
}

Decomposition total_energy_decomposed(int k, const GeometryAnalysis& analysis, const Network& network) {
  require_nonnegative(k);
  const int nb = analysis.boundary_count;
  // Quadratic in u: sum sigma_i/2 (u_i - Psi_i)^2 + u^T S u / 2, S the gap
  // Schur complement; the minimizer solves (D + S) u = D Psi.
  Eigen::MatrixXd system = gap_schur_complement(network);
  Eigen::VectorXd rhs(nb);
  const Eigen::VectorXd target = boundary_excitation(FourierPotential::cosine(k), analysis);
  for (int i = 0; i < nb; ++i) {
    system(i, i) += network.boundary_sigma(i);
    rhs(i) = network.boundary_sigma(i) * target(i);
  }
  const Eigen::LLT<Eigen::MatrixXd> llt(system);
  if (llt.info() != Eigen::Success) throw SingularSystemError("boundary-layer system is not positive definite");
  const Eigen::VectorXd u = llt.solve(rhs);

  Decomposition d;
  d.value = boundary_layer_energy(u, k, analysis, network) + interior_gap_energy(network, u);
  d.discrepancy = total_energy(FourierPotential::cosine(k), analysis, network).total - d.value;
  return d;
}

double decomposition_mismatch(int k, const GeometryAnalysis& analysis, const Network& network) {
  require_nonnegative(k);
  double sum = 0.0;
  for (int i = 0; i < analysis.boundary_count; ++i) {
    const double kappa = k * damping_rate(i, analysis);
    sum += 0.25 * network.boundary_sigma(i) * (std::exp(-kappa) - std::exp(-2.0 * kappa));
  }
  return sum;
}

}  // namespace hcdtn
