#include "hcdtn/oracle.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "hcdtn/errors.hpp"

namespace hcdtn {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

int samples_per_circle(int order) { return std::max(4 * order, 8); }

cplx center_of(const Disk& d) { return {d.center.x, d.center.y}; }

double min_gap_ratio(const Packing& p) {
  double gap = std::numeric_limits<double>::infinity();
  double rmin = std::numeric_limits<double>::infinity();
  const auto& inc = p.inclusions;
  for (std::size_t i = 0; i < inc.size(); ++i) {
    rmin = std::min(rmin, inc[i].radius);
    gap = std::min(gap, p.L - std::abs(center_of(inc[i])) - inc[i].radius);
    for (std::size_t j = i + 1; j < inc.size(); ++j)
      gap = std::min(gap, std::abs(center_of(inc[i]) - center_of(inc[j])) - inc[i].radius - inc[j].radius);
  }
  return gap / rmin;
}

// Column layout of the collocation system.
struct Layout {
  int order = 0;
  int inclusion_order = 0;
  int inclusions = 0;
  int domain_col(int m, bool imag) const { return m == 0 ? 0 : 2 * m - 1 + (imag ? 1 : 0); }
  int inclusion_col(int i, int m, bool imag) const {
    return 1 + 2 * order + i * 2 * inclusion_order + 2 * (m - 1) + (imag ? 1 : 0);
  }
  int potential_col(int i) const { return 1 + 2 * order + inclusions * 2 * inclusion_order + i; }
  int cols() const { return potential_col(inclusions); }
};

// Row of basis values at z (without the potential column).
void fill_basis_row(Eigen::Ref<Eigen::RowVectorXd, 0, Eigen::InnerStride<>> row, cplx z, const Packing& packing, const Layout& lay) {
  row(0) = 1.0;
  const cplx w = z / packing.L;
  cplx wp = 1.0;
  for (int m = 1; m <= lay.order; ++m) {
    wp *= w;
    row(lay.domain_col(m, false)) = wp.real();
    row(lay.domain_col(m, true)) = wp.imag();
  }
  for (int i = 0; i < lay.inclusions; ++i) {
    const Disk& d = packing.inclusions[static_cast<std::size_t>(i)];
    const cplx zeta = d.radius / (z - center_of(d));
    cplx zp = 1.0;
    for (int m = 1; m <= lay.inclusion_order; ++m) {
      zp *= zeta;
      row(lay.inclusion_col(i, m, false)) = zp.real();
      row(lay.inclusion_col(i, m, true)) = zp.imag();
    }
  }
}

// Largest and smallest singular values of an upper-triangular matrix by
// power and inverse power iteration.
double triangular_condition(const Eigen::MatrixXd& r) {
  const auto upper = r.triangularView<Eigen::Upper>();
  const Eigen::Index n = r.cols();
  if (n == 0) return 1.0;
  for (Eigen::Index k = 0; k < n; ++k)
    if (r(k, k) == 0.0 || !std::isfinite(r(k, k))) return std::numeric_limits<double>::infinity();
  Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(n, 1.0, 2.0).normalized();
  double smax = 0.0;
  for (int it = 0; it < 40; ++it) {
    Eigen::VectorXd y = upper.transpose() * (upper * v).eval();
    smax = std::sqrt(y.norm());
    v = y / y.norm();
  }
  v = Eigen::VectorXd::LinSpaced(n, 2.0, 1.0).normalized();
  double inv = 0.0;
  for (int it = 0; it < 40; ++it) {
    Eigen::VectorXd y = upper.solve(upper.transpose().solve(v));
    inv = std::sqrt(y.norm());
    if (!std::isfinite(inv)) return std::numeric_limits<double>::infinity();
    v = y / y.norm();
  }
  return smax * inv;
}

}  // namespace

double SpectralSolution::evaluate(Point p) const {
  const cplx z{p.x, p.y};
  const cplx w = z / L;
  double u = domain_cos.size() > 0 ? domain_cos(0) : 0.0;
  cplx wp = 1.0;
  for (Eigen::Index m = 1; m < domain_cos.size(); ++m) {
    wp *= w;
    u += domain_cos(m) * wp.real() + domain_sin(m) * wp.imag();
  }
  for (std::size_t i = 0; i < inclusions.size(); ++i) {
    // (R/(z - c))^m = (R/r)^m e^{-i m t}
    const cplx zeta = inclusions[i].radius / (z - center_of(inclusions[i]));
    cplx zp = 1.0;
    for (Eigen::Index m = 1; m < inclusion_cos[i].size(); ++m) {
      zp *= zeta;
      u += inclusion_cos[i](m) * zp.real() - inclusion_sin[i](m) * zp.imag();
    }
  }
  return u;
}

double SpectralSolution::boundary_flux(double theta) const {
  // u = Re F(z); du/dr = Re(F'(z) e^{i theta}).
  const cplx e{std::cos(theta), std::sin(theta)};
  const cplx z = L * e;
  cplx dF = 0.0;
  cplx wp = 1.0;  // w^{m-1}
  for (Eigen::Index m = 1; m < domain_cos.size(); ++m) {
    dF += cplx(domain_cos(m), -domain_sin(m)) * static_cast<double>(m) * wp / L;
    wp *= e;
  }
  for (std::size_t i = 0; i < inclusions.size(); ++i) {
    const double R = inclusions[i].radius;
    const cplx zeta = R / (z - center_of(inclusions[i]));
    cplx zp = zeta;  // zeta^{m+1}
    for (Eigen::Index m = 1; m < inclusion_cos[i].size(); ++m) {
      zp *= zeta;
      dF -= cplx(inclusion_cos[i](m), inclusion_sin[i](m)) * static_cast<double>(m) * zp / R;
    }
  }
  return (dF * e).real();
}

DirichletOracle::DirichletOracle(const Packing& packing, const OracleOptions& options)
    : packing_(packing.size() > 0 ? validate_packing(packing) : packing), options_(options) {
  if (options.order < 0) throw DomainError("oracle order must be nonnegative");
  order_ = options.order;
  inclusion_order_ = options.inclusion_order > 0 ? options.inclusion_order : std::max(order_, 1);
  if (packing_.size() > 0) {
    const double ratio = min_gap_ratio(packing_);
    if (ratio < options.min_gap_ratio)
      throw OracleGuardError("minimum gap / minimum radius = " + std::to_string(ratio) +
                             " is below the oracle guard " + std::to_string(options.min_gap_ratio));
  }

  const Layout lay{order_, inclusion_order_, packing_.size()};
  const int outer = samples_per_circle(order_);
  const int inner = samples_per_circle(inclusion_order_);
  const int rows = outer + packing_.size() * inner;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, lay.cols());
  for (int p = 0; p < outer; ++p) {
    const double t = 2.0 * kPi * p / outer;
    fill_basis_row(A.row(p), packing_.L * cplx(std::cos(t), std::sin(t)), packing_, lay);
  }
  for (int i = 0; i < packing_.size(); ++i) {
    const Disk& d = packing_.inclusions[static_cast<std::size_t>(i)];
    for (int p = 0; p < inner; ++p) {
      const double t = 2.0 * kPi * p / inner;
      const int r = outer + i * inner + p;
      fill_basis_row(A.row(r), center_of(d) + d.radius * cplx(std::cos(t), std::sin(t)), packing_, lay);
      A(r, lay.potential_col(i)) = -1.0;
    }
  }
  qr_.compute(A);
  condition_ = triangular_condition(qr_.matrixQR().topRows(qr_.cols()));
  if (!(condition_ <= options.max_condition))
    throw IllConditionedError("collocation system condition estimate " + std::to_string(condition_) +
                              " exceeds " + std::to_string(options.max_condition));
}

SpectralSolution DirichletOracle::solve(const FourierPotential& psi) const {
  if (psi.max_frequency() > order_)
    throw DomainError("potential has frequency " + std::to_string(psi.max_frequency()) +
                      " above the oracle order " + std::to_string(order_));
  const Layout lay{order_, inclusion_order_, packing_.size()};
  const int outer = samples_per_circle(order_);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(qr_.rows());
  for (int p = 0; p < outer; ++p) rhs(p) = psi(2.0 * kPi * p / outer);
  const Eigen::VectorXd x = qr_.solve(rhs);

  SpectralSolution s;
  s.L = packing_.L;
  s.inclusions = packing_.inclusions;
  s.domain_cos = Eigen::VectorXd::Zero(order_ + 1);
  s.domain_sin = Eigen::VectorXd::Zero(order_ + 1);
  s.domain_cos(0) = x(0);
  for (int m = 1; m <= order_; ++m) {
    s.domain_cos(m) = x(lay.domain_col(m, false));
    s.domain_sin(m) = x(lay.domain_col(m, true));
  }
  s.potentials = Eigen::VectorXd::Zero(packing_.size());
  for (int i = 0; i < packing_.size(); ++i) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(inclusion_order_ + 1);
    Eigen::VectorXd d = Eigen::VectorXd::Zero(inclusion_order_ + 1);
    for (int m = 1; m <= inclusion_order_; ++m) {
      c(m) = x(lay.inclusion_col(i, m, false));
      d(m) = -x(lay.inclusion_col(i, m, true));  // Im zeta^m = -(R/r)^m sin m t
    }
    s.inclusion_cos.push_back(std::move(c));
    s.inclusion_sin.push_back(std::move(d));
    s.potentials(i) = x(lay.potential_col(i));
  }

  // E = (1/2) int_Gamma psi du/dr ds, trapezoidal rule (spectral for periodic data).
  const int quad = std::max(8 * std::max(order_, psi.max_frequency()), 1024);
  double flux = 0.0;
  for (int p = 0; p < quad; ++p) {
    const double t = 2.0 * kPi * p / quad;
    flux += psi(t) * s.boundary_flux(t);
  }
  s.energy = 0.5 * flux * packing_.L * 2.0 * kPi / quad;

  // Residual on a grid twice as dense as the collocation points.
  double res = 0.0;
  const int outer_check = 2 * outer;
  for (int p = 0; p < outer_check; ++p) {
    const double t = 2.0 * kPi * p / outer_check;
    res = std::max(res, std::abs(s.evaluate({packing_.L * std::cos(t), packing_.L * std::sin(t)}) - psi(t)));
  }
  const int inner_check = 2 * samples_per_circle(inclusion_order_);
  for (int i = 0; i < packing_.size(); ++i) {
    const Disk& d = packing_.inclusions[static_cast<std::size_t>(i)];
    for (int p = 0; p < inner_check; ++p) {
      const double t = 2.0 * kPi * p / inner_check;
      const Point q{d.center.x + d.radius * std::cos(t), d.center.y + d.radius * std::sin(t)};
      res = std::max(res, std::abs(s.evaluate(q) - s.potentials(i)));
    }
  }
  s.boundary_residual = res;
  if (res > options_.residual_tolerance) s.warnings.emplace_back("ConvergenceWarning");
  return s;
}

SpectralSolution solve_dirichlet(const Packing& packing, const FourierPotential& psi, int order) {
  OracleOptions opt;
  opt.order = order;
  return DirichletOracle(packing, opt).solve(psi);
}

double quad_form_oracle(const Packing& packing, const FourierPotential& psi, int order) {
  return 2.0 * solve_dirichlet(packing, psi, order).energy;
}

double cross_form_oracle(const DirichletOracle& oracle, const FourierPotential& psi_a,
                         const FourierPotential& psi_b) {
  const double qab = 2.0 * oracle.solve(psi_a + psi_b).energy;
  const double qa = 2.0 * oracle.solve(psi_a).energy;
  const double qb = 2.0 * oracle.solve(psi_b).energy;
  return 0.5 * (qab - qa - qb);
}

double cross_form_oracle(const Packing& packing, const FourierPotential& psi_a,
                         const FourierPotential& psi_b, int order) {
  OracleOptions opt;
  opt.order = order;
  return cross_form_oracle(DirichletOracle(packing, opt), psi_a, psi_b);
}

namespace {

// 1 - sqrt(1 - s^2) without cancellation.
double sag(double s) { return s * s / (1.0 + std::sqrt(std::max(0.0, 1.0 - s * s))); }

template <class H>
double half_inverse_profile_integral(double X, H h) {
  // x = X sin t removes the square-root endpoint behaviour.
  auto f = [&](double t) { return X * std::cos(t) / h(X * std::sin(t)); };
  using boost::math::quadrature::gauss_kronrod;
  const double right = gauss_kronrod<double, 61>::integrate(f, 0.0, 0.5 * kPi, 30, 1e-12);
  const double left = gauss_kronrod<double, 61>::integrate(f, -0.5 * kPi, 0.0, 30, 1e-12);
  return 0.5 * (left + right);
}

}  // namespace

double gap_energy_quadrature(double Ri, double Rj, double delta) {
  if (!(Ri > 0.0) || !(Rj > 0.0) || !(delta > 0.0))
    throw DomainError("gap quadrature needs positive radii and gap");
  return half_inverse_profile_integral(std::min(Ri, Rj), [&](double x) {
    return delta + Ri * sag(x / Ri) + Rj * sag(x / Rj);
  });
}

double wall_gap_energy_quadrature(double R, double delta) {
  if (!(R > 0.0) || !(delta > 0.0)) throw DomainError("gap quadrature needs positive radius and gap");
  return half_inverse_profile_integral(R, [&](double x) { return delta + R * sag(x / R); });
}

MaxPrincipleReport max_principle_check(const SpectralSolution& solution, const FourierPotential& psi,
                                       int grid) {
  MaxPrincipleReport rep;
  rep.boundary_residual = solution.boundary_residual;
  rep.tolerance = std::max(10.0 * solution.boundary_residual, 1e-12);
  const int boundary_samples = std::max(4096, 16 * psi.max_frequency());
  rep.psi_min = std::numeric_limits<double>::infinity();
  rep.psi_max = -std::numeric_limits<double>::infinity();
  for (int p = 0; p < boundary_samples; ++p) {
    const double v = psi(2.0 * kPi * p / boundary_samples);
    rep.psi_min = std::min(rep.psi_min, v);
    rep.psi_max = std::max(rep.psi_max, v);
  }
  rep.u_min = std::numeric_limits<double>::infinity();
  rep.u_max = -std::numeric_limits<double>::infinity();
  auto record = [&](double v) {
    ++rep.samples;
    rep.u_min = std::min(rep.u_min, v);
    rep.u_max = std::max(rep.u_max, v);
    if (v < rep.psi_min - rep.tolerance || v > rep.psi_max + rep.tolerance) ++rep.violations;
  };
  for (Eigen::Index i = 0; i < solution.potentials.size(); ++i) record(solution.potentials(i));
  for (int a = 0; a < grid; ++a) {
    const double r = solution.L * (a + 0.5) / grid;
    const int angular = std::max(8, 2 * grid * (a + 1) / grid * 4);
    for (int b = 0; b < angular; ++b) {
      const double t = 2.0 * kPi * b / angular;
      const Point p{r * std::cos(t), r * std::sin(t)};
      bool inside = false;
      for (const auto& d : solution.inclusions)
        if (std::hypot(p.x - d.center.x, p.y - d.center.y) <= d.radius) inside = true;
      if (!inside) record(solution.evaluate(p));
    }
  }
  rep.passed = rep.violations == 0;
  return rep;
}

}  // namespace hcdtn
