#include "hcdtn/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hcdtn/errors.hpp"

namespace hcdtn {

namespace {

constexpr int kEtaTerms = 40;
constexpr double kSeriesCutoff = 1e-17;

}  // namespace

double polylog_half_series(double x) {
  const double q = std::exp(-x);
  double sum = 0.0;
  double qn = 1.0;
  for (int n = 1;; ++n) {
    qn *= q;
    const double term = qn / std::sqrt(static_cast<double>(n));
    sum += term;
    if (term < kSeriesCutoff * sum || qn == 0.0) break;
  }
  return sum;
}

double polylog_half_expansion(double x) {
  const auto& z = zeta_constants().zeta_half_minus_j;
  double sum = std::sqrt(std::numbers::pi / x);
  double power = 1.0;  // (-x)^j / j!
  for (int j = 0; j <= kZetaExpansionOrder; ++j) {
    sum += z[static_cast<std::size_t>(j)] * power;
    power *= -x / static_cast<double>(j + 1);
  }
  return sum;
}

double dirichlet_eta(double s) {
  // d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!), built by the term ratio.
  const int n = kEtaTerms;
  double d[kEtaTerms + 1];
  double term = 1.0 / n;  // i = 0 term of the inner sum: (n-1)!/n! = 1/n
  double acc = term;
  d[0] = n * acc;
  for (int i = 1; i <= n; ++i) {
    term *= 4.0 * (n + i - 1) * (n - i + 1) / ((2.0 * i - 1.0) * (2.0 * i));
    acc += term;
    d[i] = n * acc;
  }
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    sum += sign * (d[k] - d[n]) / std::pow(static_cast<double>(k + 1), s);
  }
  return -sum / d[n];
}

double riemann_zeta_positive(double s) {
  if (!(s > 0.0) || s == 1.0)
    throw DomainError("riemann_zeta_positive needs s > 0, s != 1 (got " + std::to_string(s) + ")");
  return dirichlet_eta(s) / (1.0 - std::pow(2.0, 1.0 - s));
}

ZetaConstants compute_zeta_constants() {
  ZetaConstants c;
  for (int j = 0; j <= kZetaExpansionOrder; ++j) {
    const double s = 0.5 - j;
    double value = 0.0;
    if (j == 0) {
      value = riemann_zeta_positive(0.5);
    } else {
      // zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s)
      value = std::pow(2.0, s) * std::pow(std::numbers::pi, s - 1.0) *
              std::sin(0.5 * std::numbers::pi * s) * std::tgamma(1.0 - s) *
              riemann_zeta_positive(1.0 - s);
    }
    c.zeta_half_minus_j[static_cast<std::size_t>(j)] = value;
  }
  c.zeta_half = c.zeta_half_minus_j[0];
  c.zeta_minus_half = c.zeta_half_minus_j[1];
  if (!(c.zeta_half < 0.0) || !(c.zeta_minus_half < 0.0))
    throw NumericalError("NumericalError", "zeta constants have the wrong sign");
  return c;
}

const ZetaConstants& zeta_constants() {
  static const ZetaConstants constants = compute_zeta_constants();
  return constants;
}

double polylog_half(double x) {
  if (!std::isfinite(x) || x <= 0.0)
    throw DomainError("polylog_half needs a positive finite argument (got " + std::to_string(x) + ")");
  return x >= kPolylogCrossover ? polylog_half_series(x) : polylog_half_expansion(x);
}

}  // namespace hcdtn
