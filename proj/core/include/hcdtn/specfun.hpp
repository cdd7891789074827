#pragma once

#include <array>

namespace hcdtn {

inline constexpr int kZetaExpansionOrder = 16;
inline constexpr double kPolylogCrossover = 0.5;

struct ZetaConstants {
  double zeta_half = 0.0;        // zeta(1/2)
  double zeta_minus_half = 0.0;  // zeta(-1/2)
  std::array<double, kZetaExpansionOrder + 1> zeta_half_minus_j{};  // zeta(1/2 - j)
};

/// Dirichlet eta function for real s > 0, by Cohen-Villegas-Zagier
/// acceleration of the alternating series.
double dirichlet_eta(double s);

/// Riemann zeta for real s > 0, s != 1, from eta(s) / (1 - 2^(1-s)).
double riemann_zeta_positive(double s);

/// zeta(1/2 - j) for j = 0..kZetaExpansionOrder.  Arguments 1/2 - j < 0 are mapped through the
/// functional equation onto zeta(1/2 + j), which the eta series handles well.
ZetaConstants compute_zeta_constants();

/// Cached result of compute_zeta_constants(); thread-safe.
const ZetaConstants& zeta_constants();

/// Li_{1/2}(exp(-x)) for x > 0.  Direct series for x >= 0.5, otherwise the
/// expansion sqrt(pi/x) + sum_j zeta(1/2 - j) (-x)^j / j!.
/// Throws DomainError when x <= 0 or x is not finite.
double polylog_half(double x);

/// The two branches of polylog_half, unchecked; each is usable on either side
/// of the crossover at reduced accuracy.
double polylog_half_series(double x);
double polylog_half_expansion(double x);

}  // namespace hcdtn
