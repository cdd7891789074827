#include "hcdtn/generators.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "hcdtn/errors.hpp"

namespace hcdtn {

namespace {
constexpr double kPi = std::numbers::pi;

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(name) + " must be positive and finite");
}
}  // namespace

Packing ring_packing(int n, double rho_c, double R, double L) {
  if (n < 1) throw DomainError("ring needs at least one disk");
  require_positive(R, "R");
  require_positive(L, "L");
  if (!(rho_c >= 0.0)) throw DomainError("ring radius must be nonnegative");
  if (n > 1 && 2.0 * rho_c * std::sin(kPi / n) <= 2.0 * R)
    throw InfeasibleError("ring neighbors overlap: chord " + std::to_string(2.0 * rho_c * std::sin(kPi / n)) +
                          " <= 2R = " + std::to_string(2.0 * R));
  if (rho_c + R >= L) throw InfeasibleError("ring disks reach the outer boundary");
  Packing p;
  p.L = L;
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * kPi * i / n;
    p.inclusions.push_back({{rho_c * std::cos(t), rho_c * std::sin(t)}, R});
  }
  return p;
}

Packing equal_gap_ring(int n, double R, double delta, double L) {
  if (n < 2) throw DomainError("equal-gap ring needs at least two disks");
  require_positive(R, "R");
  require_positive(delta, "delta");
  require_positive(L, "L");
  const double rho = (2.0 * R + delta) / (2.0 * std::sin(kPi / n));
  const double scale = L / (rho + R + delta);
  return ring_packing(n, rho * scale, R * scale, L);
}

Packing hex_grid_packing(double L, double R, double gap) {
  require_positive(L, "L");
  require_positive(R, "R");
  require_positive(gap, "gap");
  const double a = 2.0 * R + gap;  // lattice spacing
  const double row = a * std::sqrt(3.0) / 2.0;
  const double reach = L - R - gap;
  if (reach < 0.0) throw InfeasibleError("no disk fits inside the domain with the requested gap");
  Packing p;
  p.L = L;
  const int rows = static_cast<int>(std::floor(reach / row));
  for (int r = -rows; r <= rows; ++r) {
    const double y = r * row;
    const double shift = (r % 2 == 0) ? 0.0 : 0.5 * a;
    const int cols = static_cast<int>(std::ceil(reach / a)) + 1;
    for (int c = -cols; c <= cols; ++c) {
      const double x = c * a + shift;
      if (std::hypot(x, y) <= reach) p.inclusions.push_back({{x, y}, R});
    }
  }
  if (p.inclusions.empty()) throw InfeasibleError("hex grid is empty");
  return p;
}

Packing random_packing(int n, double R, double L, double delta_min, std::uint64_t seed) {
  if (n < 1) throw DomainError("random packing needs at least one disk");
  require_positive(R, "R");
  require_positive(L, "L");
  if (!(delta_min > 0.0)) throw DomainError("delta_min must be positive");
  const double reach = L - R - delta_min;
  if (reach < 0.0) throw InfeasibleError("no disk fits inside the domain with the requested gap");

  std::mt19937_64 rng(seed);
  // Explicit bits-to-double so the sequence does not depend on the standard
  // library's distribution implementation.
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  Packing p;
  p.L = L;
  const long max_draws = 200000L * n;
  long draws = 0;
  while (p.size() < n) {
    if (++draws > max_draws)
      throw InfeasibleError("could not place " + std::to_string(n) + " disks with gap " + std::to_string(delta_min));
    const double x = (2.0 * unit() - 1.0) * reach;
    const double y = (2.0 * unit() - 1.0) * reach;
    if (std::hypot(x, y) > reach) continue;
    bool ok = true;
    for (const auto& d : p.inclusions)
      if (std::hypot(x - d.center.x, y - d.center.y) < 2.0 * R + delta_min) {
        ok = false;
        break;
      }
    if (ok) p.inclusions.push_back({{x, y}, R});
  }
  return p;
}

}  // namespace hcdtn
