#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <vector>

#include "acp/components.hpp"

namespace acp {

// L(2, chi_4), Catalan's constant.
inline constexpr double kCatalan = 0.915965594177219015;

struct GrowthSample {
  i64 X = 0;
  i64 members = 0;    // C_pr
  i64 thickened = 0;  // C_th
  i64 pi = 0;
  double cpr_over_pi() const { return static_cast<double>(members) / static_cast<double>(pi); }
  double cth_over_x() const { return static_cast<double>(thickened) / static_cast<double>(X); }
};

struct GrowthFit {
  double c = 0, alpha = 0;  // C ~ alpha pi (log pi)^c
};

struct GrowthTable {
  std::vector<GrowthSample> rows;
  std::optional<GrowthFit> fit;
};

// Least squares of log(C / pi) = log alpha + c log log pi.
inline GrowthFit fit_growth(const std::vector<GrowthSample>& rows) {
  if (rows.size() < 2) fail(ErrorKind::DegenerateFit, "need at least 2 samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0, n = static_cast<double>(rows.size());
  for (const auto& r : rows) {
    double x = std::log(std::log(static_cast<double>(r.pi))), y = std::log(r.cpr_over_pi());
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double den = n * sxx - sx * sx;
  if (den == 0) fail(ErrorKind::DegenerateFit, "samples share one pi(X)");
  double c = (n * sxy - sx * sy) / den;
  return {c, std::exp((sy - c * sx) / n)};
}

inline GrowthTable growth_table(std::vector<GrowthSample> rows) {
  GrowthTable t{std::move(rows), std::nullopt};
  if (t.rows.size() >= 2) t.fit = fit_growth(t.rows);
  return t;
}

// Follows the component through the root quadruple (or along `target.word`) over the grid.
inline GrowthTable growth_table(const Quadruple& root, const ComponentTarget& target, const std::vector<i64>& grid) {
  ScanOptions opt;
  opt.grid = grid;
  ComponentScan s = scan_component(root, target, opt);
  std::vector<i64> pis = prime_pi_many(grid);
  std::vector<GrowthSample> rows;
  for (size_t k = 0; k < grid.size(); ++k) rows.push_back({grid[k], s.members[k], s.thickened[k], pis[k]});
  return growth_table(std::move(rows));
}

inline double psi_sum(const Quadruple& root, i64 X, int workers = 1) {
  return count_prime_roots_series(root, {X}, workers).psi[0];
}

inline double pair_log_sum(const Quadruple& root, i64 X, int workers = 1) {
  return count_prime_roots_series(root, {X}, workers).pair_log[0];
}

inline double f_double_prime(i64 nroot, i64 circles, i64 X, double c2) {
  double lx = std::log(static_cast<double>(X)), cf = static_cast<double>(circles);
  double den = kCatalan * cf / lx - c2 * cf / (lx * lx);
  if (den == 0) fail(ErrorKind::DivisionByZero, "f'' denominator vanishes");
  return static_cast<double>(nroot) / den;
}

struct RootAsymptotics {
  RootCounts counts;
  std::vector<double> f;  // f_{c''} per grid point
};

inline RootAsymptotics root_asymptotics(const Quadruple& root, const std::vector<i64>& grid, double c2 = 0,
                                        int workers = 1) {
  RootAsymptotics r{count_prime_roots_series(root, grid, workers), {}};
  for (size_t k = 0; k < grid.size(); ++k)
    r.f.push_back(f_double_prime(r.counts.nroot[k], r.counts.circles[k], grid[k], c2));
  return r;
}

// Frequency of each exact multiplicity over the window, optionally only at n whose residue
// mod `classes.modulus()` is a member.
inline std::map<std::uint32_t, i64> histogram(const MultiplicityWindow& w,
                                              const std::optional<ResidueClassSet>& classes = std::nullopt) {
  std::map<std::uint32_t, i64> h;
  for (i64 n = w.lo; n < w.hi; ++n)
    if (!classes || classes->contains(mod(n, classes->modulus()))) ++h[w.at(n)];
  return h;
}

// Most frequent multiplicity; ties go to the smaller multiplicity.
inline std::uint32_t histogram_mode(const std::map<std::uint32_t, i64>& h) {
  std::uint32_t best = 0;
  i64 freq = -1;
  for (auto [k, f] : h)
    if (f > freq) {
      best = k;
      freq = f;
    }
  return best;
}

}  // namespace acp
