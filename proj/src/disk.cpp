#include "steklov/disk.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "parallel.hpp"
#include "steklov/intersect.hpp"
#include "steklov/models.hpp"
#include "steklov/specfun.hpp"

namespace steklov {

namespace {

void require_mode(int n, int min_n, const char* what) {
  if (n < min_n) throw DomainError(std::string(what) + ": mode out of range");
}

double radial_closed_form(int n, double b, double r) {
  return std::exp(-0.5 * b * r * r) * std::pow(r, n) * laguerre(-0.5, n, b * r * r);
}

// Guess of the mode owning b from the two-term expansion of z_n.
int mode_guess(double b) {
  const double a = alpha();
  const double c = (a * a + 2.0) / 3.0;
  if (b <= c) return 0;
  const double s = 0.5 * (-a + std::sqrt(a * a + 4.0 * (b - c)));
  return static_cast<int>(std::floor(s * s));
}

// z_n for the modes near each grid point. Lookups outside the stored set
// fall back to find_zn, which only happens when the guess is off by more
// than the window.
class ZnTable {
 public:
  ZnTable(std::span<const double> grid, const Tolerances& tol, bool parallel) : tol_(tol) {
    for (double b : grid) {
      const int g = mode_guess(b);
      for (int n = std::max(0, g - kWindow); n <= g + kWindow; ++n) {
        if (modes_.empty() || n > modes_.back()) modes_.push_back(n);
      }
    }
    z_.resize(modes_.size());
    auto fill = [&](std::int64_t i) { z_[i] = find_zn(modes_[i], tol_).z_n; };
    if (parallel) {
      detail::parallel_for(static_cast<std::int64_t>(modes_.size()), fill);
    } else {
      for (std::size_t i = 0; i < modes_.size(); ++i) fill(static_cast<std::int64_t>(i));
    }
  }

  // Mode owning b: the smallest n with z_n >= b.
  int mode_for(double b) const {
    int n = std::max(0, mode_guess(b) - kWindow);
    while (n > 0 && z(n - 1) >= b) --n;
    while (z(n) < b) ++n;
    return n;
  }

 private:
  static constexpr int kWindow = 2;

  double z(int n) const {
    auto it = std::lower_bound(modes_.begin(), modes_.end(), n);
    if (it != modes_.end() && *it == n) return z_[static_cast<std::size_t>(it - modes_.begin())];
    return find_zn(n, tol_).z_n;
  }

  Tolerances tol_;
  std::vector<int> modes_;
  std::vector<double> z_;
};

void validate_grid(std::span<const double> grid) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || grid[i] < 0.0) {
      throw DomainError("envelope: grid values must be finite and >= 0");
    }
    if (i > 0 && grid[i] < grid[i - 1]) throw DomainError("envelope: grid must be ascending");
  }
}

EnvelopePoint envelope_at(const ZnTable& table, double b) {
  if (b == 0.0) return {0.0, 0, 0.0};
  const int mode = table.mode_for(b);
  EnvelopePoint p{b, mode, lambda_n(mode, b)};
#ifndef NDEBUG
  const EnvelopePoint check = envelope_by_argmin(b);
  assert(p.lambda_dn <= check.lambda_dn + 1e-10 * (1.0 + check.lambda_dn));
#endif
  return p;
}

std::vector<EnvelopePoint> envelope_impl(std::span<const double> grid, const Tolerances& tol,
                                         bool parallel) {
  validate_grid(grid);
  std::vector<EnvelopePoint> out(grid.size());
  if (grid.empty()) return out;
  const ZnTable table(grid, tol, parallel);
  if (parallel) {
    detail::parallel_for(static_cast<std::int64_t>(grid.size()),
                         [&](std::int64_t i) { out[i] = envelope_at(table, grid[i]); });
  } else {
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = envelope_at(table, grid[i]);
  }
  return out;
}

CurveRow curve_row(std::size_t index, int n_min, int modes, std::span<const double> grid) {
  const std::size_t per_branch = static_cast<std::size_t>(modes) * grid.size();
  const Branch branch = index < per_branch ? Branch::pos : Branch::neg;
  const std::size_t local = index % per_branch;
  const int n = n_min + static_cast<int>(local / grid.size());
  const double b = grid[local % grid.size()];
  const double value = branch == Branch::pos ? lambda_n(n, b) : lambda_minus_n(n, b);
  return {branch, {n, b, value}};
}

void validate_modes(int n_min, int n_max) {
  if (n_min < 0 || n_max < n_min) throw DomainError("curves: need 0 <= n_min <= n_max");
}

}  // namespace

double lambda_n(int n, double b) {
  require_mode(n, 0, "lambda_n");
  if (b == 0.0) return n;
  return n - b + 2.0 * b * kummer_log_ratio(0.5, n + 1.0, b);
}

double lambda_minus_n(int n, double b) {
  require_mode(n, 0, "lambda_minus_n");
  return lambda_n(n, -b);
}

double radial_solution(int n, double b, double r) {
  require_mode(n, 0, "radial_solution");
  if (!(r > 0.0 && r <= 1.0)) throw DomainError("radial_solution: r must lie in (0, 1]");
  return radial_closed_form(n, b, r);
}

double radial_log_derivative(int n, double b) {
  require_mode(n, 0, "radial_log_derivative");
  const double v1 = radial_closed_form(n, b, 1.0);
  if (v1 == 0.0) throw DomainError("radial_log_derivative: v_n(1) = 0");
  return central_diff([&](double r) { return radial_closed_form(n, b, r); }, 1.0, 1) / v1;
}

double lambda_n_prime(int n, double z) {
  require_mode(n, 1, "lambda_n_prime");
  if (!(z > 0.0)) throw DomainError("lambda_n_prime: z must be positive");
  const double log_ratio = kummer_log_ratio(0.5, n + 1.0, z);
  const KummerValue m_minus = kummer_m(-0.5, n, z);
  const KummerValue m_half = kummer_m(0.5, n + 1.0, z);
  if (!m_minus.converged || !m_half.converged) {
    throw ConvergenceError("lambda_n_prime: series hit the term cap");
  }
  return -2.0 * n * log_ratio * ratio(m_minus.value, m_half.value);
}

double lambda_n_prime_alt(int n, double z) {
  require_mode(n, 1, "lambda_n_prime_alt");
  if (!(z > 0.0)) throw DomainError("lambda_n_prime_alt: z must be positive");
  const double log_ratio = kummer_log_ratio(0.5, n + 1.0, z);
  const KummerValue m_minus = kummer_m(-0.5, n + 1.0, z);
  const KummerValue m_half = kummer_m(0.5, n + 1.0, z);
  if (!m_minus.converged || !m_half.converged) {
    throw ConvergenceError("lambda_n_prime_alt: series hit the term cap");
  }
  return log_ratio * (1.0 - (2.0 * n + 1.0) * ratio(m_minus.value, m_half.value));
}

double lambda_n_second_at_zprev(int n, const Tolerances& tol) {
  require_mode(n, 1, "lambda_n_second_at_zprev");
  const double z = find_zn(n - 1, tol).z_n;
  return (z - n) / z;
}

std::vector<CurveRow> curves(int n_min, int n_max, std::span<const double> b_grid) {
  validate_modes(n_min, n_max);
  const int modes = n_max - n_min + 1;
  std::vector<CurveRow> rows(2 * static_cast<std::size_t>(modes) * b_grid.size());
  detail::parallel_for(static_cast<std::int64_t>(rows.size()), [&](std::int64_t i) {
    rows[i] = curve_row(static_cast<std::size_t>(i), n_min, modes, b_grid);
  });
  return rows;
}

std::vector<CurveRow> curves_serial(int n_min, int n_max, std::span<const double> b_grid) {
  validate_modes(n_min, n_max);
  const int modes = n_max - n_min + 1;
  std::vector<CurveRow> rows(2 * static_cast<std::size_t>(modes) * b_grid.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = curve_row(i, n_min, modes, b_grid);
  return rows;
}

std::vector<EnvelopePoint> envelope(std::span<const double> b_grid, const Tolerances& tol) {
  return envelope_impl(b_grid, tol, true);
}

std::vector<EnvelopePoint> envelope_serial(std::span<const double> b_grid,
                                           const Tolerances& tol) {
  return envelope_impl(b_grid, tol, false);
}

EnvelopePoint envelope_by_argmin(double b) {
  if (!(b >= 0.0)) throw DomainError("envelope_by_argmin: b must be >= 0");
  const int lo = std::max(0, static_cast<int>(std::floor(b - 3.0 * std::sqrt(b))) - 2);
  const int hi = static_cast<int>(std::ceil(b)) + 2;
  EnvelopePoint best{b, lo, std::numeric_limits<double>::infinity()};
  for (int n = lo; n <= hi; ++n) {
    const double value = lambda_n(n, b);
    if (value < best.lambda_dn) best = {b, n, value};
  }
  return best;
}

std::vector<double> uniform_grid(double lo, double hi, int steps) {
  if (steps < 2) throw std::invalid_argument("uniform_grid: steps must be >= 2");
  if (!(lo <= hi)) throw std::invalid_argument("uniform_grid: need lo <= hi");
  std::vector<double> grid(static_cast<std::size_t>(steps));
  const double h = (hi - lo) / (steps - 1);
  for (int i = 0; i < steps; ++i) grid[i] = lo + i * h;
  grid.back() = hi;
  return grid;
}

}  // namespace steklov
