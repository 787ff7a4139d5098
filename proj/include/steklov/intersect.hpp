#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "steklov/numerics.hpp"

namespace steklov {

/// Crossing of the branches lambda_n and lambda_{n+1}.
struct IntersectionRecord {
  int n = 0;
  double z_n = 0.0;
  double lambda_at_zn = 0.0;
  /// (z_n - n - 1/2) / sqrt(n); absent for n = 0.
  std::optional<double> beta_n;
  /// |M(-1/2, n+1, z_n)| from the direct series (scale: M(-1/2, n+1, 0) = 1).
  double residual_M = 0.0;
  /// |(z - n - 1/2) - z M'(1/2,n+1,z)/M(1/2,n+1,z)| at z_n.
  double residual_char = 0.0;
  /// |lambda_n(z_n) - (z_n - n - 1)|.
  double residual_F = 0.0;
};

/// Least-squares fit of z_n - n on {sqrt(n), 1, n^{-1/2}, n^{-1}} (first
/// `terms` of them).
struct AsymptoticFit {
  std::vector<double> coefficients;
  std::pair<int, int> n_range{0, 0};
  double max_residual = 0.0;
};

/// n + alpha sqrt(n) + (alpha^2 + 2)/3.
double zn_two_term(double n);

/// Locates z_n as the zero of M(-1/2, n+1, .) (direct series) in
/// [n+1, n + alpha sqrt(n) + (alpha^2+2)/3 + 5 sqrt(n+1)], then evaluates
/// lambda_n there through the positive M(1/2, n+1, .) series.
///
/// Throws BracketError if the bracket does not show a sign change; the
/// bracket is never widened.
IntersectionRecord find_zn(int n, const Tolerances& tol = {});

/// Records for n in [n_min, n_max], in order. OpenMP-parallel over n.
std::vector<IntersectionRecord> intersections(int n_min, int n_max, const Tolerances& tol = {});
std::vector<IntersectionRecord> intersections_serial(int n_min, int n_max,
                                                     const Tolerances& tol = {});

/// max over n in [0, n_max] of |lambda_n(z_n) - (z_n - n - 1)|.
double check_F_formula(int n_max, const Tolerances& tol = {});

/// (z_n - n - 1/2) / sqrt(n), n >= 1.
double beta_n(int n, const Tolerances& tol = {});

/// Throws std::invalid_argument if terms is outside [1, 4], the records do
/// not start at n >= 1, n_hi/n_lo < 4, or the basis is rank deficient.
AsymptoticFit fit_asymptotics(std::span<const IntersectionRecord> records, int terms);

/// z_n - z_{n-1}, n >= 1.
double gap_zn(int n, const Tolerances& tol = {});

/// |lambda - alpha sqrt(n) - (alpha^2 - 1)/3| for a given lambda_n(z_n).
double lambda_at_zn_residual(int n, double lambda_at_zn);

/// lambda_at_zn_residual evaluated at the computed z_n; n >= 100.
double lambda_at_zn_asymptotic_check(int n, const Tolerances& tol = {});

}  // namespace steklov
