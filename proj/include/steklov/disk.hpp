#pragma once

#include <span>
#include <vector>

#include "steklov/numerics.hpp"

namespace steklov {

/// One sample of a Steklov branch: mode n, half field strength b (the field
/// is 2b) and the eigenvalue.
struct EigenCurvePoint {
  int n = 0;
  double b = 0.0;
  double lambda = 0.0;
};

/// Ground-state sample: the mode attaining the minimum and its value.
struct EnvelopePoint {
  double b = 0.0;
  int active_mode = 0;
  double lambda_dn = 0.0;
};

/// pos: lambda_n(b); neg: the mode -n branch, lambda_n(-b).
enum class Branch { pos, neg };

struct CurveRow {
  Branch branch = Branch::pos;
  EigenCurvePoint point;
};

/// lambda_n(b) = n - b + 2b M'(1/2, n+1, b) / M(1/2, n+1, b), n >= 0.
/// Negative b is allowed and goes through Kummer's transformation.
double lambda_n(int n, double b);

/// lambda_n(-b): the eigenvalue carried by Fourier mode -n.
double lambda_minus_n(int n, double b);

/// Radial factor v_n(r) = e^{-b r^2/2} r^n L_{-1/2}^n(b r^2), r in (0, 1].
double radial_solution(int n, double b, double r);

/// v_n'(1) / v_n(1) by central differences of the closed form (which is
/// analytic across r = 1). Only meant as an independent route to lambda_n.
double radial_log_derivative(int n, double b);

/// lambda_n'(z) = -2n M'(1/2,n+1,z) M(-1/2,n,z) / M(1/2,n+1,z)^2, n >= 1, z > 0.
double lambda_n_prime(int n, double z);

/// Same derivative from the other closed form,
/// M'/M^2 * (M(1/2,n+1,z) - (2n+1) M(-1/2,n+1,z)).
double lambda_n_prime_alt(int n, double z);

/// lambda_n''(z_{n-1}) = (z_{n-1} - n) / z_{n-1}, n >= 1.
double lambda_n_second_at_zprev(int n, const Tolerances& tol = {});

/// Branch samples for n in [n_min, n_max] over b_grid: all pos rows
/// (n-major), then all neg rows. OpenMP-parallel over rows.
std::vector<CurveRow> curves(int n_min, int n_max, std::span<const double> b_grid);
std::vector<CurveRow> curves_serial(int n_min, int n_max, std::span<const double> b_grid);

/// Ground state lambda^DN(b) on an ascending grid of b >= 0.
///
/// The active mode is read off the intersection points: mode n owns
/// [z_{n-1}, z_n] with z_{-1} = 0. Only the z_n spanning the grid are
/// computed. Output order matches the grid; evaluation is OpenMP-parallel.
std::vector<EnvelopePoint> envelope(std::span<const double> b_grid, const Tolerances& tol = {});
std::vector<EnvelopePoint> envelope_serial(std::span<const double> b_grid,
                                           const Tolerances& tol = {});

/// Brute-force minimum of lambda_n(b) over n in
/// [max(0, floor(b - 3 sqrt(b)) - 2), ceil(b) + 2].
EnvelopePoint envelope_by_argmin(double b);

/// Uniform grid of `steps` points from lo to hi inclusive.
std::vector<double> uniform_grid(double lo, double hi, int steps);

}  // namespace steklov
