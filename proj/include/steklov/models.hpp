#pragma once

#include "steklov/numerics.hpp"

namespace steklov {

/// The model constants and the quantities derived from them.
struct ModelConstants {
  double alpha = 0.0;        // -alpha is the negative zero of D_{1/2}
  double xi0 = 0.0;          // root of the De Gennes equation on (0.5, 1)
  double theta0 = 0.0;       // xi0^2
  double delta_alpha = 0.0;  // Delta(alpha) by quadrature; equals (1 - 10 alpha^2) / 12
  double u0_sq_at_0 = 0.0;   // u_0(0)^2 of the normalized De Gennes ground state
  double bound_663 = 0.0;    // sqrt(2) theta0 / u0_sq_at_0, an upper bound for alpha
  double resolved_tol = 0.0;
};

/// Root of z -> D_{1/2}(-z) in (0.5, 1.0).
double compute_alpha(const Tolerances& tol = {});

/// compute_alpha() at default tolerances, computed once.
double alpha();

/// Half-plane Fourier multiplier at unit field,
/// f1(xi) = -2 D'_{-1/2}(-xi) / D_{-1/2}(-xi).
double halfplane_multiplier(double xi, const Tolerances& tol = {});

/// Minimizer of f1 on [0, 2] by derivative-free search.
double halfplane_argmin(const Tolerances& tol = {});

/// Stationary point of f1, located as the zero of f1'(xi) = (xi^2 - f1(xi)^2)/2
/// (the Riccati form that follows from the Weber equation) near `guess`.
double halfplane_stationary_point(double guess, const Tolerances& tol = {});

/// Bottom of the half-plane spectrum at field strength b: sqrt(b) * alpha.
double halfplane_bottom(double b);

/// f(xi) = xi D_{(xi^2-1)/2}(-sqrt(2) xi) + sqrt(2) D_{(xi^2+1)/2}(-sqrt(2) xi),
/// xi in [0, 1.5].
double degennes_f(double xi, const Tolerances& tol = {});

/// Root of degennes_f on (0.5, 1.0).
double compute_xi0(const Tolerances& tol = {});

/// Phi(beta) = beta + D_{1/2}(-beta) / D_{-1/2}(-beta).
double phi(double beta, const Tolerances& tol = {});

/// Phi(beta) as A/C, the quotient of the s^{1/2} and s^{-1/2} moments.
double phi_quadrature(double beta, const Tolerances& tol = {});

/// int_0^inf e^{beta s - s^2/2} s^p ds for p > -1 and |beta| <= 30.
double gaussian_moment(double p, double beta, const Tolerances& tol = {});

/// The four moments entering the second term of theta_n:
///   A = I_{1/2}, B = I_{3/2} - I_{7/2}/3, C = I_{-1/2}, D = I_{1/2} - I_{5/2}/3.
struct Moments {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double D = 0.0;
};
Moments moments(double beta, const Tolerances& tol = {});

/// Delta(beta) = (B C - A D) / C^2, by quadrature of the moments.
double delta(double beta, const Tolerances& tol = {});

struct ComparisonBound {
  double u0_sq = 0.0;
  double bound = 0.0;
};

/// u_0(0)^2 = D_nu(-sqrt(2) xi0)^2 / int_0^12 D_nu(sqrt(2)(t - xi0))^2 dt with
/// nu = (xi0^2 - 1)/2, and the bound sqrt(2) theta0 / u_0(0)^2.
/// Throws std::runtime_error if alpha exceeds the bound.
ComparisonBound comparison_bound(const Tolerances& tol = {});

ModelConstants compute_model_constants(const Tolerances& tol = {});

/// compute_model_constants() at default tolerances, computed once.
const ModelConstants& model_constants();

}  // namespace steklov
