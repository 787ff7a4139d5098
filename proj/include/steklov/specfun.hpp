#pragma once

#include "steklov/numerics.hpp"

namespace steklov {

/// Result of a Kummer series evaluation.
struct KummerValue {
  ScaledReal value;
  int terms_used = 0;
  bool converged = false;

  double to_real() const { return value.to_real(); }
};

/// Kummer's confluent hypergeometric function M(a, c, z) = 1F1(a; c; z).
///
/// For z >= 0 (or a a non-positive integer) the power series is summed
/// directly with a shared power-of-two scale, so values like e^(10^6) are
/// representable. For z < 0 Kummer's transformation
/// M(a, c, z) = e^z M(c - a, c, -z) is applied first, which makes every
/// summed term positive whenever 0 < a < c.
///
/// Summation stops once a rigorous geometric bound on the tail is below
/// 1e-16 of the sum of |terms|. The term cap is max(10^6, 2|z| + 10^4);
/// hitting it leaves converged == false.
///
/// Throws DomainError if c is a non-positive integer or |z| > 10^6.
KummerValue kummer_m(double a, double c, double z);

/// dM/dz = (a/c) M(a+1, c+1, z).
ScaledReal kummer_m_prime(double a, double c, double z);

/// M'(a, c, z) / M(a, c, z), with the e^|z| growth cancelled inside the
/// scaled representation. Negative z goes through the same transformation
/// as kummer_m, so the quotient stays free of cancellation for 0 < a < c.
/// Throws ConvergenceError if either series hits its term cap.
double kummer_log_ratio(double a, double c, double z);

/// Generalized Laguerre function
/// L_nu^alpha(z) = Gamma(alpha+nu+1) / (Gamma(alpha+1) Gamma(nu+1)) M(-nu, alpha+1, z).
/// Throws DomainError unless alpha+nu+1, alpha+1 and nu+1 are all positive.
double laguerre(double nu, double alpha, double z);

/// Parabolic cylinder function D_nu at a real point, with its z-derivative.
struct CylinderValue {
  double value = 0.0;
  double derivative = 0.0;
  double nu = 0.0;
  double z = 0.0;
};

/// D_nu(z) for nu in [-4, 4] and |z| <= 50.
///
/// For nu <= -1/2 the value comes from
///   D_nu(z) = e^{-z^2/4} / Gamma(-nu) * int_0^inf t^{-nu-1} e^{-t^2/2 - z t} dt,
/// whose integrand is at worst t^{-1/2}-singular. Larger nu are reached from
/// the two anchors nu0 - 1, nu0 in (-5/2, -1/2] by the upward recurrence
/// D_{m+1} = z D_m - m D_{m-1}. The derivative is
/// D'_nu = -(z/2) D_nu + nu D_{nu-1}, i.e. the z-derivative of the integral.
CylinderValue cylinder_d(double nu, double z, const Tolerances& tol = {});

}  // namespace steklov
