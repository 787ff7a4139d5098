#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace steklov {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BracketError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Knobs shared by the quadrature and root-finding routines.
struct Tolerances {
  double rel_tol = 1e-13;
  double abs_tol = 1e-300;
  int max_iter = 200;
  int quad_panels_max = 4096;

  /// Throws std::invalid_argument unless every field is positive and
  /// max_iter >= 10.
  void validate() const;
};

/// A real number stored as mantissa * 2^exponent with |mantissa| in [1, 2).
///
/// Used to sum series whose terms grow like e^z without overflowing a double.
/// Zero is represented with mantissa 0 and exponent 0.
class ScaledReal {
 public:
  constexpr ScaledReal() = default;

  /// Normalizes an arbitrary (mantissa, exponent) pair.
  ScaledReal(double mantissa, std::int64_t exponent);

  static ScaledReal from_real(double x);
  /// e^x, with the argument reduction done in extended precision.
  static ScaledReal exp(double x);

  double mantissa() const { return mantissa_; }
  std::int64_t exponent() const { return exponent_; }
  bool is_zero() const { return mantissa_ == 0.0; }
  int sign() const { return (mantissa_ > 0.0) - (mantissa_ < 0.0); }

  /// Converts back to double; overflows to +-inf and underflows to 0.
  double to_real() const;
  /// Natural log of |value|.
  double log_abs() const;

  ScaledReal operator-() const { return {-mantissa_, exponent_, Raw{}}; }
  ScaledReal& operator+=(const ScaledReal& rhs);
  ScaledReal& operator-=(const ScaledReal& rhs) { return *this += -rhs; }
  ScaledReal& operator*=(const ScaledReal& rhs);
  ScaledReal& operator/=(const ScaledReal& rhs);
  ScaledReal& operator*=(double rhs) { return *this *= from_real(rhs); }

  friend ScaledReal operator+(ScaledReal a, const ScaledReal& b) { return a += b; }
  friend ScaledReal operator-(ScaledReal a, const ScaledReal& b) { return a -= b; }
  friend ScaledReal operator*(ScaledReal a, const ScaledReal& b) { return a *= b; }
  friend ScaledReal operator/(ScaledReal a, const ScaledReal& b) { return a /= b; }
  friend ScaledReal operator*(ScaledReal a, double b) { return a *= b; }
  friend ScaledReal operator*(double a, ScaledReal b) { return b *= a; }

  friend bool operator==(const ScaledReal&, const ScaledReal&) = default;

 private:
  struct Raw {};
  constexpr ScaledReal(double m, std::int64_t e, Raw) : mantissa_(m), exponent_(e) {}

  double mantissa_ = 0.0;
  std::int64_t exponent_ = 0;
};

/// Quotient a/b returned as a plain double (the exponents cancel first).
double ratio(const ScaledReal& a, const ScaledReal& b);

/// Gamma function for x > 0. Throws DomainError for x <= 0 and
/// std::overflow_error past the double range (x > 171.6).
double gamma(double x);

using Integrand = std::function<double(double)>;

/// Integral of f over (0, +inf).
///
/// f may carry an integrable endpoint singularity t^p with p > -1 at t = 0.
/// The unit interval is handled with the substitution t = u^4, which turns
/// t^p into u^(4p+3) (bounded for p >= -3/4); the remainder is integrated
/// on the dyadic panels [1,2], [2,4], ... until a panel beyond decay_scale
/// contributes less than rel_tol/1000 of the running total. Each panel uses
/// adaptive Gauss-Kronrod (7/15) refinement up to quad_panels_max pieces.
///
/// decay_scale should be at least the abscissa of the integrand's maximum.
double integrate_semi_infinite(const Integrand& f, double decay_scale,
                               const Tolerances& tol = {});

/// Adaptive Gauss-Kronrod on a bounded interval [a, b].
double integrate_bounded(const Integrand& f, double a, double b,
                         const Tolerances& tol = {});

/// Root of f in [lo, hi]; requires a sign change. Throws BracketError if
/// f(lo) and f(hi) have the same sign and ConvergenceError after max_iter
/// evaluations.
double brent_root(const std::function<double(double)>& f, double lo, double hi,
                  const Tolerances& tol = {});

/// Local minimizer of f on [lo, hi] (derivative-free Brent search).
double brent_minimize(const std::function<double(double)>& f, double lo, double hi,
                      const Tolerances& tol = {});

/// Central difference derivative of order 1 or 2.
///
/// Step h = max(|x|, 1) * eps^(1/3) for order 1 and eps^(1/4) for order 2.
double central_diff(const std::function<double(double)>& f, double x, int order = 1);

}  // namespace steklov
