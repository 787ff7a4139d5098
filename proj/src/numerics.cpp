#include "steklov/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace steklov {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Cody-Waite split of ln 2: the high part has trailing zero bits so that
// k * kLn2Hi is exact for |k| < 2^21.
constexpr double kLn2Hi = 6.93147180369123816490e-01;
constexpr double kLn2Lo = 1.90821492927058770002e-10;

unsigned max_depth_for(int panels) {
  unsigned depth = 0;
  while ((1 << depth) < panels && depth < 30) ++depth;
  return depth;
}

struct PanelResult {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

template <class F>
PanelResult gauss_kronrod(F&& f, double a, double b, const Tolerances& tol) {
  PanelResult r;
  r.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, max_depth_for(tol.quad_panels_max), tol.rel_tol, &r.error, &r.l1);
  return r;
}

void check_error(double error, double l1, const Tolerances& tol, const char* what) {
  // The Kronrod estimate is pessimistic by orders of magnitude once the
  // rule has converged, so a small multiple of rel_tol is accepted.
  if (!(error <= 10.0 * tol.rel_tol * l1 + tol.abs_tol)) {
    throw ConvergenceError(std::string(what) + ": quadrature did not reach rel_tol (err=" + std::to_string(error) + ", l1=" + std::to_string(l1) + ")");
  }
}

}  // namespace

void Tolerances::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || quad_panels_max <= 0 || max_iter < 10) {
    throw std::invalid_argument("Tolerances: fields must be positive and max_iter >= 10");
  }
}

ScaledReal::ScaledReal(double mantissa, std::int64_t exponent) {
  if (mantissa == 0.0 || !std::isfinite(mantissa)) {
    mantissa_ = mantissa;
    exponent_ = 0;
    return;
  }
  int e = 0;
  double m = std::frexp(mantissa, &e);  // |m| in [0.5, 1)
  mantissa_ = 2.0 * m;
  exponent_ = exponent + e - 1;
}

ScaledReal ScaledReal::from_real(double x) { return ScaledReal(x, 0); }

ScaledReal ScaledReal::exp(double x) {
  const double k = std::nearbyint(x / kLn2Hi);
  const double r = (x - k * kLn2Hi) - k * kLn2Lo;
  return ScaledReal(std::exp(r), static_cast<std::int64_t>(k));
}

double ScaledReal::to_real() const {
  if (mantissa_ == 0.0) return 0.0;
  if (exponent_ > 2000) return std::copysign(std::numeric_limits<double>::infinity(), mantissa_);
  if (exponent_ < -2000) return std::copysign(0.0, mantissa_);
  return std::ldexp(mantissa_, static_cast<int>(exponent_));
}

double ScaledReal::log_abs() const {
  if (mantissa_ == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(std::fabs(mantissa_)) + static_cast<double>(exponent_) * std::numbers::ln2;
}

ScaledReal& ScaledReal::operator+=(const ScaledReal& rhs) {
  if (rhs.is_zero()) return *this;
  if (is_zero()) return *this = rhs;
  const std::int64_t shift = rhs.exponent_ - exponent_;
  // Beyond 60 binary orders the smaller operand is below half an ulp.
  if (shift > 60) return *this = rhs;
  if (shift < -60) return *this;
  if (shift >= 0) {
    *this = ScaledReal(std::ldexp(mantissa_, static_cast<int>(-shift)) + rhs.mantissa_, rhs.exponent_);
  } else {
    *this = ScaledReal(mantissa_ + std::ldexp(rhs.mantissa_, static_cast<int>(shift)), exponent_);
  }
  return *this;
}

ScaledReal& ScaledReal::operator*=(const ScaledReal& rhs) {
  if (is_zero() || rhs.is_zero()) return *this = ScaledReal();
  return *this = ScaledReal(mantissa_ * rhs.mantissa_, exponent_ + rhs.exponent_);
}

ScaledReal& ScaledReal::operator/=(const ScaledReal& rhs) {
  if (rhs.is_zero()) throw DomainError("ScaledReal: division by zero");
  if (is_zero()) return *this;
  return *this = ScaledReal(mantissa_ / rhs.mantissa_, exponent_ - rhs.exponent_);
}

double ratio(const ScaledReal& a, const ScaledReal& b) { return (a / b).to_real(); }

double gamma(double x) {
  if (!(x > 0.0)) throw DomainError("gamma: argument must be positive");
  if (x > 171.62) throw std::overflow_error("gamma: result exceeds double range");
  return std::tgamma(x);
}

double integrate_semi_infinite(const Integrand& f, double decay_scale, const Tolerances& tol) {
  tol.validate();
  double total = 0.0;
  double error = 0.0;
  double l1 = 0.0;

  auto head = gauss_kronrod(
      [&](double u) {
        const double u2 = u * u;
        return 4.0 * u2 * u * f(u2 * u2);
      },
      0.0, 1.0, tol);
  total += head.value;
  error += head.error;
  l1 += head.l1;

  double lo = 1.0;
  for (int panel = 0;; ++panel) {
    if (panel > 1000) throw ConvergenceError("integrate_semi_infinite: integrand does not decay");
    const double hi = 2.0 * lo;
    auto r = gauss_kronrod(f, lo, hi, tol);
    total += r.value;
    error += r.error;
    l1 += r.l1;
    if (!std::isfinite(total)) throw ConvergenceError("integrate_semi_infinite: non-finite value");
    if (hi >= decay_scale && std::fabs(r.value) <= 1e-3 * tol.rel_tol * std::fabs(total) &&
        r.l1 <= 1e-3 * tol.rel_tol * l1) {
      break;
    }
    lo = hi;
  }
  check_error(error, l1, tol, "integrate_semi_infinite");
  return total;
}

double integrate_bounded(const Integrand& f, double a, double b, const Tolerances& tol) {
  tol.validate();
  auto r = gauss_kronrod(f, a, b, tol);
  check_error(r.error, r.l1, tol, "integrate_bounded");
  return r.value;
}

double brent_root(const std::function<double(double)>& f, double lo, double hi,
                  const Tolerances& tol) {
  tol.validate();
  if (lo > hi) std::swap(lo, hi);
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi)) {
    throw BracketError("brent_root: f(lo) and f(hi) have the same sign");
  }
  const double rel = std::max(tol.rel_tol, 4.0 * kEps);
  auto done = [&](double a, double b) {
    return std::fabs(b - a) <= rel * std::min(std::fabs(a), std::fabs(b)) + tol.abs_tol;
  };
  std::uintmax_t iters = static_cast<std::uintmax_t>(tol.max_iter);
  auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, done, iters);
  if (iters >= static_cast<std::uintmax_t>(tol.max_iter) && !done(a, b)) {
    throw ConvergenceError("brent_root: no convergence within max_iter");
  }
  return 0.5 * (a + b);
}

double brent_minimize(const std::function<double(double)>& f, double lo, double hi,
                      const Tolerances& tol) {
  tol.validate();
  std::uintmax_t iters = static_cast<std::uintmax_t>(tol.max_iter);
  const int bits = std::numeric_limits<double>::digits / 2;
  auto [x, fx] = boost::math::tools::brent_find_minima(f, lo, hi, bits, iters);
  (void)fx;
  if (iters >= static_cast<std::uintmax_t>(tol.max_iter)) {
    throw ConvergenceError("brent_minimize: no convergence within max_iter");
  }
  return x;
}

double central_diff(const std::function<double(double)>& f, double x, int order) {
  if (order != 1 && order != 2) throw std::invalid_argument("central_diff: order must be 1 or 2");
  const double scale = std::max(std::fabs(x), 1.0);
  double h = scale * (order == 1 ? std::cbrt(kEps) : std::sqrt(std::sqrt(kEps)));
  // Make x + h exactly representable so the step is what we divide by.
  volatile double xph = x + h;
  h = xph - x;
  if (order == 1) return (f(x + h) - f(x - h)) / (2.0 * h);
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

}  // namespace steklov
