#include "steklov/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

namespace steklov {

namespace {

constexpr double kSeriesTol = 1e-16;
constexpr int kRescaleBits = 600;
const double kRescaleAt = std::ldexp(1.0, kRescaleBits);

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// Power series of M(a, c, z). Terms share one binary scale with the running
// sums, and both are shifted down together whenever the sums get large.
KummerValue kummer_series(double a, double c, double z) {
  const std::int64_t max_terms =
      std::max<std::int64_t>(1'000'000, static_cast<std::int64_t>(2.0 * std::fabs(z)) + 10'000);
  double term = 1.0;
  double sum = 1.0;
  double comp = 0.0;
  double abs_sum = 1.0;
  std::int64_t scale = 0;
  KummerValue out;

  for (std::int64_t k = 0; k < max_terms; ++k) {
    const double kd = static_cast<double>(k);
    term *= (a + kd) / (c + kd) * z / (kd + 1.0);
    out.terms_used = static_cast<int>(k + 1);
    if (term == 0.0) {
      out.converged = true;
      break;
    }
    // Neumaier compensated sum.
    const double t = sum + term;
    comp += std::fabs(sum) >= std::fabs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    abs_sum += std::fabs(term);
    if (abs_sum > kRescaleAt) {
      term = std::ldexp(term, -kRescaleBits);
      sum = std::ldexp(sum, -kRescaleBits);
      comp = std::ldexp(comp, -kRescaleBits);
      abs_sum = std::ldexp(abs_sum, -kRescaleBits);
      scale += kRescaleBits;
    }

    // Every later ratio (a+j)/(c+j) * z/(j+1), j >= k+1, is bounded by rho
    // once a+j and c+j stay positive: both (a+j)/(c+j) and (a+j)/(j+1)
    // move monotonically toward 1.
    const double kn = kd + 1.0;
    if (a + kn >= 0.0 && c + kn > 0.0) {
      const double az = std::fabs(z);
      const double rho_a = std::max(1.0, (a + kn) / (c + kn)) * az / (kn + 1.0);
      const double rho_b = std::max(1.0, (a + kn) / (kn + 1.0)) * az / (c + kn);
      const double rho = std::min(rho_a, rho_b);
      if (rho < 1.0 && std::fabs(term) * rho / (1.0 - rho) <= kSeriesTol * abs_sum) {
        out.converged = true;
        break;
      }
    }
  }
  out.value = ScaledReal(sum + comp, scale);
  return out;
}

void check_kummer_args(double a, double c, double z) {
  if (!std::isfinite(a) || !std::isfinite(c) || !std::isfinite(z)) {
    throw DomainError("kummer_m: non-finite argument");
  }
  if (is_nonpositive_integer(c)) throw DomainError("kummer_m: c is a non-positive integer");
  if (std::fabs(z) > 1e6) throw DomainError("kummer_m: |z| > 1e6");
}

// Series part of M(a, c, z) with the e^z prefactor of the transformation
// left out; `transformed` reports whether it applies.
KummerValue kummer_core(double a, double c, double z, bool& transformed) {
  transformed = z < 0.0 && !is_nonpositive_integer(a);
  if (transformed) return kummer_series(c - a, c, -z);
  return kummer_series(a, c, z);
}

// D_mu(z) from the integral representation, mu <= -1/2.
double cylinder_integral(double mu, double z, const Tolerances& tol) {
  const double p = -mu - 1.0;
  // Largest value of -t^2/2 - z t on t >= 0; it is pulled out of the
  // integral so the quadrature sees O(1) magnitudes for every |z| <= 50.
  const double peak = z < 0.0 ? 0.5 * z * z : 0.0;
  auto integrand = [=](double t) {
    if (t <= 0.0) return p == 0.0 ? std::exp(-peak) : 0.0;
    return std::exp(p * std::log(t) - 0.5 * t * t - z * t - peak);
  };
  const double integral = integrate_semi_infinite(integrand, std::max(-z, 0.0) + 1.0, tol);
  return integral * std::exp(peak - 0.25 * z * z) / gamma(-mu);
}

}  // namespace

KummerValue kummer_m(double a, double c, double z) {
  check_kummer_args(a, c, z);
  if (z == 0.0) return {ScaledReal::from_real(1.0), 1, true};
  bool transformed = false;
  KummerValue v = kummer_core(a, c, z, transformed);
  if (transformed) v.value *= ScaledReal::exp(z);
  return v;
}

ScaledReal kummer_m_prime(double a, double c, double z) {
  check_kummer_args(a, c, z);
  return kummer_m(a + 1.0, c + 1.0, z).value * (a / c);
}

double kummer_log_ratio(double a, double c, double z) {
  check_kummer_args(a, c, z);
  if (z == 0.0) return a / c;
  bool t_num = false;
  bool t_den = false;
  const KummerValue num = kummer_core(a + 1.0, c + 1.0, z, t_num);
  const KummerValue den = kummer_core(a, c, z, t_den);
  if (!num.converged || !den.converged) {
    throw ConvergenceError("kummer_log_ratio: series hit the term cap");
  }
  // Both sides carry the same e^z factor when transformed.
  ScaledReal q = num.value / den.value;
  if (t_num != t_den) q *= ScaledReal::exp(t_num ? z : -z);
  return (a / c) * q.to_real();
}

double laguerre(double nu, double alpha, double z) {
  const double g1 = alpha + nu + 1.0;
  const double g2 = alpha + 1.0;
  const double g3 = nu + 1.0;
  if (!(g1 > 0.0) || !(g2 > 0.0) || !(g3 > 0.0)) {
    throw DomainError("laguerre: Gamma arguments must be positive");
  }
  double prefactor = 0.0;
  if (std::max({g1, g2, g3}) < 170.0) {
    prefactor = gamma(g1) / (gamma(g2) * gamma(g3));
  } else {
    prefactor = std::exp(std::lgamma(g1) - std::lgamma(g2) - std::lgamma(g3));
  }
  const KummerValue m = kummer_m(-nu, alpha + 1.0, z);
  if (!m.converged) throw ConvergenceError("laguerre: series hit the term cap");
  return prefactor * m.to_real();
}

CylinderValue cylinder_d(double nu, double z, const Tolerances& tol) {
  if (!(nu >= -4.0 && nu <= 4.0)) throw DomainError("cylinder_d: nu outside [-4, 4]");
  if (!(std::fabs(z) <= 50.0)) throw DomainError("cylinder_d: |z| > 50");

  CylinderValue out;
  out.nu = nu;
  out.z = z;
  double value = 0.0;
  double below = 0.0;  // D_{nu-1}(z)
  if (nu <= -0.5) {
    value = cylinder_integral(nu, z, tol);
    below = cylinder_integral(nu - 1.0, z, tol);
  } else {
    const int lifts = static_cast<int>(std::ceil(nu + 0.5));
    double mu = nu - lifts;
    below = cylinder_integral(mu - 1.0, z, tol);
    value = cylinder_integral(mu, z, tol);
    for (int i = 0; i < lifts; ++i) {
      const double next = z * value - mu * below;
      below = value;
      value = next;
      mu += 1.0;
    }
  }
  out.value = value;
  out.derivative = -0.5 * z * value + nu * below;
  return out;
}

}  // namespace steklov
