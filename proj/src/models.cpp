#include "steklov/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "steklov/specfun.hpp"

namespace steklov {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kNormCutoff = 12.0;

}  // namespace

double compute_alpha(const Tolerances& tol) {
  return brent_root([&](double z) { return cylinder_d(0.5, -z, tol).value; }, 0.5, 1.0, tol);
}

double alpha() {
  static const double value = compute_alpha();
  return value;
}

double halfplane_multiplier(double xi, const Tolerances& tol) {
  const CylinderValue d = cylinder_d(-0.5, -xi, tol);
  return -2.0 * d.derivative / d.value;
}

double halfplane_argmin(const Tolerances& tol) {
  return brent_minimize([&](double xi) { return halfplane_multiplier(xi, tol); }, 0.0, 2.0, tol);
}

double halfplane_stationary_point(double guess, const Tolerances& tol) {
  auto riccati = [&](double xi) {
    const double f = halfplane_multiplier(xi, tol);
    return 0.5 * (xi * xi - f * f);
  };
  return brent_root(riccati, std::max(0.0, guess - 0.5), guess + 0.5, tol);
}

double halfplane_bottom(double b) {
  if (!(b > 0.0)) throw DomainError("halfplane_bottom: b must be positive");
  return std::sqrt(b) * alpha();
}

double degennes_f(double xi, const Tolerances& tol) {
  if (!(xi >= 0.0 && xi <= 1.5)) throw DomainError("degennes_f: xi must lie in [0, 1.5]");
  const double z = -kSqrt2 * xi;
  const double lower = cylinder_d(0.5 * (xi * xi - 1.0), z, tol).value;
  const double upper = cylinder_d(0.5 * (xi * xi + 1.0), z, tol).value;
  return xi * lower + kSqrt2 * upper;
}

double compute_xi0(const Tolerances& tol) {
  return brent_root([&](double xi) { return degennes_f(xi, tol); }, 0.5, 1.0, tol);
}

double phi(double beta, const Tolerances& tol) {
  return beta + cylinder_d(0.5, -beta, tol).value / cylinder_d(-0.5, -beta, tol).value;
}

double phi_quadrature(double beta, const Tolerances& tol) {
  return gaussian_moment(0.5, beta, tol) / gaussian_moment(-0.5, beta, tol);
}

double gaussian_moment(double p, double beta, const Tolerances& tol) {
  if (!(p > -1.0)) throw DomainError("gaussian_moment: p must exceed -1");
  if (!(std::fabs(beta) <= 30.0)) throw DomainError("gaussian_moment: |beta| must be <= 30");
  auto integrand = [=](double s) { return std::exp(beta * s - 0.5 * s * s) * std::pow(s, p); };
  return integrate_semi_infinite(integrand, std::max(1.0, beta + 4.0), tol);
}

Moments moments(double beta, const Tolerances& tol) {
  auto I = [&](double p) { return gaussian_moment(p, beta, tol); };
  const double i_m12 = I(-0.5);
  const double i_12 = I(0.5);
  const double i_32 = I(1.5);
  const double i_52 = I(2.5);
  const double i_72 = I(3.5);
  return {i_12, i_32 - i_72 / 3.0, i_m12, i_12 - i_52 / 3.0};
}

double delta(double beta, const Tolerances& tol) {
  const Moments m = moments(beta, tol);
  return (m.B * m.C - m.A * m.D) / (m.C * m.C);
}

ComparisonBound comparison_bound(const Tolerances& tol) {
  const double xi0 = compute_xi0(tol);
  const double nu = 0.5 * (xi0 * xi0 - 1.0);
  auto ground = [&](double t) { return cylinder_d(nu, kSqrt2 * (t - xi0), tol).value; };
  const double norm = integrate_bounded(
      [&](double t) {
        const double u = ground(t);
        return u * u;
      },
      0.0, kNormCutoff, tol);
  const double at_zero = ground(0.0);
  ComparisonBound out;
  out.u0_sq = at_zero * at_zero / norm;
  out.bound = kSqrt2 * xi0 * xi0 / out.u0_sq;
  if (alpha() > out.bound) throw std::runtime_error("comparison_bound: alpha exceeds the bound");
  return out;
}

ModelConstants compute_model_constants(const Tolerances& tol) {
  ModelConstants c;
  c.alpha = compute_alpha(tol);
  c.xi0 = compute_xi0(tol);
  c.theta0 = c.xi0 * c.xi0;
  c.delta_alpha = delta(c.alpha, tol);
  const ComparisonBound cb = comparison_bound(tol);
  c.u0_sq_at_0 = cb.u0_sq;
  c.bound_663 = cb.bound;
  c.resolved_tol = tol.rel_tol;
  return c;
}

const ModelConstants& model_constants() {
  static const ModelConstants value = compute_model_constants();
  return value;
}

}  // namespace steklov
