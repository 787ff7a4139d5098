#include "steklov/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "steklov/disk.hpp"
#include "steklov/intersect.hpp"
#include "steklov/specfun.hpp"

namespace steklov::verify {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Reference values of the constants, to the digits usually quoted.
constexpr double kAlphaRef = 0.7649508673;
constexpr double kXi0Ref = 0.76818;
constexpr double kTheta0Ref = 0.5901061249;
constexpr double kU0SqRef = 0.7622;
constexpr double kBoundRef = 1.0946;

struct Check {
  const char* module;
  const char* name;
  double limit;
  std::function<double()> measure;
};

CheckResult evaluate(const Check& check) {
  CheckResult r{check.module, check.name, 0.0, check.limit, false, {}};
  try {
    r.measured = check.measure();
    r.passed = std::isfinite(r.measured) && r.measured <= r.limit;
  } catch (const std::exception& e) {
    r.measured = std::numeric_limits<double>::quiet_NaN();
    r.error = e.what();
  }
  return r;
}

double rel_err(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

// ---- numerics -------------------------------------------------------------

double scaled_round_trip() {
  std::vector<double> xs = {0.0,
                            1.0,
                            -1.0,
                            0.5,
                            1.5,
                            std::numbers::pi,
                            1e-300,
                            std::numeric_limits<double>::denorm_min(),
                            std::numeric_limits<double>::min(),
                            std::numeric_limits<double>::max(),
                            -std::numeric_limits<double>::max(),
                            123456.789};
  std::mt19937_64 rng(20240601);
  while (xs.size() < 5000) {
    const double x = std::bit_cast<double>(rng());
    if (std::isfinite(x)) xs.push_back(x);
  }
  double mismatches = 0;
  for (double x : xs) {
    if (ScaledReal::from_real(x).to_real() != x) ++mismatches;
  }
  return mismatches;
}

// Relative spread between three summation orders of the same positive terms,
// in units of N * eps.
double scaled_grouping() {
  constexpr int n = 2000;
  std::vector<ScaledReal> terms;
  terms.reserve(n);
  for (int k = 0; k < n; ++k) {
    terms.push_back(ScaledReal::exp(0.37 * k - 250.0) * (1.5 + std::sin(k)));
  }
  ScaledReal forward, backward;
  for (const auto& t : terms) forward += t;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) backward += *it;
  std::vector<ScaledReal> level = terms;
  while (level.size() > 1) {
    std::vector<ScaledReal> next;
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(level[i] + level[i + 1]);
    if (level.size() % 2 == 1) next.push_back(level.back());
    level = std::move(next);
  }
  const double fb = std::fabs(ratio(forward, backward) - 1.0);
  const double fp = std::fabs(ratio(forward, level.front()) - 1.0);
  return std::max(fb, fp) / (n * kEps);
}

double quadrature_gamma(const Tolerances& tol) {
  double worst = 0.0;
  for (double k : {-0.5, 0.0, 0.5, 1.0, 2.0}) {
    const double got = integrate_semi_infinite(
        [k](double t) { return std::pow(t, k) * std::exp(-t); }, std::max(1.0, k), tol);
    worst = std::max(worst, rel_err(got, std::tgamma(k + 1.0)));
  }
  return worst;
}

double root_bracket_invariance(const Tolerances& tol) {
  auto f = [](double x) { return x * x * x - x - 2.0; };
  const double base = brent_root(f, 1.0, 2.0, tol);
  double worst = 0.0;
  for (auto [lo, hi] : {std::pair{0.0, 3.0}, {1.5, 10.0}, {-5.0, 10.0}, {1.0, 1.6}}) {
    worst = std::max(worst, rel_err(brent_root(f, lo, hi, tol), base));
  }
  return worst;
}

// ---- specfun --------------------------------------------------------------

// max over the grid of |sum of terms| / max |term| for the four contiguous
// relations between neighbouring Kummer functions.
double contiguous_relations() {
  double worst = 0.0;
  auto rel = [&](std::initializer_list<ScaledReal> terms) {
    ScaledReal sum;
    ScaledReal largest;
    for (const auto& t : terms) {
      sum += t;
      if (largest.is_zero() || std::fabs(ratio(t, largest)) > 1.0) {
        largest = t.sign() < 0 ? -t : t;
      }
    }
    worst = std::max(worst, std::fabs(ratio(sum, largest)));
  };
  auto M = [](double a, double c, double z) { return kummer_m(a, c, z).value; };
  for (double a : {0.5, 1.5}) {
    for (double c : {2.0, 5.0, 11.0}) {
      for (double z : {0.1, 1.0, 10.0, 50.0}) {
        const ScaledReal m = M(a, c, z);
        const ScaledReal mp = kummer_m_prime(a, c, z);
        rel({(c - 1.0) * M(a, c - 1.0, z), (a + 1.0 - c) * m, -a * M(a + 1.0, c, z)});
        rel({c * m, -c * M(a - 1.0, c, z), -z * M(a, c + 1.0, z)});
        rel({a * M(a + 1.0, c, z), -a * m, -z * mp});
        rel({(c - a) * M(a - 1.0, c, z), (z + a - c) * m, -z * mp});
      }
    }
  }
  return worst;
}

double kummer_derivative() {
  double worst = 0.0;
  for (double a : {0.5, 1.5}) {
    for (double c : {2.0, 5.0, 11.0}) {
      for (double z : {0.1, 1.0, 10.0, 50.0}) {
        const double fd = central_diff([&](double x) { return kummer_m(a, c, x).to_real(); }, z);
        worst = std::max(worst, rel_err(fd, kummer_m_prime(a, c, z).to_real()));
      }
    }
  }
  return worst;
}

// The returned derivative is built from D_{nu-1}, so it is compared against a
// Richardson-extrapolated difference quotient of the values to test the
// first-derivative identities independently.
double cylinder_recurrences(const Tolerances& tol) {
  double worst = 0.0;
  for (double nu : {-1.5, -0.5, 0.5}) {
    for (double z : {-2.0, -0.5, 0.0, 1.0, 3.0}) {
      const CylinderValue d = cylinder_d(nu, z, tol);
      const double up = cylinder_d(nu + 1.0, z, tol).value;
      const double down = cylinder_d(nu - 1.0, z, tol).value;
      auto value = [&](double x) { return cylinder_d(nu, x, tol).value; };
      const double h = 1e-3;
      const double d1 = (value(z + h) - value(z - h)) / (2 * h);
      const double d2 = (value(z + 2 * h) - value(z - 2 * h)) / (4 * h);
      const double slope = (4.0 * d1 - d2) / 3.0;
      worst = std::max({worst, std::fabs(d.derivative - 0.5 * z * d.value + up),
                        std::fabs(up - z * d.value + nu * down),
                        std::fabs(slope + 0.5 * z * d.value - nu * down)});
    }
  }
  return worst;
}

// Second difference against the Weber equation, relative to the larger of
// |D| and |(z^2/4 - nu - 1/2) D| so points where the coefficient vanishes
// stay meaningful.
double cylinder_ode(const Tolerances& tol) {
  double worst = 0.0;
  for (double nu : {-1.5, -0.5, 0.5}) {
    for (double z : {-2.0, -0.5, 0.0, 1.0, 3.0}) {
      const double second =
          central_diff([&](double x) { return cylinder_d(nu, x, tol).value; }, z, 2);
      const double value = cylinder_d(nu, z, tol).value;
      const double rhs = (0.25 * z * z - nu - 0.5) * value;
      worst = std::max(worst, std::fabs(second - rhs) / std::max(std::fabs(value), std::fabs(rhs)));
    }
  }
  return worst;
}

double cylinder_asymptotic(const Tolerances& tol) {
  const double z = 12.0;
  double worst = 0.0;
  for (double nu : {-1.5, -0.5}) {
    const double scaled = cylinder_d(nu, z, tol).value * std::exp(0.25 * z * z) * std::pow(z, -nu);
    worst = std::max(worst, std::fabs(scaled - 1.0));
  }
  return worst;
}

double cylinder_positive(const Tolerances& tol) {
  double bad = 0;
  for (double nu : {-3.5, -2.5, -1.5, -0.75, -0.5, -0.25}) {
    for (int i = 0; i <= 40; ++i) {
      if (!(cylinder_d(nu, -10.0 + 0.5 * i, tol).value > 0.0)) ++bad;
    }
  }
  return bad;
}

// ---- disk -----------------------------------------------------------------

double diamagnetic_inequality() {
  double bad = 0;
  for (int n = 1; n <= 20; ++n) {
    for (int i = 1; i <= 100; ++i) {
      const double b = 0.5 * i;
      const double pos = lambda_n(n, b);
      if (pos > lambda_minus_n(n, b) + 1e-12 * (1.0 + pos)) ++bad;
    }
  }
  return bad;
}

double branch_positivity() {
  double bad = 0;
  const auto grid = uniform_grid(0.0, 50.0, 101);
  for (const auto& row : curves(0, 20, grid)) {
    const bool zero_ok = row.point.n == 0 && row.point.b == 0.0;
    if (row.point.lambda < 0.0 || (row.point.lambda == 0.0 && !zero_ok)) ++bad;
  }
  return bad;
}

double lambda_prime_fd() {
  double worst = 0.0;
  for (int n : {1, 3, 10}) {
    for (double z : {1.0, 5.0, 20.0}) {
      const double fd = central_diff([n](double b) { return lambda_n(n, b); }, z);
      worst = std::max(worst, rel_err(lambda_n_prime(n, z), fd));
    }
  }
  return worst;
}

double lambda_prime_two_forms() {
  double worst = 0.0;
  for (int n : {1, 2, 3, 10, 50}) {
    for (double z : {0.5, 1.0, 5.0, 20.0, 100.0}) {
      const double a = lambda_n_prime(n, z);
      worst = std::max(worst, std::fabs(a - lambda_n_prime_alt(n, z)) / std::max(1.0, std::fabs(a)));
    }
  }
  return worst;
}

std::vector<double> open_grid_to_100() {
  auto grid = uniform_grid(0.0, 100.0, 10001);
  grid.erase(grid.begin());
  return grid;
}

double envelope_monotone(const Tolerances& tol) {
  const auto grid = open_grid_to_100();
  const auto env = envelope(grid, tol);
  double bad = 0;
  for (std::size_t i = 1; i < env.size(); ++i) {
    if (!(env[i].lambda_dn > env[i - 1].lambda_dn)) ++bad;
  }
  return bad;
}

double mode_switches(const Tolerances& tol) {
  const auto grid = open_grid_to_100();
  const auto env = envelope(grid, tol);
  double bad = 0;
  for (std::size_t i = 1; i < env.size(); ++i) {
    const int from = env[i - 1].active_mode;
    if (env[i].active_mode == from) continue;
    if (env[i].active_mode != from + 1) {
      ++bad;
      continue;
    }
    const double z = find_zn(from, tol).z_n;
    if (!(grid[i - 1] <= z && z < grid[i])) ++bad;
  }
  return bad;
}

// ---- intersect ------------------------------------------------------------

// Root of (z - n - 1/2) M(1/2,n+1,z) - z M'(1/2,n+1,z), solved on its own and
// compared with the zero of M(-1/2, n+1, .).
double characterization_gap(const Tolerances& tol) {
  std::vector<int> ns;
  for (int n = 0; n <= 50; ++n) ns.push_back(n);
  ns.insert(ns.end(), {100, 1000, 10000});
  double worst = 0.0;
  for (int n : ns) {
    auto g = [n](double z) { return (z - n - 0.5) - z * kummer_log_ratio(0.5, n + 1.0, z); };
    const double lo = n + 1.0;
    const double hi = zn_two_term(n) + 5.0 * std::sqrt(n + 1.0);
    worst = std::max(worst, std::fabs(brent_root(g, lo, hi, tol) - find_zn(n, tol).z_n));
  }
  return worst;
}

double zn_ordering(const Tolerances& tol) {
  const auto recs = intersections(0, 200, tol);
  double bad = 0;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    if (!(recs[i].z_n > recs[i].n + 1.0)) ++bad;
    if (i > 0 && !(recs[i].z_n > recs[i - 1].z_n)) ++bad;
  }
  return bad;
}

double stationary_at_zprev(const Tolerances& tol) {
  double worst = 0.0;
  for (int n : {1, 2, 3, 5, 10, 20}) {
    const double z = find_zn(n - 1, tol).z_n;
    const double second = central_diff([n](double b) { return lambda_n(n, b); }, z, 2);
    worst = std::max({worst, std::fabs(lambda_n_prime(n, z)),
                      std::fabs(second - lambda_n_second_at_zprev(n, tol))});
  }
  return worst;
}

// n |beta_n - alpha - (2 alpha^2 + 1)/6 n^{-1/2}|, which stays bounded if the
// remainder is O(1/n).
double beta_trend(const Tolerances& tol) {
  const double a = alpha();
  double worst = 0.0;
  for (int n : {100, 1000, 10000}) {
    const double second = (2.0 * a * a + 1.0) / 6.0 / std::sqrt(static_cast<double>(n));
    worst = std::max(worst, n * std::fabs(beta_n(n, tol) - a - second));
  }
  return worst;
}

double envelope_sandwich(const Tolerances& tol) {
  const auto recs = intersections(0, 50, tol);
  double bad = 0;
  for (int n = 1; n <= 50; ++n) {
    const double lo = recs[n - 1].z_n;
    const double hi = recs[n].z_n;
    std::vector<double> grid;
    for (int k = 0; k <= 8; ++k) grid.push_back(lo + (hi - lo) * k / 8.0);
    for (const auto& p : envelope(grid, tol)) {
      const double slack = 1e-12 * (1.0 + p.lambda_dn);
      if (p.lambda_dn < lo - n - slack || p.lambda_dn > hi - n - 1.0 + slack) ++bad;
    }
  }
  return bad;
}

// ---- models ---------------------------------------------------------------

double first_order_condition(const Tolerances& tol) {
  const double xi = halfplane_stationary_point(halfplane_argmin(tol), tol);
  const CylinderValue d = cylinder_d(-0.5, -xi, tol);
  return std::fabs(0.5 * xi * d.value + d.derivative);
}

double neumann_condition(const Tolerances& tol) {
  const double xi0 = compute_xi0(tol);
  return std::fabs(cylinder_d(0.5 * (xi0 * xi0 - 1.0), -std::numbers::sqrt2 * xi0, tol).derivative);
}

double c_ode(const Tolerances& tol) {
  auto C = [&](double beta) { return gaussian_moment(-0.5, beta, tol); };
  double worst = 0.0;
  for (double beta : {-1.0, 0.0, alpha(), 1.0, 2.0}) {
    const double c = C(beta);
    const double residual = central_diff(C, beta, 2) - beta * central_diff(C, beta, 1) - 0.5 * c;
    worst = std::max(worst, std::fabs(residual) / c);
  }
  return worst;
}

double phi_denominator(const Tolerances& tol) {
  double bad = 0;
  for (int i = 0; i <= 40; ++i) {
    if (!(cylinder_d(-0.5, 2.0 - 0.1 * i, tol).value > 0.0)) ++bad;
  }
  return bad;
}

double phi_two_routes(const Tolerances& tol) {
  double worst = 0.0;
  for (double beta : {0.0, 0.5, 1.0}) {
    worst = std::max(worst, std::fabs(phi(beta, tol) - phi_quadrature(beta, tol)));
  }
  return worst;
}

double halfplane_scaling() {
  const double a = alpha();
  double worst = 0.0;
  for (double b : {1.0, 2.0, 10.0, 100.0}) {
    worst = std::max(worst, std::fabs(halfplane_bottom(b) / std::sqrt(b) - a));
  }
  return worst;
}

std::vector<Check> invariant_checks(const Tolerances& tol) {
  return {
      {"numerics", "scaled_round_trip", 0.0, scaled_round_trip},
      {"numerics", "scaled_grouping_per_n_eps", 2.0, scaled_grouping},
      {"numerics", "quadrature_gamma", tol.rel_tol, [=] { return quadrature_gamma(tol); }},
      {"numerics", "root_bracket_invariance", std::max(tol.rel_tol, 4.0 * kEps),
       [=] { return root_bracket_invariance(tol); }},
      {"specfun", "contiguous_relations", 1e-10, contiguous_relations},
      {"specfun", "kummer_derivative", 1e-6, kummer_derivative},
      {"specfun", "cylinder_recurrences", 1e-9, [=] { return cylinder_recurrences(tol); }},
      {"specfun", "cylinder_ode", 1e-5, [=] { return cylinder_ode(tol); }},
      {"specfun", "cylinder_asymptotic", 0.02, [=] { return cylinder_asymptotic(tol); }},
      {"specfun", "cylinder_positive", 0.0, [=] { return cylinder_positive(tol); }},
      {"disk", "diamagnetic_inequality", 0.0, diamagnetic_inequality},
      {"disk", "branch_positivity", 0.0, branch_positivity},
      {"disk", "lambda_prime_fd", 1e-6, lambda_prime_fd},
      {"disk", "lambda_prime_two_forms", 1e-10, lambda_prime_two_forms},
      {"disk", "envelope_monotone", 0.0, [=] { return envelope_monotone(tol); }},
      {"disk", "mode_switches", 0.0, [=] { return mode_switches(tol); }},
      {"intersect", "characterization_gap", 1e-9, [=] { return characterization_gap(tol); }},
      {"intersect", "f_formula", 1e-8, [=] { return check_F_formula(200, tol); }},
      {"intersect", "zn_ordering", 0.0, [=] { return zn_ordering(tol); }},
      {"intersect", "stationary_at_zprev", 1e-6, [=] { return stationary_at_zprev(tol); }},
      {"intersect", "beta_trend", 1.0, [=] { return beta_trend(tol); }},
      {"intersect", "envelope_sandwich", 0.0, [=] { return envelope_sandwich(tol); }},
      {"models", "first_order_condition", 1e-8, [=] { return first_order_condition(tol); }},
      {"models", "neumann_condition", 1e-7, [=] { return neumann_condition(tol); }},
      {"models", "c_ode", 1e-5, [=] { return c_ode(tol); }},
      {"models", "phi_denominator", 0.0, [=] { return phi_denominator(tol); }},
      {"models", "phi_two_routes", 1e-9, [=] { return phi_two_routes(tol); }},
      {"models", "halfplane_scaling", 4.0 * kEps, halfplane_scaling},
  };
}

}  // namespace

const std::vector<std::string>& modules() {
  static const std::vector<std::string> names = {"numerics", "specfun", "disk", "intersect",
                                                 "models"};
  return names;
}

std::vector<CheckResult> run_invariants(std::string_view only, const Tolerances& tol) {
  tol.validate();
  if (!only.empty() && std::find(modules().begin(), modules().end(), only) == modules().end()) {
    throw std::invalid_argument("unknown module: " + std::string(only));
  }
  std::vector<CheckResult> out;
  for (const auto& check : invariant_checks(tol)) {
    if (only.empty() || only == check.module) out.push_back(evaluate(check));
  }
  return out;
}

std::vector<CheckResult> constants_checks(const ModelConstants& c, const Tolerances& tol) {
  const double a = c.alpha;
  const std::vector<Check> checks = {
      {"models", "alpha_reference", 1e-8, [=] { return std::fabs(a - kAlphaRef); }},
      {"models", "d_half_residual", 1e-10,
       [=] { return std::fabs(cylinder_d(0.5, -a, tol).value); }},
      {"models", "f1_at_alpha", 1e-8, [=] { return std::fabs(halfplane_multiplier(a, tol) - a); }},
      {"models", "halfplane_argmin", 1e-6, [=] { return std::fabs(halfplane_argmin(tol) - a); }},
      {"models", "xi0_reference", 5e-5, [=] { return std::fabs(c.xi0 - kXi0Ref); }},
      {"models", "theta0_reference", 1e-6, [=] { return std::fabs(c.theta0 - kTheta0Ref); }},
      {"models", "degennes_residual", 1e-7, [=] { return std::fabs(degennes_f(c.xi0, tol)); }},
      {"intersect", "f_formula_max_residual", 1e-8, [=] { return check_F_formula(200, tol); }},
      {"models", "phi_prime_alpha", 1e-6,
       [=] { return std::fabs(central_diff([&](double b) { return phi(b, tol); }, a) - 0.5); }},
      {"models", "delta_alpha_identity", 1e-6,
       [=] { return std::fabs(c.delta_alpha - (1.0 - 10.0 * a * a) / 12.0); }},
      {"models", "c_log_derivative_alpha", 1e-7,
       [=] {
         auto C = [&](double beta) { return gaussian_moment(-0.5, beta, tol); };
         return std::fabs(central_diff(C, a) / C(a) - a);
       }},
      {"models", "u0_sq_reference", 5e-3, [=] { return std::fabs(c.u0_sq_at_0 - kU0SqRef); }},
      {"models", "bound_reference", 5e-3, [=] { return std::fabs(c.bound_663 - kBoundRef); }},
      {"models", "alpha_below_bound", 0.0, [=] { return std::max(0.0, a - c.bound_663); }},
  };
  std::vector<CheckResult> out;
  for (const auto& check : checks) out.push_back(evaluate(check));
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

}  // namespace steklov::verify
