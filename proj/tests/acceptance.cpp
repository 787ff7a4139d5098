// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "steklov/disk.hpp"
#include "steklov/intersect.hpp"
#include "steklov/models.hpp"
#include "steklov/specfun.hpp"
#include "steklov/verify.hpp"

using namespace steklov;

namespace {

struct Verdict {
  bool passed;
  std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

Verdict alpha_root() {
  const double a = compute_alpha();
  const double err = std::fabs(a - 0.7649508673);
  return {err <= 1e-8, fmt("alpha=%.12f |err|=%.2e", a, err)};
}

Verdict degennes() {
  const double xi0 = compute_xi0();
  const double e1 = std::fabs(xi0 - 0.76818);
  const double e2 = std::fabs(xi0 * xi0 - 0.5901061249);
  return {e1 <= 5e-5 && e2 <= 1e-6, fmt("xi0=%.12f theta0=%.12f", xi0, xi0 * xi0)};
}

Verdict halfplane() {
  const double a = alpha();
  const double argmin = halfplane_argmin();
  const double f_at_a = halfplane_multiplier(a);
  const bool ok = std::fabs(argmin - a) <= 1e-6 && std::fabs(f_at_a - a) <= 1e-8;
  return {ok, fmt("argmin=%.10f f1(alpha)-alpha=%.2e", argmin, f_at_a - a)};
}

Verdict f_formula() {
  // z_n from M(-1/2, n+1, .) and lambda_n from the log-ratio of M(1/2, n+1, .).
  const double worst = check_F_formula(200);
  return {worst <= 1e-8, fmt("max residual over n<=200 = %.2e", worst)};
}

Verdict envelope_asymptotics() {
  const double a = alpha();
  const double shift = (a * a + 2.0) / 6.0;
  bool ok = std::fabs(-shift - (-0.430858)) <= 1e-6;
  std::string detail = fmt("shift=%.8f", shift);
  const std::vector<double> grid = {1e3, 1e4, 1e5};
  const auto env = envelope(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double b = grid[i];
    const double err = std::fabs(env[i].lambda_dn - (a * std::sqrt(b) - shift));
    ok = ok && err <= 5.0 / std::sqrt(b);
    detail += fmt(" b=%g:%.2e", b, err);
  }
  return {ok, detail};
}

Verdict asymptotic_fit() {
  const auto recs = intersections(1000, 10000);
  const AsymptoticFit fit = fit_asymptotics(recs, 4);
  const double a = alpha();
  const double e1 = std::fabs(fit.coefficients[0] - a);
  const double e2 = std::fabs(fit.coefficients[1] - (a * a + 2.0) / 3.0);
  const double gap = gap_zn(10000);
  const double e3 = std::fabs(gap - (1.0 + 0.5 * a / 100.0));
  return {e1 <= 1e-3 && e2 <= 1e-2 && e3 <= 2e-3,
          fmt("sqrt_n=%.8f one=%.8f gap=%.8f", fit.coefficients[0], fit.coefficients[1], gap)};
}

Verdict diamagnetism() {
  auto grid = uniform_grid(0.0, 100.0, 10001);
  grid.erase(grid.begin());
  const auto env = envelope(grid);
  int violations = 0;
  for (std::size_t i = 1; i < env.size(); ++i) {
    if (!(env[i].lambda_dn > env[i - 1].lambda_dn)) ++violations;
  }
  const auto branch_grid = uniform_grid(0.0, 10.0, 101);
  const auto rows = curves(0, 5, branch_grid);
  const std::size_t half = rows.size() / 2;
  int branch_violations = 0;
  for (std::size_t i = 0; i < half; ++i) {
    const double pos = rows[i].point.lambda;
    const double neg = rows[half + i].point.lambda;
    // Mode 0 is its own mirror image, so both branches agree up to rounding.
    const bool ok = rows[i].point.n == 0 ? std::fabs(pos - neg) <= 1e-13 * std::fabs(neg) : pos <= neg;
    if (!ok) ++branch_violations;
  }
  return {violations == 0 && branch_violations == 0,
          fmt("%zu grid points, %d order violations, %d branch violations", env.size(), violations,
              branch_violations)};
}

Verdict identities() {
  std::vector<verify::CheckResult> rs = verify::run_invariants("specfun");
  const auto disk = verify::run_invariants("disk");
  const auto inter = verify::run_invariants("intersect");
  rs.insert(rs.end(), disk.begin(), disk.end());
  rs.insert(rs.end(), inter.begin(), inter.end());
  const std::vector<std::pair<std::string, double>> wanted = {{"contiguous_relations", 1e-10},
                                                              {"cylinder_recurrences", 1e-9},
                                                              {"lambda_prime_fd", 1e-6},
                                                              {"stationary_at_zprev", 1e-6}};
  bool ok = true;
  std::string detail;
  for (const auto& [name, limit] : wanted) {
    auto it = std::find_if(rs.begin(), rs.end(), [&](const auto& r) { return r.name == name; });
    const bool found = it != rs.end();
    const bool pass = found && it->passed && it->measured <= limit;
    ok = ok && pass;
    detail += fmt("%s=%.2e ", name.c_str(), found ? it->measured : std::nan(""));
  }
  return {ok, detail};
}

Verdict limit_objects() {
  const double a = alpha();
  const double slope = central_diff([](double b) { return phi(b); }, a);
  const double d = delta(a);
  const double closed = (1.0 - 10.0 * a * a) / 12.0;
  return {std::fabs(slope - 0.5) <= 1e-6 && std::fabs(d - closed) <= 1e-6,
          fmt("Phi'(alpha)=%.10f Delta(alpha)=%.10f closed=%.10f", slope, d, closed)};
}

Verdict comparison() {
  const ComparisonBound cb = comparison_bound();
  const double a = alpha();
  const bool ok =
      std::fabs(cb.u0_sq - 0.7622) <= 5e-3 && std::fabs(cb.bound - 1.0946) <= 5e-3 && a <= cb.bound;
  return {ok, fmt("u0^2=%.6f bound=%.6f", cb.u0_sq, cb.bound)};
}

struct Criterion {
  int id;
  const char* title;
  std::function<Verdict()> run;
  double time_limit_s;  // <= 0 means unlimited
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "alpha root of D_{1/2}(-z)", alpha_root, 1.0},
      {2, "De Gennes constants", degennes, 1.0},
      {3, "half-plane multiplier minimum", halfplane, 0.0},
      {4, "crossing-point identity", f_formula, 30.0},
      {5, "ground state asymptotics", envelope_asymptotics, 60.0},
      {6, "crossing-point fit and gap law", asymptotic_fit, 0.0},
      {7, "strong diamagnetism", diamagnetism, 0.0},
      {8, "identity suite", identities, 0.0},
      {9, "limit objects Phi and Delta", limit_objects, 0.0},
      {10, "comparison bound", comparison, 0.0},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v{false, ""};
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0.0 && secs >= c.time_limit_s) {
      v.passed = false;
      v.detail += fmt(" [over time limit %.0f s]", c.time_limit_s);
    }
    if (!v.passed) ++failures;
    std::printf("%s criterion %d (%s): %s (%.3f s)\n", v.passed ? "PASS" : "FAIL", c.id, c.title,
                v.detail.c_str(), secs);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
