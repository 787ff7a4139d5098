#include <doctest.h>

#include <cmath>
#include <vector>

#include "steklov/disk.hpp"
#include "steklov/intersect.hpp"
#include "steklov/models.hpp"

using namespace steklov;

namespace {

// 30-term truncation of M(-1/2, 1, z).
double truncated_m(double z) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 30; ++k) {
    term *= (-0.5 + k) / (1.0 + k) * z / (k + 1.0);
    sum += term;
  }
  return sum;
}

double bisect(double (*f)(double), double lo, double hi) {
  const bool lo_negative = f(lo) < 0;
  for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) < 0) == lo_negative) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("z_0 against a truncated series and bisection") {
  REQUIRE(truncated_m(1.5) > 0.0);
  REQUIRE(truncated_m(1.7) < 0.0);
  const double oracle = bisect(truncated_m, 1.5, 1.7);
  const IntersectionRecord r = find_zn(0);
  CHECK(r.z_n == doctest::Approx(1.58).epsilon(0.01));
  CHECK(std::fabs(r.z_n - oracle) <= 1e-12);
  CHECK(r.z_n == doctest::Approx(1.579956842687135916).epsilon(1e-15));
  CHECK_FALSE(r.beta_n.has_value());
}

TEST_CASE("reference crossing points") {
  const std::vector<std::pair<int, double>> reference = {
      {1, 2.904330730157682758},   {2, 4.152577775894624750},   {3, 5.361092591986440283},
      {10, 13.37889736736473783},  {50, 56.31481907767941139},  {100, 108.5423692476545137},
      {200, 211.7017548764908696}, {1000, 1025.061406700832816}, {10000, 10077.35990455508850}};
  for (auto [n, z] : reference) {
    CHECK(find_zn(n).z_n == doctest::Approx(z).epsilon(1e-14));
  }
}

TEST_CASE("record residuals and the crossing-point identity") {
  for (int n : {0, 1, 7, 64, 500, 10000}) {
    const IntersectionRecord r = find_zn(n);
    CHECK(r.n == n);
    CHECK(r.residual_M <= 1e-9);
    CHECK(r.residual_char <= 1e-9);
    CHECK(std::fabs(r.lambda_at_zn - (r.z_n - n - 1.0)) <= 1e-8);
    CHECK(r.residual_F <= 1e-8);
    CHECK(r.z_n > n + 1.0);
  }
  CHECK_THROWS_AS(find_zn(-1), DomainError);
}

TEST_CASE("z_n at n = 10^4 against the two-term expansion") {
  const double z = find_zn(10000).z_n;
  CHECK(std::fabs(z - zn_two_term(10000)) <= 0.01);
  const double a = alpha();
  CHECK((a * a + 2.0) / 3.0 == doctest::Approx(0.86172).epsilon(1e-5));
}

TEST_CASE("check_F_formula") {
  CHECK(check_F_formula(0) <= 1e-8);
  CHECK(check_F_formula(50) <= 1e-8);
  const auto recs = intersections(0, 50);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(recs[i].n == static_cast<int>(i));
    CHECK(recs[i].z_n > recs[i].n + 1.0);
    if (i > 0) CHECK(recs[i].z_n > recs[i - 1].z_n);
  }
}

TEST_CASE("beta_n") {
  CHECK(beta_n(1) == doctest::Approx(find_zn(1).z_n - 1.5).epsilon(1e-15));
  const double a = alpha();
  CHECK(std::fabs(beta_n(10000) - a) <= 0.005);
  CHECK(beta_n(10000) == doctest::Approx(0.768599045550885).epsilon(1e-12));
  CHECK(beta_n(1000) == doctest::Approx(0.776699877123535).epsilon(1e-12));
  // Two-term expansion leaves an O(1/n) remainder.
  for (int n : {100, 1000, 10000}) {
    const double rest = beta_n(n) - a - (2.0 * a * a + 1.0) / 6.0 / std::sqrt(static_cast<double>(n));
    CHECK(n * std::fabs(rest) <= 1.0);
  }
  CHECK_THROWS_AS(beta_n(0), DomainError);
}

TEST_CASE("fit_asymptotics on exact synthetic data") {
  const double a = 0.7649508673;
  std::vector<IntersectionRecord> recs;
  for (int n = 100; n <= 2000; n += 10) {
    IntersectionRecord r;
    r.n = n;
    r.z_n = n + a * std::sqrt(static_cast<double>(n)) + 0.86172;
    recs.push_back(r);
  }
  for (int terms : {2, 3, 4}) {
    const AsymptoticFit fit = fit_asymptotics(recs, terms);
    CHECK(fit.coefficients.size() == static_cast<std::size_t>(terms));
    CHECK(std::fabs(fit.coefficients[0] - a) <= 1e-10);
    CHECK(std::fabs(fit.coefficients[1] - 0.86172) <= 1e-10);
    CHECK(fit.n_range == std::pair{100, 2000});
    CHECK(fit.max_residual <= 1e-10);
  }
}

TEST_CASE("fit_asymptotics on computed crossing points") {
  const auto recs = intersections(1000, 10000);
  const AsymptoticFit fit = fit_asymptotics(recs, 4);
  const double a = alpha();
  CHECK(std::fabs(fit.coefficients[0] - a) <= 1e-3);
  CHECK(std::fabs(fit.coefficients[1] - (a * a + 2.0) / 3.0) <= 1e-2);
  CHECK(std::fabs(fit.coefficients[1] - (0.585150 + 2.0) / 3.0) <= 1e-2);
  CHECK(fit.max_residual <= 1e-6);
  // Residuals shrink as the range moves out.
  const std::vector<IntersectionRecord> low(recs.begin(), recs.begin() + 3001);   // [1000, 4000]
  const std::vector<IntersectionRecord> high(recs.begin() + 1500, recs.end());    // [2500, 10000]
  CHECK(fit_asymptotics(high, 2).max_residual < fit_asymptotics(low, 2).max_residual);
  CHECK(fit_asymptotics(high, 3).max_residual < fit_asymptotics(low, 3).max_residual);
}

TEST_CASE("fit_asymptotics rejects bad inputs") {
  std::vector<IntersectionRecord> recs(10);
  for (int i = 0; i < 10; ++i) {
    recs[i].n = 10 + i;
    recs[i].z_n = 12.0 + i;
  }
  CHECK_THROWS_AS(fit_asymptotics(recs, 2), std::invalid_argument);  // 19/10 < 4
  recs.back().n = 100;
  CHECK_THROWS_AS(fit_asymptotics(recs, 0), std::invalid_argument);
  CHECK_THROWS_AS(fit_asymptotics(recs, 5), std::invalid_argument);
  recs.front().n = 0;
  CHECK_THROWS_AS(fit_asymptotics(recs, 2), std::invalid_argument);
  std::vector<IntersectionRecord> two(2);
  two[0].n = 10;
  two[1].n = 100;
  CHECK_THROWS_AS(fit_asymptotics(two, 3), std::invalid_argument);  // rank deficient
  CHECK_THROWS_AS(fit_asymptotics(std::vector<IntersectionRecord>{}, 1), std::invalid_argument);
}

TEST_CASE("gap_zn") {
  CHECK(gap_zn(1) > 0.0);
  const double a = alpha();
  CHECK(std::fabs(gap_zn(10000) - (1.0 + 0.5 * a * 0.01)) <= 2e-3);
  CHECK(gap_zn(10000) == doctest::Approx(1.003825).epsilon(0.002));
  CHECK(gap_zn(100000) < gap_zn(1000));
  CHECK_THROWS_AS(gap_zn(0), DomainError);
}

TEST_CASE("lambda at z_n against its expansion") {
  CHECK(lambda_at_zn_asymptotic_check(10000) <= 0.05);
  CHECK(lambda_at_zn_asymptotic_check(100) <= 0.5);
  for (int n : {100, 400, 2500, 10000}) {
    CHECK(lambda_at_zn_asymptotic_check(n) <= 5.0 / std::sqrt(static_cast<double>(n)));
  }
  const double a = alpha();
  CHECK(lambda_at_zn_residual(49, a * 7.0 + (a * a - 1.0) / 3.0) <= 1e-15);
  CHECK((a * a - 1.0) / 3.0 == doctest::Approx(-0.138283).epsilon(1e-5));
  CHECK_THROWS_AS(lambda_at_zn_asymptotic_check(99), DomainError);
}

TEST_CASE("envelope sandwich between crossing points") {
  const auto recs = intersections(0, 30);
  for (int n = 1; n <= 30; ++n) {
    const double lo = recs[n - 1].z_n, hi = recs[n].z_n;
    for (int k = 0; k <= 4; ++k) {
      const double z = lo + (hi - lo) * k / 4.0;
      const double v = lambda_n(n, z);
      CHECK(v >= lo - n - 1e-12);
      CHECK(v <= hi - n - 1.0 + 1e-12);
    }
  }
}
