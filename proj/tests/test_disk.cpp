#include <doctest.h>

#include <cmath>

#include "steklov/disk.hpp"
#include "steklov/intersect.hpp"
#include "steklov/models.hpp"
#include "steklov/specfun.hpp"

using namespace steklov;

namespace {

double series_m(double a, double c, double z, int terms) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < terms; ++k) {
    term *= (a + k) / (c + k) * z / (k + 1.0);
    sum += term;
  }
  return sum;
}

// lambda_n(b) from plain double series, valid for moderate |b|.
double lambda_oracle(int n, double b) {
  const double c = n + 1.0;
  const double ratio = 0.5 / c * series_m(1.5, c + 1.0, b, 120) / series_m(0.5, c, b, 120);
  return n - b + 2.0 * b * ratio;
}

}  // namespace

TEST_CASE("lambda_n examples") {
  for (int n : {0, 1, 4, 30}) CHECK(lambda_n(n, 0.0) == n);
  CHECK(lambda_n(0, 0.0) == 0.0);
  const double l01 = lambda_n(0, 1.0);
  CHECK(l01 > 0.0);
  CHECK(l01 < 1.0);
  CHECK(l01 == doctest::Approx(lambda_oracle(0, 1.0)).epsilon(1e-14));
  CHECK(std::fabs(l01 - radial_log_derivative(0, 1.0)) <= 1e-8);
  CHECK(l01 == doctest::Approx(0.2424996125808019454).epsilon(1e-14));
  CHECK(lambda_n(1, 2.0) == doctest::Approx(0.6126512830260862904).epsilon(1e-14));
  CHECK(lambda_n(2, 3.0) == doctest::Approx(0.9057603196913936108).epsilon(1e-14));
}

TEST_CASE("lambda_n at large field stays finite and positive") {
  for (double b : {1e3, 1e5, 1e6}) {
    const double v = lambda_n(static_cast<int>(b), b);
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);
  }
  CHECK_THROWS_AS(lambda_n(-1, 1.0), DomainError);
}

TEST_CASE("lambda_minus_n") {
  CHECK(lambda_minus_n(1, 0.0) == 1.0);
  CHECK(lambda_minus_n(1, 2.0) >= lambda_n(1, 2.0));
  CHECK(lambda_minus_n(1, 2.0) == doctest::Approx(2.382752955397000601).epsilon(1e-14));
  // The plain alternating series is still accurate at b = -1.
  CHECK(lambda_minus_n(3, 1.0) == doctest::Approx(lambda_oracle(3, -1.0)).epsilon(1e-13));
  CHECK(lambda_minus_n(3, 1.0) == doctest::Approx(3.788715906210722113).epsilon(1e-14));
  CHECK(lambda_minus_n(0, 2.0) == doctest::Approx(lambda_n(0, 2.0)).epsilon(1e-14));
}

TEST_CASE("branch positivity and the diamagnetic inequality") {
  for (int n = 1; n <= 20; ++n) {
    for (double b = 0.5; b <= 50.0; b += 0.5) {
      const double pos = lambda_n(n, b);
      CHECK(pos > 0.0);
      CHECK(pos <= lambda_minus_n(n, b));
    }
  }
}

TEST_CASE("radial_solution") {
  for (double r : {0.1, 0.5, 1.0}) {
    CHECK(radial_solution(0, 0.0, r) == doctest::Approx(1.0));
    // The Laguerre normalization puts Gamma(3/2)/Gamma(1/2) = 1/2 in front of r.
    CHECK(radial_solution(1, 0.0, r) / radial_solution(1, 0.0, 1.0) == doctest::Approx(r));
  }
  CHECK(radial_solution(0, 1.0, 1.0) ==
        doctest::Approx(std::exp(-0.5) * laguerre(-0.5, 0.0, 1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(radial_solution(0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(radial_solution(0, 1.0, 1.5), DomainError);
}

TEST_CASE("radial_solution solves the polar ODE") {
  // -v'' - v'/r + (b r - n/r)^2 v = 0 on (0, 1).
  for (int n : {0, 1, 3}) {
    for (double b : {0.5, 2.0, 8.0}) {
      for (double r : {0.3, 0.6, 0.9}) {
        auto v = [n, b](double x) { return radial_solution(n, b, x); };
        const double d1 = central_diff(v, r, 1);
        const double d2 = central_diff(v, r, 2);
        const double q = b * r - n / r;
        const double residual = -d2 - d1 / r + q * q * v(r);
        const double scale = std::fabs(d2) + std::fabs(d1 / r) + std::fabs(q * q * v(r));
        CHECK(std::fabs(residual) <= 1e-6 * scale);
      }
    }
  }
}

TEST_CASE("radial_log_derivative") {
  CHECK(std::fabs(radial_log_derivative(0, 0.0)) <= 1e-9);
  CHECK(radial_log_derivative(1, 0.0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::fabs(radial_log_derivative(2, 3.0) - lambda_n(2, 3.0)) <= 1e-6);
  CHECK(std::fabs(radial_log_derivative(5, -2.0) - lambda_n(5, -2.0)) <= 1e-6);
}

TEST_CASE("lambda_n_prime") {
  const double z0 = find_zn(0).z_n;
  CHECK(std::fabs(lambda_n_prime(1, z0)) <= 1e-8);
  CHECK(lambda_n_prime(1, 0.5) < 0.0);
  CHECK(lambda_n_prime(1, z0 + 0.5) > 0.0);
  const double fd = central_diff([](double b) { return lambda_n(2, b); }, 10.0);
  CHECK(std::fabs(lambda_n_prime(2, 10.0) - fd) <= 1e-6);
  for (int n : {1, 3, 10}) {
    for (double z : {1.0, 5.0, 20.0}) {
      const double d = central_diff([n](double b) { return lambda_n(n, b); }, z);
      CHECK(std::fabs(lambda_n_prime(n, z) - d) <= 1e-6 * std::fabs(d));
      CHECK(std::fabs(lambda_n_prime(n, z) - lambda_n_prime_alt(n, z)) <= 1e-10);
    }
  }
  CHECK_THROWS_AS(lambda_n_prime(0, 1.0), DomainError);
  CHECK_THROWS_AS(lambda_n_prime(1, 0.0), DomainError);
}

TEST_CASE("lambda_n_prime changes sign exactly at z_{n-1}") {
  for (int n : {2, 5, 12}) {
    const double z = find_zn(n - 1).z_n;
    CHECK(lambda_n_prime(n, 0.5 * z) < 0.0);
    CHECK(lambda_n_prime(n, 0.999 * z) < 0.0);
    CHECK(lambda_n_prime(n, 1.001 * z) > 0.0);
    CHECK(lambda_n_prime(n, 2.0 * z) > 0.0);
  }
}

TEST_CASE("lambda_n_second_at_zprev") {
  const double z0 = find_zn(0).z_n;
  const double second = lambda_n_second_at_zprev(1);
  CHECK(second == doctest::Approx((z0 - 1.0) / z0).epsilon(1e-15));
  CHECK(second == doctest::Approx(0.367).epsilon(1e-3));
  CHECK(std::fabs(second - central_diff([](double b) { return lambda_n(1, b); }, z0, 2)) <= 1e-4);
  const int big = 10000;
  CHECK(lambda_n_second_at_zprev(big) / (alpha() / std::sqrt(static_cast<double>(big))) ==
        doctest::Approx(1.0).epsilon(0.05));
  CHECK_THROWS_AS(lambda_n_second_at_zprev(0), DomainError);
}

TEST_CASE("envelope examples") {
  const std::vector<double> grid = {0.0, 1.0, 1e4};
  const auto env = envelope(grid);
  REQUIRE(env.size() == 3);
  CHECK(env[0].active_mode == 0);
  CHECK(env[0].lambda_dn == 0.0);
  CHECK(env[1].active_mode == 0);
  CHECK(env[1].lambda_dn == doctest::Approx(lambda_n(0, 1.0)).epsilon(1e-15));
  const double a = alpha();
  CHECK(std::fabs(env[2].lambda_dn - (a * 100.0 - (a * a + 2.0) / 6.0)) <= 0.05);
  CHECK(env[2].lambda_dn == doctest::Approx(76.06).epsilon(0.05 / 76.06));
}

TEST_CASE("envelope partition follows the crossing points") {
  const auto recs = intersections(0, 12);
  std::vector<double> grid;
  for (const auto& r : recs) {
    grid.push_back(std::nextafter(r.z_n, 0.0));
    grid.push_back(r.z_n);
    grid.push_back(std::nextafter(r.z_n, 1e9));
  }
  const auto env = envelope(grid);
  for (std::size_t k = 0; k < recs.size(); ++k) {
    CHECK(env[3 * k].active_mode == recs[k].n);
    CHECK(env[3 * k + 1].active_mode == recs[k].n);
    CHECK(env[3 * k + 2].active_mode == recs[k].n + 1);
  }
}

TEST_CASE("envelope agrees with the brute-force minimum") {
  auto grid = uniform_grid(0.05, 60.0, 400);
  grid.push_back(1234.5);
  grid.push_back(98765.4);
  const auto env = envelope(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const EnvelopePoint brute = envelope_by_argmin(grid[i]);
    CHECK(env[i].lambda_dn == doctest::Approx(brute.lambda_dn).epsilon(1e-12));
    CHECK(env[i].b == grid[i]);
  }
}

TEST_CASE("envelope is strictly increasing and switches modes one at a time") {
  auto grid = uniform_grid(0.0, 100.0, 10001);
  grid.erase(grid.begin());
  const auto env = envelope(grid);
  int bad_order = 0, bad_switch = 0;
  for (std::size_t i = 1; i < env.size(); ++i) {
    if (!(env[i].lambda_dn > env[i - 1].lambda_dn)) ++bad_order;
    const int step = env[i].active_mode - env[i - 1].active_mode;
    if (step != 0 && step != 1) ++bad_switch;
  }
  CHECK(bad_order == 0);
  CHECK(bad_switch == 0);
}

TEST_CASE("envelope input validation") {
  const std::vector<double> descending = {2.0, 1.0};
  const std::vector<double> negative = {-1.0, 1.0};
  CHECK_THROWS_AS(envelope(descending), DomainError);
  CHECK_THROWS_AS(envelope(negative), DomainError);
  CHECK(envelope(std::vector<double>{}).empty());
}

TEST_CASE("curves layout") {
  const auto grid = uniform_grid(0.0, 10.0, 101);
  const auto rows = curves(0, 5, grid);
  REQUIRE(rows.size() == 2 * 606);
  CHECK(rows[0].branch == Branch::pos);
  CHECK(rows[0].point.n == 0);
  CHECK(rows[0].point.b == 0.0);
  CHECK(rows[0].point.lambda == 0.0);
  CHECK(rows[606].branch == Branch::neg);
  CHECK(rows[101].point.n == 1);
  for (const auto& r : rows) CHECK(r.point.lambda >= 0.0);
  CHECK_THROWS_AS(curves(3, 2, grid), DomainError);
}

TEST_CASE("uniform_grid") {
  const auto g = uniform_grid(1.0, 2.0, 11);
  CHECK(g.size() == 11);
  CHECK(g.front() == 1.0);
  CHECK(g.back() == 2.0);
  CHECK(g[5] == doctest::Approx(1.5));
  CHECK_THROWS_AS(uniform_grid(0.0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(uniform_grid(1.0, 0.0, 3), std::invalid_argument);
}
