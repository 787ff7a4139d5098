#include "steklov/intersect.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parallel.hpp"
#include "steklov/disk.hpp"
#include "steklov/models.hpp"
#include "steklov/specfun.hpp"

namespace steklov {

namespace {

// M(-1/2, n+1, z) from its own power series. Only the first term is
// positive, so the sum is 1 minus a positive series and the root sits where
// that series reaches 1; no large cancellation occurs.
double m_minus_half(int n, double z) {
  const KummerValue m = kummer_m(-0.5, n + 1.0, z);
  if (!m.converged) throw ConvergenceError("find_zn: M(-1/2, n+1, z) hit the term cap");
  return m.to_real();
}

Tolerances root_tolerances(const Tolerances& tol) {
  Tolerances out = tol;
  out.rel_tol = std::min(tol.rel_tol, 1e-15);
  return out;
}

}  // namespace

double zn_two_term(double n) {
  const double a = alpha();
  return n + a * std::sqrt(n) + (a * a + 2.0) / 3.0;
}

IntersectionRecord find_zn(int n, const Tolerances& tol) {
  if (n < 0) throw DomainError("find_zn: n must be >= 0");
  tol.validate();
  const double lo = n + 1.0;
  const double hi = zn_two_term(n) + 5.0 * std::sqrt(n + 1.0);
  auto f = [n](double z) { return m_minus_half(n, z); };
  if (!(f(lo) > 0.0 && f(hi) < 0.0)) {
    throw BracketError("find_zn: no sign change of M(-1/2, n+1, .) on the bracket for n = " +
                       std::to_string(n));
  }
  const double z = brent_root(f, lo, hi, root_tolerances(tol));

  IntersectionRecord rec;
  rec.n = n;
  rec.z_n = z;
  rec.lambda_at_zn = lambda_n(n, z);
  if (n >= 1) rec.beta_n = (z - n - 0.5) / std::sqrt(static_cast<double>(n));
  rec.residual_M = std::fabs(f(z));
  rec.residual_char = std::fabs((z - n - 0.5) - z * kummer_log_ratio(0.5, n + 1.0, z));
  rec.residual_F = std::fabs(rec.lambda_at_zn - (z - n - 1.0));
  return rec;
}

std::vector<IntersectionRecord> intersections(int n_min, int n_max, const Tolerances& tol) {
  if (n_min < 0 || n_max < n_min) throw DomainError("intersections: need 0 <= n_min <= n_max");
  std::vector<IntersectionRecord> out(static_cast<std::size_t>(n_max - n_min + 1));
  detail::parallel_for(static_cast<std::int64_t>(out.size()), [&](std::int64_t i) {
    out[i] = find_zn(n_min + static_cast<int>(i), tol);
  });
  return out;
}

std::vector<IntersectionRecord> intersections_serial(int n_min, int n_max,
                                                     const Tolerances& tol) {
  if (n_min < 0 || n_max < n_min) throw DomainError("intersections: need 0 <= n_min <= n_max");
  std::vector<IntersectionRecord> out;
  out.reserve(static_cast<std::size_t>(n_max - n_min + 1));
  for (int n = n_min; n <= n_max; ++n) out.push_back(find_zn(n, tol));
  return out;
}

double check_F_formula(int n_max, const Tolerances& tol) {
  double worst = 0.0;
  for (const auto& rec : intersections(0, n_max, tol)) worst = std::max(worst, rec.residual_F);
  return worst;
}

double beta_n(int n, const Tolerances& tol) {
  if (n < 1) throw DomainError("beta_n: n must be >= 1");
  return *find_zn(n, tol).beta_n;
}

AsymptoticFit fit_asymptotics(std::span<const IntersectionRecord> records, int terms) {
  if (terms < 1 || terms > 4) throw std::invalid_argument("fit_asymptotics: terms must be in [1, 4]");
  if (records.empty()) throw std::invalid_argument("fit_asymptotics: no records");
  const auto [lo_it, hi_it] = std::minmax_element(
      records.begin(), records.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
  const int n_lo = lo_it->n;
  const int n_hi = hi_it->n;
  if (n_lo < 1) throw std::invalid_argument("fit_asymptotics: records must start at n >= 1");
  if (n_hi < 4 * n_lo) throw std::invalid_argument("fit_asymptotics: need n_hi / n_lo >= 4");

  const auto rows = static_cast<Eigen::Index>(records.size());
  Eigen::MatrixXd basis(rows, terms);
  Eigen::VectorXd rhs(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double n = records[static_cast<std::size_t>(i)].n;
    const double s = std::sqrt(n);
    const double row[4] = {s, 1.0, 1.0 / s, 1.0 / n};
    for (int j = 0; j < terms; ++j) basis(i, j) = row[j];
    rhs(i) = records[static_cast<std::size_t>(i)].z_n - n;
  }
  // Columns span several orders of magnitude; equilibrate before the QR.
  const Eigen::VectorXd scale = basis.colwise().norm().transpose();
  const Eigen::MatrixXd scaled = basis * scale.cwiseInverse().asDiagonal();
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled);
  if (qr.rank() < terms) throw std::invalid_argument("fit_asymptotics: basis is rank deficient");
  const Eigen::VectorXd coef = qr.solve(rhs).cwiseQuotient(scale);

  AsymptoticFit fit;
  fit.coefficients.assign(coef.data(), coef.data() + coef.size());
  fit.n_range = {n_lo, n_hi};
  fit.max_residual = (basis * coef - rhs).cwiseAbs().maxCoeff();
  return fit;
}

double gap_zn(int n, const Tolerances& tol) {
  if (n < 1) throw DomainError("gap_zn: n must be >= 1");
  return find_zn(n, tol).z_n - find_zn(n - 1, tol).z_n;
}

double lambda_at_zn_residual(int n, double lambda_at_zn) {
  const double a = alpha();
  return std::fabs(lambda_at_zn - a * std::sqrt(static_cast<double>(n)) - (a * a - 1.0) / 3.0);
}

double lambda_at_zn_asymptotic_check(int n, const Tolerances& tol) {
  if (n < 100) throw DomainError("lambda_at_zn_asymptotic_check: n must be >= 100");
  return lambda_at_zn_residual(n, find_zn(n, tol).lambda_at_zn);
}

}  // namespace steklov
