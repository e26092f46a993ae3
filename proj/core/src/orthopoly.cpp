#include "chebpert/orthopoly.hpp"

#include <bit>
#include <numbers>

#include "chebpert/szego.hpp"

namespace chebpert {

double gauss_cheb_integrate(const RealFunction& f, std::size_t n) {
  if (n == 0) throw InvalidArgument("gauss_cheb_integrate: N must be >= 1");
  double sum = 0.0;
  for (double x : cheb_nodes(n)) {
    const double v = f(x);
    if (!std::isfinite(v)) {
      throw NumericDomainError("gauss_cheb_integrate: non-finite sample at x = " + std::to_string(x));
    }
    sum += v;
  }
  return std::numbers::pi / static_cast<double>(n) * sum;
}

std::size_t default_quadrature_size(int n_max) {
  const auto want = std::max<std::size_t>(1024, 8 * static_cast<std::size_t>(std::max(n_max, 1)));
  return std::bit_ceil(want);
}

RecurrenceTable stieltjes_recurrence(const WeightSpec& w, Kind kind, int n_max, std::size_t n_quad) {
  if (n_max < 1) throw InvalidArgument("stieltjes_recurrence: n_max must be >= 1");
  if (n_quad == 0) n_quad = default_quadrature_size(n_max);
  if (n_quad < 8 * static_cast<std::size_t>(n_max)) {
    throw InvalidArgument("stieltjes_recurrence: N_quad = " + std::to_string(n_quad) + " is below 8 * n_max = " +
                          std::to_string(8 * n_max));
  }

  const std::vector<double> x = cheb_nodes(n_quad);
  std::vector<double> weight(n_quad);
  const double scale = std::numbers::pi / static_cast<double>(n_quad);
  for (std::size_t j = 0; j < n_quad; ++j) weight[j] = scale * w.rho(x[j]) * kind.v_abs(x[j]);

  RecurrenceTable t;
  t.n_max = n_max;
  t.n_quad = n_quad;
  t.weight_label = w.label();
  t.kind = kind;
  const auto size = static_cast<std::size_t>(n_max) + 1;
  t.a_sq.assign(size, 0.0);
  t.b.assign(size, 0.0);
  t.norm_scaled.assign(size, 0.0);

  std::vector<double> prev(n_quad, 0.0);
  std::vector<double> cur(n_quad, 1.0);
  for (std::size_t n = 0; n < size; ++n) {
    double norm = 0.0;
    double moment = 0.0;
    for (std::size_t j = 0; j < n_quad; ++j) {
      const double p2 = weight[j] * cur[j] * cur[j];
      norm += p2;
      moment += x[j] * p2;
    }
    if (n > 0 && !(norm > 1e-6 * t.norm_scaled[0])) {
      throw PrecisionLossError("stieltjes_recurrence: squared norm at n = " + std::to_string(n) +
                               " lost more than 6 digits; increase N_quad beyond " + std::to_string(n_quad));
    }
    t.norm_scaled[n] = norm;
    t.b[n] = moment / norm;
    if (n > 0) t.a_sq[n] = norm / (4.0 * t.norm_scaled[n - 1]);
    if (n + 1 == size) break;
    const double bn = t.b[n];
    const double four_a_sq = 4.0 * t.a_sq[n];
    for (std::size_t j = 0; j < n_quad; ++j) {
      const double next = 2.0 * (x[j] - bn) * cur[j] - four_a_sq * prev[j];
      prev[j] = cur[j];
      cur[j] = next;
    }
  }
  return t;
}

std::complex<double> eval_exterior_ratio(const RecurrenceTable& t, int n, std::complex<double> z) {
  if (n < 0 || n > t.n_max) throw InvalidArgument("eval_exterior_ratio: n outside [0, n_max]");
  const std::complex<double> inv_phi = 1.0 / phi(z);
  std::complex<double> prev{0.0, 0.0};
  std::complex<double> cur{1.0, 0.0};
  for (int k = 0; k < n; ++k) {
    const std::complex<double> next = 2.0 * (z - t.b[k]) * inv_phi * cur - 4.0 * t.a_sq[k] * inv_phi * inv_phi * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::complex<double> second_kind_R(const WeightSpec& w, Kind kind, const RecurrenceTable& t, int n,
                                   std::complex<double> z) {
  if (n < 0 || n > t.n_max) throw InvalidArgument("second_kind_R: n outside [0, n_max]");
  const double dist = distance_to_cut(z);
  if (dist < kSecondKindMinDistance) {
    throw AccuracyDomainError("second_kind_R: z is " + std::to_string(dist) +
                              " from [-1, 1]; the quadrature is only trusted at distance >= 0.1");
  }
  // 1/w_+ = -i / sqrt(1 - x^2), so R_n = (1/2pi) int P_n rho v_i / ((z - x) sqrt(1 - x^2)) dx.
  const std::size_t nodes = std::bit_ceil(std::max<std::size_t>(4096, 8 * (static_cast<std::size_t>(n) + 1)));
  std::complex<double> sum{0.0, 0.0};
  for (double x : cheb_nodes(nodes)) {
    sum += eval_scaled_monic(t, n, x) * w.rho(x) * kind.v(x) / (z - x);
  }
  return std::ldexp(1.0, -n) * sum / (2.0 * static_cast<double>(nodes));
}

}  // namespace chebpert
