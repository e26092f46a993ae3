#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "chebpert/cheb_core.hpp"
#include "chebpert/errors.hpp"
#include "chebpert/weights.hpp"

namespace chebpert {

/// (pi/N) sum_j f(x_j) over first-kind nodes: integrates f(x)/sqrt(1-x^2),
/// exact for polynomials of degree <= 2N-1.
[[nodiscard]] double gauss_cheb_integrate(const RealFunction& f, std::size_t n);

/// Monic recurrence  x P_n = P_{n+1} + b_n P_n + a_n^2 P_{n-1}  for
/// d mu = rho(x)|v_i(x)| dx / sqrt(1-x^2).
///
/// Polynomials are only handled as pi_n = 2^n P_n, whose size stays O(1) on
/// [-1, 1]; squared norms are kept in that scaling too.
struct RecurrenceTable {
  std::vector<double> a_sq;         ///< a_n^2 at index n; a_sq[0] is 0 by convention
  std::vector<double> b;            ///< b_n, n = 0..n_max
  std::vector<double> norm_scaled;  ///< <pi_n, pi_n> = 4^n h_n
  int n_max = 0;
  std::size_t n_quad = 0;
  std::string weight_label;
  Kind kind = Kind::from_index(1);

  [[nodiscard]] double a(int n) const { return std::sqrt(a_sq.at(static_cast<std::size_t>(n))); }
  /// h_n = int P_n^2 d mu; underflows to zero for n beyond roughly 530.
  [[nodiscard]] double h(int n) const { return std::ldexp(norm_scaled.at(static_cast<std::size_t>(n)), -2 * n); }
};

/// Default quadrature size: 8 n_max rounded up to a power of two, at least 1024.
[[nodiscard]] std::size_t default_quadrature_size(int n_max);

/// Discretized Stieltjes procedure on n_quad first-kind nodes (0 selects the default).
/// Throws InvalidArgument when n_quad < 8 n_max and PrecisionLossError when a
/// scaled norm falls below 1e-6 of the zeroth one.
[[nodiscard]] RecurrenceTable stieltjes_recurrence(const WeightSpec& w, Kind kind, int n_max, std::size_t n_quad = 0);

/// pi_n(x) = 2^n P_n(x) by  pi_{k+1} = 2(x - b_k) pi_k - 4 a_k^2 pi_{k-1}.
template <class T>
[[nodiscard]] T eval_scaled_monic(const RecurrenceTable& t, int n, T x) {
  if (n < 0 || n > t.n_max) throw InvalidArgument("eval_scaled_monic: n outside [0, n_max]");
  T prev{0.0};
  T cur{1.0};
  for (int k = 0; k < n; ++k) {
    const T next = T{2.0} * (x - T{t.b[k]}) * cur - T{4.0 * t.a_sq[k]} * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// pi_n(z) / phi(z)^n = P_n(z) (2/phi(z))^n, computed without forming phi^n.
[[nodiscard]] std::complex<double> eval_exterior_ratio(const RecurrenceTable& t, int n, std::complex<double> z);

inline constexpr double kSecondKindMinDistance = 0.1;

/// R_n(z) = (1/2 pi i) int P_n(x) rho(x) v_i(x) / ((x - z) w_+(x)) dx by
/// Gauss-Chebyshev quadrature. Throws AccuracyDomainError when z is closer
/// than 0.1 to [-1, 1].
[[nodiscard]] std::complex<double> second_kind_R(const WeightSpec& w, Kind kind, const RecurrenceTable& t, int n,
                                                 std::complex<double> z);

}  // namespace chebpert
