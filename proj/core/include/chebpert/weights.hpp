#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chebpert/cheb_core.hpp"

namespace chebpert {

/// One of the four Chebyshev kinds: the factor v_i in rho(x)|v_i(x)|/sqrt(1-x^2).
///   v_1 = 1,  v_2 = z^2 - 1,  v_3 = z + 1,  v_4 = z - 1.
class Kind {
 public:
  /// Throws InvalidArgument unless index is 1, 2, 3 or 4.
  static Kind from_index(int index);

  [[nodiscard]] int index() const { return index_; }
  /// k_i with v_i S_i^2 = +-phi^{k_i}: 0, 2, 1, 1.
  [[nodiscard]] int exponent() const;
  /// S_i(infinity): 1, 2, sqrt(2), sqrt(2).
  [[nodiscard]] double s_inf() const;

  /// v_i(x) evaluated in factored form, so the endpoint zeros are exact.
  [[nodiscard]] double v(double x) const;
  [[nodiscard]] std::complex<double> v(std::complex<double> z) const;
  [[nodiscard]] double v_abs(double x) const;

  friend bool operator==(Kind, Kind) = default;

 private:
  explicit Kind(int index) : index_(index) {}
  int index_ = 1;
};

[[nodiscard]] double v_abs(Kind kind, double x);

/// A strictly positive density rho on [-1, 1] together with the smoothness
/// order m and access to derivatives of 1/rho up to order m.
///
/// Built-in families carry closed-form derivatives. Densities given as plain
/// functions get iterated central differences instead; their derivative
/// values are good to roughly 1e-6 relative for m = 3.
class WeightSpec {
 public:
  /// rho == c.
  static WeightSpec constant(double c, int m = 3);
  /// rho = exp(alpha x).
  static WeightSpec exponential(double alpha, int m = 3);
  /// rho = 1 / p(x),  p(x) = sum_k coeffs[k] x^k  positive on [-1, 1].
  static WeightSpec reciprocal_polynomial(std::vector<double> coeffs, int m = 3);
  /// rho = c + |x - x0|^{m + beta}, beta in (0, 1).
  static WeightSpec holder(double c, double beta, double x0, int m);
  /// Arbitrary density. When inv_rho_m_deriv is supplied it is checked against
  /// a finite-difference m-th derivative of 1/rho at 11 interior probe points.
  static WeightSpec from_function(RealFunction rho, int m, std::string label,
                                  RealFunction inv_rho_m_deriv = {});

  /// Parses the textual weight form, e.g. "exp:alpha=1" or "holder:c=2,beta=0.5,x0=0,m=3".
  static WeightSpec parse(std::string_view text);

  [[nodiscard]] double rho(double x) const;
  [[nodiscard]] double inv_rho(double x) const;
  /// (1/rho)^{(order)}(x) for 0 <= order <= m.
  [[nodiscard]] double inv_rho_derivative(int order, double x) const;
  [[nodiscard]] double inv_rho_m_derivative(double x) const { return inv_rho_derivative(m(), x); }

  [[nodiscard]] int m() const;
  [[nodiscard]] const std::string& label() const;
  /// True when derivatives of 1/rho come from closed forms rather than differencing.
  [[nodiscard]] bool has_closed_form_derivatives() const;

  class Model;

 private:
  explicit WeightSpec(std::shared_ptr<const Model> model);
  std::shared_ptr<const Model> model_;
};

/// Finite-difference derivative of the given order: the central stencil where it
/// fits in [-1, 1], otherwise order+2 equally spaced points inside the interval
/// with Fornberg weights, so the error is O(step^2) everywhere.
[[nodiscard]] double central_difference(const RealFunction& f, int order, double x, double step);

/// Samples of f on the uniform grid x_i = -1 + 2i/(G-1) with a sliding-window
/// estimator for omega(f; h) = max |f(x) - f(y)| over |x - y| <= h.
///
/// omega is exact on the grid for h a multiple of the spacing and linearly
/// interpolated in h between those values, so it stays nondecreasing and does
/// not collapse to zero once h drops below one grid step.
class GridModulus {
 public:
  GridModulus(const RealFunction& f, std::size_t grid_size);

  [[nodiscard]] double operator()(double h) const;
  [[nodiscard]] double spacing() const { return spacing_; }
  [[nodiscard]] std::span<const double> samples() const { return samples_; }

  /// Largest oscillation over windows of `steps` consecutive spacings.
  [[nodiscard]] double window_oscillation(std::size_t steps) const;

 private:
  std::vector<double> samples_;
  double spacing_;
};

[[nodiscard]] double modulus_of_continuity(const RealFunction& f, double h, std::size_t grid_size);

inline constexpr std::size_t kEpsilonGridSize = 8192;

/// (log n / n^m) * omega((1/rho)^{(m)}; 1/n) on the fixed 8192-point grid.
[[nodiscard]] double epsilon_n(const WeightSpec& w, int n);

/// epsilon_n for several n, sampling (1/rho)^{(m)} once.
[[nodiscard]] std::vector<double> epsilon_n(const WeightSpec& w, std::span<const int> ns);

}  // namespace chebpert
