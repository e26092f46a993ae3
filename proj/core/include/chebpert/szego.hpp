#pragma once

#include <complex>
#include <cstddef>

#include "chebpert/cheb_core.hpp"
#include "chebpert/weights.hpp"

namespace chebpert {

using Complex = std::complex<double>;

/// Side of the cut [-1, 1]: plus is the limit from the upper half-plane.
enum class Side { plus, minus };

/// w(z) = sqrt(z^2 - 1), analytic off [-1, 1], w(z)/z -> 1 at infinity.
/// Throws InvalidArgument for z on the cut.
[[nodiscard]] Complex sqrt_w(Complex z);
/// w_{+-}(x) = +-i sqrt(1 - x^2).
[[nodiscard]] Complex sqrt_w_boundary(double x, Side side);

/// phi(z) = z + w(z), mapping the complement of [-1, 1] onto |phi| > 1.
[[nodiscard]] Complex phi(Complex z);
/// phi_{+-}(x) = x +- i sqrt(1 - x^2) = exp(+-i arccos x).
[[nodiscard]] Complex phi_boundary(double x, Side side);
/// |phi(z)|, continuously extended by 1 on the cut.
[[nodiscard]] double phi_abs(Complex z);
/// Distance from z to the segment [-1, 1].
[[nodiscard]] double distance_to_cut(Complex z);

inline constexpr double kSzegoTailTolerance = 1e-13;
inline constexpr std::size_t kSzegoMaxNodes = 8192;

/// Szego function data for rho: a Chebyshev expansion of log rho shared by
///   S(z)     = exp(-1/2 sum_k c_k phi(z)^{-k})
///   theta(x) = 1/2 sum_{k>=1} c_k sin(k arccos x).
class SzegoData {
 public:
  /// Doubles the node count from 16 up to 8192 until the last two coefficients
  /// are below 1e-13 of the largest one. If that never happens the data is
  /// kept but marked unresolved and every evaluation refuses.
  static SzegoData build(const WeightSpec& w);
  /// Fixed node count, no adaptivity; resolution is still assessed.
  static SzegoData with_nodes(const WeightSpec& w, std::size_t nodes);

  [[nodiscard]] const ChebSeries& logrho_coeffs() const { return logrho_; }
  [[nodiscard]] double s_inf() const { return s_inf_; }
  [[nodiscard]] std::size_t degree() const { return logrho_.degree(); }
  [[nodiscard]] bool resolved() const { return resolved_; }
  /// max(|c_{N-1}|, |c_N|) / max_k |c_k|.
  [[nodiscard]] double tail_ratio() const { return tail_ratio_; }

  [[nodiscard]] Complex S(Complex z) const;
  [[nodiscard]] Complex S_boundary(double x, Side side) const;
  [[nodiscard]] double theta(double x) const;

 private:
  SzegoData(ChebSeries logrho, double tail_ratio);
  void require_resolved() const;

  ChebSeries logrho_;
  double s_inf_ = 1.0;
  double tail_ratio_ = 0.0;
  bool resolved_ = true;
};

[[nodiscard]] Complex szego_S(const SzegoData& sd, Complex z);
[[nodiscard]] double theta_phase(const SzegoData& sd, double x);

/// Closed-form Szego functions of |v_i|:
///   S_1 = 1, S_2 = phi/w, S_3 = (phi/(z+1))^{1/2}, S_4 = (phi/(z-1))^{1/2}.
[[nodiscard]] Complex szego_Si(Kind kind, Complex z);
[[nodiscard]] Complex szego_Si_boundary(Kind kind, double x, Side side);
/// theta_1 = 0, theta_2 = arccos x - pi/2, theta_3 = arccos(x)/2, theta_4 = arccos(x)/2 - pi/2.
[[nodiscard]] double theta_i(Kind kind, double x);

}  // namespace chebpert
