#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "chebpert/cheb_core.hpp"
#include "chebpert/weights.hpp"

namespace chebpert {

struct ExtensionParams {
  int n = 32;         ///< degree of l_n, must exceed 2m
  double r = 1.5;     ///< support ellipse E_r
  double R = 2.0;     ///< outer ellipse, only used for reporting
  int grid = 128;     ///< grid points per unit length

  /// Throws InvalidArgument unless 1 < r < R, n > 2m and grid >= 64.
  void validate(int m) const;
};

/// Polynomial approximant of 1/rho of degree <= n: a smoothly truncated
/// Chebyshev series, whose error stays local, plus corrections concentrated
/// near +-1 so that 1/rho - l_n vanishes to order m at both endpoints.
[[nodiscard]] ChebSeries build_l_n(const WeightSpec& w, int n);

/// (1/rho(x) - l(x)) / sqrt(1 - x^2) on (-1, 1); zero outside the interval and
/// in the guard band |x| > 1 - 1e-8. The difference is soft-thresholded at the
/// rounding level of the two evaluations, so rounding noise reads as exact zero.
[[nodiscard]] double lambda_n(const WeightSpec& w, const ChebSeries& l, double x);

/// Horizontal average (1/|y|) int_0^{|y|} lambda_n(x + t) dt at z = x + iy,
/// with Lambda_n(x) = lambda_n(x) on the real axis.
[[nodiscard]] double Lambda_n(const WeightSpec& w, const ChebSeries& l, std::complex<double> z);

/// Quintic smoothstep in |phi|: 1 on [-1, 1], 0 outside E_r, C^2 in between.
[[nodiscard]] double bump_psi(double r, std::complex<double> z);

/// L_{n,r}(z) = -+ i w(z) Lambda_n(z) psi_r(z), minus sign for Im z >= 0.
[[nodiscard]] std::complex<double> L_value(const WeightSpec& w, const ChebSeries& l, double r, std::complex<double> z);

struct FieldSample {
  std::complex<double> z;
  std::complex<double> ell;     ///< l_n(z) + L(z)
  std::complex<double> L;
  std::complex<double> dbar_L;  ///< (d_x + i d_y) L / 2 by central differences
  double local_ratio = 0.0;     ///< |dbar L| / (sqrt|1 - z^2| n eps_n / log n)
};

struct ExtensionField {
  ExtensionParams params;
  std::string weight_label;
  std::vector<FieldSample> upper;
  std::vector<FieldSample> lower;
  double eps_n = 0.0;
  double bound_scale = 0.0;      ///< n eps_n / log n
  double bound_ratio = 0.0;      ///< max local_ratio
  double max_abs_dbar_L = 0.0;
  double interval_defect = 0.0;  ///< max |ell(x) - 1/rho(x)| on [-1, 1]
  double l_n_error = 0.0;        ///< max |l_n(x) - 1/rho(x)| on [-1, 1]
  double l_n_sup = 0.0;          ///< max |l_n(x)| on [-1, 1]
  double l_n_outer = 0.0;        ///< max |l_n| on the ellipse |phi| = R, divided by R^n
  double lambda_norm = 0.0;
  double lambda_prime_norm = 0.0;
  double fd_relative_change = 0.0;  ///< dbar L at step h/4 versus h/8, relative to max |dbar L|
  std::size_t outside_nonzero = 0;  ///< samples outside E_r where L != 0
};

/// Samples the extension on both open half-plane grids covering E_r.
/// Throws ResolutionError when halving the difference step changes dbar L by
/// more than 10% of its maximum.
[[nodiscard]] ExtensionField L_field(const WeightSpec& w, const ExtensionParams& p);

/// Columns: re_z, im_z, re_L, im_L, abs_dbar_L, bound_ratio_local.
void write_field_csv(std::ostream& out, std::span<const FieldSample> samples);

}  // namespace chebpert
