#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace chebpert {

using RealFunction = std::function<double(double)>;

/// Truncated Chebyshev series  sum_k c_k T_k(x)  on [-1, 1].
class ChebSeries {
 public:
  ChebSeries() = default;
  explicit ChebSeries(std::vector<double> coeffs);

  [[nodiscard]] std::span<const double> coeffs() const { return coeffs_; }
  [[nodiscard]] bool empty() const { return coeffs_.empty(); }
  /// Index of the last stored coefficient (0 for an empty series).
  [[nodiscard]] std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  [[nodiscard]] double abs_sum() const { return abs_sum_; }

  /// Clenshaw evaluation on [-1, 1]; throws InvalidArgument for |x| > 1.
  [[nodiscard]] double operator()(double x) const;
  /// Clenshaw evaluation of the polynomial at an arbitrary complex point.
  [[nodiscard]] std::complex<double> operator()(std::complex<double> z) const;

  /// d^order/dx^order of the polynomial at x = +1 (end = +1) or x = -1 (end = -1).
  [[nodiscard]] double endpoint_derivative(int end, int order) const;

 private:
  std::vector<double> coeffs_;
  double abs_sum_ = 0.0;
};

/// First-kind Chebyshev nodes x_j = cos((2j+1)pi/(2n)), j = 0..n-1, decreasing.
/// Computed as sin((n-1-2j)pi/(2n)) so the grid is exactly antisymmetric.
[[nodiscard]] std::vector<double> cheb_nodes(std::size_t n);

/// Interpolant of degree n-1 through the first-kind nodes, via the discrete cosine sum.
[[nodiscard]] ChebSeries cheb_coeffs(const RealFunction& f, std::size_t n);

/// Same transform applied to samples already taken at cheb_nodes(values.size()).
[[nodiscard]] ChebSeries cheb_coeffs_from_values(std::span<const double> values);

[[nodiscard]] double clenshaw_eval(const ChebSeries& s, double x);

/// T_k^{(order)}(1); T_k^{(order)}(-1) = (-1)^{k+order} times this.
[[nodiscard]] double chebyshev_derivative_at_one(std::size_t k, int order);

}  // namespace chebpert
