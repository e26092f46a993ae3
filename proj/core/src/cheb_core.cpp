#include "chebpert/cheb_core.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "chebpert/errors.hpp"

namespace chebpert {

namespace {

template <class T>
T clenshaw(std::span<const double> c, T x) {
  T b1{0.0};
  T b2{0.0};
  const T two_x = T{2.0} * x;
  for (std::size_t k = c.size(); k-- > 1;) {
    const T b0 = T{c[k]} + two_x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return c.empty() ? T{0.0} : T{c[0]} + x * b1 - b2;
}

// cos(m pi / (2n)) for m in [0, 4n), filled by symmetry so that
// table[2n - m] == -table[m] and table[4n - m] == table[m] hold exactly.
std::vector<double> cosine_table(std::size_t n) {
  const std::size_t period = 4 * n;
  std::vector<double> table(period);
  const double step = std::numbers::pi / (2.0 * static_cast<double>(n));
  for (std::size_t m = 0; m <= n; ++m) {
    // cos(m*step) = sin((n - m)*step) keeps the quarter-wave accurate near zero.
    table[m] = std::sin(static_cast<double>(n - m) * step);
  }
  for (std::size_t m = n + 1; m <= 2 * n; ++m) table[m] = -table[2 * n - m];
  for (std::size_t m = 2 * n + 1; m < period; ++m) table[m] = table[period - m];
  return table;
}

}  // namespace

ChebSeries::ChebSeries(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  for (double c : coeffs_) abs_sum_ += std::abs(c);
}

double ChebSeries::operator()(double x) const {
  if (!(std::abs(x) <= 1.0)) {
    throw InvalidArgument("clenshaw_eval: |x| > 1 (x = " + std::to_string(x) + ")");
  }
  return clenshaw<double>(coeffs_, x);
}

std::complex<double> ChebSeries::operator()(std::complex<double> z) const {
  return clenshaw<std::complex<double>>(coeffs_, z);
}

double chebyshev_derivative_at_one(std::size_t k, int order) {
  const double k2 = static_cast<double>(k) * static_cast<double>(k);
  double d = 1.0;
  for (int i = 0; i < order; ++i) {
    d *= (k2 - static_cast<double>(i * i)) / static_cast<double>(2 * i + 1);
  }
  return d;
}

double ChebSeries::endpoint_derivative(int end, int order) const {
  double s = 0.0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    double d = chebyshev_derivative_at_one(k, order);
    if (end < 0 && (k + static_cast<std::size_t>(order)) % 2 == 1) d = -d;
    s += coeffs_[k] * d;
  }
  return s;
}

std::vector<double> cheb_nodes(std::size_t n) {
  if (n == 0) throw InvalidArgument("cheb_nodes: N must be >= 1");
  std::vector<double> x(n);
  const double step = std::numbers::pi / (2.0 * static_cast<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    const auto offset = static_cast<double>(static_cast<long long>(n) - 1 - 2 * static_cast<long long>(j));
    x[j] = std::sin(offset * step);
  }
  return x;
}

ChebSeries cheb_coeffs_from_values(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) throw InvalidArgument("cheb_coeffs: N must be >= 1");
  const std::vector<double> table = cosine_table(n);
  const std::size_t period = 4 * n;
  std::vector<double> c(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    // angle index k*(2j+1) mod 4n, advanced by 2k per node
    const std::size_t stride = (2 * k) % period;
    std::size_t idx = k % period;
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      sum += values[j] * table[idx];
      idx += stride;
      if (idx >= period) idx -= period;
    }
    c[k] = 2.0 * sum / static_cast<double>(n);
  }
  c[0] *= 0.5;
  return ChebSeries(std::move(c));
}

ChebSeries cheb_coeffs(const RealFunction& f, std::size_t n) {
  const std::vector<double> x = cheb_nodes(n);
  std::vector<double> values(n);
  for (std::size_t j = 0; j < n; ++j) {
    values[j] = f(x[j]);
    if (!std::isfinite(values[j])) {
      throw NumericDomainError("cheb_coeffs: non-finite value at node x_" + std::to_string(j) +
                               " = " + std::to_string(x[j]));
    }
  }
  return cheb_coeffs_from_values(values);
}

double clenshaw_eval(const ChebSeries& s, double x) { return s(x); }

}  // namespace chebpert
