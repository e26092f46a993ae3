#include "chebpert/weights.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <limits>
#include <string>
#include <utility>

#include "chebpert/errors.hpp"

namespace chebpert {

// ---------------------------------------------------------------------------
// Kind

Kind Kind::from_index(int index) {
  if (index < 1 || index > 4) {
    throw InvalidArgument("kind must be 1, 2, 3 or 4 (got " + std::to_string(index) + ")");
  }
  return Kind(index);
}

int Kind::exponent() const {
  switch (index_) {
    case 2: return 2;
    case 3:
    case 4: return 1;
    default: return 0;
  }
}

double Kind::s_inf() const {
  switch (index_) {
    case 2: return 2.0;
    case 3:
    case 4: return std::sqrt(2.0);
    default: return 1.0;
  }
}

double Kind::v(double x) const {
  switch (index_) {
    case 2: return (x - 1.0) * (x + 1.0);
    case 3: return x + 1.0;
    case 4: return x - 1.0;
    default: return 1.0;
  }
}

std::complex<double> Kind::v(std::complex<double> z) const {
  switch (index_) {
    case 2: return (z - 1.0) * (z + 1.0);
    case 3: return z + 1.0;
    case 4: return z - 1.0;
    default: return {1.0, 0.0};
  }
}

double Kind::v_abs(double x) const { return std::abs(v(x)); }

double v_abs(Kind kind, double x) { return kind.v_abs(x); }

// ---------------------------------------------------------------------------
// WeightSpec models

class WeightSpec::Model {
 public:
  Model(int m, std::string label) : m_(m), label_(std::move(label)) {}
  virtual ~Model() = default;

  [[nodiscard]] virtual double rho(double x) const = 0;
  [[nodiscard]] virtual double inv_rho(double x) const { return 1.0 / rho(x); }
  [[nodiscard]] virtual double inv_rho_derivative(int order, double x) const = 0;
  [[nodiscard]] virtual bool closed_form() const { return true; }

  [[nodiscard]] int m() const { return m_; }
  [[nodiscard]] const std::string& label() const { return label_; }

 private:
  int m_;
  std::string label_;
};

namespace {

std::string format_real(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string smoothness_suffix(int m) { return m == 3 ? std::string{} : ",m=" + std::to_string(m); }

class ConstantModel final : public WeightSpec::Model {
 public:
  ConstantModel(double c, int m) : Model(m, "const:c=" + format_real(c) + smoothness_suffix(m)), c_(c) {}
  double rho(double) const override { return c_; }
  double inv_rho(double) const override { return 1.0 / c_; }
  double inv_rho_derivative(int order, double) const override { return order == 0 ? 1.0 / c_ : 0.0; }

 private:
  double c_;
};

class ExponentialModel final : public WeightSpec::Model {
 public:
  ExponentialModel(double alpha, int m)
      : Model(m, "exp:alpha=" + format_real(alpha) + smoothness_suffix(m)), alpha_(alpha) {}
  double rho(double x) const override { return std::exp(alpha_ * x); }
  double inv_rho(double x) const override { return std::exp(-alpha_ * x); }
  double inv_rho_derivative(int order, double x) const override {
    return std::pow(-alpha_, order) * std::exp(-alpha_ * x);
  }

 private:
  double alpha_;
};

class ReciprocalPolynomialModel final : public WeightSpec::Model {
 public:
  ReciprocalPolynomialModel(std::vector<double> coeffs, int m)
      : Model(m, make_label(coeffs, m)), coeffs_(std::move(coeffs)) {}

  double rho(double x) const override { return 1.0 / inv_rho(x); }
  double inv_rho(double x) const override { return inv_rho_derivative(0, x); }
  double inv_rho_derivative(int order, double x) const override {
    // Horner on the order-th derivative of p.
    double s = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > static_cast<std::size_t>(order);) {
      double falling = 1.0;
      for (int i = 0; i < order; ++i) falling *= static_cast<double>(k - static_cast<std::size_t>(i));
      s = s * x + falling * coeffs_[k];
    }
    return s;
  }

 private:
  static std::string make_label(const std::vector<double>& coeffs, int m) {
    std::string s = "recip-poly:c=";
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (k) s += ',';
      s += format_real(coeffs[k]);
    }
    return s + smoothness_suffix(m);
  }
  std::vector<double> coeffs_;
};

// rho = c + |x - x0|^s with s = m + beta. Derivatives of 1/rho come from the
// Taylor series of 1/(c + (u + t)^s) in t at u = |x - x0|.
class HolderModel final : public WeightSpec::Model {
 public:
  HolderModel(double c, double beta, double x0, int m)
      : Model(m, "holder:c=" + format_real(c) + ",beta=" + format_real(beta) + ",x0=" + format_real(x0) +
                     ",m=" + std::to_string(m)),
        c_(c),
        x0_(x0),
        power_(m + beta) {}

  double rho(double x) const override { return c_ + std::pow(std::abs(x - x0_), power_); }
  double inv_rho(double x) const override { return 1.0 / rho(x); }
  double inv_rho_derivative(int order, double x) const override {
    const double u = std::abs(x - x0_);
    std::vector<double> a(static_cast<std::size_t>(order) + 1);
    // (u + t)^s = sum_k binom(s, k) u^{s-k} t^k
    double binom = 1.0;
    for (int k = 0; k <= order; ++k) {
      a[k] = binom * std::pow(u, power_ - k);
      binom *= (power_ - k) / static_cast<double>(k + 1);
    }
    a[0] += c_;
    std::vector<double> b(a.size());
    b[0] = 1.0 / a[0];
    for (std::size_t k = 1; k < a.size(); ++k) {
      double s = 0.0;
      for (std::size_t j = 1; j <= k; ++j) s += a[j] * b[k - j];
      b[k] = -s * b[0];
    }
    double factorial = 1.0;
    for (int k = 2; k <= order; ++k) factorial *= k;
    const double sign = (x < x0_ && order % 2 == 1) ? -1.0 : 1.0;
    return sign * factorial * b[static_cast<std::size_t>(order)];
  }

 private:
  double c_;
  double x0_;
  double power_;
};

double difference_step(int order) {
  // balances truncation O(h^2) against rounding O(eps / h^order)
  const double e = std::round(52.0 / (order + 2));
  return std::ldexp(1.0, -static_cast<int>(e));
}

class FunctionModel final : public WeightSpec::Model {
 public:
  FunctionModel(RealFunction rho, int m, std::string label, RealFunction inv_rho_m_deriv)
      : Model(m, std::move(label)), rho_(std::move(rho)), inv_rho_m_deriv_(std::move(inv_rho_m_deriv)) {}

  double rho(double x) const override { return rho_(x); }
  double inv_rho_derivative(int order, double x) const override {
    if (order == 0) return 1.0 / rho_(x);
    if (order == m() && inv_rho_m_deriv_) return inv_rho_m_deriv_(x);
    const RealFunction inv = [this](double t) { return 1.0 / rho_(t); };
    return central_difference(inv, order, x, difference_step(order));
  }
  bool closed_form() const override { return false; }

 private:
  RealFunction rho_;
  RealFunction inv_rho_m_deriv_;
};

void check_smoothness_order(int m) {
  if (m < 3) throw InvalidArgument("smoothness order m must be >= 3 (got " + std::to_string(m) + ")");
}

void check_positive(const WeightSpec::Model& model) {
  constexpr std::size_t kProbeGrid = 4097;
  for (double x : cheb_nodes(kProbeGrid)) {
    const double r = model.rho(x);
    if (!std::isfinite(r)) {
      throw NumericDomainError("weight " + model.label() + ": rho is not finite at x = " + format_real(x));
    }
    if (!(r > 0.0)) {
      throw InvalidArgument("weight " + model.label() + ": rho is not strictly positive at x = " + format_real(x));
    }
  }
}

// Richardson-extrapolated central difference, used to validate supplied derivatives.
double reference_derivative(const RealFunction& f, int order, double x) {
  const double h = 2.0 * difference_step(order);
  const double coarse = central_difference(f, order, x, h);
  const double fine = central_difference(f, order, x, 0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

void check_supplied_derivative(const WeightSpec::Model& model, const RealFunction& deriv) {
  const RealFunction inv = [&model](double t) { return 1.0 / model.rho(t); };
  constexpr int kProbes = 11;
  std::vector<double> given(kProbes);
  std::vector<double> reference(kProbes);
  double scale = 0.0;
  for (int p = 0; p < kProbes; ++p) {
    const double x = -0.9 + 0.18 * p + 0.013;
    given[p] = deriv(x);
    reference[p] = reference_derivative(inv, model.m(), x);
    scale = std::max(scale, std::abs(reference[p]));
  }
  for (int p = 0; p < kProbes; ++p) {
    const double tol = 1e-4 * std::max({std::abs(given[p]), std::abs(reference[p]), 1e-2 * scale, 1e-12});
    if (!(std::abs(given[p] - reference[p]) <= tol)) {
      throw InvalidArgument("weight " + model.label() + ": supplied (1/rho)^(m) disagrees with finite differences at x = " +
                            format_real(-0.9 + 0.18 * p + 0.013));
    }
  }
}

}  // namespace

WeightSpec::WeightSpec(std::shared_ptr<const Model> model) : model_(std::move(model)) { check_positive(*model_); }

WeightSpec WeightSpec::constant(double c, int m) {
  check_smoothness_order(m);
  return WeightSpec(std::make_shared<ConstantModel>(c, m));
}

WeightSpec WeightSpec::exponential(double alpha, int m) {
  check_smoothness_order(m);
  return WeightSpec(std::make_shared<ExponentialModel>(alpha, m));
}

WeightSpec WeightSpec::reciprocal_polynomial(std::vector<double> coeffs, int m) {
  check_smoothness_order(m);
  if (coeffs.empty()) throw InvalidArgument("recip-poly needs at least one coefficient");
  return WeightSpec(std::make_shared<ReciprocalPolynomialModel>(std::move(coeffs), m));
}

WeightSpec WeightSpec::holder(double c, double beta, double x0, int m) {
  check_smoothness_order(m);
  if (!(beta > 0.0 && beta < 1.0)) throw InvalidArgument("holder: beta must lie in (0, 1)");
  return WeightSpec(std::make_shared<HolderModel>(c, beta, x0, m));
}

WeightSpec WeightSpec::from_function(RealFunction rho, int m, std::string label, RealFunction inv_rho_m_deriv) {
  check_smoothness_order(m);
  if (!rho) throw InvalidArgument("from_function: empty density");
  auto model = std::make_shared<FunctionModel>(std::move(rho), m, std::move(label), inv_rho_m_deriv);
  WeightSpec w(model);
  if (inv_rho_m_deriv) check_supplied_derivative(*model, inv_rho_m_deriv);
  return w;
}

double WeightSpec::rho(double x) const { return model_->rho(x); }
double WeightSpec::inv_rho(double x) const { return model_->inv_rho(x); }

double WeightSpec::inv_rho_derivative(int order, double x) const {
  if (order < 0 || order > model_->m()) {
    throw InvalidArgument("inv_rho_derivative: order must lie in [0, m]");
  }
  return model_->inv_rho_derivative(order, x);
}

int WeightSpec::m() const { return model_->m(); }
const std::string& WeightSpec::label() const { return model_->label(); }
bool WeightSpec::has_closed_form_derivatives() const { return model_->closed_form(); }

// ---------------------------------------------------------------------------
// finite differences and modulus of continuity

namespace {

// Fornberg's recursion: weights of the order-th derivative at z for the given points.
std::vector<double> fornberg_weights(double z, const std::vector<double>& x, int order) {
  const std::size_t n = x.size();
  const auto m = static_cast<std::size_t>(order);
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - z;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (std::size_t j = 0; j < n; ++j) w[j] = c[j][m];
  return w;
}

}  // namespace

double central_difference(const RealFunction& f, int order, double x, double step) {
  if (order == 0) return f(x);
  const double half_width = 0.5 * order * step;
  if (x >= -1.0 + half_width && x <= 1.0 - half_width) {
    double sum = 0.0;
    double binom = 1.0;
    for (int i = 0; i <= order; ++i) {
      const double offset = (0.5 * order - i) * step;
      sum += ((i % 2) ? -binom : binom) * f(x + offset);
      binom = binom * (order - i) / (i + 1);
    }
    return sum / std::pow(step, order);
  }
  // Near an endpoint: order+2 equally spaced points inside [-1, 1], which keeps
  // the error second order in the step even though x is off centre.
  const int count = order + 2;
  const double span = (count - 1) * step;
  const double start = x < 0.0 ? -1.0 : 1.0 - span;
  std::vector<double> points(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) points[static_cast<std::size_t>(i)] = (i + 1 == count && x > 0.0) ? 1.0 : start + i * step;
  const std::vector<double> weights = fornberg_weights(x, points, order);
  double sum = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) sum += weights[i] * f(points[i]);
  return sum;
}

GridModulus::GridModulus(const RealFunction& f, std::size_t grid_size)
    : samples_(grid_size), spacing_(2.0 / static_cast<double>(grid_size - 1)) {
  if (grid_size < 2) throw InvalidArgument("modulus_of_continuity: grid too small");
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double x = (i + 1 == grid_size) ? 1.0 : -1.0 + static_cast<double>(i) * spacing_;
    samples_[i] = f(x);
    if (!std::isfinite(samples_[i])) {
      throw NumericDomainError("modulus_of_continuity: non-finite sample at x = " + format_real(x));
    }
  }
}

double GridModulus::window_oscillation(std::size_t steps) const {
  if (steps == 0) return 0.0;
  const std::size_t n = samples_.size();
  steps = std::min(steps, n - 1);
  std::deque<std::size_t> hi;
  std::deque<std::size_t> lo;
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    while (!hi.empty() && samples_[hi.back()] <= samples_[i]) hi.pop_back();
    while (!lo.empty() && samples_[lo.back()] >= samples_[i]) lo.pop_back();
    hi.push_back(i);
    lo.push_back(i);
    if (hi.front() + steps < i) hi.pop_front();
    if (lo.front() + steps < i) lo.pop_front();
    best = std::max(best, samples_[hi.front()] - samples_[lo.front()]);
  }
  return best;
}

double GridModulus::operator()(double h) const {
  const double t = h / spacing_;
  const double whole = std::floor(t + 1e-9);
  const double frac = std::max(0.0, t - whole);
  const auto k = static_cast<std::size_t>(whole);
  if (k >= samples_.size() - 1) return window_oscillation(samples_.size() - 1);
  const double lower = window_oscillation(k);
  if (frac < 1e-9) return lower;
  return lower + frac * (window_oscillation(k + 1) - lower);
}

double modulus_of_continuity(const RealFunction& f, double h, std::size_t grid_size) {
  if (!(h > 0.0 && h <= 2.0)) throw InvalidArgument("modulus_of_continuity: h must lie in (0, 2]");
  if (grid_size < 1024) throw InvalidArgument("modulus_of_continuity: grid size must be >= 1024");
  return GridModulus(f, grid_size)(h);
}

std::vector<double> epsilon_n(const WeightSpec& w, std::span<const int> ns) {
  for (int n : ns) {
    if (n < 2) throw InvalidArgument("epsilon_n: n must be >= 2 (got " + std::to_string(n) + ")");
  }
  const GridModulus omega([&w](double x) { return w.inv_rho_m_derivative(x); }, kEpsilonGridSize);
  std::vector<double> out;
  out.reserve(ns.size());
  for (int n : ns) {
    const double nd = n;
    out.push_back(std::log(nd) / std::pow(nd, w.m()) * omega(1.0 / nd));
  }
  return out;
}

double epsilon_n(const WeightSpec& w, int n) {
  const int ns[] = {n};
  return epsilon_n(w, ns).front();
}

}  // namespace chebpert
