#include "chebpert/szego.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "chebpert/errors.hpp"

namespace chebpert {

namespace {

bool on_cut(Complex z) { return z.imag() == 0.0 && std::abs(z.real()) <= 1.0; }

void require_off_cut(Complex z, const char* who) {
  if (on_cut(z)) {
    throw InvalidArgument(std::string(who) + ": z = " + std::to_string(z.real()) +
                          " lies on the cut [-1, 1]; use the boundary variant");
  }
}

void require_interval(double x, const char* who) {
  if (!(std::abs(x) <= 1.0)) throw InvalidArgument(std::string(who) + ": |x| > 1");
}

double side_sign(Side side) { return side == Side::plus ? 1.0 : -1.0; }

double sqrt_one_minus_sq(double x) { return std::sqrt((1.0 - x) * (1.0 + x)); }

}  // namespace

Complex sqrt_w(Complex z) {
  require_off_cut(z, "sqrt_w");
  // The cuts of the two principal roots cancel on (-inf, -1).
  return std::sqrt(z - 1.0) * std::sqrt(z + 1.0);
}

Complex sqrt_w_boundary(double x, Side side) {
  require_interval(x, "sqrt_w_boundary");
  return {0.0, side_sign(side) * sqrt_one_minus_sq(x)};
}

Complex phi(Complex z) {
  require_off_cut(z, "phi");
  return z + sqrt_w(z);
}

Complex phi_boundary(double x, Side side) {
  require_interval(x, "phi_boundary");
  return {x, side_sign(side) * sqrt_one_minus_sq(x)};
}

double phi_abs(Complex z) { return on_cut(z) ? 1.0 : std::abs(phi(z)); }

double distance_to_cut(Complex z) {
  const double x = std::clamp(z.real(), -1.0, 1.0);
  return std::abs(z - Complex{x, 0.0});
}

// ---------------------------------------------------------------------------

SzegoData::SzegoData(ChebSeries logrho, double tail_ratio)
    : logrho_(std::move(logrho)), tail_ratio_(tail_ratio), resolved_(tail_ratio <= kSzegoTailTolerance) {
  s_inf_ = std::exp(-0.5 * (logrho_.empty() ? 0.0 : logrho_.coeffs()[0]));
}

namespace {

double tail_ratio_of(const ChebSeries& s) {
  const auto c = s.coeffs();
  double biggest = 0.0;
  for (double v : c) biggest = std::max(biggest, std::abs(v));
  if (biggest == 0.0) return 0.0;
  double tail = std::abs(c.back());
  if (c.size() > 1) tail = std::max(tail, std::abs(c[c.size() - 2]));
  return tail / biggest;
}

ChebSeries log_rho_series(const WeightSpec& w, std::size_t nodes) {
  return cheb_coeffs([&w](double x) { return std::log(w.rho(x)); }, nodes);
}

}  // namespace

SzegoData SzegoData::with_nodes(const WeightSpec& w, std::size_t nodes) {
  ChebSeries s = log_rho_series(w, nodes);
  const double tail = tail_ratio_of(s);
  return SzegoData(std::move(s), tail);
}

SzegoData SzegoData::build(const WeightSpec& w) {
  ChebSeries s;
  double tail = 0.0;
  for (std::size_t nodes = 16; nodes <= kSzegoMaxNodes; nodes *= 2) {
    s = log_rho_series(w, nodes);
    tail = tail_ratio_of(s);
    if (tail <= kSzegoTailTolerance) break;
  }
  return SzegoData(std::move(s), tail);
}

void SzegoData::require_resolved() const {
  if (!resolved_) {
    throw ResolutionError("Szego data under-resolved: tail ratio " + std::to_string(tail_ratio_) +
                          " exceeds 1e-13 at degree " + std::to_string(degree()));
  }
}

Complex SzegoData::S(Complex z) const {
  require_resolved();
  const Complex u = 1.0 / phi(z);
  const auto c = logrho_.coeffs();
  Complex sum{0.0, 0.0};
  for (std::size_t k = c.size(); k-- > 0;) sum = sum * u + c[k];
  return std::exp(-0.5 * sum);
}

Complex SzegoData::S_boundary(double x, Side side) const {
  require_interval(x, "S_boundary");
  const double log_rho = logrho_(x);
  const double th = theta(x);
  // sqrt(rho) S_{+-} = exp(+-i theta)
  return std::exp(Complex{-0.5 * log_rho, side_sign(side) * th});
}

double SzegoData::theta(double x) const {
  require_resolved();
  require_interval(x, "theta_phase");
  // sum_{k>=1} c_k sin(k psi) = sin(psi) sum_k c_k U_{k-1}(x)
  const auto c = logrho_.coeffs();
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) {
    const double b0 = c[k] + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return 0.5 * b1 * sqrt_one_minus_sq(x);
}

Complex szego_S(const SzegoData& sd, Complex z) { return sd.S(z); }

double theta_phase(const SzegoData& sd, double x) { return sd.theta(x); }

// ---------------------------------------------------------------------------

namespace {

Complex closed_form_Si(Kind kind, Complex z, Complex w, Complex ph) {
  switch (kind.index()) {
    case 2: return ph / w;
    // principal roots of (z +- 1)/phi, whose range avoids (-inf, 0]
    case 3: return 1.0 / std::sqrt((z + 1.0) / ph);
    case 4: return 1.0 / std::sqrt((z - 1.0) / ph);
    default: return {1.0, 0.0};
  }
}

}  // namespace

Complex szego_Si(Kind kind, Complex z) {
  require_off_cut(z, "szego_Si");
  return closed_form_Si(kind, z, sqrt_w(z), phi(z));
}

Complex szego_Si_boundary(Kind kind, double x, Side side) {
  return closed_form_Si(kind, Complex{x, 0.0}, sqrt_w_boundary(x, side), phi_boundary(x, side));
}

double theta_i(Kind kind, double x) {
  require_interval(x, "theta_i");
  const double psi = std::acos(x);
  constexpr double half_pi = 0.5 * std::numbers::pi;
  switch (kind.index()) {
    case 2: return psi - half_pi;
    case 3: return 0.5 * psi;
    case 4: return 0.5 * psi - half_pi;
    default: return 0.0;
  }
}

}  // namespace chebpert
