#include "chebpert/dbar_extension.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "chebpert/errors.hpp"
#include "chebpert/parallel.hpp"
#include "chebpert/szego.hpp"

namespace chebpert {

using Complex = std::complex<double>;

namespace {

constexpr double kGuardBand = 1e-8;
constexpr double kRoundoffFactor = 16.0;
// Error estimates of a rule applied to data with rounding noise e come out near 1e3 * e.
constexpr double kQuadratureNoiseFactor = 1e4;
constexpr std::size_t kIntervalProbe = 4001;

}  // namespace

void ExtensionParams::validate(int m) const {
  if (!(r > 1.0)) throw InvalidArgument("extension: r must exceed 1");
  if (!(R > r)) throw InvalidArgument("extension: R must exceed r");
  if (n <= 2 * m) {
    throw InvalidArgument("extension: n = " + std::to_string(n) + " must exceed 2m = " + std::to_string(2 * m));
  }
  if (grid < 64) throw InvalidArgument("extension: grid must be >= 64 points per unit");
}

namespace {

std::vector<double> cheb_multiply(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double half = 0.5 * a[i] * b[j];
      out[i + j] += half;
      out[i > j ? i - j : j - i] += half;
    }
  }
  return out;
}

// C-infinity step: 1 on [0, 1/2], 0 on [1, inf).
double taper(double t) {
  if (t <= 0.5) return 1.0;
  if (t >= 1.0) return 0.0;
  const double s = 2.0 * t - 1.0;
  return 1.0 / (1.0 + std::exp(1.0 / (1.0 - s) - 1.0 / s));
}

// Needle polynomial peaked at x = 1: a power of the normalized Fejer kernel
// in theta = arccos x, times ((1+x)/2)^m so that it vanishes to order m at -1.
std::vector<double> needle(int fejer_order, int power, int m) {
  std::vector<double> fejer(static_cast<std::size_t>(fejer_order));
  fejer[0] = 1.0 / fejer_order;
  for (int k = 1; k < fejer_order; ++k) {
    fejer[static_cast<std::size_t>(k)] = 2.0 * (1.0 - static_cast<double>(k) / fejer_order) / fejer_order;
  }
  std::vector<double> g{1.0};
  for (int i = 0; i < power; ++i) g = cheb_multiply(g, fejer);
  const std::vector<double> half_one_plus_x{0.5, 0.5};
  for (int i = 0; i < m; ++i) g = cheb_multiply(g, half_one_plus_x);
  return g;
}

}  // namespace

ChebSeries build_l_n(const WeightSpec& w, int n) {
  const int m = w.m();
  if (n <= 2 * m) {
    throw InvalidArgument("build_l_n: n = " + std::to_string(n) + " must exceed 2m = " + std::to_string(2 * m));
  }
  const auto f = [&w](double x) { return w.inv_rho(x); };

  // Smoothly truncated Chebyshev series; coefficients from a finely sampled transform.
  const std::size_t samples = std::bit_ceil(static_cast<std::size_t>(16 * (n + 1)));
  const ChebSeries full = cheb_coeffs(f, samples);
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = taper(static_cast<double>(k) / n) * full.coeffs()[k];
  const ChebSeries smooth(c);

  // Localized Hermite correction: B_k = G * P_k with G a needle at +1 and P_k
  // a polynomial in (x-1) of degree < m chosen so that B_k^(j)(1) = delta_jk.
  const int power = m + 1;
  const int fejer_order = (n - 2 * m + 1) / power + 1;
  const std::vector<double> g = needle(fejer_order, power, m);
  const ChebSeries g_series(g);
  std::vector<double> taylor(static_cast<std::size_t>(m));
  double factorial = 1.0;
  for (int i = 0; i < m; ++i) {
    if (i > 0) factorial *= i;
    taylor[static_cast<std::size_t>(i)] = g_series.endpoint_derivative(1, i) / factorial;
  }

  std::vector<double> correction(c.size(), 0.0);
  for (int k = 0; k < m; ++k) {
    std::vector<double> a(static_cast<std::size_t>(m), 0.0);
    double k_factorial = 1.0;
    for (int i = 2; i <= k; ++i) k_factorial *= i;
    a[static_cast<std::size_t>(k)] = 1.0 / (k_factorial * taylor[0]);
    for (int j = k + 1; j < m; ++j) {
      double s = 0.0;
      for (int i = 1; i <= j - k; ++i) s += taylor[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(j - i)];
      a[static_cast<std::size_t>(j)] = -s / taylor[0];
    }
    // P_k in the Chebyshev basis via powers of (x - 1) = T_1 - T_0.
    std::vector<double> poly{0.0};
    std::vector<double> power_term{1.0};
    const std::vector<double> x_minus_one{-1.0, 1.0};
    for (int j = 0; j < m; ++j) {
      if (j > 0) power_term = cheb_multiply(power_term, x_minus_one);
      if (poly.size() < power_term.size()) poly.resize(power_term.size(), 0.0);
      for (std::size_t i = 0; i < power_term.size(); ++i) poly[i] += a[static_cast<std::size_t>(j)] * power_term[i];
    }
    const ChebSeries basis(cheb_multiply(g, poly));

    for (int end : {1, -1}) {
      const double target = w.inv_rho_derivative(k, static_cast<double>(end));
      double noise = 0.0;
      for (std::size_t i = 0; i < c.size(); ++i) noise += std::abs(c[i]) * chebyshev_derivative_at_one(i, k);
      noise *= kRoundoffFactor * std::numeric_limits<double>::epsilon();
      double mismatch = target - smooth.endpoint_derivative(end, k);
      if (std::abs(mismatch) <= noise) continue;
      // B_{-1,k}(x) = (-1)^k B_{1,k}(-x), and T_i(-x) = (-1)^i T_i(x).
      for (std::size_t i = 0; i < basis.coeffs().size(); ++i) {
        double b = basis.coeffs()[i];
        if (end < 0 && (i + static_cast<std::size_t>(k)) % 2 == 1) b = -b;
        correction[i] += mismatch * b;
      }
    }
  }
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += correction[i];
  return ChebSeries(std::move(c));
}

namespace {

// 1/rho - l at x, zero in the guard band and soft-thresholded by the rounding
// floor so that it stays continuous.
double floored_defect(const WeightSpec& w, const ChebSeries& l, double x) {
  if (!(std::abs(x) < 1.0 - kGuardBand)) return 0.0;
  const double target = w.inv_rho(x);
  const double defect = target - l(x);
  const double floor = kRoundoffFactor * std::numeric_limits<double>::epsilon() * (std::abs(target) + l.abs_sum());
  if (std::abs(defect) <= floor) return 0.0;
  return defect > 0.0 ? defect - floor : defect + floor;
}

}  // namespace

double lambda_n(const WeightSpec& w, const ChebSeries& l, double x) {
  const double defect = floored_defect(w, l, x);
  return defect == 0.0 ? 0.0 : defect / std::sqrt((1.0 - x) * (1.0 + x));
}

double Lambda_n(const WeightSpec& w, const ChebSeries& l, Complex z) {
  const double x = z.real();
  const double width = std::abs(z.imag());
  if (width == 0.0) return lambda_n(w, l, x);
  const double lo = std::max(x, -1.0);
  const double hi = std::min(x + width, 1.0);
  if (!(lo < hi)) return 0.0;
  // With x = cos(t) the weight 1/sqrt(1-x^2) cancels against dx.
  using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
  const auto f = [&](double t) { return floored_defect(w, l, std::cos(t)); };
  const double a = std::acos(hi);
  const double b = std::acos(lo);
  double l1 = 0.0;
  double error = 0.0;
  const double coarse = Rule::integrate(f, a, b, 0, 0.0, &error, &l1);
  if (l1 == 0.0) return 0.0;
  // Ask for 1e-10 relative accuracy, but never for less than the rounding noise of the integrand.
  const double noise = kQuadratureNoiseFactor * std::numeric_limits<double>::epsilon() * l.abs_sum() * (b - a);
  const double tolerance = std::max(1e-10, noise / l1);
  if (error <= tolerance * l1) return coarse / width;
  return Rule::integrate(f, a, b, 10, tolerance) / width;
}

double bump_psi(double r, Complex z) {
  if (!(r > 1.0)) throw InvalidArgument("bump_psi: r must exceed 1");
  const double u = std::clamp((phi_abs(z) - 1.0) / (r - 1.0), 0.0, 1.0);
  const double u3 = u * u * u;
  return 1.0 - u3 * (10.0 + u * (-15.0 + 6.0 * u));
}

namespace {

Complex w_with_boundary(Complex z) {
  if (z.imag() == 0.0 && std::abs(z.real()) <= 1.0) return sqrt_w_boundary(z.real(), Side::plus);
  return sqrt_w(z);
}

}  // namespace

Complex L_value(const WeightSpec& w, const ChebSeries& l, double r, Complex z) {
  const double psi = bump_psi(r, z);
  if (psi == 0.0) return {0.0, 0.0};
  const double lam = Lambda_n(w, l, z);
  if (lam == 0.0) return {0.0, 0.0};
  const double sign = z.imag() >= 0.0 ? -1.0 : 1.0;
  return sign * Complex{0.0, 1.0} * w_with_boundary(z) * (lam * psi);
}

namespace {

Complex dbar(const WeightSpec& w, const ChebSeries& l, double r, Complex z, double step) {
  const Complex dx = (L_value(w, l, r, z + step) - L_value(w, l, r, z - step)) / (2.0 * step);
  const Complex dy =
      (L_value(w, l, r, z + Complex{0.0, step}) - L_value(w, l, r, z - Complex{0.0, step})) / (2.0 * step);
  return 0.5 * (dx + Complex{0.0, 1.0} * dy);
}

struct HalfPlaneGrid {
  std::vector<Complex> points;
};

HalfPlaneGrid make_grid(const ExtensionParams& p, double sign) {
  const double h = 1.0 / p.grid;
  const double semi_major = 0.5 * (p.r + 1.0 / p.r);
  const double semi_minor = 0.5 * (p.r - 1.0 / p.r);
  const int nx = static_cast<int>(std::ceil(semi_major / h)) + 4;
  const int ny = static_cast<int>(std::ceil(semi_minor / h)) + 4;
  HalfPlaneGrid g;
  g.points.reserve(static_cast<std::size_t>((2 * nx + 1) * ny));
  for (int j = 1; j <= ny; ++j) {
    for (int i = -nx; i <= nx; ++i) g.points.emplace_back(i * h, sign * j * h);
  }
  return g;
}

}  // namespace

ExtensionField L_field(const WeightSpec& w, const ExtensionParams& p) {
  p.validate(w.m());
  ExtensionField field;
  field.params = p;
  field.weight_label = w.label();

  const ChebSeries l = build_l_n(w, p.n);
  field.eps_n = epsilon_n(w, p.n);
  field.bound_scale = p.n * field.eps_n / std::log(static_cast<double>(p.n));

  // Interval diagnostics on a uniform probe grid.
  {
    std::vector<double> lam(kIntervalProbe);
    const double dx = 2.0 / static_cast<double>(kIntervalProbe - 1);
    for (std::size_t i = 0; i < kIntervalProbe; ++i) {
      const double x = (i + 1 == kIntervalProbe) ? 1.0 : -1.0 + static_cast<double>(i) * dx;
      const double target = w.inv_rho(x);
      const double lx = l(x);
      const Complex ell = lx + L_value(w, l, p.r, Complex{x, 0.0});
      field.interval_defect = std::max(field.interval_defect, std::abs(ell - target));
      field.l_n_error = std::max(field.l_n_error, std::abs(lx - target));
      field.l_n_sup = std::max(field.l_n_sup, std::abs(lx));
      lam[i] = lambda_n(w, l, x);
      field.lambda_norm = std::max(field.lambda_norm, std::abs(lam[i]));
    }
    for (std::size_t i = 1; i + 1 < kIntervalProbe; ++i) {
      field.lambda_prime_norm = std::max(field.lambda_prime_norm, std::abs(lam[i + 1] - lam[i - 1]) / (2.0 * dx));
    }
    constexpr int kOuter = 256;
    for (int k = 0; k < kOuter; ++k) {
      const Complex tau = std::polar(p.R, 2.0 * std::numbers::pi * (k + 0.5) / kOuter);
      const Complex s = 0.5 * (tau + 1.0 / tau);
      field.l_n_outer = std::max(field.l_n_outer, std::abs(l(s)));
    }
    field.l_n_outer /= std::pow(p.R, p.n);
  }

  const double h = 1.0 / p.grid;
  const double step = 0.25 * h;
  double max_dbar = 0.0;
  double max_change = 0.0;

  for (double sign : {1.0, -1.0}) {
    const HalfPlaneGrid g = make_grid(p, sign);
    std::vector<FieldSample> samples(g.points.size());
    std::vector<double> change(g.points.size(), 0.0);
    parallel_for(g.points.size(), [&](std::size_t i) {
      const Complex z = g.points[i];
      FieldSample& s = samples[i];
      s.z = z;
      bool touches_support = false;
      for (double d : {0.0, step, -step, 0.5 * step, -0.5 * step}) {
        touches_support = touches_support || bump_psi(p.r, z + d) > 0.0 || bump_psi(p.r, z + Complex{0.0, d}) > 0.0;
      }
      if (!touches_support) {
        s.ell = l(z);
        return;
      }
      s.L = L_value(w, l, p.r, z);
      s.ell = l(z) + s.L;
      s.dbar_L = dbar(w, l, p.r, z, step);
      const Complex fine = dbar(w, l, p.r, z, 0.5 * step);
      change[i] = std::abs(fine - s.dbar_L);
      const double magnitude = std::abs(s.dbar_L);
      const double denom = std::sqrt(std::abs(1.0 - z * z)) * field.bound_scale;
      s.local_ratio = magnitude == 0.0 ? 0.0 : (denom > 0.0 ? magnitude / denom : std::numeric_limits<double>::infinity());
    });
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const FieldSample& s = samples[i];
      max_dbar = std::max(max_dbar, std::abs(s.dbar_L));
      max_change = std::max(max_change, change[i]);
      field.bound_ratio = std::max(field.bound_ratio, s.local_ratio);
      if (phi_abs(s.z) >= p.r && s.L != Complex{0.0, 0.0}) ++field.outside_nonzero;
    }
    (sign > 0 ? field.upper : field.lower) = std::move(samples);
  }
  field.max_abs_dbar_L = max_dbar;
  field.fd_relative_change = max_dbar > 0.0 ? max_change / max_dbar : 0.0;
  if (field.fd_relative_change > 0.1) {
    throw ResolutionError("extension: grid " + std::to_string(p.grid) +
                          " per unit is too coarse, halving the difference step changes dbar L by " +
                          std::to_string(100.0 * field.fd_relative_change) + "%");
  }
  return field;
}

void write_field_csv(std::ostream& out, std::span<const FieldSample> samples) {
  char line[256];
  out << "re_z,im_z,re_L,im_L,abs_dbar_L,bound_ratio_local\n";
  for (const FieldSample& s : samples) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.z.real(), s.z.imag(), s.L.real(),
                  s.L.imag(), std::abs(s.dbar_L), s.local_ratio);
    out << line;
  }
}

}  // namespace chebpert
