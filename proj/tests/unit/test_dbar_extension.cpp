#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "chebpert/dbar_extension.hpp"
#include "chebpert/errors.hpp"
#include "chebpert/szego.hpp"

using namespace chebpert;

namespace {

std::vector<double> uniform(std::size_t count) {
  std::vector<double> x(count);
  for (std::size_t i = 0; i < count; ++i) x[i] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(count - 1);
  x.back() = 1.0;
  return x;
}

double sup_error(const WeightSpec& w, const ChebSeries& l) {
  double err = 0.0;
  for (double x : uniform(20001)) err = std::max(err, std::abs(l(x) - w.inv_rho(x)));
  return err;
}

double sup_lambda(const WeightSpec& w, const ChebSeries& l) {
  double top = 0.0;
  for (double x : uniform(20001)) top = std::max(top, std::abs(lambda_n(w, l, x)));
  return top;
}

Complex on_ellipse(double rho, double angle) {
  const Complex tau = std::polar(rho, angle);
  return 0.5 * (tau + 1.0 / tau);
}

const WeightSpec& holder() {
  static const WeightSpec w = WeightSpec::holder(2.0, 0.5, 0.0, 3);
  return w;
}

}  // namespace

TEST_CASE("ExtensionParams validation") {
  ExtensionParams p;
  CHECK_NOTHROW(p.validate(3));
  p.n = 6;
  CHECK_THROWS_AS(p.validate(3), InvalidArgument);
  p.n = 7;
  CHECK_NOTHROW(p.validate(3));
  p.r = 1.0;
  CHECK_THROWS_AS(p.validate(3), InvalidArgument);
  p.r = 2.5;
  CHECK_THROWS_AS(p.validate(3), InvalidArgument);
  p.r = 1.5;
  p.grid = 63;
  CHECK_THROWS_AS(p.validate(3), InvalidArgument);
  CHECK_THROWS_AS((void)L_field(WeightSpec::exponential(1.0), p), InvalidArgument);
}

TEST_CASE("build_l_n reproduces polynomial reciprocals") {
  const auto w = WeightSpec::reciprocal_polynomial({1.0, 0.0, 0.5});
  for (int n : {7, 16, 40}) {
    const ChebSeries l = build_l_n(w, n);
    CHECK(l.degree() <= static_cast<std::size_t>(n));
    // 1 + x^2/2 = 5/4 T_0 + 1/4 T_2.
    CHECK(l.coeffs()[0] == doctest::Approx(1.25).epsilon(1e-14));
    CHECK(l.coeffs()[2] == doctest::Approx(0.25).epsilon(1e-14));
    for (std::size_t k = 0; k < l.coeffs().size(); ++k) {
      if (k != 0 && k != 2) REQUIRE(std::abs(l.coeffs()[k]) <= 1e-14);
    }
    CHECK(sup_error(w, l) < 1e-14);
  }
  const ChebSeries one = build_l_n(WeightSpec::constant(1.0), 12);
  for (double x : uniform(101)) REQUIRE(std::abs(one(x) - 1.0) < 1e-15);
}

TEST_CASE("build_l_n approximates smooth reciprocals") {
  const auto e = WeightSpec::exponential(1.0);
  const ChebSeries l = build_l_n(e, 32);
  CHECK(l.degree() <= 32);
  CHECK(sup_error(e, l) <= 1e-10);
  double top = 0.0;
  for (double x : uniform(2001)) top = std::max(top, std::abs(l(x)));
  CHECK(top <= 2.0 * std::exp(1.0));
}

TEST_CASE("property: l_n error shrinks and stays bounded for a finitely smooth weight") {
  const auto& w = holder();
  double max_inv = 0.0;
  for (double x : uniform(2001)) max_inv = std::max(max_inv, w.inv_rho(x));
  double previous = 1.0;
  for (int n : {16, 32, 64, 128}) {
    const ChebSeries l = build_l_n(w, n);
    CHECK(l.degree() <= static_cast<std::size_t>(n));
    const double err = sup_error(w, l);
    CHECK(err < previous);
    previous = err;
    double top = 0.0;
    for (double x : uniform(2001)) top = std::max(top, std::abs(l(x)));
    CHECK(top <= 2.0 * max_inv);
  }
}

TEST_CASE("property: l_n matches 1/rho to order m at the endpoints") {
  const auto& w = holder();
  const ChebSeries l = build_l_n(w, 64);
  const int m = w.m();
  for (double x0 : {1.0, -1.0}) {
    for (double d : {1e-2, 1e-3}) {
      const double x = x0 > 0 ? 1.0 - d : -1.0 + d;
      // The defect vanishes to order m at both endpoints.
      CAPTURE(x);
      CHECK(std::abs(l(x) - w.inv_rho(x)) <= 1e-2 * std::pow(d, m) + 1e-14);
    }
  }
}

TEST_CASE("lambda_n examples") {
  const auto exact = WeightSpec::reciprocal_polynomial({1.0, 0.0, 0.5});
  const ChebSeries le = build_l_n(exact, 10);
  for (double x : uniform(401)) REQUIRE(lambda_n(exact, le, x) == 0.0);

  const auto e = WeightSpec::exponential(1.0);
  const ChebSeries l = build_l_n(e, 32);
  CHECK(lambda_n(e, l, 1.0) == 0.0);
  CHECK(lambda_n(e, l, -1.0) == 0.0);
  CHECK(lambda_n(e, l, 1.0 - 1e-9) == 0.0);
  CHECK(lambda_n(e, l, 1.5) == 0.0);
  CHECK(lambda_n(e, l, -3.0) == 0.0);
  CHECK(std::abs(lambda_n(e, l, 0.0) - (1.0 - l(0.0))) <= 1e-13);

  const auto& w = holder();
  const ChebSeries lh = build_l_n(w, 32);
  for (double x : {-0.7, -0.05, 0.0, 0.2, 0.9}) {
    const double direct = (w.inv_rho(x) - lh(x)) / std::sqrt((1.0 - x) * (1.0 + x));
    CAPTURE(x);
    CHECK(std::abs(lambda_n(w, lh, x) - direct) <= 1e-12 + 1e-8 * std::abs(direct));
  }
  CHECK(sup_lambda(w, lh) > 0.0);
}

TEST_CASE("Lambda_n examples") {
  const auto exact = WeightSpec::reciprocal_polynomial({1.0, 0.0, 0.5});
  const ChebSeries le = build_l_n(exact, 10);
  for (const Complex z : {Complex(0.3, 0.2), Complex(-0.9, -0.5), Complex(2.0, 1.0)}) {
    CHECK(Lambda_n(exact, le, z) == 0.0);
  }

  const auto& w = holder();
  const ChebSeries l = build_l_n(w, 32);
  for (double x : {-0.6, 0.0, 0.01, 0.77}) CHECK(Lambda_n(w, l, Complex(x, 0.0)) == lambda_n(w, l, x));

  const auto e = WeightSpec::exponential(1.0);
  const ChebSeries le32 = build_l_n(e, 32);
  CHECK(std::abs(Lambda_n(e, le32, Complex(0.3, 0.2))) <= sup_lambda(e, le32));

  // Direct average by the midpoint rule.
  const Complex z(0.1, -0.3);
  constexpr int kPanels = 200000;
  double sum = 0.0;
  for (int k = 0; k < kPanels; ++k) sum += lambda_n(w, l, z.real() + (k + 0.5) * 0.3 / kPanels);
  CHECK(Lambda_n(w, l, z) == doctest::Approx(sum / kPanels).epsilon(1e-6));
  CHECK(Lambda_n(w, l, z) == Lambda_n(w, l, std::conj(z)));
}

TEST_CASE("property: |Lambda_n| is bounded by sup |lambda_n|") {
  const auto& w = holder();
  const ChebSeries l = build_l_n(w, 32);
  const double bound = sup_lambda(w, l);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> re(-1.3, 1.3);
  std::uniform_real_distribution<double> im(-0.6, 0.6);
  for (int k = 0; k < 300; ++k) {
    const Complex z(re(rng), im(rng));
    REQUIRE(std::abs(Lambda_n(w, l, z)) <= bound * (1.0 + 1e-9));
  }
}

TEST_CASE("bump_psi examples") {
  const double r = 1.5;
  CHECK(bump_psi(r, 0.5) == 1.0);
  CHECK(bump_psi(r, -1.0) == 1.0);
  CHECK(bump_psi(r, on_ellipse(r * 1.01, 0.7)) == 0.0);
  CHECK(bump_psi(r, on_ellipse(0.5 * (1.0 + r), 1.9)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(bump_psi(r, 10.0) == 0.0);
}

TEST_CASE("property: bump_psi is monotone and continuously differentiable in |phi|") {
  const double r = 1.8;
  double previous = 1.0;
  for (int k = 0; k <= 400; ++k) {
    const double rho = 1.0 + (r - 1.0) * 1.1 * k / 400.0;
    const double v = bump_psi(r, on_ellipse(std::max(rho, 1.0 + 1e-12), 0.4));
    REQUIRE(v >= 0.0);
    REQUIRE(v <= 1.0);
    REQUIRE(v <= previous);
    previous = v;
  }
  const double h = 1e-6;
  for (double rho : {1.0 + 2 * h, r - 2 * h}) {
    const double slope = (bump_psi(r, on_ellipse(rho + h, 0.4)) - bump_psi(r, on_ellipse(rho - h, 0.4))) / (2 * h);
    CHECK(std::abs(slope) < 1e-4);
  }
}

TEST_CASE("L_value is continuous across the cut and vanishes outside E_r") {
  const auto& w = holder();
  const ChebSeries l = build_l_n(w, 32);
  const double r = 1.5;
  for (double x : uniform(41)) {
    if (std::abs(x) >= 1.0) continue;
    const Complex above = L_value(w, l, r, Complex(x, 1e-9));
    const Complex below = L_value(w, l, r, Complex(x, -1e-9));
    CAPTURE(x);
    REQUIRE(std::abs(above - below) <= 1e-6 * (1.0 + std::abs(above)));
    REQUIRE(std::abs(l(x) + L_value(w, l, r, Complex(x, 0.0)) - w.inv_rho(x)) <= 1e-10);
  }
  for (int k = 0; k < 32; ++k) {
    REQUIRE(L_value(w, l, r, on_ellipse(r * 1.001, 0.2 * k)) == Complex(0.0, 0.0));
  }
}

TEST_CASE("L_field for an exactly representable reciprocal") {
  ExtensionParams p;
  p.n = 16;
  p.grid = 64;
  const auto f = L_field(WeightSpec::reciprocal_polynomial({1.0, 0.0, 0.5}), p);
  CHECK(f.bound_ratio == 0.0);
  CHECK(f.max_abs_dbar_L == 0.0);
  CHECK(f.lambda_norm == 0.0);
  CHECK(f.interval_defect < 1e-14);
  for (const auto* half : {&f.upper, &f.lower}) {
    for (const auto& s : *half) REQUIRE(s.L == Complex(0.0, 0.0));
  }
}

TEST_CASE("property: L_field for a finitely smooth weight") {
  const auto& w = holder();
  std::vector<double> scale;
  for (int n : {32, 64}) {
    ExtensionParams p;
    p.n = n;
    p.grid = 64;
    const auto f = L_field(w, p);
    CAPTURE(n);
    CHECK(f.outside_nonzero == 0);
    CHECK(f.upper.size() == f.lower.size());
    CHECK(std::isfinite(f.bound_ratio));
    CHECK(f.bound_ratio > 0.0);
    CHECK(f.fd_relative_change < 0.1);
    CHECK(f.interval_defect <= 1e-10);
    CHECK(f.l_n_error > 0.0);
    CHECK(f.bound_scale == doctest::Approx(n * f.eps_n / std::log(static_cast<double>(n))));
    scale.push_back(f.bound_ratio * f.bound_scale);

    const ChebSeries l = build_l_n(w, n);
    for (const auto* half : {&f.upper, &f.lower}) {
      for (const auto& s : *half) {
        if (phi_abs(s.z) >= p.r) REQUIRE(s.L == Complex(0.0, 0.0));
      }
    }

    std::mt19937_64 rng(static_cast<std::uint64_t>(n));
    std::uniform_int_distribution<std::size_t> pick(0, f.upper.size() - 1);
    const double h = 1.0 / p.grid;
    for (int k = 0; k < 100; ++k) {
      const auto& s = (k % 2 == 0 ? f.upper : f.lower)[pick(rng)];
      REQUIRE(std::abs(Lambda_n(w, l, s.z)) <= f.lambda_norm * (1.0 + 1e-6) + 1e-15);
      const double dx = (Lambda_n(w, l, s.z + 0.25 * h) - Lambda_n(w, l, s.z - 0.25 * h)) / (0.5 * h);
      CAPTURE(s.z);
      REQUIRE(std::abs(dx) <= 1.1 * f.lambda_prime_norm);
    }
  }
  CHECK(scale[1] < scale[0]);
}

TEST_CASE("write_field_csv layout") {
  std::vector<FieldSample> samples(2);
  samples[0].z = Complex(0.5, 0.25);
  samples[0].L = Complex(1.0, -2.0);
  samples[0].dbar_L = Complex(3.0, 4.0);
  samples[0].local_ratio = 0.125;
  std::ostringstream out;
  write_field_csv(out, samples);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "re_z,im_z,re_L,im_L,abs_dbar_L,bound_ratio_local");
  std::getline(in, line);
  CHECK(line == "0.5,0.25,1,-2,5,0.125");
  std::getline(in, line);
  CHECK(line == "0,0,0,0,0,0");
  CHECK_FALSE(std::getline(in, line));
}
