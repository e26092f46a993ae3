#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "chebpert/errors.hpp"
#include "chebpert/orthopoly.hpp"
#include "chebpert/szego.hpp"
#include "oracles.hpp"

using namespace chebpert;

namespace {

const double kPi = std::numbers::pi;

RecurrenceTable classical(int kind, int n_max) {
  return stieltjes_recurrence(WeightSpec::constant(1.0), Kind::from_index(kind), n_max);
}

std::vector<WeightSpec> smooth_weights() {
  return {WeightSpec::exponential(1.0), WeightSpec::reciprocal_polynomial({1.0, 0.3, 0.5}),
          WeightSpec::holder(2.0, 0.5, 0.0, 3)};
}

}  // namespace

TEST_CASE("gauss_cheb_integrate examples") {
  CHECK(gauss_cheb_integrate([](double) { return 1.0; }, 1) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(gauss_cheb_integrate([](double x) { return x * x; }, 4) == doctest::Approx(kPi / 2).epsilon(1e-15));
  const auto t6_sq = [](double x) {
    const double t = std::cos(6 * std::acos(x));
    return t * t;
  };
  CHECK(gauss_cheb_integrate(t6_sq, 8) == doctest::Approx(kPi / 2).epsilon(1e-14));
  CHECK_THROWS_AS((void)gauss_cheb_integrate([](double) { return 1.0; }, 0), InvalidArgument);
  CHECK_THROWS_AS((void)gauss_cheb_integrate([](double x) { return 1.0 / (x - std::cos(kPi / 8)); }, 4),
                  NumericDomainError);
}

TEST_CASE("property: Gauss-Chebyshev exactness degree") {
  for (std::size_t n : {1u, 3u, 8u, 21u}) {
    for (std::size_t k = 0; k <= 2 * n - 1; ++k) {
      const double exact = static_cast<double>(oracle::chebyshev_moment(1, static_cast<int>(k)));
      const double got = gauss_cheb_integrate([&](double x) { return std::pow(x, static_cast<double>(k)); }, n);
      REQUIRE(std::abs(got - exact) < 1e-13);
    }
  }
}

TEST_CASE("classical recurrences match Gram orthogonalization with exact moments") {
  constexpr int kNmax = 12;
  for (int kind = 1; kind <= 4; ++kind) {
    const auto t = classical(kind, 40);
    const auto g = oracle::gram_chebyshev(kind, kNmax);
    for (int n = 0; n <= kNmax; ++n) {
      CAPTURE(kind);
      CAPTURE(n);
      const auto un = static_cast<std::size_t>(n);
      REQUIRE(std::abs(t.b[un] - static_cast<double>(g.b[un])) < 1e-12);
      REQUIRE(std::abs(t.a_sq[un] - static_cast<double>(g.a_sq[un])) < 1e-12);
    }
  }
}

TEST_CASE("classical recurrence values") {
  const auto t1 = classical(1, 100);
  CHECK(t1.a_sq[1] == doctest::Approx(0.5).epsilon(1e-12));
  for (int n = 0; n <= 100; ++n) REQUIRE(std::abs(t1.b[static_cast<std::size_t>(n)]) < 1e-12);
  for (int n = 2; n <= 100; ++n) REQUIRE(std::abs(t1.a_sq[static_cast<std::size_t>(n)] - 0.25) < 1e-12);

  const auto t2 = classical(2, 100);
  for (int n = 1; n <= 100; ++n) {
    REQUIRE(std::abs(t2.a_sq[static_cast<std::size_t>(n)] - 0.25) < 1e-12);
    REQUIRE(std::abs(t2.b[static_cast<std::size_t>(n)]) < 1e-12);
  }

  const auto t3 = classical(3, 100);
  CHECK(t3.b[0] == doctest::Approx(0.5).epsilon(1e-12));
  for (int n = 1; n <= 100; ++n) {
    REQUIRE(std::abs(t3.b[static_cast<std::size_t>(n)]) < 1e-12);
    REQUIRE(std::abs(t3.a_sq[static_cast<std::size_t>(n)] - 0.25) < 1e-12);
  }
  CHECK(t1.n_quad == 1024);
  CHECK(t1.weight_label == WeightSpec::constant(1.0).label());
}

TEST_CASE("stieltjes_recurrence argument checks") {
  const auto w = WeightSpec::constant(1.0);
  CHECK_THROWS_AS((void)stieltjes_recurrence(w, Kind::from_index(1), 0), InvalidArgument);
  CHECK_THROWS_AS((void)stieltjes_recurrence(w, Kind::from_index(1), 200, 1024), InvalidArgument);
  CHECK_NOTHROW((void)stieltjes_recurrence(w, Kind::from_index(1), 128, 1024));
  CHECK(default_quadrature_size(10) == 1024);
  CHECK(default_quadrature_size(129) == 2048);
  CHECK(default_quadrature_size(512) == 4096);
}

TEST_CASE("a measure far from Chebyshev reports precision loss") {
  const auto narrow = WeightSpec::from_function([](double x) { return std::exp(-50.0 * x * x); }, 3, "narrow");
  CHECK_THROWS_AS((void)stieltjes_recurrence(narrow, Kind::from_index(1), 200), PrecisionLossError);
}

TEST_CASE("eval_scaled_monic examples") {
  const auto t1 = classical(1, 10);
  const auto t2 = classical(2, 10);
  CHECK(eval_scaled_monic(t1, 0, 0.3) == 1.0);
  CHECK(eval_scaled_monic(t1, 3, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(eval_scaled_monic(t2, 2, 1.0) == doctest::Approx(3.0).epsilon(1e-12));
  // 2 T_n on the interval.
  for (double x : {-0.9, -0.2, 0.4, 1.0}) {
    CHECK(eval_scaled_monic(t1, 7, x) == doctest::Approx(2.0 * std::cos(7 * std::acos(x))).epsilon(1e-11));
  }
  CHECK_THROWS_AS((void)eval_scaled_monic(t1, 11, 0.0), InvalidArgument);
  CHECK_THROWS_AS((void)eval_scaled_monic(t1, -1, 0.0), InvalidArgument);
}

TEST_CASE("eval_exterior_ratio examples") {
  const auto t1 = classical(1, 60);
  const auto t2 = classical(2, 60);
  CHECK(std::abs(eval_exterior_ratio(t1, 0, 2.0) - 1.0) == 0.0);
  const double p = 2.0 + std::sqrt(3.0);
  CHECK(std::abs(eval_exterior_ratio(t1, 10, 2.0) - (1.0 + std::pow(p, -20))) < 1e-12);
  CHECK(std::abs(eval_exterior_ratio(t2, 60, 2.0) - p * p / (p * p - 1.0)) < 1e-12);
  CHECK(std::abs(p * p / (p * p - 1.0) - 1.0774) < 1e-4);
  CHECK_THROWS_AS((void)eval_exterior_ratio(t1, 61, 2.0), InvalidArgument);
  CHECK_THROWS_AS((void)eval_exterior_ratio(t1, 3, 0.5), InvalidArgument);
}

TEST_CASE("property: exterior ratio is bounded in n") {
  const auto t = stieltjes_recurrence(WeightSpec::exponential(1.0), Kind::from_index(3), 300);
  for (const Complex z : {Complex(1.1, 0.0), Complex(0.0, 0.2), Complex(-3.0, 1.0)}) {
    double top = 0.0;
    for (int n = 0; n <= 300; ++n) top = std::max(top, std::abs(eval_exterior_ratio(t, n, z)));
    CHECK(top < 100.0);
    CHECK(std::isfinite(top));
  }
}

TEST_CASE("second_kind_R examples") {
  const auto w = WeightSpec::constant(1.0);
  const Kind k1 = Kind::from_index(1);
  const auto t = classical(1, 20);
  CHECK(std::abs(second_kind_R(w, k1, t, 0, 2.0) - 1.0 / (2.0 * std::sqrt(3.0))) < 1e-14);
  CHECK(std::abs(1.0 / (2.0 * std::sqrt(3.0)) - 0.2886751) < 1e-7);

  const Complex r1 = second_kind_R(w, k1, t, 1, 2.0);
  CHECK(std::abs(r1 - oracle::second_kind_chebyshev_t(1, 2.0)) < 1e-13);
  CHECK(std::abs(r1) < std::abs(second_kind_R(w, k1, t, 0, 2.0)) / phi_abs(2.0) * 2.0);

  const double ratio = std::abs(second_kind_R(w, k1, t, 10, 4.0)) / std::abs(second_kind_R(w, k1, t, 10, 2.0));
  const double predicted = std::pow(phi_abs(2.0) / phi_abs(4.0), 11);
  CHECK(std::abs(ratio / predicted - 1.0) < 0.2);

  for (int n : {2, 5, 10, 20}) {
    for (const Complex z : {Complex(2.0), Complex(0.3, 0.5), Complex(-1.5, -0.2)}) {
      REQUIRE(std::abs(second_kind_R(w, k1, t, n, z) - oracle::second_kind_chebyshev_t(n, z)) <
              1e-12 * std::pow(2.0, -n));
    }
  }

  CHECK_THROWS_AS((void)second_kind_R(w, k1, t, 1, Complex(0.2, 0.05)), AccuracyDomainError);
  CHECK_THROWS_AS((void)second_kind_R(w, k1, t, 1, Complex(1.05, 0.0)), AccuracyDomainError);
  CHECK_NOTHROW((void)second_kind_R(w, k1, t, 1, Complex(1.1, 0.0)));
  CHECK_THROWS_AS((void)second_kind_R(w, k1, t, 21, 2.0), InvalidArgument);
}

TEST_CASE("property: orthogonality certificate against T_l") {
  for (const auto& w : smooth_weights()) {
    for (int kind = 1; kind <= 4; ++kind) {
      const Kind k = Kind::from_index(kind);
      const auto t = stieltjes_recurrence(w, k, 40);
      const double h0 = t.h(0);
      for (int n : {1, 5, 17, 40}) {
        for (int l = 0; l < n; ++l) {
          const double ip = gauss_cheb_integrate(
              [&](double x) {
                return std::ldexp(eval_scaled_monic(t, n, x), -n) * std::cos(l * std::acos(x)) * w.rho(x) * k.v_abs(x);
              },
              1024);
          CAPTURE(w.label());
          CAPTURE(kind);
          CAPTURE(n);
          CAPTURE(l);
          REQUIRE(std::abs(ip) <= 1e-10 * h0);
        }
      }
    }
  }
}

TEST_CASE("property: quadrature size saturates") {
  for (const auto& w : smooth_weights()) {
    for (int kind = 1; kind <= 4; ++kind) {
      const auto a = stieltjes_recurrence(w, Kind::from_index(kind), 256);
      const auto b = stieltjes_recurrence(w, Kind::from_index(kind), 256, 2 * a.n_quad);
      for (std::size_t n = 0; n <= 256; ++n) {
        REQUIRE(std::abs(a.a_sq[n] - b.a_sq[n]) < 1e-11);
        REQUIRE(std::abs(a.b[n] - b.b[n]) < 1e-11);
      }
    }
  }
}

TEST_CASE("property: table invariants") {
  const auto even = WeightSpec::reciprocal_polynomial({1.0, 0.0, 0.5});
  for (int kind = 1; kind <= 4; ++kind) {
    const auto t = stieltjes_recurrence(even, Kind::from_index(kind), 200);
    for (int n = 1; n <= 200; ++n) {
      const auto un = static_cast<std::size_t>(n);
      REQUIRE(t.a_sq[un] > 0.0);
      REQUIRE(std::abs(t.norm_scaled[un] / (4.0 * t.a_sq[un] * t.norm_scaled[un - 1]) - 1.0) < 1e-10);
      if (n <= 100) REQUIRE(std::abs(t.h(n) / (t.a_sq[un] * t.h(n - 1)) - 1.0) < 1e-10);
      if (kind <= 2) REQUIRE(std::abs(t.b[un]) <= 1e-12);
    }
  }
}

TEST_CASE("property: recurrence tails approach the free values") {
  for (const auto& w : smooth_weights()) {
    for (int kind = 1; kind <= 4; ++kind) {
      const auto t = stieltjes_recurrence(w, Kind::from_index(kind), 256);
      std::vector<double> tail_a(257);
      std::vector<double> tail_b(257);
      double run_a = 0.0;
      double run_b = 0.0;
      for (int n = 256; n >= 1; --n) {
        const auto un = static_cast<std::size_t>(n);
        run_a = std::max(run_a, std::abs(t.a_sq[un] - 0.25));
        run_b = std::max(run_b, std::abs(t.b[un]));
        tail_a[un] = run_a;
        tail_b[un] = run_b;
      }
      for (std::size_t n = 2; n <= 256; ++n) {
        REQUIRE(tail_a[n] <= tail_a[n - 1]);
        REQUIRE(tail_b[n] <= tail_b[n - 1]);
      }
      CHECK(tail_a[128] < 1e-3 * std::max(tail_a[1], 1e-300) + 1e-12);
      CHECK(tail_b[128] < 1e-3 * std::max(tail_b[1], 1e-300) + 1e-12);
    }
  }
}

TEST_CASE("property: pi_n has degree n") {
  const auto t = stieltjes_recurrence(WeightSpec::exponential(0.7), Kind::from_index(4), 16);
  for (int n = 0; n <= 12; ++n) {
    double diff = 0.0;
    double scale = 0.0;
    double binom = 1.0;
    for (int k = 0; k <= n + 1; ++k) {
      const double term = binom * eval_scaled_monic(t, n, static_cast<double>(k));
      diff += (k % 2 == 0 ? 1.0 : -1.0) * term;
      scale += std::abs(term);
      binom = binom * (n + 1 - k) / (k + 1);
    }
    CAPTURE(n);
    REQUIRE(std::abs(diff) <= 1e-8 * scale);
  }
}
