#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "weber_orr/bessel.hpp"
#include "weber_orr/error.hpp"

using namespace weber_orr;

TEST_CASE("half-order closed forms") {
  CHECK(std::fabs(bessel_j(Order(0.5), oracle::pi)) < 1e-15);
  CHECK(std::fabs(bessel_y(Order(0.5), oracle::pi / 2)) < 1e-15);
  for (double x : {0.3, 1.0, 7.5, 40.0}) {
    CHECK(bessel_j(Order(0.5), x) == doctest::Approx(std::sqrt(2 / (oracle::pi * x)) * std::sin(x)).epsilon(1e-13));
    CHECK(bessel_y(Order(0.5), x) == doctest::Approx(-std::sqrt(2 / (oracle::pi * x)) * std::cos(x)).epsilon(1e-13));
  }
}

TEST_CASE("agrees with the ascending series") {
  for (double nu : {0.0, 0.5, 1.0, 2.0, 3.7, 10.0})
    for (double x : {0.1, 1.0, 4.0, 9.0}) CHECK(bessel_j(Order(nu), x) == doctest::Approx(oracle::j_series(nu, x)).epsilon(1e-11));
  for (double nu : {0.5, 1.3, 3.7})
    for (double x : {0.2, 1.0, 5.0}) CHECK(bessel_y(Order(nu), x) == doctest::Approx(oracle::y_series(nu, x)).epsilon(1e-10));
  for (double x : {0.1, 1.0, 3.0, 8.0}) CHECK(bessel_y(Order(0), x) == doctest::Approx(oracle::y0_series(x)).epsilon(1e-12));
}

TEST_CASE("first zero of J0 from bisection on the series") {
  const double x0 = oracle::bisect([](double x) { return oracle::j_series(0, x); }, 2.0, 3.0);
  CHECK(std::fabs(bessel_j(Order(0), x0)) < 1e-12);
}

TEST_CASE("Wronskian closure and recurrences") {
  for (double nu : {0.0, 0.5, 1.0, 2.0, 3.7})
    for (double x : oracle::logspace(0.1, 1000, 50)) {
      const double w = bessel_j(Order(nu + 1), x) * bessel_y(Order(nu), x) - bessel_j(Order(nu), x) * bessel_y(Order(nu + 1), x);
      CHECK(std::fabs(w - 2 / (oracle::pi * x)) <= 1e-12 * (1 + 1 / x));
      if (nu >= 1) {
        const double jm = bessel_j(Order(nu - 1), x), jp = bessel_j(Order(nu + 1), x);
        CHECK(std::fabs(jm + jp - 2 * nu / x * bessel_j(Order(nu), x)) <= 1e-11 * std::max(std::fabs(jm), std::fabs(jp)));
      }
    }
  CHECK(bessel_j(Order(2), 2) * bessel_y(Order(1), 2) - bessel_j(Order(1), 2) * bessel_y(Order(2), 2) ==
        doctest::Approx(1 / oracle::pi).epsilon(1e-13));
}

TEST_CASE("large-argument forms") {
  CHECK(std::fabs(bessel_j(Order(2), 100) - asymptotic_j(Order(2), 100)) < 5e-5);
  CHECK(std::fabs(bessel_y(Order(3), 200) - asymptotic_y(Order(3), 200)) < 5e-5);
  CHECK(asymptotic_j(Order(2), 100) == doctest::Approx(oracle::hankel_j(2, 100, oracle::standard_coeff(2))).epsilon(1e-14));
}

TEST_CASE("first correction coefficient: standard form fits, the squared variant does not") {
  // At moderate x the standard correction leaves an O(x^-2) remainder; the variant is worse.
  for (double nu : {1.0, 2.0, 3.0}) {
    const double x = 30.0;
    const double truth = oracle::j_series(nu, x);
    const double std_err = std::fabs(oracle::hankel_j(nu, x, oracle::standard_coeff(nu)) - truth);
    const double var_err = std::fabs(oracle::hankel_j(nu, x, oracle::variant_coeff(nu)) - truth);
    CHECK(std_err < 1e-3);
    CHECK(var_err > 10 * std_err);
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(bessel_j(Order(0), 0.0), DomainError);
  CHECK_THROWS_AS(bessel_y(Order(1), -1.0), DomainError);
  CHECK_THROWS_AS(Order(51), DomainError);
  CHECK_THROWS_AS(Order(NAN), DomainError);
}

TEST_CASE("boundary vector") {
  for (double l : {-2.5, -1.0, 0.0, 0.5, 1.0, 3.0})
    for (double lam : oracle::logspace(1e-12, 1e4, 25)) {
      const BoundaryVector b = boundary_vector(Order(l), lam, 1.0);
      CHECK(std::fabs(b.cj * b.cj + b.cy * b.cy - 1) <= 1e-12);
      CHECK(std::fabs(b.cj) <= 1.0);
      CHECK(std::fabs(b.cy) <= 1.0);
    }
  const BoundaryVector tiny = boundary_vector(Order(1), 1e-14, 1.0);
  CHECK(tiny.cj == doctest::Approx(0.0));
  CHECK(tiny.cy == doctest::Approx(-1.0));
  const double j0 = oracle::j_series(0, 1), y0 = oracle::y0_series(1);
  const BoundaryVector one = boundary_vector(Order(0), 1.0, 1.0);
  CHECK(one.cj == doctest::Approx(j0 / std::hypot(j0, y0)).epsilon(1e-12));
  CHECK(one.cy == doctest::Approx(y0 / std::hypot(j0, y0)).epsilon(1e-12));
}

TEST_CASE("kernel values") {
  for (double k : {-2.5, 0.0, 0.5, 1.0, 3.0})
    for (double lam : {1e-3, 0.5, 7.0, 300.0}) CHECK(kernel_phi(TransformParams(k, Offset::zero, 1.0), {lam, 1.0}) == 0.0);

  const double j01 = oracle::j_series(0, 1), j02 = oracle::j_series(0, 2);
  const double y01 = oracle::y0_series(1), y02 = oracle::y0_series(2);
  const double expect = (j02 * y01 - y02 * j01) / std::hypot(j01, y01);
  CHECK(kernel_phi(TransformParams(0, Offset::zero, 1.0), {1.0, 2.0}) == doctest::Approx(expect).epsilon(1e-12));

  const TransformParams p(1.5, Offset::minus_one, 1.0);
  const double lam = 40.0, r = 3.0;
  double peak = 0;
  for (double s = r; s < r + 2 * oracle::pi / lam; s += 1e-3 / lam) peak = std::max(peak, std::fabs(kernel_phi(p, {lam, s})));
  CHECK(peak == doctest::Approx(std::sqrt(2 / (oracle::pi * lam * r))).epsilon(0.1));

  CHECK_THROWS_AS(kernel_phi(p, {0.0, 2.0}), DomainError);
  CHECK_THROWS_AS(kernel_phi(p, {1.0, 0.5}), DomainError);
}

TEST_CASE("Robin condition of the minus_one kernel") {
  for (double k : {0.5, 1.0, 2.0, 3.5})
    for (double lam : {0.3, 2.0, 15.0}) {
      const TransformParams p(k, Offset::minus_one, 1.0);
      const double h = 1e-6;
      // one-sided derivative at r0 from a second-order forward stencil
      const double f0 = kernel_phi(p, {lam, 1.0}), f1 = kernel_phi(p, {lam, 1 + h}), f2 = kernel_phi(p, {lam, 1 + 2 * h});
      const double d = (-3 * f0 + 4 * f1 - f2) / (2 * h);
      const BoundaryVector b = boundary_vector(p.l(), lam, 1.0);
      CHECK(std::fabs(d + k * f0) <= 1e-6 * lam * (std::fabs(b.cj) + std::fabs(b.cy)) + 1e-8);
    }
}

TEST_CASE("kernel zeros") {
  const TransformParams p(0, Offset::zero, 1.0);
  const double r = 2.0;
  double z = kernel_zero_after(p, r, 30.0);
  CHECK(kernel_phi(p, {z - 1e-3, r}) * kernel_phi(p, {z + 1e-3, r}) < 0);
  for (int i = 0; i < 5; ++i) {
    const double next = kernel_zero_after(p, r, z);
    CHECK(next - z == doctest::Approx(oracle::pi / (r - 1)).epsilon(0.05));
    CHECK(std::fabs(kernel_phi(p, {next, r})) <= 1e-9 * bessel_envelope(next * r));
    z = next;
  }
  const TransformParams q(2, Offset::minus_one, 1.0);
  double s = kernel_zero_after_radius(q, 5.0, 4.0);
  const double s2 = kernel_zero_after_radius(q, 5.0, s);
  CHECK(s2 - s == doctest::Approx(oracle::pi / 5.0).epsilon(0.05));
  CHECK(std::fabs(kernel_phi(q, {5.0, s2})) <= 1e-9);
}
