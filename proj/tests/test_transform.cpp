#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "weber_orr/error.hpp"
#include "weber_orr/transform.hpp"

using namespace weber_orr;

namespace {

// Phi_{0,0}(lambda, s) with r0 = 1, from the series oracles.
double phi00(double lambda, double s) {
  const double j1 = oracle::j_series(0, lambda), y1 = oracle::y0_series(lambda);
  return (oracle::j_series(0, lambda * s) * y1 - oracle::y0_series(lambda * s) * j1) / std::hypot(j1, y1);
}

double simpson_c(double k, double a, double b) {
  return oracle::simpson([&](double s) { return std::pow(s, 1 - k) * oracle::bump(a, b, s); }, a, b);
}

}  // namespace

TEST_CASE("forward transform of the zero function") {
  for (double lam : {0.1, 1.0, 30.0}) CHECK(forward_at(make_zero(), TransformParams(1.5, Offset::minus_one, 1.0), lam, {}) == 0.0);
}

TEST_CASE("forward transform of the bump against Simpson") {
  for (double lam : {0.5, 1.0, 4.0}) {
    const double expect = oracle::simpson([&](double s) { return phi00(lam, s) * oracle::bump(2, 3, s) * s; }, 2, 3);
    CHECK(forward_at(make_bump(2, 3), TransformParams(0, Offset::zero, 1.0), lam, {}) == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("kernel element is annihilated") {
  const RadialFunction f = make_power(-2);
  const double norm = std::sqrt(0.5);
  for (double lam : {0.5, 1.0, 2.0}) CHECK(std::fabs(forward_at(f, TransformParams(2, Offset::minus_one, 1.0), lam, {})) <= 1e-8 * norm);
}

TEST_CASE("power functions outside L2 are refused") {
  Support s;
  s.decay = DecayKind::algebraic;
  s.power = -0.8;
  const RadialFunction slow("r^-0.8", [](double r) { return std::pow(r, -0.8); }, {}, s, false);
  CHECK_THROWS_AS(forward_at(slow, TransformParams(0, Offset::zero, 1.0), 1.0, {}), DomainError);
}

TEST_CASE("kernel projection") {
  const TransformParams p(2, Offset::minus_one, 1.0);
  const KernelProjection z = kernel_coefficient(make_zero(), p, {});
  CHECK(z.coefficient == 0.0);
  const KernelProjection q = kernel_coefficient(make_power(-2), p, {});
  CHECK(q.present);
  CHECK(q.coefficient == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(q.weight == doctest::Approx(2.0));
  CHECK(kernel_coefficient(make_bump(2, 3), p, {}).coefficient == doctest::Approx(simpson_c(2, 2, 3)).epsilon(1e-10));
  const KernelProjection none = kernel_coefficient(make_bump(2, 3), TransformParams(0.5, Offset::minus_one, 1.0), {});
  CHECK_FALSE(none.present);
  CHECK(none.weight == 0.0);
  CHECK(kernel_present(TransformParams(-2, Offset::plus_one, 1.0)));
  CHECK_FALSE(kernel_present(TransformParams(-2, Offset::minus_one, 1.0)));
  CHECK_FALSE(kernel_present(TransformParams(1.0, Offset::minus_one, 1.0)));
}

TEST_CASE("projector identity for the kernel elements") {
  const std::vector<double> r = {1.0, 1.5, 2.5, 4.0};
  SUBCASE("r^-2 with offset minus_one") {
    const Reconstruction rec = reconstruct(make_power(-2), TransformParams(2, Offset::minus_one, 1.0), r, {});
    for (std::size_t i = 0; i < r.size(); ++i) {
      CHECK(std::fabs(rec.uncorrected[i]) < 1e-6);
      CHECK(rec.values[i] == doctest::Approx(std::pow(r[i], -2)).epsilon(1e-6));
    }
  }
  SUBCASE("mirror: r^-2 for k = -2 with offset plus_one") {
    const Reconstruction rec = reconstruct(make_power(-2), TransformParams(-2, Offset::plus_one, 1.0), r, {});
    CHECK(rec.projection.coefficient == doctest::Approx(0.5).epsilon(1e-10));
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(rec.values[i] == doctest::Approx(std::pow(r[i], -2)).epsilon(1e-6));
  }
  SUBCASE("mirror: r^-3 for k = -3 with offset plus_one, r0 = 2") {
    const std::vector<double> r2 = {2.0, 3.0, 5.0};
    const Reconstruction rec = reconstruct(make_power(-3), TransformParams(-3, Offset::plus_one, 2.0), r2, {});
    for (std::size_t i = 0; i < r2.size(); ++i) CHECK(rec.values[i] == doctest::Approx(std::pow(r2[i], -3)).epsilon(1e-6));
  }
}

TEST_CASE("inversion of the bump") {
  const TransformParams p(0, Offset::zero, 1.0);
  const SpectralFunction g = forward_spectral(make_bump(2, 3), p, {});
  CHECK(inverse_at(g, p, 2.5, {}) == doctest::Approx(0.0625).epsilon(1e-3));
  CHECK(inverse_at(g, p, 1.0, {}) == 0.0);
}

TEST_CASE("inverse of zero samples") {
  const TransformParams p(1, Offset::minus_one, 1.0);
  const SpectralFunction g = spectral_from_samples(p, {1, 2, 3, 4, 5}, {0, 0, 0, 0, 0});
  CHECK(inverse_at(g, p, 1.7, {}) == 0.0);
}

TEST_CASE("inverse of sampled data") {
  const TransformParams p(0, Offset::zero, 1.0);
  const RadialFunction f = make_exp_decay(1, 2);
  std::vector<double> lam = oracle::linspace(0.01, 60, 3000), val;
  for (double l : lam) val.push_back(forward_at(f, p, l, {}));
  const SpectralFunction g = spectral_from_samples(p, lam, val);
  for (double r : {1.5, 2.0, 3.0}) CHECK(inverse_at(g, p, r, {}) == doctest::Approx(f(r)).epsilon(2e-2));
}

TEST_CASE("roundtrip with and without correction") {
  const TransformParams p(2, Offset::minus_one, 1.0);
  const std::vector<double> r = oracle::linspace(1, 5, 201);
  const RadialFunction f = make_bump(2, 3);
  const Reconstruction rec = reconstruct(f, p, r, {});
  std::vector<double> fv, kernel_part;
  for (double x : r) {
    fv.push_back(f(x));
    kernel_part.push_back(std::pow(x, -2.0));
  }
  CHECK(oracle::rel_l2(r, rec.values, fv) <= 1e-3);
  const double c = simpson_c(2, 2, 3);
  std::vector<double> residual(r.size()), expected(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    residual[i] = fv[i] - rec.uncorrected[i];
    expected[i] = 2 * c * kernel_part[i];
  }
  CHECK(oracle::rel_l2(r, residual, expected) <= 0.05);
}

TEST_CASE("Plancherel balances") {
  SUBCASE("zero function") {
    const PlancherelReport rep = plancherel_report(make_zero(), TransformParams(0, Offset::zero, 1.0), {});
    CHECK(rep.norm_f_sq == 0.0);
    CHECK(rep.norm_transform_sq == 0.0);
    CHECK(rep.kernel_term == 0.0);
    CHECK(rep.residual == 0.0);
    CHECK(bessel_inequality_check(rep).passed);
  }
  SUBCASE("bump, Dirichlet") {
    const PlancherelReport rep = plancherel_report(make_bump(2, 3), TransformParams(0, Offset::zero, 1.0), {});
    CHECK(std::fabs(rep.residual) <= 1e-3 * rep.norm_f_sq);
  }
  SUBCASE("bump with a kernel term") {
    const PlancherelReport rep = plancherel_report(make_bump(2, 3), TransformParams(2, Offset::minus_one, 1.0), {});
    const double c = simpson_c(2, 2, 3);
    CHECK(rep.kernel_term == doctest::Approx(2 * c * c).epsilon(1e-6));
    CHECK(std::fabs(rep.residual) <= 1e-3 * rep.norm_f_sq);
    const BesselInequality b = bessel_inequality_check(rep);
    CHECK(b.passed);
    CHECK(b.margin == doctest::Approx(rep.kernel_term).epsilon(1e-3));
  }
  SUBCASE("annihilated input has no transform mass") {
    const BesselInequality b = bessel_inequality_check(make_power(-2), TransformParams(2, Offset::minus_one, 1.0), {});
    CHECK(b.passed);
    CHECK(b.norm_transform_sq < 1e-12);
    CHECK(b.norm_f_sq == doctest::Approx(0.5));
  }
}

TEST_CASE("linearity on a spectral grid") {
  const TransformParams p(1, Offset::minus_one, 1.0);
  const RadialFunction f = make_bump(2, 3), g = make_exp_decay(1, 0);
  const double a = 1.7, b = -0.6;
  const RadialFunction h = linear_combination(a, f, b, g);
  const SpectralFunction wf = forward_spectral(f, p, {});
  double diff = 0, nf = 0, ng = 0;
  for (std::size_t i = 0; i < wf.nodes.size(); i += 7) {
    const double lam = wf.nodes[i];
    const double gf = forward_at(f, p, lam, {}), gg = forward_at(g, p, lam, {});
    diff += std::pow(forward_at(h, p, lam, {}) - a * gf - b * gg, 2) * lam;
    nf += gf * gf * lam;
    ng += gg * gg * lam;
  }
  CHECK(std::sqrt(diff) <= 1e-8 * (std::fabs(a) * std::sqrt(nf) + std::fabs(b) * std::sqrt(ng)));
}

TEST_CASE("decay report") {
  SpectralFunction exact{TransformParams(0, Offset::zero, 1.0)};
  exact.nodes = oracle::logspace(10, 500, 200);
  for (double l : exact.nodes) exact.values.push_back(3 / std::sqrt(l));
  const DecayReport d = decay_report(exact);
  CHECK(d.slope == doctest::Approx(-0.5).epsilon(1e-6));
  CHECK(d.sup_scaled == doctest::Approx(3.0));

  SpectralFunction zero = exact;
  std::fill(zero.values.begin(), zero.values.end(), 0.0);
  CHECK(decay_report(zero).sup_scaled == 0.0);

  const SpectralFunction g = forward_grid(make_bump(2, 3), TransformParams(0, Offset::zero, 1.0), oracle::logspace(10, 200, 200), {});
  const DecayReport b = decay_report(g);
  CHECK(std::isfinite(b.sup_scaled));
  for (std::size_t i = 1; i < b.octave_sup_scaled.size(); ++i) CHECK(b.octave_sup_scaled[i] <= 1.1 * b.octave_sup_scaled[i - 1]);
}
