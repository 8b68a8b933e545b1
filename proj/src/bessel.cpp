#include "weber_orr/bessel.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/sin_pi.hpp>
#include <boost/math/special_functions/cos_pi.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <limits>
#include <sstream>

#include "weber_orr/error.hpp"

namespace weber_orr {

namespace {

using boost::math::constants::pi;
namespace bmp = boost::math::policies;

// Overflow of Y near the origin is reported as an infinity instead of throwing;
// the kernel code recomputes those points in extended precision.
using NoThrowPolicy = bmp::policy<bmp::overflow_error<bmp::ignore_error>,
                                  bmp::promote_double<false>>;

template <class Real>
struct Pair {
  Real j;
  Real y;
};

template <class Real>
Pair<Real> raw_pair(double nu, Real x) {
  const Real order = std::fabs(nu);
  Real j = boost::math::cyl_bessel_j(order, x, NoThrowPolicy());
  Real y = boost::math::cyl_neumann(order, x, NoThrowPolicy());
  if (!std::isfinite(y)) y = -std::numeric_limits<Real>::infinity();
  if (nu >= 0) return {j, y};

  // J_{-v} = cos(v pi) J_v - sin(v pi) Y_v,  Y_{-v} = sin(v pi) J_v + cos(v pi) Y_v.
  // Terms with an exactly vanishing trig factor are dropped so that integer
  // orders never form 0 * inf.
  const Real s = boost::math::sin_pi(order);
  const Real c = boost::math::cos_pi(order);
  Real jn = 0;
  Real yn = 0;
  if (c != 0) {
    jn += c * j;
    yn += c * y;
  }
  if (s != 0) {
    jn -= s * y;
    yn += s * j;
  }
  return {jn, yn};
}

void check_argument(Order nu, double x) {
  if (!(x > 0) || !std::isfinite(x)) {
    std::ostringstream msg;
    msg << "Bessel argument must be positive and finite (order " << nu.value() << ", x = " << x << ")";
    throw DomainError(msg.str());
  }
}

template <class Real>
Real cross(const Pair<Real>& u, const Pair<Real>& v) {
  return u.j * v.y - u.y * v.j;
}

double phi_extended(double k, double l, double x, double x0) {
  const auto u = raw_pair<long double>(k, x);
  const auto v = raw_pair<long double>(l, x0);
  const long double norm = std::hypot(v.j, v.y);
  const long double out = cross(u, v) / norm;
  return std::isfinite(out) ? static_cast<double>(out) : 0.0;
}

// Limit of the boundary vector as lambda r0 -> 0: (J, Y)/M -> (0, -1) for
// nonnegative order, rotated by the reflection formula for negative order.
BoundaryVector small_argument_limit(double l) {
  if (l >= 0) return {0.0, -1.0};
  return {boost::math::sin_pi(-l), -boost::math::cos_pi(-l)};
}

template <class F>
double find_next_zero(F&& func, double start, double spacing) {
  const double step = spacing / 4;
  // A root this close to the start is the start itself, up to rounding.
  const double same = 1e-6 * spacing;
  double a = start;
  double fa = func(a);
  if (fa == 0.0) {
    a += spacing / 8;
    fa = func(a);
  }
  // Three asymptotic periods = six zero spacings.
  for (int i = 0; i < 24; ++i) {
    const double b = a + step;
    const double fb = func(b);
    if (fb == 0.0) return b;
    if ((fa < 0) != (fb < 0)) {
      boost::uintmax_t iterations = 100;
      auto [lo, hi] = boost::math::tools::toms748_solve(
          func, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(50), iterations);
      if (iterations >= 100) throw ConvergenceError("kernel zero refinement did not converge");
      const double root = 0.5 * (lo + hi);
      if (root > start + same) return root;
    }
    a = b;
    fa = fb;
  }
  std::ostringstream msg;
  msg << "no sign change of the kernel within three asymptotic periods after " << start;
  throw ConvergenceError(msg.str());
}

}  // namespace

Order::Order(double nu) : nu_(nu) {
  if (!std::isfinite(nu) || std::fabs(nu) > kMaxAbs) {
    std::ostringstream msg;
    msg << "Bessel order " << nu << " outside supported range |nu| <= " << kMaxAbs;
    throw DomainError(msg.str());
  }
}

double bessel_j(Order nu, double x) {
  check_argument(nu, x);
  return raw_pair<double>(nu.value(), x).j;
}

double bessel_y(Order nu, double x) {
  check_argument(nu, x);
  return raw_pair<double>(nu.value(), x).y;
}

BesselPair bessel_pair(Order nu, double x) {
  check_argument(nu, x);
  const auto p = raw_pair<double>(nu.value(), x);
  return {p.j, p.y};
}

double bessel_envelope(double x) { return std::sqrt(2.0 / (pi<double>() * x)); }

double asymptotic_j(Order nu, double x) {
  check_argument(nu, x);
  const double v = nu.value();
  const double w = x - v * pi<double>() / 2 - pi<double>() / 4;
  const double q = (4 * v * v - 1) / (8 * x);
  return bessel_envelope(x) * (std::cos(w) - q * std::sin(w));
}

double asymptotic_y(Order nu, double x) {
  check_argument(nu, x);
  const double v = nu.value();
  const double w = x - v * pi<double>() / 2 - pi<double>() / 4;
  const double q = (4 * v * v - 1) / (8 * x);
  return bessel_envelope(x) * (std::sin(w) + q * std::cos(w));
}

BoundaryVector boundary_vector(Order l, double lambda, double r0) {
  if (!(lambda > 0) || !(r0 > 0)) throw DomainError("boundary_vector needs lambda > 0 and r0 > 0");
  const double x0 = lambda * r0;
  if (x0 < kSmallArgumentGuard) return small_argument_limit(l.value());

  const auto v = raw_pair<double>(l.value(), x0);
  if (std::isfinite(v.j) && std::isfinite(v.y)) {
    const double norm = std::hypot(v.j, v.y);
    return {v.j / norm, v.y / norm};
  }
  const auto w = raw_pair<long double>(l.value(), static_cast<long double>(x0));
  const long double norm = std::hypot(w.j, w.y);
  return {static_cast<double>(w.j / norm), static_cast<double>(w.y / norm)};
}

double kernel_phi(const TransformParams& params, KernelPoint point) {
  if (!(point.lambda > 0)) throw DomainError("kernel_phi needs lambda > 0");
  if (!(point.r >= params.r0)) throw DomainError("kernel_phi needs r >= r0");
  return KernelSlice(params, point.lambda)(point.r);
}

KernelSlice::KernelSlice(const TransformParams& params, double lambda)
    : params_(params), lambda_(lambda), vanishes_(lambda * params.r0 < kSmallArgumentGuard) {
  if (!(lambda > 0)) throw DomainError("kernel slice needs lambda > 0");
  if (!vanishes_) {
    const auto v = raw_pair<double>(params.l().value(), lambda * params.r0);
    boundary_ = {v.j, v.y};
    norm_ = std::hypot(v.j, v.y);
  }
}

double KernelSlice::operator()(double r) const {
  if (vanishes_) return 0.0;
  const double x = lambda_ * r;
  const auto u = raw_pair<double>(params_.k.value(), x);
  const Pair<double> v{boundary_.j, boundary_.y};
  // Unnormalized difference first: for l = k at r = r0 both products are
  // bitwise identical and the kernel is exactly zero.
  const double out = cross(u, v) / norm_;
  if (std::isfinite(out) && std::isfinite(norm_)) return out;
  return phi_extended(params_.k.value(), params_.l().value(), x, lambda_ * params_.r0);
}

double kernel_phase_shift(const TransformParams& params) {
  return (params.k.value() - params.l().value()) * pi<double>() / 2;
}

double kernel_zero_after(const TransformParams& params, double r, double lambda_start) {
  const double d = r - params.r0;
  if (!(d > 0)) throw DomainError("kernel zeros in lambda need r > r0");
  if (!(lambda_start > 0)) throw DomainError("kernel_zero_after needs lambda_start > 0");
  return find_next_zero([&](double lambda) { return kernel_phi(params, {lambda, r}); },
                        lambda_start, pi<double>() / d);
}

double kernel_zero_after_radius(const TransformParams& params, double lambda, double s_start) {
  if (!(s_start >= params.r0)) throw DomainError("kernel zeros in r need s_start >= r0");
  const KernelSlice slice(params, lambda);
  return find_next_zero(slice, s_start, pi<double>() / lambda);
}

}  // namespace weber_orr
