#include "weber_orr/spectral.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/cos_pi.hpp>
#include <boost/math/special_functions/sin_pi.hpp>

#include <cmath>
#include <limits>

#include "weber_orr/bessel.hpp"
#include "weber_orr/error.hpp"

namespace weber_orr {

namespace {

using boost::math::constants::pi;
using boost::math::constants::euler;

// sign * exp(log); sign == 0 is zero. Keeps lambda^{+-50} products representable.
struct LogValue {
  int sign = 0;
  double log = -std::numeric_limits<double>::infinity();

  static LogValue of(double x) {
    if (x == 0.0) return {};
    return {x > 0 ? 1 : -1, std::log(std::fabs(x))};
  }
  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log); }
};

LogValue operator*(LogValue a, LogValue b) {
  if (a.sign == 0 || b.sign == 0) return {};
  return {a.sign * b.sign, a.log + b.log};
}

LogValue operator/(LogValue a, LogValue b) { return a * LogValue{b.sign, -b.log}; }

LogValue operator-(LogValue a) { return {-a.sign, a.log}; }

LogValue operator+(LogValue a, LogValue b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  if (a.log < b.log) std::swap(a, b);
  const double ratio = std::exp(b.log - a.log);
  const double m = (a.sign == b.sign) ? 1.0 + ratio : 1.0 - ratio;
  if (m == 0.0) return {};
  return {a.sign, a.log + std::log(m)};
}

LogValue operator-(LogValue a, LogValue b) { return a + (-b); }

// Leading small-argument forms at fixed lambda, as functions of the radius s:
//   J_nu(lambda s) ~ jp s^kappa + jm s^-kappa + jl ln s,  and likewise for Y,  kappa = |nu|.
struct SmallArgument {
  double kappa;
  LogValue jp, jm, jl, yp, ym, yl;

  LogValue j_at(double s) const { return combine(jp, jm, jl, s); }
  LogValue y_at(double s) const { return combine(yp, ym, yl, s); }

  LogValue combine(LogValue p, LogValue m, LogValue l, double s) const {
    const double ls = std::log(s);
    LogValue out = p * LogValue{1, kappa * ls} + m * LogValue{1, -kappa * ls};
    if (l.sign != 0) out = out + l * LogValue::of(ls);
    return out;
  }
};

// log_lambda = ln(lambda), so that lambda far below the double range stays usable.
SmallArgument small_argument(double nu, double log_lambda) {
  const double kappa = std::fabs(nu);
  const double llam = log_lambda - std::log(2.0);
  SmallArgument out{};
  out.kappa = kappa;
  if (kappa == 0.0) {
    out.jp = LogValue{1, 0.0};
    out.ym = LogValue::of(2 / pi<double>() * (llam + euler<double>()));
    out.yl = LogValue::of(2 / pi<double>());
    return out;
  }
  const LogValue aj{1, kappa * llam - std::lgamma(kappa + 1)};
  const LogValue ay{-1, std::lgamma(kappa) - std::log(pi<double>()) - kappa * llam};
  const bool integer = kappa == std::floor(kappa);
  const double s = integer ? 0.0 : boost::math::sin_pi(kappa);
  const double c = boost::math::cos_pi(kappa);
  // Y_kappa = cot(kappa pi) J_kappa - J_{-kappa} / sin(kappa pi): keep the J-proportional part.
  const LogValue cy = integer ? LogValue{} : aj * LogValue::of(c / s);
  if (nu > 0) {
    out.jp = aj;
    out.yp = cy;
    out.ym = ay;
    return out;
  }
  if (integer) {
    out.jp = aj * LogValue::of(c);
    out.ym = ay * LogValue::of(c);
    return out;
  }
  // J_{-kappa} has no s^kappa term; Y_{-kappa} = J_kappa / sin(kappa pi) - cot(kappa pi) J_{-kappa}.
  out.jm = -(ay * LogValue::of(s));
  out.yp = aj / LogValue::of(s);
  out.ym = ay * LogValue::of(c);
  return out;
}

// Phi(lambda, r) ~ P r^kappa + Q r^-kappa + R ln r for lambda r0 -> 0.
struct HeadKernel {
  double kappa;
  LogValue p, q, rl;

  LogValue at(double r) const {
    const double lr = std::log(r);
    LogValue out = p * LogValue{1, kappa * lr} + q * LogValue{1, -kappa * lr};
    if (rl.sign != 0) out = out + rl * LogValue::of(lr);
    return out;
  }
};

HeadKernel head_kernel(const TransformParams& params, double log_lambda) {
  const SmallArgument k = small_argument(params.k.value(), log_lambda);
  const SmallArgument l = small_argument(params.l().value(), log_lambda);
  const LogValue jl = l.j_at(params.r0);
  const LogValue yl = l.y_at(params.r0);
  const LogValue m2 = jl * jl + yl * yl;
  const LogValue m{1, 0.5 * m2.log};
  return {k.kappa, (k.jp * yl - k.yp * jl) / m, (k.jm * yl - k.ym * jl) / m, (k.jl * yl - k.yl * jl) / m};
}

LogValue head_transform(const HeadKernel& h, const HeadModel& head) {
  return h.p * LogValue::of(head.m_j) + h.q * LogValue::of(head.m_y) + h.rl * LogValue::of(head.m_log);
}

// int_{-inf}^{U} F(e^u) du through u = U - v/(1-v).
QuadratureResult log_scale_integral(const std::function<double(double)>& in_u, double upper,
                                    const QuadratureConfig& cfg) {
  auto mapped = [&](double v) {
    const double w = 1.0 - v;
    const double u = upper - v / w;
    if (!std::isfinite(u)) return 0.0;
    const double out = in_u(u) / (w * w);
    return std::isfinite(out) ? out : 0.0;
  };
  return integrate_adaptive(mapped, 0.0, 1.0, cfg);
}

}  // namespace

void SpectralFunction::validate() const {
  if (nodes.size() != values.size()) throw DomainError("spectral function: node and value counts differ");
  if (!weights.empty() && weights.size() != nodes.size()) throw DomainError("spectral function: weight count differs");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!(nodes[i] > 0) || !std::isfinite(values[i])) throw DomainError("spectral function has invalid entries");
    if (i > 0 && !(nodes[i] > nodes[i - 1])) throw DomainError("spectral nodes must be strictly increasing");
  }
  if (!(tail.oscillation_scale > 0)) throw DomainError("tail oscillation scale must be positive");
  if (!(damping_time >= 0)) throw DomainError("damping time must be nonnegative");
}

double boundary_slope(const TransformParams& params, double lambda) {
  if (params.offset == Offset::zero) {
    const double x0 = lambda * params.r0;
    const BesselPair p = bessel_pair(params.k, x0);
    return -2.0 / (pi<double>() * std::hypot(p.j, p.y));
  }
  return kernel_phi(params, {lambda, params.r0});
}

double tail_model_value(const SpectralFunction& g, double lambda) {
  if (!g.tail_model.active()) return 0.0;
  const double l2 = lambda * lambda;
  return boundary_slope(g.params, lambda) * (g.tail_model.b1 / l2 + g.tail_model.b2 / (l2 * l2));
}

double head_value(const SpectralFunction& g, double lambda) {
  if (!g.head.present) return 0.0;
  return head_transform(head_kernel(g.params, std::log(lambda)), g.head).value();
}

QuadratureResult head_inverse(const SpectralFunction& g, double r, const QuadratureConfig& cfg) {
  if (!g.head.present || !(g.body_lo > 0)) return {};
  const double t = g.damping_time;
  auto in_u = [&](double u) {
    const double lambda = std::exp(u);
    const HeadKernel h = head_kernel(g.params, u);
    const LogValue v = h.at(r) * head_transform(h, g.head) * LogValue{1, 2 * u};
    return v.value() * std::exp(-lambda * lambda * t);
  };
  return log_scale_integral(in_u, std::log(g.body_lo), cfg);
}

QuadratureResult head_norm_sq(const SpectralFunction& g, const QuadratureConfig& cfg) {
  if (!g.head.present || !(g.body_lo > 0)) return {};
  const double t = g.damping_time;
  auto in_u = [&](double u) {
    const double lambda = std::exp(u);
    const LogValue h = head_transform(head_kernel(g.params, u), g.head);
    return (h * h * LogValue{1, 2 * u}).value() * std::exp(-2 * lambda * lambda * t);
  };
  return log_scale_integral(in_u, std::log(g.body_lo), cfg);
}

}  // namespace weber_orr
