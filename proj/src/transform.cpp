#include "weber_orr/transform.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/interpolators/makima.hpp>

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "weber_orr/error.hpp"

namespace weber_orr {

namespace {

using boost::math::constants::pi;

constexpr double kLambdaGuard = 1e-6;  // times 1/r0: start of the sampled body

void require(const QuadratureResult& r, const QuadratureConfig& cfg, const char* what) {
  if (!r.converged && r.err_est > 100 * cfg.target(r.value)) {
    std::ostringstream msg;
    msg << what << " did not converge (value " << r.value << ", error estimate " << r.err_est << ")";
    throw ConvergenceError(msg.str());
  }
}

void check_same(const SpectralFunction& g, const TransformParams& p) {
  if (g.params.k.value() != p.k.value() || g.params.offset != p.offset || g.params.r0 != p.r0)
    throw DomainError("spectral function was produced by a different transform");
}

QuadratureConfig tight(const QuadratureConfig& cfg) {
  QuadratureConfig out = cfg;
  out.rel_tol = std::min(cfg.rel_tol, 1e-12);
  out.abs_tol = 1e-300;
  out.max_subdivisions = std::max(cfg.max_subdivisions, 4000);
  return out;
}

// First radius where the kernel is in its oscillatory regime for this lambda.
double oscillation_onset(const TransformParams& p, double lambda) {
  return (2 * std::fabs(p.k.value()) + 10) / lambda;
}

std::vector<double> split(double lo, double hi, double spacing, const std::vector<double>& extra, int cap) {
  int n = static_cast<int>(std::ceil((hi - lo) / spacing));
  n = std::clamp(n, 1, cap);
  std::vector<double> breaks;
  for (int i = 0; i <= n; ++i) breaks.push_back(i == n ? hi : lo + (hi - lo) * i / n);
  for (double b : extra)
    if (b > lo && b < hi) breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  return breaks;
}

double tail_b1(const RadialFunction& f, const TransformParams& p) {
  const double r0 = p.r0;
  const double k = p.k.value();
  const double v = f(r0);
  switch (p.offset) {
    case Offset::zero: return v;
    case Offset::minus_one: return -(k * v + r0 * f.derivative(r0));
    case Offset::plus_one: return k * v - r0 * f.derivative(r0);
  }
  return 0.0;
}

HeadModel build_head(const RadialFunction& f, const TransformParams& p, const QuadratureConfig& cfg) {
  HeadModel head;
  if (f.is_zero() || f.support().decay == DecayKind::algebraic) return head;
  const double kappa = std::fabs(p.k.value());
  const QuadratureConfig t = tight(cfg);
  head.present = true;
  head.m_j = integrate_against(f, p.r0, [kappa](double s) { return std::pow(s, kappa + 1); }, t).value;
  head.m_y = integrate_against(f, p.r0, [kappa](double s) { return std::pow(s, 1 - kappa); }, t).value;
  if (kappa == 0.0)
    head.m_log = integrate_against(f, p.r0, [](double s) { return s * std::log(s); }, t).value;
  return head;
}

double envelope_exponent(const SpectralFunction& g) {
  if (g.tail_model.active())
    return g.tail_model.kind == TailModel::Kind::dirichlet ? 1.5 : 2.5;
  if (g.nodes.size() < 2 || g.nodes.back() < 10 * g.nodes.front()) return 0.5;
  SpectralFunction upper(g.params);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (g.nodes[i] >= g.nodes.back() / 8) {
      upper.nodes.push_back(g.nodes[i]);
      upper.values.push_back(g.values[i]);
    }
  }
  const DecayReport d = decay_report(upper);
  return std::max(0.5, -d.slope);
}

void fit_b2(SpectralFunction& g) {
  if (g.tail_model.b1 == 0.0) return;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const double l = g.nodes[i];
    if (l < g.body_hi / 2) continue;
    const double rho = boundary_slope(g.params, l);
    const double res = g.values[i] - rho * g.tail_model.b1 / (l * l);
    const double u = rho / (l * l * l * l);
    num += res * u;
    den += u * u;
  }
  if (den > 0) g.tail_model.b2 = num / den;
}

void fill_tail(SpectralFunction& g, const RadialFunction& f, const TransformParams& p) {
  const double extent = std::max(f.feature_end(p.r0) - p.r0, 1e-3 * p.r0);
  g.tail.oscillation_scale = pi<double>() / extent;
  g.tail_model.kind = p.offset == Offset::zero ? TailModel::Kind::dirichlet : TailModel::Kind::robin;
  g.tail_model.b1 = f.is_zero() ? 0.0 : tail_b1(f, p);
  g.tail.envelope_exponent = envelope_exponent(g);
}

// int_{body_hi}^inf Phi(lambda, r) model(lambda) lambda e^{-lambda^2 t} dlambda.
QuadratureResult tail_inverse(const SpectralFunction& g, const TransformParams& p, double r,
                              const QuadratureConfig& cfg) {
  if (!g.tail_model.active() || !(g.body_hi > 0)) return {};
  const double t = g.damping_time;
  const double start = g.body_hi;
  const double d = r - p.r0;
  const bool at_boundary = d <= 1e-12 * p.r0;
  if (at_boundary && g.tail_model.kind == TailModel::Kind::dirichlet) return {};

  auto integrand = [&](double lambda) {
    const double phi = at_boundary ? kernel_phi(p, {lambda, p.r0}) : kernel_phi(p, {lambda, r});
    return phi * tail_model_value(g, lambda) * lambda * std::exp(-lambda * lambda * t);
  };

  if (t > 0) {
    if (start * start * t > 40) return {};
    const double end = start + std::sqrt(40 / t);
    const double spacing = at_boundary ? end - start : pi<double>() / d;
    return integrate_adaptive(integrand, split(start, end, spacing, {}, 4000), cfg);
  }
  if (at_boundary) return integrate_semi_infinite(integrand, start, cfg);

  const double spacing = pi<double>() / d;
  double z = start;
  bool first = true;
  ZeroStream zeros = [&]() {
    z = kernel_zero_after(p, r, first ? z : z + spacing / 4);
    first = false;
    return z;
  };
  return integrate_oscillatory(integrand, start, zeros, cfg);
}

double body_inverse_interpolated(const SpectralFunction& g, const TransformParams& p, double r,
                                 const QuadratureConfig& cfg) {
  if (g.nodes.size() < 4) throw DomainError("interpolated spectral function needs at least 4 nodes");
  using Spline = boost::math::interpolators::makima<std::vector<double>>;
  Spline spline(std::vector<double>(g.nodes), std::vector<double>(g.values));
  const double t = g.damping_time;
  auto integrand = [&](double lambda) {
    return KernelSlice(p, lambda)(r) * spline(lambda) * lambda * std::exp(-lambda * lambda * t);
  };
  const double d = std::max(r - p.r0, 1e-12);
  const auto breaks = split(g.nodes.front(), g.nodes.back(), pi<double>() / d, g.nodes, 20000);
  const QuadratureResult res = integrate_adaptive(integrand, breaks, cfg);
  require(res, cfg, "inverse transform body");
  return res.value;
}

}  // namespace

double forward_at(const RadialFunction& f, const TransformParams& p, double lambda, const QuadratureConfig& cfg) {
  if (!(lambda > 0) || !std::isfinite(lambda)) throw DomainError("forward transform needs finite lambda > 0");
  if (!f.square_integrable())
    throw DomainError("function " + f.name() + " is not square integrable with weight r; transform undefined");
  if (f.is_zero() || lambda * p.r0 < kSmallArgumentGuard) return 0.0;

  const KernelSlice slice(p, lambda);
  auto integrand = [&](double s) { return slice(s) * f(s) * s; };
  const Support& sup = f.support();
  const double lo = std::max(p.r0, sup.start);
  const double spacing = pi<double>() / lambda;

  QuadratureResult res;
  const double end = f.effective_end(p.r0);
  if (std::isfinite(end) && lambda * (end - lo) <= 40 * pi<double>()) {
    if (!(end > lo)) return 0.0;
    res = integrate_adaptive(integrand, split(lo, end, spacing, f.breaks(), 4000), cfg);
  } else if (sup.decay == DecayKind::compact) {
    if (!(end > lo)) return 0.0;
    res = integrate_adaptive(integrand, split(lo, end, spacing, f.breaks(), 100000), cfg);
  } else {
    double z = std::max(lo, oscillation_onset(p, lambda));
    if (!f.breaks().empty()) z = std::max(z, f.breaks().back());
    bool first = true;
    ZeroStream zeros = [&]() {
      z = kernel_zero_after_radius(p, lambda, first ? z : z + spacing / 4);
      first = false;
      return z;
    };
    res = integrate_oscillatory(integrand, lo, zeros, cfg);
  }
  require(res, cfg, "forward transform");
  return res.value;
}

SpectralFunction forward_grid(const RadialFunction& f, const TransformParams& p, const std::vector<double>& lambdas,
                              const QuadratureConfig& cfg) {
  SpectralFunction g(p);
  for (double l : lambdas) {
    g.nodes.push_back(l);
    g.values.push_back(forward_at(f, p, l, cfg));
  }
  if (!g.nodes.empty()) {
    g.body_lo = g.nodes.front();
    g.body_hi = g.nodes.back();
  }
  g.validate();
  fill_tail(g, f, p);
  return g;
}

SpectralFunction spectral_from_samples(const TransformParams& p, std::vector<double> lambdas, std::vector<double> values) {
  SpectralFunction g(p);
  g.nodes = std::move(lambdas);
  g.values = std::move(values);
  g.validate();
  if (g.nodes.size() < 4) throw DomainError("spectral samples need at least 4 nodes");
  g.body_lo = g.nodes.front();
  g.body_hi = g.nodes.back();
  g.tail.oscillation_scale = pi<double>() / p.r0;
  g.tail_model.kind = p.offset == Offset::zero ? TailModel::Kind::dirichlet : TailModel::Kind::robin;
  if (g.body_hi * p.r0 >= 20) {
    double num = 0.0;
    double den = 0.0;
    int used = 0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double l = g.nodes[i];
      if (l < g.body_hi / 2) continue;
      const double u = boundary_slope(p, l) / (l * l);
      num += g.values[i] * u;
      den += u * u;
      ++used;
    }
    if (used >= 4 && den > 0) g.tail_model.b1 = num / den;
  }
  g.tail.envelope_exponent = envelope_exponent(g);
  return g;
}

SpectralFunction forward_spectral(const RadialFunction& f, const TransformParams& p, const QuadratureConfig& cfg,
                                  SpectralGridSpec spec) {
  const double r0 = p.r0;
  const double k = p.k.value();
  const double features = f.feature_end(r0);
  const double r_max = spec.r_max > 0 ? std::max(spec.r_max, r0) : features;
  const double omega = std::max((features - r0) + (r_max - r0), r0);
  const double width = 8.0 / omega;
  double lambda_max = spec.lambda_max > 0 ? spec.lambda_max : std::max({100.0, 40.0 / r0, 4 * (k * k + 1) / r0});

  std::vector<double> edges{kLambdaGuard / r0};
  while (edges.back() < width && edges.back() < lambda_max) edges.push_back(2 * edges.back());
  const double uniform_start = edges.back();
  if (lambda_max > uniform_start) {
    const int n = static_cast<int>(std::ceil((lambda_max - uniform_start) / width));
    for (int i = 1; i <= n; ++i) edges.push_back(i == n ? lambda_max : uniform_start + (lambda_max - uniform_start) * i / n);
  }
  lambda_max = edges.back();

  SpectralFunction g(p);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const Rule rule = gauss_legendre(16, edges[i], edges[i + 1]);
    g.nodes.insert(g.nodes.end(), rule.nodes.begin(), rule.nodes.end());
    g.weights.insert(g.weights.end(), rule.weights.begin(), rule.weights.end());
  }
  g.values.reserve(g.nodes.size());
  for (double l : g.nodes) g.values.push_back(forward_at(f, p, l, cfg));
  g.body_lo = edges.front();
  g.body_hi = lambda_max;
  g.head = build_head(f, p, cfg);
  fill_tail(g, f, p);
  fit_b2(g);
  g.validate();
  return g;
}

std::vector<double> inverse_grid(const SpectralFunction& g, const TransformParams& p, const std::vector<double>& r,
                                 const QuadratureConfig& cfg) {
  check_same(g, p);
  g.validate();
  for (double x : r)
    if (!(x >= p.r0) || !std::isfinite(x)) throw DomainError("inverse transform needs r >= r0");

  std::vector<double> out(r.size(), 0.0);
  const double t = g.damping_time;
  if (g.quadrature_ready()) {
    std::vector<KernelSlice> slices;
    std::vector<double> coeff;
    slices.reserve(g.nodes.size());
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double l = g.nodes[i];
      slices.emplace_back(p, l);
      coeff.push_back(g.weights[i] * g.values[i] * l * std::exp(-l * l * t));
    }
    std::vector<double> terms(g.nodes.size());
    for (std::size_t j = 0; j < r.size(); ++j) {
      for (std::size_t i = 0; i < slices.size(); ++i) terms[i] = coeff[i] == 0.0 ? 0.0 : coeff[i] * slices[i](r[j]);
      out[j] = pairwise_sum(terms);
    }
  } else {
    for (std::size_t j = 0; j < r.size(); ++j) out[j] = body_inverse_interpolated(g, p, r[j], cfg);
  }

  for (std::size_t j = 0; j < r.size(); ++j) {
    const QuadratureResult head = head_inverse(g, r[j], cfg);
    require(head, cfg, "inverse transform head");
    const QuadratureResult tail = tail_inverse(g, p, r[j], cfg);
    require(tail, cfg, "inverse transform tail");
    out[j] += head.value + tail.value;
  }
  return out;
}

double inverse_at(const SpectralFunction& g, const TransformParams& p, double r, const QuadratureConfig& cfg) {
  return inverse_grid(g, p, {r}, cfg).front();
}

double transform_norm_sq(const SpectralFunction& g, const QuadratureConfig& cfg) {
  g.validate();
  const double t = g.damping_time;
  double body = 0.0;
  if (g.quadrature_ready()) {
    std::vector<double> terms(g.nodes.size());
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double l = g.nodes[i];
      terms[i] = g.weights[i] * g.values[i] * g.values[i] * l * std::exp(-2 * l * l * t);
    }
    body = pairwise_sum(terms);
  } else if (g.nodes.size() >= 4) {
    using Spline = boost::math::interpolators::makima<std::vector<double>>;
    Spline spline(std::vector<double>(g.nodes), std::vector<double>(g.values));
    auto integrand = [&](double l) {
      const double v = spline(l);
      return v * v * l * std::exp(-2 * l * l * t);
    };
    const QuadratureResult res = integrate_adaptive(integrand, g.nodes, cfg);
    require(res, cfg, "transform norm");
    body = res.value;
  }
  const QuadratureConfig tc = tight(cfg);
  const QuadratureResult head = head_norm_sq(g, tc);
  double tail = 0.0;
  if (g.tail_model.active() && g.body_hi > 0) {
    auto integrand = [&](double l) {
      const double v = tail_model_value(g, l);
      return v * v * l * std::exp(-2 * l * l * t);
    };
    tail = integrate_semi_infinite(integrand, g.body_hi, tc).value;
  }
  return body + head.value + tail;
}

double KernelProjection::term(double r) const {
  if (!present) return 0.0;
  return weight * coefficient * std::pow(r, exponent);
}

bool kernel_present(const TransformParams& p) {
  const double k = p.k.value();
  return (p.offset == Offset::minus_one && k > 1) || (p.offset == Offset::plus_one && k < -1);
}

KernelProjection kernel_coefficient(const RadialFunction& f, const TransformParams& p, const QuadratureConfig& cfg) {
  KernelProjection out;
  if (!kernel_present(p)) return out;
  const double k = p.k.value();
  const double r0 = p.r0;
  out.present = true;
  double power = 0.0;
  if (p.offset == Offset::minus_one) {
    power = 1 - k;
    out.weight = 2 * (k - 1) * std::pow(r0, 2 * (k - 1));
    out.exponent = -k;
  } else {
    power = k + 1;
    out.weight = -2 * (k + 1) * std::pow(r0, -2 * (k + 1));
    out.exponent = k;
  }
  if (!f.square_integrable()) throw DomainError("function " + f.name() + " is not square integrable with weight r");
  const QuadratureResult c =
      integrate_against(f, r0, [power](double s) { return std::pow(s, power); }, tight(cfg));
  require(c, tight(cfg), "kernel coefficient");
  out.coefficient = c.value;
  return out;
}

Reconstruction reconstruct(const RadialFunction& f, const TransformParams& p, const std::vector<double>& r_grid,
                           const QuadratureConfig& cfg) {
  double r_max = p.r0;
  for (double r : r_grid) r_max = std::max(r_max, r);
  const SpectralFunction g = forward_spectral(f, p, cfg, {r_max, 0.0});
  return reconstruct(g, f, p, r_grid, cfg);
}

Reconstruction reconstruct(const SpectralFunction& g, const RadialFunction& f, const TransformParams& p,
                           const std::vector<double>& r_grid, const QuadratureConfig& cfg) {
  Reconstruction out;
  out.uncorrected = inverse_grid(g, p, r_grid, cfg);
  out.projection = kernel_coefficient(f, p, cfg);
  out.values = out.uncorrected;
  for (std::size_t i = 0; i < r_grid.size(); ++i) out.values[i] += out.projection.term(r_grid[i]);
  return out;
}

PlancherelReport plancherel_report(const RadialFunction& f, const TransformParams& p, const QuadratureConfig& cfg) {
  const SpectralFunction g = forward_spectral(f, p, cfg);
  return plancherel_report(g, f, p, cfg);
}

PlancherelReport plancherel_report(const SpectralFunction& g, const RadialFunction& f, const TransformParams& p,
                                   const QuadratureConfig& cfg) {
  check_same(g, p);
  SpectralFunction undamped = g;
  undamped.damping_time = 0.0;
  PlancherelReport out;
  out.norm_f_sq = l2_norm_radial(f, p.r0, cfg);
  out.norm_transform_sq = transform_norm_sq(undamped, cfg);
  out.projection = kernel_coefficient(f, p, cfg);
  if (out.projection.present) out.kernel_term = out.projection.weight * out.projection.coefficient * out.projection.coefficient;
  out.residual = out.norm_f_sq - out.norm_transform_sq - out.kernel_term;
  return out;
}

DecayReport decay_report(const SpectralFunction& g) {
  DecayReport out;
  if (g.nodes.empty()) return out;
  const double base = g.nodes.front();
  std::vector<double> argmax;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const double l = g.nodes[i];
    const double a = std::fabs(g.values[i]);
    const auto octave = static_cast<std::size_t>(std::floor(std::log2(l / base) + 1e-12));
    while (out.octave_start.size() <= octave) {
      out.octave_start.push_back(base * std::pow(2.0, static_cast<double>(out.octave_start.size())));
      out.octave_max.push_back(0.0);
      out.octave_sup_scaled.push_back(0.0);
      argmax.push_back(0.0);
    }
    if (a > out.octave_max[octave] || argmax[octave] == 0.0) {
      out.octave_max[octave] = a;
      argmax[octave] = l;
    }
    out.octave_sup_scaled[octave] = std::max(out.octave_sup_scaled[octave], std::sqrt(l) * a);
    out.sup_scaled = std::max(out.sup_scaled, std::sqrt(l) * a);
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t j = 0; j < out.octave_max.size(); ++j) {
    if (!(out.octave_max[j] > 0) || !(argmax[j] > 0)) continue;
    const double x = std::log(argmax[j]);
    const double y = std::log(out.octave_max[j]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n >= 2) {
    const double den = n * sxx - sx * sx;
    if (den > 0) out.slope = (n * sxy - sx * sy) / den;
  }
  return out;
}

BesselInequality bessel_inequality_check(const PlancherelReport& report) {
  BesselInequality out;
  out.norm_f_sq = report.norm_f_sq;
  out.norm_transform_sq = report.norm_transform_sq;
  out.margin = report.norm_f_sq - report.norm_transform_sq;
  out.passed = report.norm_transform_sq <= report.norm_f_sq * (1 + 1e-6) + 1e-9;
  return out;
}

BesselInequality bessel_inequality_check(const RadialFunction& f, const TransformParams& p, const QuadratureConfig& cfg) {
  return bessel_inequality_check(plancherel_report(f, p, cfg));
}

}  // namespace weber_orr
