#include "weber_orr/catalog.hpp"

#include <boost/math/interpolators/makima.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "weber_orr/error.hpp"

namespace weber_orr {

namespace {

std::string number(double x) {
  std::ostringstream out;
  out.precision(17);
  out << x;
  return out.str();
}

std::vector<double> parse_numbers(const std::string& text, const std::string& spec) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw DomainError("malformed number '" + item + "' in function spec '" + spec + "'");
    }
    if (used != item.size()) throw DomainError("malformed number '" + item + "' in function spec '" + spec + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

RadialFunction::RadialFunction(std::string name, Eval value, Eval derivative, Support support, bool admissible,
                               NormFn analytic_norm_sq, std::vector<double> breaks)
    : name_(std::move(name)),
      value_(std::move(value)),
      derivative_(std::move(derivative)),
      support_(support),
      admissible_(admissible),
      norm_(std::move(analytic_norm_sq)),
      breaks_(std::move(breaks)) {
  if (!value_) throw DomainError("radial function needs an evaluator");
}

double RadialFunction::operator()(double r) const {
  if (zero_ || r < support_.start || r > support_.end) return 0.0;
  return value_(r);
}

double RadialFunction::derivative(double r) const {
  if (zero_ || r < support_.start || r > support_.end) return 0.0;
  if (derivative_) return derivative_(r);
  const double h = 1e-5 * std::max(1.0, std::fabs(r));
  const double lo = std::max(r - h, support_.start);
  const double hi = std::min(r + h, support_.end);
  return (value_(hi) - value_(lo)) / (hi - lo);
}

bool RadialFunction::square_integrable() const {
  switch (support_.decay) {
    case DecayKind::compact: return true;
    case DecayKind::exponential: return support_.rate > 0;
    case DecayKind::algebraic: return support_.rate < -1;
  }
  return false;
}

std::optional<double> RadialFunction::analytic_norm_sq(double r0) const {
  if (zero_) return 0.0;
  if (!norm_) return std::nullopt;
  const double v = norm_(r0);
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

double RadialFunction::effective_end(double r0) const {
  switch (support_.decay) {
    case DecayKind::compact: return support_.end;
    case DecayKind::exponential: {
      const double a = support_.rate;
      return std::max(r0, (std::max(support_.power, 0.0) + 2) / a) + 50.0 / a;
    }
    case DecayKind::algebraic: return std::numeric_limits<double>::infinity();
  }
  return support_.end;
}

double RadialFunction::feature_end(double r0) const {
  const double last_break = breaks_.empty() ? r0 : std::max(r0, breaks_.back());
  switch (support_.decay) {
    case DecayKind::compact: return std::max(r0, support_.end);
    case DecayKind::exponential:
      return std::max(last_break, std::max(r0, support_.power / support_.rate) + 2.0 / support_.rate);
    case DecayKind::algebraic: return std::max(last_break, 11.0 * r0);
  }
  return r0;
}

RadialFunction make_zero() {
  Support s;
  s.start = 0.0;
  s.end = 0.0;
  RadialFunction f("zero", [](double) { return 0.0; }, [](double) { return 0.0; }, s, true,
                   [](double) { return 0.0; });
  f.zero_ = true;
  return f;
}

RadialFunction make_bump(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) throw DomainError("bump needs finite a < b");
  Support s;
  s.start = a;
  s.end = b;
  auto value = [a, b](double r) {
    const double u = (r - a) * (b - r);
    return u * u;
  };
  auto derivative = [a, b](double r) { return 2 * (r - a) * (b - r) * (b + a - 2 * r); };
  auto norm = [a, b](double r0) {
    if (r0 > a) return std::numeric_limits<double>::quiet_NaN();
    const double len = b - a;
    const double l9 = std::pow(len, 9);
    return a * l9 / 630 + l9 * len / 1260;
  };
  return RadialFunction("bump:" + number(a) + "," + number(b), value, derivative, s, true, norm);
}

RadialFunction make_power(double exponent) {
  if (!std::isfinite(exponent) || !(exponent < -1)) {
    throw DomainError("power:" + number(exponent) + " is not square integrable with weight r on [r0, inf) (needs e < -1)");
  }
  Support s;
  s.decay = DecayKind::algebraic;
  s.rate = exponent;
  const double e = exponent;
  auto value = [e](double r) { return std::pow(r, e); };
  auto derivative = [e](double r) { return e * std::pow(r, e - 1); };
  auto norm = [e](double r0) { return std::pow(r0, 2 * e + 2) / (-2 * e - 2); };
  return RadialFunction("power:" + number(e), value, derivative, s, e < -1.5, norm);
}

RadialFunction make_exp_decay(double alpha, double shift) {
  if (!std::isfinite(alpha) || !(alpha > 0)) throw DomainError("exp decay needs alpha > 0");
  if (!std::isfinite(shift) || shift < 0) throw DomainError("exp decay needs shift >= 0");
  Support s;
  s.decay = DecayKind::exponential;
  s.rate = alpha;
  s.power = shift;
  auto value = [alpha, shift](double r) { return std::exp(-alpha * r) * std::pow(r, shift); };
  auto derivative = [alpha, shift](double r) {
    return std::exp(-alpha * r) * std::pow(r, shift) * (shift / r - alpha);
  };
  auto norm = [alpha, shift](double r0) {
    const double p = 2 * shift + 2;
    return boost::math::tgamma(p, 2 * alpha * r0) / std::pow(2 * alpha, p);
  };
  return RadialFunction("exp:" + number(alpha) + "," + number(shift), value, derivative, s, true, norm);
}

RadialFunction make_sampled(std::vector<double> nodes, std::vector<double> values) {
  if (nodes.size() != values.size()) throw DomainError("sampled function: node and value counts differ");
  if (nodes.size() < 4) throw DomainError("sampled function needs at least 4 nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!std::isfinite(nodes[i]) || !std::isfinite(values[i])) throw DomainError("sampled function has non-finite entries");
    if (i > 0 && !(nodes[i] > nodes[i - 1])) throw DomainError("sampled function nodes must be strictly increasing");
  }
  Support s;
  s.start = nodes.front();
  s.end = nodes.back();
  std::vector<double> breaks = nodes;
  using Spline = boost::math::interpolators::makima<std::vector<double>>;
  auto spline = std::make_shared<Spline>(std::move(nodes), std::move(values));
  auto value = [spline](double r) { return (*spline)(r); };
  auto derivative = [spline](double r) { return spline->prime(r); };
  return RadialFunction("sampled", value, derivative, s, true, {}, std::move(breaks));
}

RadialFunction linear_combination(double alpha, const RadialFunction& f, double beta, const RadialFunction& g) {
  Support s;
  const Support& a = f.support();
  const Support& b = g.support();
  s.start = std::min(a.start, b.start);
  s.end = std::max(a.end, b.end);
  if (a.decay == DecayKind::algebraic || b.decay == DecayKind::algebraic) {
    s.decay = DecayKind::algebraic;
    s.rate = -std::numeric_limits<double>::infinity();
    if (a.decay == DecayKind::algebraic) s.rate = std::max(s.rate, a.rate);
    if (b.decay == DecayKind::algebraic) s.rate = std::max(s.rate, b.rate);
  } else if (a.decay == DecayKind::exponential || b.decay == DecayKind::exponential) {
    s.decay = DecayKind::exponential;
    s.rate = std::numeric_limits<double>::infinity();
    if (a.decay == DecayKind::exponential) s.rate = std::min(s.rate, a.rate);
    if (b.decay == DecayKind::exponential) s.rate = std::min(s.rate, b.rate);
    s.power = std::max(a.power, b.power);
  }
  auto value = [alpha, beta, f, g](double r) { return alpha * f(r) + beta * g(r); };
  auto derivative = [alpha, beta, f, g](double r) { return alpha * f.derivative(r) + beta * g.derivative(r); };
  std::vector<double> breaks = f.breaks();
  breaks.insert(breaks.end(), g.breaks().begin(), g.breaks().end());
  // Support edges of the summands are kinks of the sum.
  for (const Support* p : {&a, &b}) {
    if (p->decay == DecayKind::compact) {
      breaks.push_back(p->start);
      breaks.push_back(p->end);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  const std::string name = number(alpha) + "*(" + f.name() + ")+" + number(beta) + "*(" + g.name() + ")";
  return RadialFunction(name, value, derivative, s, f.admissible() && g.admissible(), {}, std::move(breaks));
}

RadialFunction parse_function_spec(const std::string& spec) {
  if (spec == "zero") return make_zero();
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw DomainError("unknown function spec '" + spec + "'");
  const std::string kind = spec.substr(0, colon);
  const std::vector<double> args = parse_numbers(spec.substr(colon + 1), spec);
  if (kind == "bump") {
    if (args.size() != 2) throw DomainError("bump spec needs two numbers: bump:a,b");
    return make_bump(args[0], args[1]);
  }
  if (kind == "power") {
    if (args.size() != 1) throw DomainError("power spec needs one number: power:e");
    return make_power(args[0]);
  }
  if (kind == "exp") {
    if (args.empty() || args.size() > 2) throw DomainError("exp spec needs alpha and optional shift: exp:alpha,shift");
    return make_exp_decay(args[0], args.size() == 2 ? args[1] : 0.0);
  }
  throw DomainError("unknown function kind '" + kind + "' in spec '" + spec + "'");
}

bool check_admissibility(RadialFunction& f, double r0) {
  if (!(r0 > 0)) throw DomainError("check_admissibility needs r0 > 0");
  const Support& s = f.support();
  bool ok = true;

  const double lo = std::max(r0, s.start);
  const double hi = std::min(std::isfinite(s.end) ? s.end : lo + 10 * r0, f.effective_end(r0));
  if (hi >= lo) {
    for (int i = 0; i <= 64 && ok; ++i) {
      const double r = lo + (hi - lo) * i / 64.0;
      ok = std::isfinite(f(r));
    }
  }

  switch (s.decay) {
    case DecayKind::compact:
      break;
    case DecayKind::exponential:
      ok = ok && s.rate > 0;
      break;
    case DecayKind::algebraic: {
      // sqrt(r) f in L1 needs e < -3/2, in L2 needs e < -1.
      double e = s.rate;
      const double r1 = 1e3 * std::max(1.0, r0);
      const double r2 = 1e4 * std::max(1.0, r0);
      const double f1 = std::fabs(f(r1));
      const double f2 = std::fabs(f(r2));
      if (f1 > 0 && f2 > 0) e = std::max(e, std::log(f2 / f1) / std::log(r2 / r1));
      ok = ok && e < -1.5;
      break;
    }
  }
  f.set_admissible(ok);
  return ok;
}

QuadratureResult integrate_against(const RadialFunction& f, double r0, const Integrand& weight,
                                   const QuadratureConfig& cfg) {
  if (f.is_zero()) return {};
  const Support& s = f.support();
  const double lo = std::max(r0, s.start);
  auto integrand = [&](double x) { return weight(x) * f(x); };
  if (s.decay == DecayKind::algebraic) {
    if (!f.square_integrable()) throw DomainError("function " + f.name() + " does not decay fast enough");
    return integrate_semi_infinite(integrand, lo, cfg);
  }
  const double hi = f.effective_end(r0);
  if (!(hi > lo)) return {};
  std::vector<double> breaks{lo};
  if (s.decay == DecayKind::exponential) {
    for (int i = 1; i < 16; ++i) breaks.push_back(lo + (hi - lo) * i / 16.0);
  }
  for (double b : f.breaks())
    if (b > lo && b < hi) breaks.push_back(b);
  breaks.push_back(hi);
  std::sort(breaks.begin(), breaks.end());
  return integrate_adaptive(integrand, breaks, cfg);
}

double l2_norm_radial(const RadialFunction& f, double r0, const QuadratureConfig& cfg) {
  QuadratureConfig tight = cfg;
  tight.rel_tol = std::min(cfg.rel_tol, 1e-13);
  tight.abs_tol = 1e-300;
  tight.max_subdivisions = std::max(cfg.max_subdivisions, 4000);
  return integrate_against(f, r0, [&](double s) { return f(s) * s; }, tight).value;
}

}  // namespace weber_orr
