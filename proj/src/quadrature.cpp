#include "weber_orr/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "weber_orr/error.hpp"

namespace weber_orr {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
using G10 = boost::math::quadrature::gauss<double, 10>;

struct Segment {
  double a;
  double b;
  double value;
  double err;
};

struct ByError {
  bool operator()(const Segment& x, const Segment& y) const {
    if (x.err != y.err) return x.err < y.err;
    return x.a > y.a;
  }
};

Segment gk21(const Integrand& f, double a, double b) {
  const auto& xk = GK::abscissa();
  const auto& wk = GK::weights();
  const auto& wg = G10::weights();

  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  double fv[21];
  fv[0] = f(center);
  for (int i = 1; i < 11; ++i) {
    const double dx = half * xk[i];
    fv[2 * i - 1] = f(center - dx);
    fv[2 * i] = f(center + dx);
  }

  double resk = wk[0] * fv[0];
  double resabs = std::fabs(resk);
  double resg = 0.0;
  for (int i = 1; i < 11; ++i) {
    const double pair = fv[2 * i - 1] + fv[2 * i];
    resk += wk[i] * pair;
    resabs += wk[i] * (std::fabs(fv[2 * i - 1]) + std::fabs(fv[2 * i]));
    // The 10-point Gauss nodes are the odd Kronrod abscissae.
    if (i % 2 == 1) resg += wg[i / 2] * pair;
  }
  const double mean = 0.5 * resk;
  double resasc = wk[0] * std::fabs(fv[0] - mean);
  for (int i = 1; i < 11; ++i)
    resasc += wk[i] * (std::fabs(fv[2 * i - 1] - mean) + std::fabs(fv[2 * i] - mean));

  const double value = resk * half;
  resabs *= std::fabs(half);
  resasc *= std::fabs(half);
  double err = std::fabs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50 * kEps)) err = std::max(50 * kEps * resabs, err);
  if (!std::isfinite(value)) {
    std::ostringstream msg;
    msg << "integrand is not finite on [" << a << ", " << b << "]";
    throw ConvergenceError(msg.str());
  }
  return {a, b, value, err};
}

QuadratureResult adaptive_from(const Integrand& f, std::vector<Segment> initial, const QuadratureConfig& cfg) {
  std::priority_queue<Segment, std::vector<Segment>, ByError> heap;
  long evaluations = 21 * static_cast<long>(initial.size());
  double total = 0.0;
  double total_err = 0.0;
  for (const auto& s : initial) {
    total += s.value;
    total_err += s.err;
    heap.push(s);
  }
  bool converged = true;
  int subdivisions = static_cast<int>(initial.size());
  std::vector<Segment> finished;

  while (!heap.empty() && total_err > cfg.target(total)) {
    if (subdivisions >= cfg.max_subdivisions) {
      converged = false;
      break;
    }
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    // Too narrow to split further: keep the segment as is.
    if (!(mid > worst.a && mid < worst.b) || (worst.b - worst.a) < 100 * kEps * std::max(std::fabs(worst.a), std::fabs(worst.b))) {
      finished.push_back(worst);
      continue;
    }
    const Segment left = gk21(f, worst.a, mid);
    const Segment right = gk21(f, mid, worst.b);
    evaluations += 42;
    ++subdivisions;
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
  }

  while (!heap.empty()) {
    finished.push_back(heap.top());
    heap.pop();
  }
  std::sort(finished.begin(), finished.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
  std::vector<double> values(finished.size());
  std::vector<double> errs(finished.size());
  for (std::size_t i = 0; i < finished.size(); ++i) {
    values[i] = finished[i].value;
    errs[i] = finished[i].err;
  }
  QuadratureResult out;
  out.value = pairwise_sum(values);
  out.err_est = pairwise_sum(errs);
  if (out.err_est > cfg.target(out.value)) converged = false;
  out.converged = converged;
  out.evaluations = evaluations;
  return out;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0) || !(rel_tol > 0)) throw DomainError("quadrature tolerances must be positive");
  if (accel_terms < 4) throw DomainError("accel_terms must be at least 4");
  if (max_subdivisions < 1) throw DomainError("max_subdivisions must be at least 1");
}

double QuadratureConfig::target(double value) const { return std::max(abs_tol, rel_tol * std::fabs(value)); }

double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

QuadratureResult integrate_adaptive(const Integrand& f, double a, double b, const QuadratureConfig& cfg) {
  const double breaks[2] = {a, b};
  return integrate_adaptive(f, std::span<const double>(breaks, 2), cfg);
}

QuadratureResult integrate_adaptive(const Integrand& f, std::span<const double> breaks,
                                    const QuadratureConfig& cfg) {
  cfg.validate();
  if (breaks.size() < 2) throw DomainError("integrate_adaptive needs at least two break points");
  for (double x : breaks)
    if (!std::isfinite(x)) throw DomainError("integration limits must be finite");
  std::vector<Segment> initial;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i] < breaks[i + 1])) {
      if (breaks[i] == breaks[i + 1]) continue;
      throw DomainError("integration break points must be increasing");
    }
    initial.push_back(gk21(f, breaks[i], breaks[i + 1]));
  }
  if (initial.empty()) return {};
  return adaptive_from(f, std::move(initial), cfg);
}

QuadratureResult integrate_semi_infinite(const Integrand& f, double a, const QuadratureConfig& cfg) {
  auto mapped = [&](double t) {
    const double u = 1.0 - t;
    const double x = a + t / u;
    if (!std::isfinite(x)) return 0.0;
    const double v = f(x) / (u * u);
    return std::isfinite(v) ? v : 0.0;
  };
  return integrate_adaptive(mapped, 0.0, 1.0, cfg);
}

AcceleratedSum accelerate_alternating(std::span<const double> pieces) {
  // Cohen, Villegas & Zagier, "Convergence acceleration of alternating series", algorithm 1,
  // applied to a_k = (-1)^k p_k.
  auto cvz = [&](std::size_t n) {
    double d = std::pow(3.0 + std::sqrt(8.0), static_cast<double>(n));
    d = 0.5 * (d + 1.0 / d);
    double b = -1.0;
    double c = -d;
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      c = b - c;
      const double ak = (k % 2 == 0) ? pieces[k] : -pieces[k];
      s += c * ak;
      const double kk = static_cast<double>(k);
      const double nn = static_cast<double>(n);
      b = (kk + nn) * (kk - nn) * b / ((kk + 0.5) * (kk + 1.0));
    }
    return s / d;
  };
  const std::size_t n = pieces.size();
  if (n == 0) return {0.0, 0.0};
  if (n < 3) {
    double s = 0.0;
    for (double p : pieces) s += p;
    return {s, std::fabs(pieces.back())};
  }
  const double full = cvz(n);
  return {full, std::fabs(full - cvz(n - 2))};
}

QuadratureResult integrate_oscillatory(const Integrand& f, double a, const ZeroStream& zeros,
                                       const QuadratureConfig& cfg) {
  cfg.validate();
  double z = zeros();
  while (z <= std::max(a, cfg.tail_start_min)) z = zeros();

  QuadratureResult head = integrate_adaptive(f, a, z, cfg);
  QuadratureResult out;
  out.evaluations = head.evaluations;
  out.converged = head.converged;

  // Pieces only need to be accurate relative to the size of the whole integral.
  QuadratureConfig piece_cfg = cfg;
  piece_cfg.abs_tol = cfg.abs_tol / 64;

  std::vector<double> pieces;
  double piece_err = 0.0;
  auto extend_to = [&](std::size_t count) {
    while (pieces.size() < count) {
      const double next = zeros();
      if (!(next > z)) throw ConvergenceError("zero stream is not strictly increasing");
      const QuadratureResult p = integrate_adaptive(f, z, next, piece_cfg);
      pieces.push_back(p.value);
      piece_err += p.err_est;
      out.evaluations += p.evaluations;
      out.converged = out.converged && p.converged;
      z = next;
    }
  };

  auto check_alternation = [&]() {
    double scale = 0.0;
    for (double p : pieces) scale = std::max(scale, std::fabs(p));
    const double negligible = std::max(1e-3 * cfg.target(head.value), 1e-12 * scale);
    double previous = 0.0;
    for (double p : pieces) {
      if (std::fabs(p) <= negligible) continue;
      if (previous != 0.0 && (previous > 0) == (p > 0)) {
        std::ostringstream msg;
        msg << "oscillatory tail does not alternate between zeros (pieces " << previous << ", " << p << ")";
        throw ConvergenceError(msg.str());
      }
      previous = p;
    }
    return scale;
  };

  extend_to(static_cast<std::size_t>(cfg.accel_terms));
  double scale = check_alternation();
  AcceleratedSum tail{0.0, 0.0};
  if (scale > 0.0) {
    tail = accelerate_alternating(pieces);
    if (tail.err_est > cfg.target(head.value + tail.value) && pieces.size() < 24) {
      extend_to(24);
      scale = check_alternation();
      tail = accelerate_alternating(pieces);
    }
  }

  out.value = head.value + tail.value;
  out.err_est = head.err_est + piece_err + tail.err_est;
  if (tail.err_est > cfg.target(out.value)) out.converged = false;
  return out;
}

Rule gauss_legendre(int n, double a, double b) {
  Rule rule;
  auto fill = [&](const auto& xs, const auto& ws, bool has_zero) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const std::size_t m = xs.size();
    for (std::size_t i = m; i-- > 0;) {
      if (has_zero && i == 0) continue;
      rule.nodes.push_back(c - h * xs[i]);
      rule.weights.push_back(h * ws[i]);
    }
    for (std::size_t i = 0; i < m; ++i) {
      rule.nodes.push_back(c + h * xs[i]);
      rule.weights.push_back(h * ws[i]);
    }
  };
  if (n == 8) {
    fill(boost::math::quadrature::gauss<double, 8>::abscissa(), boost::math::quadrature::gauss<double, 8>::weights(), false);
  } else if (n == 16) {
    fill(boost::math::quadrature::gauss<double, 16>::abscissa(), boost::math::quadrature::gauss<double, 16>::weights(), false);
  } else {
    throw DomainError("gauss_legendre supports 8 or 16 nodes");
  }
  return rule;
}

}  // namespace weber_orr
