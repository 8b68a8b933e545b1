#include "weber_orr/heat.hpp"

#include <algorithm>
#include <cmath>

#include "weber_orr/error.hpp"
#include "weber_orr/transform.hpp"

namespace weber_orr {

namespace {

void check_times(const std::vector<double>& times) {
  if (times.empty()) throw DomainError("time grid is empty");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0) || !std::isfinite(times[i])) throw DomainError("times must be finite and nonnegative");
    if (i > 0 && !(times[i] > times[i - 1])) throw DomainError("times must be strictly increasing");
  }
}

// Solves a tridiagonal system in place (Thomas algorithm). a: sub, b: diag, c: super.
void thomas(std::vector<double> a, std::vector<double> b, const std::vector<double>& c, std::vector<double>& d) {
  const std::size_t n = b.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double m = a[i] / b[i - 1];
    b[i] -= m * c[i - 1];
    d[i] -= m * d[i - 1];
  }
  d[n - 1] /= b[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) d[i] = (d[i] - c[i] * d[i + 1]) / b[i];
}

double l2_trapezoid(const std::vector<double>& r, const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < r.size(); ++i)
    s += 0.5 * (r[i + 1] - r[i]) * (v[i] * v[i] * r[i] + v[i + 1] * v[i + 1] * r[i + 1]);
  return std::sqrt(s);
}

}  // namespace

Offset offset_for(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::dirichlet: return Offset::zero;
    case BoundaryCondition::robin_plus: return Offset::minus_one;
    case BoundaryCondition::robin_minus: return Offset::plus_one;
  }
  return Offset::zero;
}

BoundaryCondition boundary_from_string(const std::string& name) {
  if (name == "dirichlet") return BoundaryCondition::dirichlet;
  if (name == "robin_plus" || name == "robin-plus") return BoundaryCondition::robin_plus;
  if (name == "robin_minus" || name == "robin-minus") return BoundaryCondition::robin_minus;
  throw DomainError("unknown boundary condition '" + name + "' (dirichlet, robin_plus, robin_minus)");
}

std::string to_string(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::dirichlet: return "dirichlet";
    case BoundaryCondition::robin_plus: return "robin_plus";
    case BoundaryCondition::robin_minus: return "robin_minus";
  }
  return "?";
}

HeatSolution evolve_spectral(const RadialFunction& f, const HeatProblem& problem, const std::vector<double>& times,
                             const std::vector<double>& r_grid, const QuadratureConfig& cfg) {
  check_times(times);
  if (r_grid.empty()) throw DomainError("radius grid is empty");
  const TransformParams p = problem.params();

  double r_max = p.r0;
  for (double r : r_grid) r_max = std::max(r_max, r);
  double t_min = 0.0;
  for (double t : times)
    if (t > 0 && (t_min == 0.0 || t < t_min)) t_min = t;

  SpectralGridSpec spec{r_max, 0.0};
  if (t_min > 0) {
    // Past this lambda the Gaussian factor is below 1e-16 at the earliest positive time.
    const double cut = std::sqrt(std::log(1e16)) / std::sqrt(t_min) + 10;
    const double k = p.k.value();
    spec.lambda_max = std::max({100.0, 40.0 / p.r0, 4 * (k * k + 1) / p.r0, std::min(cut, 1e4)});
  }
  SpectralFunction g = forward_spectral(f, p, cfg, spec);
  const KernelProjection proj = kernel_coefficient(f, p, cfg);

  HeatSolution out;
  out.times = times;
  out.r_grid = r_grid;
  out.method = HeatMethod::spectral;
  for (double t : times) {
    g.damping_time = t;
    std::vector<double> w = inverse_grid(g, p, r_grid, cfg);
    for (std::size_t i = 0; i < r_grid.size(); ++i) w[i] += proj.term(r_grid[i]);
    out.values.push_back(std::move(w));
  }
  return out;
}

HeatSolution evolve_fd(const RadialFunction& f, const HeatProblem& problem, const std::vector<double>& times,
                       const FdConfig& cfg) {
  check_times(times);
  if (cfg.intervals < 8) throw DomainError("finite-difference grid needs at least 8 intervals");
  if (!(cfg.dt_max > 0)) throw DomainError("time step must be positive");
  const double r0 = problem.r0;
  const double k = problem.k;
  (void)problem.params();
  const double t_max = times.back();
  if (t_max > 10) throw DomainError("finite-difference reference supports t <= 10");

  double far = cfg.r_far;
  if (!(far > 0)) {
    double sup = f.effective_end(r0);
    if (!std::isfinite(sup)) sup = 100 * r0;
    far = std::max(sup, r0) + 8 * std::sqrt(t_max) + 2 * r0;
  }
  if (!(far > r0)) throw DomainError("finite-difference far radius must exceed r0");

  const int n = cfg.intervals;
  const double h = (far - r0) / n;
  std::vector<double> r(n + 1);
  for (int i = 0; i <= n; ++i) r[i] = r0 + h * i;

  // Unknowns: indices first..n-1; w_n = 0, and w_0 = 0 for Dirichlet.
  const bool dirichlet = problem.bc == BoundaryCondition::dirichlet;
  const int first = dirichlet ? 1 : 0;
  const int m = n - first;
  std::vector<double> lo(m, 0.0), di(m, 0.0), up(m, 0.0);
  const double h2 = h * h;
  for (int j = 0; j < m; ++j) {
    const int i = j + first;
    if (i == 0) {
      const double sigma = problem.bc == BoundaryCondition::robin_plus ? 1.0 : -1.0;
      di[j] = -2 / h2 + 2 * sigma * k / (h * r0) - sigma * k / (r0 * r0) - k * k / (r0 * r0);
      up[j] = 2 / h2;
      continue;
    }
    lo[j] = 1 / h2 - 1 / (2 * h * r[i]);
    di[j] = -2 / h2 - k * k / (r[i] * r[i]);
    up[j] = 1 / h2 + 1 / (2 * h * r[i]);
  }

  std::vector<double> w(m);
  for (int j = 0; j < m; ++j) w[j] = f(r[j + first]);

  auto full = [&](const std::vector<double>& v) {
    std::vector<double> out(n + 1, 0.0);
    for (int j = 0; j < m; ++j) out[j + first] = v[j];
    return out;
  };

  HeatSolution out;
  out.times = times;
  out.r_grid = r;
  out.method = HeatMethod::finite_difference;

  double now = 0.0;
  std::vector<double> rhs(m);
  std::vector<double> a(m), b(m), c(m);
  for (double target : times) {
    const double span = target - now;
    if (span > 0) {
      const int steps = static_cast<int>(std::ceil(span / cfg.dt_max - 1e-9));
      const double dt = span / steps;
      for (int j = 0; j < m; ++j) {
        a[j] = -0.5 * dt * lo[j];
        b[j] = 1 - 0.5 * dt * di[j];
        c[j] = -0.5 * dt * up[j];
      }
      for (int s = 0; s < steps; ++s) {
        for (int j = 0; j < m; ++j) {
          double v = (1 + 0.5 * dt * di[j]) * w[j];
          if (j > 0) v += 0.5 * dt * lo[j] * w[j - 1];
          if (j + 1 < m) v += 0.5 * dt * up[j] * w[j + 1];
          rhs[j] = v;
        }
        thomas(a, b, c, rhs);
        w.swap(rhs);
      }
      now = target;
    }
    out.values.push_back(full(w));
  }
  return out;
}

HeatSolution subsample(const HeatSolution& s, int stride) {
  if (stride < 1) throw DomainError("subsample stride must be positive");
  HeatSolution out;
  out.times = s.times;
  out.method = s.method;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < s.r_grid.size(); i += stride) keep.push_back(i);
  if (!s.r_grid.empty() && keep.back() != s.r_grid.size() - 1) keep.push_back(s.r_grid.size() - 1);
  for (std::size_t i : keep) out.r_grid.push_back(s.r_grid[i]);
  for (const auto& row : s.values) {
    std::vector<double> v;
    for (std::size_t i : keep) v.push_back(row[i]);
    out.values.push_back(std::move(v));
  }
  return out;
}

SolutionGap compare_solutions(const HeatSolution& a, const HeatSolution& b) {
  if (a.times.size() != b.times.size() || a.r_grid.size() != b.r_grid.size())
    throw DomainError("solutions are on different grids");
  for (std::size_t i = 0; i < a.times.size(); ++i)
    if (std::fabs(a.times[i] - b.times[i]) > 1e-12 * std::max(1.0, a.times[i])) throw DomainError("solutions have different times");
  for (std::size_t i = 0; i < a.r_grid.size(); ++i)
    if (std::fabs(a.r_grid[i] - b.r_grid[i]) > 1e-12 * std::max(1.0, a.r_grid[i])) throw DomainError("solutions have different radius grids");

  SolutionGap out;
  for (std::size_t t = 0; t < a.times.size(); ++t) {
    std::vector<double> diff(a.r_grid.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = a.values[t][i] - b.values[t][i];
    const double gap = l2_trapezoid(a.r_grid, diff) / std::max(l2_trapezoid(a.r_grid, a.values[t]), 1e-14);
    out.gap.push_back(gap);
    out.max_gap = std::max(out.max_gap, gap);
  }
  return out;
}

}  // namespace weber_orr
