#pragma once

#include <string>
#include <vector>

#include "weber_orr/catalog.hpp"
#include "weber_orr/params.hpp"
#include "weber_orr/quadrature.hpp"

namespace weber_orr {

/// w_t = w_rr + w_r / r - k^2 w / r^2 on r > r0 with
///   dirichlet:    w(r0) = 0               (transform offset zero)
///   robin_plus:   r0 w_r + k w = 0 at r0  (offset minus_one)
///   robin_minus:  r0 w_r - k w = 0 at r0  (offset plus_one)
enum class BoundaryCondition { dirichlet, robin_plus, robin_minus };

Offset offset_for(BoundaryCondition bc);
BoundaryCondition boundary_from_string(const std::string& name);
std::string to_string(BoundaryCondition bc);

enum class HeatMethod { spectral, finite_difference };

struct HeatSolution {
  std::vector<double> times;
  std::vector<double> r_grid;
  std::vector<std::vector<double>> values;  // values[time][radius]
  HeatMethod method = HeatMethod::spectral;
};

struct HeatProblem {
  double k = 0.0;
  double r0 = 1.0;
  BoundaryCondition bc = BoundaryCondition::dirichlet;

  TransformParams params() const { return TransformParams(k, offset_for(bc), r0); }
};

/// w(t) = W^{-1}[e^{-lambda^2 t} W f] plus the stationary kernel term where the transform has one.
HeatSolution evolve_spectral(const RadialFunction& f, const HeatProblem& problem, const std::vector<double>& times,
                             const std::vector<double>& r_grid, const QuadratureConfig& cfg);

struct FdConfig {
  int intervals = 4096;
  double dt_max = 1e-3;
  double r_far = 0.0;  // 0: sup(support) + 8 sqrt(t_max) + 2 r0
};

/// Crank-Nicolson on a uniform grid over [r0, R]; Robin conditions use a ghost node,
/// and w(R) = 0. The returned grid is the full finite-difference grid.
HeatSolution evolve_fd(const RadialFunction& f, const HeatProblem& problem, const std::vector<double>& times,
                       const FdConfig& cfg = {});

/// Every stride-th radius of a solution (the last radius is always kept).
HeatSolution subsample(const HeatSolution& s, int stride);

struct SolutionGap {
  std::vector<double> gap;  // per time: ||a - b|| / max(||a||, 1e-14), L2(r dr) by the trapezoid rule
  double max_gap = 0.0;
};

SolutionGap compare_solutions(const HeatSolution& a, const HeatSolution& b);

}  // namespace weber_orr
