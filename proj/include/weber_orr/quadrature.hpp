#pragma once

#include <functional>
#include <span>
#include <vector>

namespace weber_orr {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 2000;
  int accel_terms = 12;        // zero-to-zero partial sums fed to the accelerator
  double tail_start_min = 0.0; // oscillatory tails never start below this abscissa

  void validate() const;
  double target(double value) const;  // max(abs_tol, rel_tol*|value|)
};

struct QuadratureResult {
  double value = 0.0;
  double err_est = 0.0;
  bool converged = true;
  long evaluations = 0;
};

/// Asymptotic shape of an oscillatory integrand.
struct TailDescriptor {
  double oscillation_scale = 1.0;  // zero spacing
  double envelope_exponent = 0.5;  // envelope ~ x^-p
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 21-point Gauss-Kronrod on [a, b]; the error estimate is the
/// QUADPACK-scaled difference to the embedded 10-point Gauss rule.
/// Hitting max_subdivisions returns the partial value with converged = false.
QuadratureResult integrate_adaptive(const Integrand& f, double a, double b, const QuadratureConfig& cfg);

/// Same, starting from the partition given by `breaks` (sorted, at least two points).
QuadratureResult integrate_adaptive(const Integrand& f, std::span<const double> breaks,
                                    const QuadratureConfig& cfg);

/// Integral over [a, inf) of a non-oscillatory integrand, via s = a + t/(1-t).
QuadratureResult integrate_semi_infinite(const Integrand& f, double a, const QuadratureConfig& cfg);

/// Supplies the next zero of an oscillatory integrand each time it is called.
using ZeroStream = std::function<double()>;

/// Integral over [a, inf) of an integrand that changes sign at the zeros yielded by `zeros`.
/// [a, z1] is integrated adaptively; the zero-to-zero pieces after z1 are summed with
/// Cohen-Villegas-Zagier acceleration (accel_terms pieces, extended once to 24).
/// Throws ConvergenceError if the pieces do not alternate.
QuadratureResult integrate_oscillatory(const Integrand& f, double a, const ZeroStream& zeros,
                                       const QuadratureConfig& cfg);

struct AcceleratedSum {
  double value;
  double err_est;  // |A_n - A_{n-2}|
};

/// Sum of the alternating series p_0 + p_1 + ... whose terms alternate in sign.
AcceleratedSum accelerate_alternating(std::span<const double> pieces);

/// Deterministic pairwise (tree) summation.
double pairwise_sum(std::span<const double> values);

/// Nodes and weights of an n-point Gauss-Legendre rule on [a, b] (n in {8, 16}).
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
Rule gauss_legendre(int n, double a, double b);

}  // namespace weber_orr
