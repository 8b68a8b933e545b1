#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "weber_orr/quadrature.hpp"

namespace weber_orr {

enum class DecayKind { compact, exponential, algebraic };

/// Where a radial function lives. For compact functions [start, end] bounds the
/// support; otherwise `rate` is the exponential rate alpha (f ~ e^{-alpha r}) or the
/// algebraic exponent e (f ~ r^e).
struct Support {
  double start = 0.0;
  double end = std::numeric_limits<double>::infinity();
  DecayKind decay = DecayKind::compact;
  double rate = 0.0;
  double power = 0.0;  // polynomial prefactor r^power of an exponential decay
};

/// A function on [r0, inf). Values outside [start, end] are zero.
class RadialFunction {
 public:
  using Eval = std::function<double(double)>;
  using NormFn = std::function<double(double r0)>;

  RadialFunction(std::string name, Eval value, Eval derivative, Support support, bool admissible,
                 NormFn analytic_norm_sq = {}, std::vector<double> breaks = {});

  double operator()(double r) const;
  double derivative(double r) const;

  const std::string& name() const { return name_; }
  const Support& support() const { return support_; }

  /// sqrt(r) f in L1 and L2 on [r0, inf), as established by the factory or check_admissibility.
  bool admissible() const { return admissible_; }
  void set_admissible(bool value) { admissible_ = value; }

  /// f in L2(r dr): enough for the forward transform to exist.
  bool square_integrable() const;

  /// ||f||^2 in L2([r0, inf); r dr) when a closed form is known.
  std::optional<double> analytic_norm_sq(double r0) const;

  /// Upper limit beyond which f is negligible (|f| r^2 below 1e-20 of its size), or +inf.
  double effective_end(double r0) const;

  /// Radius scale past which f carries no structure; used to size spectral grids.
  double feature_end(double r0) const;

  bool is_zero() const { return zero_; }

  /// Interior points where f is not smooth (sampled grids); quadrature splits there.
  const std::vector<double>& breaks() const { return breaks_; }

 private:
  friend RadialFunction make_zero();

  std::string name_;
  Eval value_;
  Eval derivative_;
  Support support_;
  bool admissible_;
  NormFn norm_;
  std::vector<double> breaks_;
  bool zero_ = false;
};

RadialFunction make_zero();
/// (r-a)^2 (b-r)^2 on [a, b].
RadialFunction make_bump(double a, double b);
/// r^e, e < -1.
RadialFunction make_power(double exponent);
/// e^{-alpha r} r^shift.
RadialFunction make_exp_decay(double alpha, double shift);
/// Modified-Akima cubic through (r_i, f_i), zero outside the grid span.
RadialFunction make_sampled(std::vector<double> nodes, std::vector<double> values);
/// alpha f + beta g.
RadialFunction linear_combination(double alpha, const RadialFunction& f, double beta, const RadialFunction& g);

/// "bump:a,b", "power:e", "exp:alpha,shift" (shift optional) or "zero".
RadialFunction parse_function_spec(const std::string& spec);

/// Checks that sqrt(r) f is in L1 and L2 on [r0, inf) and records the answer on f.
bool check_admissibility(RadialFunction& f, double r0);

/// int_{r0}^inf w(s) f(s) ds for a smooth, non-oscillatory weight w.
QuadratureResult integrate_against(const RadialFunction& f, double r0, const Integrand& weight,
                                   const QuadratureConfig& cfg);

/// ||f||^2 = int_{r0}^inf f(r)^2 r dr.
double l2_norm_radial(const RadialFunction& f, double r0, const QuadratureConfig& cfg);

}  // namespace weber_orr
