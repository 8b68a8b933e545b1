#pragma once

#include <vector>

#include "weber_orr/params.hpp"
#include "weber_orr/quadrature.hpp"

namespace weber_orr {

/// Large-lambda model of a transform, obtained from two integrations by parts at r0:
///   g(lambda) ~ rho(lambda) (b1 / lambda^2 + b2 / lambda^4),
/// rho = r0 dPhi/dr(lambda, r0) for Dirichlet kernels and rho = Phi(lambda, r0) for Robin ones.
struct TailModel {
  enum class Kind { none, dirichlet, robin };
  Kind kind = Kind::none;
  double b1 = 0.0;
  double b2 = 0.0;

  bool active() const { return kind != Kind::none && (b1 != 0.0 || b2 != 0.0); }
};

/// Small-lambda model for lambda below the first body node. Built from the leading
/// small-argument forms of J and Y and the moments
///   m_j = int s^{|k|+1} f ds,  m_y = int s^{1-|k|} f ds,  m_log = int s ln(s) f ds.
struct HeadModel {
  bool present = false;
  double m_j = 0.0;
  double m_y = 0.0;
  double m_log = 0.0;
};

/// Values of W_{k,l}[f] on a lambda grid.
///
/// When `weights` is non-empty the nodes form a composite Gauss-Legendre rule on
/// [body_lo, body_hi] and integrals over lambda use it directly; otherwise the values are
/// interpolated (modified Akima) between the first and last node.
struct SpectralFunction {
  explicit SpectralFunction(TransformParams p) : params(p) {}

  TransformParams params;
  std::vector<double> nodes;
  std::vector<double> values;
  std::vector<double> weights;
  double body_lo = 0.0;
  double body_hi = 0.0;
  TailDescriptor tail;
  TailModel tail_model;
  HeadModel head;
  double damping_time = 0.0;  // values are multiplied by exp(-lambda^2 t) wherever they are used

  bool quadrature_ready() const { return !weights.empty(); }
  void validate() const;
};

/// rho(lambda) of the tail model.
double boundary_slope(const TransformParams& params, double lambda);

/// rho(lambda) (b1/lambda^2 + b2/lambda^4).
double tail_model_value(const SpectralFunction& g, double lambda);

/// Head-model transform value g(lambda) for lambda below the body.
double head_value(const SpectralFunction& g, double lambda);

/// int_0^{body_lo} Phi(lambda, r) g(lambda) lambda e^{-lambda^2 t} dlambda from the head model.
QuadratureResult head_inverse(const SpectralFunction& g, double r, const QuadratureConfig& cfg);

/// int_0^{body_lo} g(lambda)^2 lambda e^{-2 lambda^2 t} dlambda from the head model.
QuadratureResult head_norm_sq(const SpectralFunction& g, const QuadratureConfig& cfg);

}  // namespace weber_orr
