#pragma once

#include <vector>

#include "weber_orr/bessel.hpp"
#include "weber_orr/catalog.hpp"
#include "weber_orr/params.hpp"
#include "weber_orr/quadrature.hpp"
#include "weber_orr/spectral.hpp"

namespace weber_orr {

/// W_{k,l}[f](lambda) = int_{r0}^inf Phi_{k,l}(lambda, s) f(s) s ds.
double forward_at(const RadialFunction& f, const TransformParams& p, double lambda, const QuadratureConfig& cfg);

/// forward_at on an arbitrary lambda list; the result interpolates between the nodes.
SpectralFunction forward_grid(const RadialFunction& f, const TransformParams& p, const std::vector<double>& lambdas,
                              const QuadratureConfig& cfg);

/// Wraps externally supplied samples (lambda_i, g_i). Between the nodes the values are
/// interpolated; above the last node a tail model is fitted when the samples reach
/// lambda r0 >= 20; below the first node the transform is taken as zero.
SpectralFunction spectral_from_samples(const TransformParams& p, std::vector<double> lambdas, std::vector<double> values);

struct SpectralGridSpec {
  double r_max = 0.0;       // largest radius the inverse will be evaluated at (0: feature scale of f)
  double lambda_max = 0.0;  // end of the sampled body (0: automatic)
};

/// Forward transform on a composite Gauss-Legendre lambda grid sized for inversion up to
/// spec.r_max, with head and tail models.
SpectralFunction forward_spectral(const RadialFunction& f, const TransformParams& p, const QuadratureConfig& cfg,
                                  SpectralGridSpec spec = {});

/// W^{-1}_{k,l}[g](r) = int_0^inf Phi_{k,l}(lambda, r) g(lambda) lambda dlambda.
double inverse_at(const SpectralFunction& g, const TransformParams& p, double r, const QuadratureConfig& cfg);
std::vector<double> inverse_grid(const SpectralFunction& g, const TransformParams& p, const std::vector<double>& r,
                                 const QuadratureConfig& cfg);

/// int_0^inf g(lambda)^2 lambda dlambda, including head and tail models.
double transform_norm_sq(const SpectralFunction& g, const QuadratureConfig& cfg);

struct KernelProjection {
  double coefficient = 0.0;
  double weight = 0.0;
  bool present = false;
  double exponent = 0.0;  // the kernel element is r^exponent

  double term(double r) const;  // weight * coefficient * r^exponent
};

/// Whether W_{k,l} annihilates a power of r: offset minus_one with k > 1, or plus_one with k < -1.
bool kernel_present(const TransformParams& p);

/// Projection of f onto the kernel: c = int s^{1-k} f ds and weight 2(k-1) r0^{2(k-1)} for
/// offset minus_one; c = int s^{k+1} f ds and weight -2(k+1) r0^{-2(k+1)} for plus_one.
KernelProjection kernel_coefficient(const RadialFunction& f, const TransformParams& p, const QuadratureConfig& cfg);

struct Reconstruction {
  std::vector<double> values;       // inverse of forward plus correction
  std::vector<double> uncorrected;  // inverse of forward only
  KernelProjection projection;
};

Reconstruction reconstruct(const RadialFunction& f, const TransformParams& p, const std::vector<double>& r_grid,
                           const QuadratureConfig& cfg);
/// Same, reusing a transform computed by forward_spectral.
Reconstruction reconstruct(const SpectralFunction& g, const RadialFunction& f, const TransformParams& p,
                           const std::vector<double>& r_grid, const QuadratureConfig& cfg);

struct PlancherelReport {
  double norm_f_sq = 0.0;
  double norm_transform_sq = 0.0;
  double kernel_term = 0.0;
  double residual = 0.0;
  KernelProjection projection;
};

PlancherelReport plancherel_report(const RadialFunction& f, const TransformParams& p, const QuadratureConfig& cfg);
PlancherelReport plancherel_report(const SpectralFunction& g, const RadialFunction& f, const TransformParams& p,
                                   const QuadratureConfig& cfg);

struct DecayReport {
  double sup_scaled = 0.0;                // max sqrt(lambda) |g|
  double slope = 0.0;                     // fitted log-log slope of the per-octave maxima of |g|
  std::vector<double> octave_start;       // left end of each octave
  std::vector<double> octave_max;         // max |g| per octave
  std::vector<double> octave_sup_scaled;  // max sqrt(lambda) |g| per octave
};

DecayReport decay_report(const SpectralFunction& g);

struct BesselInequality {
  bool passed = true;
  double norm_f_sq = 0.0;
  double norm_transform_sq = 0.0;
  double margin = 0.0;  // norm_f_sq - norm_transform_sq
};

BesselInequality bessel_inequality_check(const RadialFunction& f, const TransformParams& p, const QuadratureConfig& cfg);
BesselInequality bessel_inequality_check(const PlancherelReport& report);

}  // namespace weber_orr
