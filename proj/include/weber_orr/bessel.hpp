#pragma once

#include "weber_orr/params.hpp"

namespace weber_orr {

// Bessel functions of real order and positive argument, and the normalized
// cross-product kernel
//
//   Phi_{k,l}(lambda, r) = (J_k(lambda r) Y_l(lambda r0) - Y_k(lambda r) J_l(lambda r0))
//                          / sqrt(J_l(lambda r0)^2 + Y_l(lambda r0)^2)
//
// that every transform in this library is built from.

/// Below this value of lambda*r0 the boundary vector is replaced by its
/// small-argument limit and the kernel is taken as zero.
inline constexpr double kSmallArgumentGuard = 1e-10;

double bessel_j(Order nu, double x);
double bessel_y(Order nu, double x);

/// Two-term large-argument (Hankel) forms
///   J ~ sqrt(2/(pi x)) (cos w - (4nu^2-1)/(8x) sin w)
///   Y ~ sqrt(2/(pi x)) (sin w + (4nu^2-1)/(8x) cos w),  w = x - nu pi/2 - pi/4,
/// with O(x^-2) relative remainder.
double asymptotic_j(Order nu, double x);
double asymptotic_y(Order nu, double x);

/// The pair (J_nu(x), Y_nu(x)). Y may be -inf where it overflows a double.
struct BesselPair {
  double j;
  double y;
};
BesselPair bessel_pair(Order nu, double x);

/// (J_l(lambda r0), Y_l(lambda r0)) scaled to unit length.
struct BoundaryVector {
  double cj;
  double cy;
};
BoundaryVector boundary_vector(Order l, double lambda, double r0);

struct KernelPoint {
  double lambda;
  double r;
};

double kernel_phi(const TransformParams& params, KernelPoint point);

/// Phi_{k,l}(lambda, .) for one fixed lambda; the boundary factor is evaluated once.
class KernelSlice {
 public:
  KernelSlice(const TransformParams& params, double lambda);

  double operator()(double r) const;
  double lambda() const { return lambda_; }

 private:
  TransformParams params_;
  double lambda_;
  bool vanishes_;
  BesselPair boundary_;
  double norm_;
};

/// Next lambda > lambda_start where Phi(lambda, r) = 0, for fixed r > r0.
/// Asymptotic zero spacing is pi/(r - r0).
double kernel_zero_after(const TransformParams& params, double r, double lambda_start);

/// Next s > s_start where Phi(lambda, s) = 0, for fixed lambda. Asymptotic spacing is pi/lambda.
double kernel_zero_after_radius(const TransformParams& params, double lambda, double s_start);

/// Asymptotic phase of Phi in either variable: Phi ~ -envelope * sin(lambda (r - r0) - (k - l) pi/2).
double kernel_phase_shift(const TransformParams& params);

/// sqrt(2/(pi x)), the large-argument envelope of J and Y.
double bessel_envelope(double x);

}  // namespace weber_orr
