#pragma once

#include <string>

namespace weber_orr {

/// Bessel order. Finite and |nu| <= 50.
class Order {
 public:
  static constexpr double kMaxAbs = 50.0;

  explicit Order(double nu);

  double value() const { return nu_; }

 private:
  double nu_;
};

/// Kernel offset: the boundary order is l = k + offset.
enum class Offset { minus_one = -1, zero = 0, plus_one = 1 };

Offset offset_from_int(int offset);
int to_int(Offset offset);
std::string to_string(Offset offset);

/// Identifies one Weber-Orr transform W_{k,l} on [r0, inf).
struct TransformParams {
  TransformParams(double k, Offset offset, double r0);

  Order k;
  Offset offset;
  double r0;

  Order l() const { return Order(k.value() + to_int(offset)); }
};

}  // namespace weber_orr
