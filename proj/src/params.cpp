#include "weber_orr/params.hpp"

#include <cmath>
#include <sstream>

#include "weber_orr/error.hpp"

namespace weber_orr {

Offset offset_from_int(int offset) {
  switch (offset) {
    case -1: return Offset::minus_one;
    case 0: return Offset::zero;
    case 1: return Offset::plus_one;
    default: break;
  }
  std::ostringstream msg;
  msg << "kernel offset must be -1, 0 or 1 (got " << offset << ")";
  throw DomainError(msg.str());
}

int to_int(Offset offset) { return static_cast<int>(offset); }

std::string to_string(Offset offset) {
  switch (offset) {
    case Offset::minus_one: return "minus_one";
    case Offset::zero: return "zero";
    case Offset::plus_one: return "plus_one";
  }
  return "?";
}

TransformParams::TransformParams(double k_, Offset offset_, double r0_)
    : k(k_), offset(offset_), r0(r0_) {
  if (!(r0 > 0) || !std::isfinite(r0)) throw DomainError("inner radius r0 must be positive and finite");
  (void)l();
}

}  // namespace weber_orr
