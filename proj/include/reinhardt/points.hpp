#ifndef REINHARDT_POINTS_HPP_
#define REINHARDT_POINTS_HPP_

#include <cmath>
#include <limits>

namespace reinhardt {

/// Stands in for R = infinity in band parameters.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Log-moduli coordinates (log|z1|, log|z2|). Points on the coordinate axes are
/// not representable here; use ModulusPoint for those.
struct LogPoint {
  double u1 = 0.0;
  double u2 = 0.0;

  friend bool operator==(const LogPoint&, const LogPoint&) = default;
};

/// Moduli (|z1|, |z2|). Membership in a Reinhardt domain depends only on these.
struct ModulusPoint {
  double m1 = 0.0;
  double m2 = 0.0;

  friend bool operator==(const ModulusPoint&, const ModulusPoint&) = default;
};

inline ModulusPoint to_modulus(LogPoint u) { return {std::exp(u.u1), std::exp(u.u2)}; }

/// Requires both moduli strictly positive.
inline LogPoint to_log(ModulusPoint p) { return {std::log(p.m1), std::log(p.m2)}; }

/// Which coordinate lines {z1 = 0}, {z2 = 0} a domain meets.
struct AxisFlags {
  bool axis1 = false;
  bool axis2 = false;

  bool any() const { return axis1 || axis2; }
  friend bool operator==(const AxisFlags&, const AxisFlags&) = default;
};

}  // namespace reinhardt

#endif  // REINHARDT_POINTS_HPP_
