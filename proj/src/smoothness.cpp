#include "reinhardt/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "reinhardt/errors.hpp"

namespace reinhardt {

bool SmoothnessClass::at_least(int k) const {
  switch (kind) {
    case Kind::CInfinity: return true;
    case Kind::CExactly: return k >= 0 && j >= k;
    case Kind::BelowC1: return false;
  }
  return false;
}

std::string SmoothnessClass::to_string() const {
  switch (kind) {
    case Kind::CInfinity: return "C^inf";
    case Kind::CExactly: return "C^" + std::to_string(j);
    case Kind::BelowC1: return "below C^1";
  }
  return "?";
}

int exceptional_index(double alpha) {
  if (!(alpha > 0.0) || alpha > 0.5 + kExceptionalGuard) return 0;
  const double m = std::round(1.0 / (2.0 * alpha));
  if (m < 1.0 || m > 1e9) return 0;
  return std::fabs(alpha - 1.0 / (2.0 * m)) <= kExceptionalGuard ? static_cast<int>(m) : 0;
}

SmoothnessClass smoothness_class_case_i(double alpha) {
  if (!std::isfinite(alpha)) throw InputError("alpha must be finite");
  if (alpha == 0.0) throw InputError("alpha = 0 gives the bidisc, which is excluded");
  if (alpha < 0.0) return SmoothnessClass::infinity();
  if (const int m = exceptional_index(alpha)) {
    SmoothnessClass c = SmoothnessClass::infinity();
    c.near_exceptional = alpha != 1.0 / (2.0 * m);
    return c;
  }
  const double j = std::ceil(1.0 / (2.0 * alpha)) - 1.0;
  if (j < 1.0) return SmoothnessClass::below_c1();
  return SmoothnessClass::exactly(static_cast<int>(std::min(j, 1e9)));
}

namespace {

// n-th forward difference quotient of s^p anchored at s = 0.
double forward_quotient(double p, int n, double h) {
  double sum = 0.0;
  double binom = 1.0;  // C(n, i)
  for (int i = 0; i <= n; ++i) {
    const double sign = ((n - i) % 2 == 0) ? 1.0 : -1.0;
    sum += sign * binom * std::pow(i * h, p);
    binom = binom * (n - i) / (i + 1);
  }
  return sum / std::pow(h, n);
}

// Rounding floor for forward_quotient: eps times the sum of absolute terms.
double quotient_noise(double p, int n, double h) {
  double sum = 0.0;
  double binom = 1.0;
  for (int i = 0; i <= n; ++i) {
    sum += binom * std::pow(i * h, p);
    binom = binom * (n - i) / (i + 1);
  }
  return std::numeric_limits<double>::epsilon() * sum / std::pow(h, n);
}

double safe_ratio(double num, double den) {
  if (den == 0.0) return num == 0.0 ? 0.0 : kInfinity;
  return num / den;
}

}  // namespace

SmoothnessWitness smoothness_witness(double alpha, int j, double h_min) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InputError("witness needs alpha > 0");
  if (j < 1) throw InputError("witness needs j >= 1");
  if (!(h_min >= 1e-12)) throw InputError("h_min below 1e-12 is beyond double precision");
  if (h_min > 1e-3) throw InputError("h_min must leave at least two decades below 1e-1");

  SmoothnessWitness w;
  w.direction = "|z1|^2 as a function of s = |z2|^2 at s = 0";
  const double p = 1.0 / (2.0 * alpha);
  for (double e = 1.0;; e += 0.5) {
    const double h = std::pow(10.0, -e);
    if (h < h_min * (1.0 - 1e-12)) break;
    w.steps.push_back(h);
    w.order_j.push_back(std::fabs(forward_quotient(p, j, h)));
    w.order_j1.push_back(std::fabs(forward_quotient(p, j + 1, h)));
  }
  w.decades = std::log10(w.steps.front() / w.steps.back());
  w.order_j_ratio = safe_ratio(w.order_j.back(), w.order_j.front());
  w.growth_factor = safe_ratio(w.order_j1.back(), w.order_j1.front());
  const bool converges = w.order_j_ratio <= 1.0 + 1e-9;
  // Growth out of an exact zero is rounding, not divergence.
  const bool above_noise = w.order_j1.back() > 100.0 * quotient_noise(p, j + 1, w.steps.back());
  w.confirmed = converges && above_noise && w.growth_factor > 10.0 && w.decades >= 2.0;
  return w;
}

std::pair<double, double> numerical_gradient(const ReinhardtDomain& d, ModulusPoint p, double h) {
  auto g = [&](double m1, double m2) { return d.g({std::fabs(m1), std::fabs(m2)}); };
  auto central = [&](int axis, double step) {
    if (axis == 0) return (g(p.m1 + step, p.m2) - g(p.m1 - step, p.m2)) / (2.0 * step);
    return (g(p.m1, p.m2 + step) - g(p.m1, p.m2 - step)) / (2.0 * step);
  };
  auto richardson = [&](int axis) {
    const double base = h * std::max(1.0, axis == 0 ? p.m1 : p.m2);
    const double d1 = central(axis, base);
    const double d2 = central(axis, base / 2);
    const double d4 = central(axis, base / 4);
    const double r1 = (4.0 * d2 - d1) / 3.0;
    const double r2 = (4.0 * d4 - d2) / 3.0;
    return (16.0 * r2 - r1) / 15.0;
  };
  return {richardson(0), richardson(1)};
}

double gradient_min_on_boundary(const ReinhardtDomain& d, int n, double tol) {
  const auto points = sample_boundary(d, n, tol);
  double best = kInfinity;
  for (const auto& p : points) {
    const auto [gx, gy] = numerical_gradient(d, p);
    best = std::min(best, std::hypot(gx, gy));
  }
  return best;
}

}  // namespace reinhardt
