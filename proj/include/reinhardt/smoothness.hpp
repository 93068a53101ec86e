#ifndef REINHARDT_SMOOTHNESS_HPP_
#define REINHARDT_SMOOTHNESS_HPP_

#include <string>
#include <vector>

#include "reinhardt/domain.hpp"

namespace reinhardt {

struct SmoothnessClass {
  enum class Kind { CInfinity, CExactly, BelowC1 };
  Kind kind = Kind::CInfinity;
  int j = 0;  // meaningful for CExactly: C^j but not C^{j+1}
  /// Set when alpha was within the exactness guard of some 1/(2m) but not
  /// bit-identical to it.
  bool near_exceptional = false;

  static SmoothnessClass infinity() { return {Kind::CInfinity, 0, false}; }
  static SmoothnessClass exactly(int j) { return {Kind::CExactly, j, false}; }
  static SmoothnessClass below_c1() { return {Kind::BelowC1, 0, false}; }

  /// True when the class includes C^k (k < 0 stands for k = infinity).
  bool at_least(int k) const;

  std::string to_string() const;
  bool operator==(const SmoothnessClass& o) const { return kind == o.kind && j == o.j; }
};

/// Distance under which alpha is treated as 1/(2m).
inline constexpr double kExceptionalGuard = 1e-12;

/// The m with |alpha - 1/(2m)| <= guard, or 0.
int exceptional_index(double alpha);

/// Boundary class of {|z1|^2 + |z2|^{1/alpha} < 1}:
///   alpha < 0            -> C^inf
///   alpha = 1/(2m)       -> C^inf
///   0 < alpha < 1/2      -> C^j with j = ceil(1/(2 alpha)) - 1
///   otherwise            -> below C^1
/// alpha = 0 (the bidisc) throws InputError.
SmoothnessClass smoothness_class_case_i(double alpha);

struct SmoothnessWitness {
  bool confirmed = false;
  /// |D_j(h)| and |D_{j+1}(h)| for each probed step h (largest first).
  std::vector<double> steps;
  std::vector<double> order_j;
  std::vector<double> order_j1;
  double order_j_ratio = 0.0;    // |D_j(h_min)| / |D_j(h_max)|
  double growth_factor = 0.0;    // |D_{j+1}(h_min)| / |D_{j+1}(h_max)|
  double decades = 0.0;
  std::string direction;
};

/// Finite-difference confirmation of a C^j-but-not-C^{j+1} verdict. The probe
/// looks at the boundary near {z2 = 0} written as |z1|^2 = 1 - s^{1/(2 alpha)}
/// in the smooth coordinate s = |z2|^2, and takes forward differences anchored
/// at s = 0 with steps from 1e-1 down to h_min. Confirmed when the order-j
/// quotients do not grow and the order-(j+1) quotients grow by more than 10
/// over the probed range (which spans at least two decades).
SmoothnessWitness smoothness_witness(double alpha, int j, double h_min = 1e-10);

/// Minimum Euclidean norm of the gradient of g (central differences with
/// Richardson extrapolation) over n sampled boundary points.
double gradient_min_on_boundary(const ReinhardtDomain& d, int n, double tol);

/// Central-difference gradient of g in moduli, Richardson extrapolated over
/// steps h, h/2, h/4. Moduli are reflected through zero (g depends on |z|).
std::pair<double, double> numerical_gradient(const ReinhardtDomain& d, ModulusPoint p, double h = 1e-4);

}  // namespace reinhardt

#endif  // REINHARDT_SMOOTHNESS_HPP_
