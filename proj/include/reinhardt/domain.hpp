#ifndef REINHARDT_DOMAIN_HPP_
#define REINHARDT_DOMAIN_HPP_

#include <cstddef>
#include <functional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "reinhardt/forms.hpp"
#include "reinhardt/points.hpp"

namespace reinhardt {

/// {|z1|^2 + |z2|^{1/alpha} < 1}, alpha != 0. For alpha < 0 the term
/// |z2|^{1/alpha} is +inf on {z2 = 0}, which is therefore excluded.
struct TheoremIParams {
  double alpha = 0.5;
};

/// {|z1| < 1, w^alpha < |z2| < R w^alpha}, alpha < 0, 1 < R <= inf.
struct TheoremIIParams {
  double alpha = -1.0;
  double R = 2.0;
};

/// {e^{beta|z1|^2} < |z2| < R e^{beta|z1|^2}}, beta != 0, 1 < R <= inf.
struct TheoremIIIParams {
  double beta = 1.0;
  double R = 2.0;
};

/// Arbitrary domain {g < 0}. Axis flags are supplied by the caller since g
/// cannot be probed reliably on the measure-zero axes; `expr` keeps the
/// mini-language source when the domain came from (or has) one.
struct CustomDomain {
  std::function<double(ModulusPoint)> g;
  AxisFlags axes;
  std::string expr;
};

class ReinhardtDomain {
 public:
  using Kind = std::variant<TheoremIParams, TheoremIIParams, TheoremIIIParams, NormalForm, CustomDomain>;

  static ReinhardtDomain theorem_i(double alpha);
  static ReinhardtDomain theorem_ii(double alpha, double R);
  static ReinhardtDomain theorem_iii(double beta, double R);
  static ReinhardtDomain normal_form(const NormalForm& nf);
  static ReinhardtDomain custom(std::function<double(ModulusPoint)> g, AxisFlags axes, std::string expr = {});
  /// Custom domain whose defining function is an expression in m1, m2.
  static ReinhardtDomain from_expression(const std::string& expr, AxisFlags axes);

  const Kind& kind() const { return kind_; }

  /// Canonical signed defining function; no input validation. NaN results are
  /// reported as +inf (outside).
  double g(ModulusPoint p) const;

  std::string describe() const;

 private:
  explicit ReinhardtDomain(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

bool contains(const ReinhardtDomain& d, ModulusPoint p);

/// g(e^{u1}, e^{u2}); the sign agrees with contains().
double shadow_value(const ReinhardtDomain& d, LogPoint u);

AxisFlags axis_intersections(const ReinhardtDomain& d);

/// n points within `tol` of the zero set of g, found by bisection along rays
/// from interior seed points. Throws SamplingError when fewer are found.
std::vector<ModulusPoint> sample_boundary(const ReinhardtDomain& d, int n, double tol);

/// Deterministic interior points spread over the domain (used as ray seeds).
std::vector<ModulusPoint> interior_seeds(const ReinhardtDomain& d, std::size_t max_count = 8);

/// n random interior points (g < 0). Parametric kinds are sampled directly
/// from their defining inequalities, custom domains by rejection from a log
/// box plus the axes they meet.
std::vector<ModulusPoint> sample_interior(const ReinhardtDomain& d, std::size_t n, std::mt19937_64& rng);

struct ShadowBounds {
  double u1_lo = -1.0;
  double u1_hi = 1.0;
  double u2_lo = -1.0;
  double u2_hi = 1.0;
};

/// Shadow samples on an inclusive lattice; values are row-major with u1 as
/// the outer (row) index.
struct ShadowGrid {
  ShadowBounds bounds;
  int n1 = 0;
  int n2 = 0;
  std::vector<double> values;

  LogPoint point(int i1, int i2) const;
  double at(int i1, int i2) const { return values[static_cast<std::size_t>(i1) * n2 + i2]; }
};

ShadowGrid rasterize_shadow(const ReinhardtDomain& d, const ShadowBounds& bounds, int n1, int n2);

/// CSV with header `u1,u2,g`, one row per lattice point in storage order.
std::string to_csv(const ShadowGrid& grid);

}  // namespace reinhardt

#endif  // REINHARDT_DOMAIN_HPP_
