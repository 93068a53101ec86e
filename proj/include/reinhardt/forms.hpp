#ifndef REINHARDT_FORMS_HPP_
#define REINHARDT_FORMS_HPP_

#include <string>

#include "reinhardt/points.hpp"

namespace reinhardt {

// The five normalized forms of hyperbolic Reinhardt domains in C^2. With
// w = 1 - |z1|^2:
//
//   11  {|z1| < 1, |z2| < R w^alpha}                     0 < R < inf
//   12  {|z1| < 1, r w^alpha < |z2| < R w^alpha}         0 < r < R <= inf
//   13  {|z1| < 1, 0 < |z2| < R w^alpha}                 0 < R < inf
//   14  {r e^{beta|z1|^2} < |z2| < R e^{beta|z1|^2}}     0 < r < R <= inf, beta != 0
//   15  {0 < |z2| < R e^{beta|z1|^2}}                    0 < R < inf, beta != 0
enum class FormKind : int {
  DiscFiber = 11,
  AnnulusFiber = 12,
  PuncturedFiber = 13,
  GaussianAnnulus = 14,
  GaussianPunctured = 15,
};

struct NormalForm {
  FormKind kind = FormKind::DiscFiber;
  double alpha = 0.0;  // forms 11-13
  double beta = 0.0;   // forms 14-15
  double r = 0.0;      // forms 12, 14 (lower wall constant)
  double R = 1.0;      // upper wall constant, may be kInfinity for 12, 14

  int id() const { return static_cast<int>(kind); }
  /// Forms 11-13 are fibred over the unit disc; 14-15 over the whole plane.
  bool over_disc() const { return id() <= 13; }
  bool has_lower_wall() const { return kind == FormKind::AnnulusFiber || kind == FormKind::GaussianAnnulus; }

  static NormalForm disc_fiber(double alpha, double R);
  static NormalForm annulus_fiber(double alpha, double r, double R);
  static NormalForm punctured_fiber(double alpha, double R);
  static NormalForm gaussian_annulus(double beta, double r, double R);
  static NormalForm gaussian_punctured(double beta, double R);
  /// Dispatches on the numeric form id (11..15); unused parameters are ignored.
  static NormalForm make(int form_id, double alpha, double beta, double r, double R);

  /// Throws InputError when the parameters fall outside the form's range.
  void validate() const;

  std::string describe() const;

  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

/// Signed defining function: negative exactly on the form's point set.
double defining_function(const NormalForm& nf, ModulusPoint p);

AxisFlags axis_intersections(const NormalForm& nf);

}  // namespace reinhardt

#endif  // REINHARDT_FORMS_HPP_
