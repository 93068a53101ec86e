#ifndef REINHARDT_GALLERY_HPP_
#define REINHARDT_GALLERY_HPP_

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "reinhardt/domain.hpp"
#include "reinhardt/monomial.hpp"

namespace reinhardt {

// ---------------------------------------------------------------------------
// A Reinhardt domain in C^2 off both axes with an infinite monomial family:
//   sin(log(m1/m2)) < log(m1 m2) < sin(log(m1/m2)) + 1/2.

/// Source string of the defining function in the expression language.
inline constexpr const char* kExample1Expression =
    "max(sin(log(m1/m2)) - log(m1*m2), log(m1*m2) - sin(log(m1/m2)) - 0.5)";

ReinhardtDomain example1_domain();

/// z -> (e^pi z1, e^-pi z2).
MonomialMap example1_generator();

struct CoverPieceReport {
  double lo = 0.0;  // piece is {e^lo < |w| < e^hi} in the target annulus
  double hi = 0.0;
  bool bounded = false;
  std::size_t samples = 0;      // sampled points mapped into the piece
  std::size_t unassigned = 0;   // samples not inside any detected component
  int components = 0;           // components of the preimage per 2 pi in d
  double max_d_width = 0.0;     // widest component in d = log m1 - log m2
  double s_extent = 0.0;        // width in s = log m1 + log m2 (= hi - lo)
};

struct FibrationReport {
  bool image_in_annulus = false;
  double image_lo = 0.0;  // extreme log|z1 z2| over the samples
  double image_hi = 0.0;
  bool pieces_cover_image = false;
  std::array<CoverPieceReport, 3> pieces;

  std::array<bool, 3> cover_preimages_bounded() const {
    return {pieces[0].bounded, pieces[1].bounded, pieces[2].bounded};
  }
};

/// Samples n interior points, checks that z1 z2 lands in {e^-1 < |w| < e^{3/2}}
/// and that the preimage of each cover piece splits into components of finite
/// width in both log directions. Throws InputError for n < 1.
FibrationReport example1_fibration_check(int n, std::uint64_t seed = 1);

// ---------------------------------------------------------------------------
// A domain in C^3 with noncompact automorphism group and smooth boundary:
//   phi = |z1|^2 + w^2 |z2|^2 rho(x1, x2) + w^2 |z3|^2 - 1 < 0,
// with w = 1 - |z1|^2, x1 = |z2|^2 w, x2 = |z3|^2 w.

using Complex = std::complex<double>;

struct C3Point {
  Complex z1, z2, z3;
};

struct Example2Profile {
  std::string name;
  std::function<double(double, double)> rho;
  std::function<double(double, double)> rho_x1;
  std::function<double(double, double)> rho_x2;
  double c = 0.5;  // rho > c > 0

  /// Built from expressions in x1, x2; derivatives must be given explicitly.
  static Example2Profile from_expressions(const std::string& rho, const std::string& d1, const std::string& d2,
                                          double c);
};

/// rho = 1, rho = 1 + x1 + x2, rho = 1 + x1^2 + x2^2.
std::vector<Example2Profile> shipped_profiles();
/// Shipped profile by name ("one", "linear", "quadratic"); InputError otherwise.
Example2Profile profile_by_name(const std::string& name);

/// Checks rho > c > 0 and nonnegative partials on a lattice over [0, extent]^2.
/// Throws InputError on the first violation.
void validate_profile(const Example2Profile& prof, double extent = 10.0, int steps = 41);

double example2_phi(const C3Point& z, const Example2Profile& prof);

/// (d phi/d z1, d phi/d z2, d phi/d z3) in the Wirtinger sense.
std::array<Complex, 3> example2_gradient(const C3Point& z, const Example2Profile& prof);

/// Wirtinger derivatives of phi by central differences,
/// d/dz = (d/dx - i d/dy) / 2, with Richardson extrapolation.
std::array<Complex, 3> example2_numeric_gradient(const C3Point& z, const Example2Profile& prof, double h = 1e-4);

/// Random interior point with |z1| <= 0.95.
C3Point example2_sample_interior(const Example2Profile& prof, std::mt19937_64& rng);

struct GradientScan {
  double min_norm = 0.0;
  C3Point argmin;
  std::size_t samples = 0;
};

/// Minimum norm of the gradient over n boundary points found by bisection on
/// phi along random rays from the origin. Throws InputError for n < 1.
GradientScan example2_boundary_gradient_scan(const Example2Profile& prof, int n, std::uint64_t seed = 1);

/// z -> ((z1 - a)/(1 - conj(a) z1), (1 - conj(a) z1) z2 / sqrt(1 - |a|^2), same for z3).
/// Throws InputError for |a| >= 1.
C3Point example2_aut(Complex a, const C3Point& z);

struct OrbitTrace {
  std::vector<C3Point> points;
  std::vector<double> phi;
  double max_phi = 0.0;
  double final_abs_z1 = 0.0;
};

/// Images of z0 under example2_aut(a_k). Throws InputError when z0 is not in
/// the domain or some |a_k| >= 1.
OrbitTrace example2_orbit_accumulation(const std::vector<Complex>& a_sequence, const C3Point& z0,
                                       const Example2Profile& prof);

}  // namespace reinhardt

#endif  // REINHARDT_GALLERY_HPP_
