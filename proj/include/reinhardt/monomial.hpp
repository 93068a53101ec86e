#ifndef REINHARDT_MONOMIAL_HPP_
#define REINHARDT_MONOMIAL_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reinhardt/domain.hpp"
#include "reinhardt/points.hpp"

namespace reinhardt {

/// 2x2 integer matrix, row-major: [[a11, a12], [a21, a22]].
struct IntMatrix2 {
  std::int64_t a11 = 1, a12 = 0, a21 = 0, a22 = 1;

  std::int64_t det() const { return a11 * a22 - a12 * a21; }
  static IntMatrix2 identity() { return {1, 0, 0, 1}; }
  static IntMatrix2 swap() { return {0, 1, 1, 0}; }

  friend IntMatrix2 operator*(const IntMatrix2& x, const IntMatrix2& y) {
    return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22, x.a21 * y.a11 + x.a22 * y.a21,
            x.a21 * y.a12 + x.a22 * y.a22};
  }
  friend bool operator==(const IntMatrix2&, const IntMatrix2&) = default;
  friend auto operator<=>(const IntMatrix2&, const IntMatrix2&) = default;
};

/// Torus class of an algebraic automorphism z_i -> lambda_i z1^{a_i1} z2^{a_i2}
/// with det(a) = +-1. Only c_i = log|lambda_i| is kept; phases are quotiented
/// out. On log-moduli it acts as the affine map u -> A u + c.
class MonomialMap {
 public:
  /// Throws InputError unless det(A) = +-1 and c is finite.
  MonomialMap(IntMatrix2 A, std::array<double, 2> logscale);

  static MonomialMap identity() { return {IntMatrix2::identity(), {0.0, 0.0}}; }
  static MonomialMap swap() { return {IntMatrix2::swap(), {0.0, 0.0}}; }
  static MonomialMap scaling(double c1, double c2) { return {IntMatrix2::identity(), {c1, c2}}; }

  const IntMatrix2& matrix() const { return A_; }
  const std::array<double, 2>& logscale() const { return c_; }

  LogPoint apply(LogPoint u) const;
  /// Action on moduli, with 0^0 = 1. Empty when a zero modulus is raised to a
  /// negative power (the map is not defined there).
  std::optional<ModulusPoint> apply(ModulusPoint p) const;

  std::string describe() const;

  friend bool operator==(const MonomialMap&, const MonomialMap&) = default;

 private:
  IntMatrix2 A_;
  std::array<double, 2> c_;
};

/// f o g.
MonomialMap compose(const MonomialMap& f, const MonomialMap& g);
MonomialMap invert(const MonomialMap& f);
LogPoint apply_log(const MonomialMap& f, LogPoint u);
/// f composed with itself k times (k may be negative).
MonomialMap power(const MonomialMap& f, int k);

// ---------------------------------------------------------------------------
// Candidate matrix shapes by axis data

enum class ShapeTag {
  DiagonalId,    // z1 -> l z1, z2 -> m z2
  DiagonalSwap,  // z1 -> l z2, z2 -> m z1
  AxisShear,     // z1 -> l z1 z2^a, z2 -> m z2
  AxisShearFlip,     // z1 -> l z1 z2^a, z2 -> m / z2
};

std::string to_string(ShapeTag tag);

struct CandidateShape {
  ShapeTag tag = ShapeTag::DiagonalId;
  /// The axis forms are written for a domain meeting {z1 = 0} only. When the
  /// domain meets {z2 = 0} only, the coordinates are relabeled.
  bool relabeled = false;
  /// Unknowns of the shape: always c1, c2; the axis forms add the integer a.
  std::vector<std::string> free_parameters;

  /// Integer matrices realizing the template with |a| <= bound.
  std::vector<IntMatrix2> matrices(int bound) const;
  bool matches(const IntMatrix2& A) const;
};

/// Throws InputError when neither axis is met.
std::vector<CandidateShape> candidate_shapes(AxisFlags axes);

/// The shape whose template contains A, if any.
std::optional<CandidateShape> shape_of(const IntMatrix2& A, AxisFlags axes);

// ---------------------------------------------------------------------------
// Sampled preservation

/// Samples for preservation checks: an inclusive log lattice over [lo, hi]^2
/// plus, when shell_rays > 0, points on both sides of the boundary found by
/// bisection along rays in log space (at depths 1e-1 .. 1e-7).
struct SamplerSpec {
  double lo = -4.0;
  double hi = 4.0;
  int resolution = 100;
  int shell_rays = 256;
};

struct LogSample {
  LogPoint u;
  double g = 0.0;
  bool shell = false;  // near-boundary point rather than a lattice point
};

struct LogSampleSet {
  std::vector<LogSample> interior;  // g < 0
  /// g > 0. Lattice points are thinned to at most interior.size(); all shell
  /// points are kept.
  std::vector<LogSample> exterior;
};

LogSampleSet log_samples(const ReinhardtDomain& d, const SamplerSpec& spec);
std::vector<LogSample> interior_log_samples(const ReinhardtDomain& d, const SamplerSpec& spec);

struct PreservationVerdict {
  bool preserved = true;
  std::optional<LogPoint> witness;  // first failing sample
  bool witness_from_inverse = false;
  bool witness_exterior = false;
  std::size_t samples_checked = 0;   // interior samples
  std::size_t exterior_checked = 0;
  double max_image_value = -kInfinity;
};

/// Checks that f and invert(f) send every sample with shadow < -tol to a point
/// with shadow < tol, and every exterior sample with shadow > tol to a point
/// with shadow > -tol. An automorphism is a bijection of the log shadow, so it
/// keeps the complement as well; without the second test, maps that fold the
/// sampled part of an unbounded shadow into itself would pass. Throws
/// InputError for an empty interior set, tol <= 0, or a matrix incompatible
/// with the domain's axis flags.
PreservationVerdict preserves(const ReinhardtDomain& d, const MonomialMap& f, const SamplerSpec& sampler, double tol);
PreservationVerdict preserves(const ReinhardtDomain& d, const MonomialMap& f, const std::vector<LogSample>& interior,
                              double tol);
PreservationVerdict preserves(const ReinhardtDomain& d, const MonomialMap& f, const LogSampleSet& samples, double tol);

// ---------------------------------------------------------------------------
// Automorphism search

struct SearchOptions {
  int entry_bound = 3;
  double scale_box = 4.0;
  int scale_steps = 41;
  double tol = 1e-4;
  /// c-distance under which two maps with the same matrix are one torus class.
  double class_tol = 1e-6;
  SamplerSpec sampler{};
  /// Upper limit on interior (and, separately, exterior) samples used by the
  /// grid scan objective.
  std::size_t scan_samples = 400;
  /// Local minima of the scan refined per matrix.
  int minima_per_matrix = 8;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct FoundClass {
  MonomialMap map;
  std::optional<ShapeTag> shape;
  double objective = 0.0;  // mismatch residual at the refined scale
  double max_image_value = 0.0;
};

struct SearchReport {
  std::vector<FoundClass> classes;  // sorted by matrix entries then scales
  bool infinite_mod_torus = false;
  std::optional<MonomialMap> generator;
  bool restricted_to_shapes = false;
  std::size_t matrices_examined = 0;
  std::size_t samples = 0;           // interior samples
  std::size_t exterior_samples = 0;
  SearchOptions options;
};

/// Enumerates integer matrices with |entries| <= bound and det = +-1, in
/// lexicographic order.
std::vector<IntMatrix2> unimodular_matrices(int bound);

/// Mean of the capped hinge max(0, shadow) at images of the interior samples
/// under f and invert(f), plus the mean of max(0, -shadow) at images of the
/// exterior samples. Zero for any map preserving the sampled region.
double mismatch_objective(const ReinhardtDomain& d, const MonomialMap& f, const LogSampleSet& samples);

SearchReport search_aut_alg(const ReinhardtDomain& d, const SearchOptions& options = {});

// ---------------------------------------------------------------------------
// Line-containment probe

struct DiscSeed {
  int axis = 1;          // the disc lies in z_axis
  double level = 0.0;    // modulus of the other coordinate
  double radius = 1.0;
};

enum class ProbeVerdict { ContainsLine, Bounded, Inconclusive };

std::string to_string(ProbeVerdict v);

struct OrbitCertificate {
  ProbeVerdict verdict = ProbeVerdict::Inconclusive;
  /// For ContainsLine: the line is {z_line_axis = line_level}.
  int line_axis = 0;
  double line_level = 0.0;
  int iterations = 0;
  std::string reason;
  std::vector<DiscSeed> witness;  // discs visited, seed first
};

struct ProbeOptions {
  int iterations = 40;
  double escape = 4.851651954097903e8;  // e^20
  int disc_samples = 64;
};

/// Throws InputError when K < 1, escape <= 1, or the seed disc is not inside d.
OrbitCertificate line_containment_probe(const ReinhardtDomain& d, const MonomialMap& f, const DiscSeed& seed,
                                        const ProbeOptions& options = {});

}  // namespace reinhardt

#endif  // REINHARDT_MONOMIAL_HPP_
