#ifndef REINHARDT_NORMAL_FORMS_HPP_
#define REINHARDT_NORMAL_FORMS_HPP_

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "reinhardt/domain.hpp"
#include "reinhardt/forms.hpp"
#include "reinhardt/monomial.hpp"
#include "reinhardt/smoothness.hpp"

namespace reinhardt {

using Complex = std::complex<double>;

struct ComplexPoint {
  Complex z1;
  Complex z2;

  ModulusPoint moduli() const { return {std::abs(z1), std::abs(z2)}; }
};

/// ReinhardtDomain view of a normalized form (kind NormalForm, exact
/// defining inequalities, axis data from the closed form).
ReinhardtDomain as_domain(const NormalForm& nf);

// ---------------------------------------------------------------------------
// Identity component of the automorphism group

/// Forms 11-13: z1 -> e^{i theta} (z1 - a) / (1 - conj(a) z1),
///              z2 -> e^{i phi} z2 (1 - |a|^2)^alpha / (1 - conj(a) z1)^{2 alpha}.
struct DiscElement {
  Complex a{0.0, 0.0};
  double theta = 0.0;
  double phi = 0.0;
};

/// Forms 14-15: z1 -> e^{i theta} z1 + e,
///              z2 -> e^{i phi} exp(beta (2 conj(e) e^{i theta} z1 + |e|^2)) z2.
/// The sign in the exponent matches the e^{beta|z1|^2} walls of forms 14-15.
struct PlaneElement {
  Complex e{0.0, 0.0};
  double theta = 0.0;
  double phi = 0.0;
};

using Aut0Element = std::variant<DiscElement, PlaneElement>;

/// Validates |a| < 1 and reduces phases to [0, 2 pi).
DiscElement make_disc_element(Complex a, double theta = 0.0, double phi = 0.0);
PlaneElement make_plane_element(Complex e, double theta = 0.0, double phi = 0.0);

Aut0Element aut0_identity(const NormalForm& nf);

/// Throws InputError when z is not in the form's domain, when |a| >= 1, or
/// when the element family does not match the form.
ComplexPoint aut0_apply(const NormalForm& nf, const Aut0Element& g, ComplexPoint z);

/// The element acting as `second` after `first`. For forms 11-13 the z2 phase
/// is only tracked up to the branch of the real power.
Aut0Element aut0_compose(const NormalForm& nf, const Aut0Element& second, const Aut0Element& first);

struct EscapingFamily {
  std::function<Aut0Element(int)> element;
  std::string description;
};

struct NoncompactReport {
  bool noncompact = false;
  EscapingFamily family;
};

/// Every normalized form has noncompact identity component; the family is
/// a_k = 1 - 2^{-k} (forms 11-13) or e_k = k (forms 14-15).
NoncompactReport aut0_noncompact(const NormalForm& nf);

/// Exhaustion radius used to decide that an orbit leaves compact sets:
/// max(|log|z1||, |log|z2||, -log(1 - |z1|^2) for forms over the disc).
double escape_log_radius(const NormalForm& nf, ComplexPoint z);

// ---------------------------------------------------------------------------
// Transformations and classification

/// The image of the form under z2 -> 1/z2, parameters normalized so r < R:
///   12(a, r, R<inf) -> 12(-a, 1/R, 1/r)      12(a, r, inf) -> 13(-a, 1/r)
///   13(a, R)        -> 12(-a, 1/R, inf)
///   14(b, r, R<inf) -> 14(-b, 1/R, 1/r)      14(b, r, inf) -> 15(-b, 1/r)
///   15(b, R)        -> 14(-b, 1/R, inf)
/// Form 11 contains {z2 = 0} and throws InputError.
NormalForm invert_z2(const NormalForm& nf);

struct EquivalenceStep {
  enum class Kind { Dilation, Swap, InvertZ2, Monomial };
  Kind kind = Kind::Dilation;
  std::array<double, 2> factors{1.0, 1.0};  // Dilation: z_i -> factors[i] z_i
  std::optional<MonomialMap> map;           // Monomial

  static EquivalenceStep dilation(double l1, double l2) { return {Kind::Dilation, {l1, l2}, std::nullopt}; }
  static EquivalenceStep swap() { return {Kind::Swap, {1.0, 1.0}, std::nullopt}; }
  static EquivalenceStep invert_z2() { return {Kind::InvertZ2, {1.0, 1.0}, std::nullopt}; }
  static EquivalenceStep monomial(const MonomialMap& f) { return {Kind::Monomial, {1.0, 1.0}, f}; }

  MonomialMap as_map() const;
  std::string name() const;
};

struct EquivalenceChain {
  std::vector<EquivalenceStep> steps;  // applied first to last

  /// Single monomial map equal to the whole chain.
  MonomialMap composite() const;
  /// Step-by-step action on moduli; empty if some step is undefined there.
  std::optional<ModulusPoint> apply(ModulusPoint p) const;
  std::optional<ModulusPoint> apply_inverse(ModulusPoint p) const;
  bool uses(EquivalenceStep::Kind kind) const;
};

enum class RejectReason { NotC1, NotCkForRequestedK, BidiscExcluded, NotNormalizableSmooth };

std::string to_string(RejectReason r);

struct TheoremCase {
  enum class Kind { CaseI, CaseII, CaseIII, Rejected };
  Kind kind = Kind::Rejected;
  double alpha = 0.0;  // CaseI, CaseII
  double beta = 0.0;   // CaseIII
  double R = 0.0;      // CaseII, CaseIII
  std::optional<RejectReason> reason;

  static TheoremCase case_i(double alpha) { return {Kind::CaseI, alpha, 0.0, 0.0, std::nullopt}; }
  static TheoremCase case_ii(double alpha, double R) { return {Kind::CaseII, alpha, 0.0, R, std::nullopt}; }
  static TheoremCase case_iii(double beta, double R) { return {Kind::CaseIII, 0.0, beta, R, std::nullopt}; }
  static TheoremCase rejected(RejectReason r) { return {Kind::Rejected, 0.0, 0.0, 0.0, r}; }

  /// The model domain of the case; throws InputError for Rejected.
  ReinhardtDomain domain() const;
  std::string name() const;
};

/// Requested boundary regularity: a finite k >= 1 or infinity.
struct SmoothnessOrder {
  int k = 0;  // 0 stands for infinity

  static SmoothnessOrder infinity() { return {0}; }
  static SmoothnessOrder finite(int k);
  bool is_infinite() const { return k == 0; }
  std::string to_string() const;
};

struct Admissibility {
  bool admissible = false;
  std::optional<SmoothnessClass> achieved;  // empty: no C^1 boundary reachable
  std::optional<EquivalenceChain> via;      // reduction used, if any
  std::optional<RejectReason> reason;
};

Admissibility smooth_admissible(const NormalForm& nf, SmoothnessOrder k);

struct OracleReport {
  std::size_t samples = 0;  // per direction
  std::size_t forward_violations = 0;
  std::size_t inverse_violations = 0;
  double max_violation = 0.0;  // largest g(image), clipped below at 0
  double margin = 1e-9;
  bool passed() const { return samples > 0 && forward_violations == 0 && inverse_violations == 0; }
};

/// Bidirectional sampled-membership check: interior samples of `source` must
/// map into `target` under the chain, and samples of `target` back into
/// `source` under its inverse. An image with g >= margin is a violation.
OracleReport validate_chain(const ReinhardtDomain& source, const ReinhardtDomain& target,
                            const EquivalenceChain& chain, std::size_t samples, double margin, std::uint64_t seed);

struct ClassifyOptions {
  std::size_t oracle_samples = 1000;
  double margin = 1e-9;
  std::uint64_t seed = 1;
};

struct Classification {
  TheoremCase theorem_case;
  EquivalenceChain chain;
  OracleReport oracle;
  std::vector<std::string> notes;
};

Classification classify(const NormalForm& nf, SmoothnessOrder k, const ClassifyOptions& options = {});

/// True iff the form realizes a C^k but not C^inf boundary: form 11 with
/// alpha != 1/(2m) and 0 < alpha < 1/(2k). Requires k >= 1.
bool finite_nonsmooth_case(const NormalForm& nf, int k);

}  // namespace reinhardt

#endif  // REINHARDT_NORMAL_FORMS_HPP_
