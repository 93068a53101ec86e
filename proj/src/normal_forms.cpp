#include "reinhardt/normal_forms.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "reinhardt/errors.hpp"
#include "reinhardt/format.hpp"

namespace reinhardt {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phase(double t) {
  if (!std::isfinite(t)) throw InputError("phase must be finite");
  double w = std::fmod(t, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w;
}

Complex unit(double t) { return std::polar(1.0, t); }

// Moebius factor of a disc element: e^{i theta}(z - a)/(1 - conj(a) z).
Complex disc_moebius(const DiscElement& g, Complex z) {
  return unit(g.theta) * (z - g.a) / (1.0 - std::conj(g.a) * z);
}

const DiscElement& expect_disc(const NormalForm& nf, const Aut0Element& g) {
  if (!nf.over_disc() || !std::holds_alternative<DiscElement>(g))
    throw InputError("element family does not match form " + std::to_string(nf.id()));
  return std::get<DiscElement>(g);
}

const PlaneElement& expect_plane(const NormalForm& nf, const Aut0Element& g) {
  if (nf.over_disc() || !std::holds_alternative<PlaneElement>(g))
    throw InputError("element family does not match form " + std::to_string(nf.id()));
  return std::get<PlaneElement>(g);
}

}  // namespace

ReinhardtDomain as_domain(const NormalForm& nf) { return ReinhardtDomain::normal_form(nf); }

DiscElement make_disc_element(Complex a, double theta, double phi) {
  if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || !(std::abs(a) < 1.0))
    throw InputError("disc automorphism needs |a| < 1");
  return {a, wrap_phase(theta), wrap_phase(phi)};
}

PlaneElement make_plane_element(Complex e, double theta, double phi) {
  if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) throw InputError("translation must be finite");
  return {e, wrap_phase(theta), wrap_phase(phi)};
}

Aut0Element aut0_identity(const NormalForm& nf) {
  if (nf.over_disc()) return DiscElement{};
  return PlaneElement{};
}

ComplexPoint aut0_apply(const NormalForm& nf, const Aut0Element& g, ComplexPoint z) {
  nf.validate();
  for (Complex c : {z.z1, z.z2})
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw InputError("point must be finite");
  if (!(defining_function(nf, z.moduli()) < 0.0)) throw InputError("point is not in the domain");

  if (nf.over_disc()) {
    const DiscElement& el = expect_disc(nf, g);
    if (!(std::abs(el.a) < 1.0)) throw InputError("disc automorphism needs |a| < 1");
    const Complex q = 1.0 - std::conj(el.a) * z.z1;  // Re q > 0 on the disc
    const double a2 = std::norm(el.a);
    const Complex w1 = unit(el.theta) * (z.z1 - el.a) / q;
    const Complex w2 = unit(el.phi) * z.z2 * std::pow(1.0 - a2, nf.alpha) / std::pow(q, 2.0 * nf.alpha);
    return {w1, w2};
  }
  const PlaneElement& el = expect_plane(nf, g);
  const Complex rot = unit(el.theta);
  const Complex w1 = rot * z.z1 + el.e;
  const Complex w2 = unit(el.phi) * std::exp(nf.beta * (2.0 * std::conj(el.e) * rot * z.z1 + std::norm(el.e))) * z.z2;
  return {w1, w2};
}

Aut0Element aut0_compose(const NormalForm& nf, const Aut0Element& second, const Aut0Element& first) {
  if (nf.over_disc()) {
    const DiscElement& g2 = expect_disc(nf, second);
    const DiscElement& g1 = expect_disc(nf, first);
    // The composite sends a to 0, so a = g1^{-1}(g2.a).
    const Complex w = unit(-g1.theta) * g2.a;
    const Complex a = (w + g1.a) / (1.0 + std::conj(g1.a) * w);
    // Read the rotation off one point away from a.
    const Complex z0 = std::abs(a) > 1e-8 ? -0.5 * a / std::abs(a) : Complex(0.5, 0.0);
    const Complex image = disc_moebius(g2, disc_moebius(g1, z0));
    const Complex u = image * (1.0 - std::conj(a) * z0) / (z0 - a);
    return make_disc_element(a, std::arg(u), g1.phi + g2.phi);
  }
  const PlaneElement& g2 = expect_plane(nf, second);
  const PlaneElement& g1 = expect_plane(nf, first);
  const Complex rot2 = unit(g2.theta);
  const Complex e = rot2 * g1.e + g2.e;
  const double extra = 2.0 * nf.beta * std::imag(std::conj(g2.e) * rot2 * g1.e);
  return make_plane_element(e, g1.theta + g2.theta, g1.phi + g2.phi + extra);
}

NoncompactReport aut0_noncompact(const NormalForm& nf) {
  nf.validate();
  NoncompactReport rep;
  rep.noncompact = true;
  if (nf.over_disc()) {
    rep.family.element = [](int k) -> Aut0Element { return make_disc_element({1.0 - std::ldexp(1.0, -k), 0.0}); };
    rep.family.description = "a_k = 1 - 2^-k";
  } else {
    rep.family.element = [](int k) -> Aut0Element { return make_plane_element({static_cast<double>(k), 0.0}); };
    rep.family.description = "e_k = k";
  }
  return rep;
}

double escape_log_radius(const NormalForm& nf, ComplexPoint z) {
  const ModulusPoint m = z.moduli();
  double r = 0.0;
  if (m.m1 > 0.0) r = std::max(r, std::abs(std::log(m.m1)));
  if (m.m2 > 0.0) r = std::max(r, std::abs(std::log(m.m2)));
  if (nf.over_disc()) {
    const double w = 1.0 - m.m1 * m.m1;
    r = std::max(r, w > 0.0 ? -std::log(w) : kInfinity);
  }
  return r;
}

NormalForm invert_z2(const NormalForm& nf) {
  nf.validate();
  switch (nf.kind) {
    case FormKind::DiscFiber:
      throw InputError("form 11 contains {z2 = 0}; z2 -> 1/z2 is undefined there");
    case FormKind::AnnulusFiber:
      if (std::isinf(nf.R)) return NormalForm::punctured_fiber(-nf.alpha, 1.0 / nf.r);
      return NormalForm::annulus_fiber(-nf.alpha, 1.0 / nf.R, 1.0 / nf.r);
    case FormKind::PuncturedFiber:
      return NormalForm::annulus_fiber(-nf.alpha, 1.0 / nf.R, kInfinity);
    case FormKind::GaussianAnnulus:
      if (std::isinf(nf.R)) return NormalForm::gaussian_punctured(-nf.beta, 1.0 / nf.r);
      return NormalForm::gaussian_annulus(-nf.beta, 1.0 / nf.R, 1.0 / nf.r);
    case FormKind::GaussianPunctured:
      return NormalForm::gaussian_annulus(-nf.beta, 1.0 / nf.R, kInfinity);
  }
  throw InputError("unknown form");
}

// ---------------------------------------------------------------------------

MonomialMap EquivalenceStep::as_map() const {
  switch (kind) {
    case Kind::Dilation:
      if (!(factors[0] > 0.0) || !(factors[1] > 0.0)) throw InputError("dilation factors must be positive");
      return MonomialMap::scaling(std::log(factors[0]), std::log(factors[1]));
    case Kind::Swap:
      return MonomialMap::swap();
    case Kind::InvertZ2:
      return MonomialMap({1, 0, 0, -1}, {0.0, 0.0});
    case Kind::Monomial:
      if (!map) throw InputError("monomial step without a map");
      return *map;
  }
  throw InputError("unknown step");
}

std::string EquivalenceStep::name() const {
  switch (kind) {
    case Kind::Dilation:
      return "dilation(" + format_number(factors[0]) + ", " + format_number(factors[1]) + ")";
    case Kind::Swap:
      return "swap";
    case Kind::InvertZ2:
      return "invert_z2";
    case Kind::Monomial:
      return "monomial " + (map ? map->describe() : std::string("?"));
  }
  return "?";
}

MonomialMap EquivalenceChain::composite() const {
  MonomialMap total = MonomialMap::identity();
  for (const auto& s : steps) total = compose(s.as_map(), total);
  return total;
}

std::optional<ModulusPoint> EquivalenceChain::apply(ModulusPoint p) const {
  for (const auto& s : steps) {
    auto q = s.as_map().apply(p);
    if (!q) return std::nullopt;
    p = *q;
  }
  return p;
}

std::optional<ModulusPoint> EquivalenceChain::apply_inverse(ModulusPoint p) const {
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    auto q = invert(it->as_map()).apply(p);
    if (!q) return std::nullopt;
    p = *q;
  }
  return p;
}

bool EquivalenceChain::uses(EquivalenceStep::Kind k) const {
  for (const auto& s : steps)
    if (s.kind == k) return true;
  return false;
}

std::string to_string(RejectReason r) {
  switch (r) {
    case RejectReason::NotC1:
      return "NotC1";
    case RejectReason::NotCkForRequestedK:
      return "NotCkForRequestedK";
    case RejectReason::BidiscExcluded:
      return "BidiscExcluded";
    case RejectReason::NotNormalizableSmooth:
      return "NotNormalizableSmooth";
  }
  return "?";
}

ReinhardtDomain TheoremCase::domain() const {
  switch (kind) {
    case Kind::CaseI:
      return ReinhardtDomain::theorem_i(alpha);
    case Kind::CaseII:
      return ReinhardtDomain::theorem_ii(alpha, R);
    case Kind::CaseIII:
      return ReinhardtDomain::theorem_iii(beta, R);
    case Kind::Rejected:
      break;
  }
  throw InputError("a rejected classification has no model domain");
}

std::string TheoremCase::name() const {
  switch (kind) {
    case Kind::CaseI:
      return "CaseI(alpha=" + format_number(alpha) + ")";
    case Kind::CaseII:
      return "CaseII(alpha=" + format_number(alpha) + ", R=" + format_number(R) + ")";
    case Kind::CaseIII:
      return "CaseIII(beta=" + format_number(beta) + ", R=" + format_number(R) + ")";
    case Kind::Rejected:
      return "Rejected(" + (reason ? to_string(*reason) : std::string("?")) + ")";
  }
  return "?";
}

SmoothnessOrder SmoothnessOrder::finite(int k) {
  if (k < 1) throw InputError("smoothness order must be >= 1 or inf");
  return {k};
}

std::string SmoothnessOrder::to_string() const { return is_infinite() ? "inf" : std::to_string(k); }

Admissibility smooth_admissible(const NormalForm& nf, SmoothnessOrder k) {
  nf.validate();
  Admissibility out;
  const int want = k.is_infinite() ? -1 : k.k;
  auto accept = [&](SmoothnessClass c) {
    out.achieved = c;
    out.admissible = c.at_least(want);
    if (!out.admissible) out.reason = RejectReason::NotCkForRequestedK;
  };

  switch (nf.kind) {
    case FormKind::DiscFiber:
      if (nf.alpha == 0.0) {
        out.reason = RejectReason::BidiscExcluded;
        return out;
      }
      {
        const SmoothnessClass c = smoothness_class_case_i(nf.alpha);
        if (c.kind == SmoothnessClass::Kind::BelowC1) {
          out.achieved = c;
          out.reason = RejectReason::NotC1;
          return out;
        }
        accept(c);
      }
      return out;
    case FormKind::AnnulusFiber:
      if (nf.alpha < 0.0) {
        accept(SmoothnessClass::infinity());
      } else if (nf.alpha > 0.0 && std::isfinite(nf.R)) {
        out.via = EquivalenceChain{{EquivalenceStep::invert_z2()}};
        accept(SmoothnessClass::infinity());
      } else {
        // alpha = 0 has a Levi-flat wall; alpha > 0 with R = inf has a wall
        // that meets the boundary of the disc non-smoothly.
        out.reason = RejectReason::NotNormalizableSmooth;
      }
      return out;
    case FormKind::PuncturedFiber:
      if (nf.alpha > 0.0) {
        out.via = EquivalenceChain{{EquivalenceStep::invert_z2()}};
        accept(SmoothnessClass::infinity());
      } else {
        out.reason = RejectReason::NotNormalizableSmooth;
      }
      return out;
    case FormKind::GaussianAnnulus:
      accept(SmoothnessClass::infinity());
      return out;
    case FormKind::GaussianPunctured:
      out.via = EquivalenceChain{{EquivalenceStep::invert_z2()}};
      accept(SmoothnessClass::infinity());
      return out;
  }
  throw InputError("unknown form");
}

OracleReport validate_chain(const ReinhardtDomain& source, const ReinhardtDomain& target,
                            const EquivalenceChain& chain, std::size_t samples, double margin, std::uint64_t seed) {
  if (samples == 0) throw InputError("oracle needs at least one sample");
  OracleReport rep;
  rep.samples = samples;
  rep.margin = margin;
  std::mt19937_64 rng(seed);

  auto check = [&](const ReinhardtDomain& from, const ReinhardtDomain& to, bool forward) {
    std::size_t bad = 0;
    for (const ModulusPoint& p : sample_interior(from, samples, rng)) {
      const auto img = forward ? chain.apply(p) : chain.apply_inverse(p);
      const double g = img ? to.g(*img) : kInfinity;
      if (!(g < margin)) ++bad;
      if (g > rep.max_violation) rep.max_violation = g;
    }
    return bad;
  };
  rep.forward_violations = check(source, target, true);
  rep.inverse_violations = check(target, source, false);
  return rep;
}

Classification classify(const NormalForm& nf, SmoothnessOrder k, const ClassifyOptions& options) {
  nf.validate();
  Classification out;
  const Admissibility adm = smooth_admissible(nf, k);
  if (!adm.admissible) {
    out.theorem_case = TheoremCase::rejected(*adm.reason);
    if (adm.achieved) out.notes.push_back("boundary class " + adm.achieved->to_string() + ", requested C^" + k.to_string());
    return out;
  }

  using S = EquivalenceStep;
  const bool inverted = adm.via && adm.via->uses(S::Kind::InvertZ2);
  const NormalForm work = inverted ? invert_z2(nf) : nf;
  if (inverted) out.chain.steps.push_back(S::invert_z2());

  switch (work.kind) {
    case FormKind::DiscFiber:
      out.chain.steps.push_back(S::dilation(1.0, 1.0 / work.R));
      out.theorem_case = TheoremCase::case_i(work.alpha);
      break;
    case FormKind::AnnulusFiber:
      out.chain.steps.push_back(S::dilation(1.0, 1.0 / work.r));
      out.theorem_case = TheoremCase::case_ii(work.alpha, work.R / work.r);
      break;
    case FormKind::GaussianAnnulus:
      out.chain.steps.push_back(S::dilation(1.0, 1.0 / work.r));
      out.theorem_case = TheoremCase::case_iii(work.beta, work.R / work.r);
      break;
    default:
      out.theorem_case = TheoremCase::rejected(RejectReason::NotNormalizableSmooth);
      out.notes.push_back("no reduction to a model case for " + work.describe());
      return out;
  }

  out.oracle = validate_chain(as_domain(nf), out.theorem_case.domain(), out.chain, options.oracle_samples,
                              options.margin, options.seed);
  if (!out.oracle.passed()) {
    out.notes.push_back(out.theorem_case.name() + " rejected by sampled membership check: " +
                        std::to_string(out.oracle.forward_violations) + " forward, " +
                        std::to_string(out.oracle.inverse_violations) + " inverse violations");
    out.theorem_case = TheoremCase::rejected(RejectReason::NotNormalizableSmooth);
    return out;
  }
  if (out.theorem_case.kind == TheoremCase::Kind::CaseII && std::isinf(out.theorem_case.R))
    out.notes.push_back("CaseII with R = inf is the same point set as CaseI at the same alpha");
  return out;
}

bool finite_nonsmooth_case(const NormalForm& nf, int k) {
  if (k < 1) throw InputError("k must be >= 1");
  nf.validate();
  if (nf.kind != FormKind::DiscFiber) return false;
  if (!(nf.alpha > 0.0) || exceptional_index(nf.alpha) != 0) return false;
  return nf.alpha < 1.0 / (2.0 * k);
}

}  // namespace reinhardt
