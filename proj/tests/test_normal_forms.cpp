#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "reinhardt/errors.hpp"
#include "reinhardt/normal_forms.hpp"

using namespace reinhardt;

namespace {
constexpr double kE = std::numbers::e;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<NormalForm> sample_forms() {
  return {NormalForm::disc_fiber(0.5, 2.0),         NormalForm::disc_fiber(-1.5, 1.0),
          NormalForm::annulus_fiber(-1.0, 1.0, 3.0), NormalForm::annulus_fiber(2.0, 0.5, kInfinity),
          NormalForm::punctured_fiber(0.7, 1.5),     NormalForm::gaussian_annulus(1.0, 1.0, kE),
          NormalForm::gaussian_annulus(-0.5, 2.0, kInfinity), NormalForm::gaussian_punctured(0.8, 3.0)};
}

Aut0Element random_element(const NormalForm& nf, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const double theta = kTwoPi * u01(rng), phi = kTwoPi * u01(rng);
  if (nf.over_disc()) return make_disc_element(std::polar(0.95 * std::sqrt(u01(rng)), kTwoPi * u01(rng)), theta, phi);
  return make_plane_element({4.0 * u01(rng) - 2.0, 4.0 * u01(rng) - 2.0}, theta, phi);
}

ComplexPoint random_point(const NormalForm& nf, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(0.0, kTwoPi);
  const ModulusPoint m = sample_interior(as_domain(nf), 1, rng).front();
  return {std::polar(m.m1, ang(rng)), std::polar(m.m2, ang(rng))};
}

void check_form(const NormalForm& nf, FormKind kind, double param, double r, double R) {
  CHECK(nf.kind == kind);
  CHECK((nf.over_disc() ? nf.alpha : nf.beta) == doctest::Approx(param));
  if (nf.has_lower_wall()) CHECK(nf.r == doctest::Approx(r));
  if (std::isinf(R)) {
    CHECK(std::isinf(nf.R));
  } else {
    CHECK(nf.R == doctest::Approx(R));
  }
}
}  // namespace

TEST_CASE("normal form parameter ranges") {
  CHECK_THROWS_AS(NormalForm::disc_fiber(0.5, kInfinity).validate(), InputError);
  CHECK_THROWS_AS(NormalForm::disc_fiber(0.5, 0.0).validate(), InputError);
  CHECK_THROWS_AS(NormalForm::annulus_fiber(1.0, 2.0, 2.0).validate(), InputError);
  CHECK_THROWS_AS(NormalForm::annulus_fiber(1.0, 0.0, 2.0).validate(), InputError);
  CHECK_THROWS_AS(NormalForm::punctured_fiber(1.0, kInfinity).validate(), InputError);
  CHECK_THROWS_AS(NormalForm::gaussian_annulus(0.0, 1.0, 2.0).validate(), InputError);
  CHECK_THROWS_AS(NormalForm::gaussian_punctured(1.0, kInfinity).validate(), InputError);
  CHECK_THROWS_AS(NormalForm::make(16, 0, 0, 0, 1).validate(), InputError);
  CHECK_NOTHROW(NormalForm::annulus_fiber(1.0, 1.0, kInfinity).validate());
  CHECK_NOTHROW(NormalForm::punctured_fiber(0.0, 1.0).validate());
}

TEST_CASE("as_domain: defining inequalities") {
  const auto f11 = as_domain(NormalForm::disc_fiber(1.0, 1.0));
  CHECK(contains(f11, {0.5, 0.7}));
  CHECK_FALSE(contains(f11, {0.5, 0.8}));
  CHECK(contains(f11, {0.5, 0.0}));
  CHECK_FALSE(contains(f11, {1.0, 0.0}));

  const auto f14 = as_domain(NormalForm::gaussian_annulus(1.0, 1.0, kE));
  CHECK(contains(f14, {1.0, 3.0}));
  CHECK_FALSE(contains(f14, {1.0, 2.7}));
  CHECK_FALSE(contains(f14, {1.0, kE * kE + 1e-9}));
  CHECK(contains(f14, {0.0, 2.0}));

  const auto f13 = as_domain(NormalForm::punctured_fiber(0.0, 1.0));
  CHECK(contains(f13, {0.5, 0.5}));
  CHECK_FALSE(contains(f13, {0.5, 0.0}));
  CHECK_FALSE(contains(f13, {1.0, 0.5}));

  CHECK(axis_intersections(f11) == AxisFlags{true, true});
  CHECK(axis_intersections(f13) == AxisFlags{true, false});
  CHECK(axis_intersections(f14) == AxisFlags{true, false});
}

TEST_CASE("aut0_apply: fixed values") {
  const NormalForm f11 = NormalForm::disc_fiber(1.0, 1.0);
  const ComplexPoint z{{0.5, 0.0}, {0.3, 0.0}};
  const ComplexPoint w = aut0_apply(f11, make_disc_element({0.5, 0.0}), z);
  CHECK(std::abs(w.z1) == doctest::Approx(0.0).scale(1.0));
  CHECK(std::abs(w.z2) == doctest::Approx(0.4));

  for (const auto& nf : sample_forms()) {
    std::mt19937_64 rng(nf.id());
    const ComplexPoint p = random_point(nf, rng);
    const ComplexPoint q = aut0_apply(nf, aut0_identity(nf), p);
    CHECK(std::abs(q.z1 - p.z1) < 1e-15);
    CHECK(std::abs(q.z2 - p.z2) < 1e-15);
  }

  // Translation by e = 1 multiplies |z2| by e^beta on {z1 = 0}.
  const NormalForm f14 = NormalForm::gaussian_annulus(1.0, 1.0, kE);
  const ComplexPoint img = aut0_apply(f14, make_plane_element({1.0, 0.0}), {{0.0, 0.0}, {2.0, 0.0}});
  CHECK(std::abs(img.z1 - Complex(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(img.z2) == doctest::Approx(2.0 * kE));
  CHECK(contains(as_domain(f14), img.moduli()));
}

TEST_CASE("aut0_apply: preconditions") {
  const NormalForm f11 = NormalForm::disc_fiber(0.5, 1.0);
  CHECK_THROWS_AS(make_disc_element({1.0, 0.0}), InputError);
  CHECK_THROWS_AS(aut0_apply(f11, DiscElement{{1.2, 0.0}, 0.0, 0.0}, {{0.1, 0}, {0.1, 0}}), InputError);
  CHECK_THROWS_AS(aut0_apply(f11, make_disc_element({0.2, 0.0}), {{0.9, 0}, {0.9, 0}}), InputError);
  CHECK_THROWS_AS(aut0_apply(f11, make_plane_element({0.2, 0.0}), {{0.1, 0}, {0.1, 0}}), InputError);
  CHECK_THROWS_AS(aut0_apply(NormalForm::gaussian_punctured(1.0, 2.0), make_disc_element({0.2, 0.0}),
                             {{0.1, 0}, {0.1, 0}}),
                  InputError);
  CHECK(make_disc_element({0.1, 0.0}, -1.0, 7.0).theta == doctest::Approx(kTwoPi - 1.0));
}

TEST_CASE("aut0: membership preservation on random pairs") {
  for (const auto& nf : sample_forms()) {
    std::mt19937_64 rng(100 + nf.id());
    const auto d = as_domain(nf);
    int violations = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto g = random_element(nf, rng);
      const auto w = aut0_apply(nf, g, random_point(nf, rng));
      if (!(d.g(w.moduli()) < 1e-9)) ++violations;
    }
    CHECK_MESSAGE(violations == 0, nf.describe());
  }
}

TEST_CASE("aut0: composition is a homomorphism") {
  for (const auto& nf : sample_forms()) {
    std::mt19937_64 rng(200 + nf.id());
    double worst = 0.0;
    for (int i = 0; i < 300; ++i) {
      const auto g1 = random_element(nf, rng), g2 = random_element(nf, rng);
      const auto z = random_point(nf, rng);
      const auto two = aut0_apply(nf, g2, aut0_apply(nf, g1, z));
      const auto one = aut0_apply(nf, aut0_compose(nf, g2, g1), z);
      worst = std::max({worst, std::abs(std::abs(two.z1) - std::abs(one.z1)), std::abs(two.z1 - one.z1),
                        std::abs(std::abs(two.z2) - std::abs(one.z2)) / std::max(1.0, std::abs(two.z2))});
      if (!nf.over_disc()) worst = std::max(worst, std::abs(two.z2 - one.z2) / std::max(1.0, std::abs(two.z2)));
    }
    CHECK_MESSAGE(worst < 1e-9, nf.describe() << " worst " << worst);
  }
}

TEST_CASE("aut0_noncompact: escaping families") {
  for (const auto& nf : sample_forms()) {
    const auto rep = aut0_noncompact(nf);
    CHECK(rep.noncompact);
    std::mt19937_64 rng(300 + nf.id());
    const ComplexPoint z0 = random_point(nf, rng);
    int escaped_at = -1;
    double prev = -1.0;
    bool monotone = true;
    for (int k = 1; k <= 40; ++k) {
      const auto w = aut0_apply(nf, rep.family.element(k), z0);
      const double m1 = std::abs(w.z1);
      if (k > 3) monotone = monotone && m1 > prev;
      prev = m1;
      if (escaped_at < 0 && escape_log_radius(nf, w) > 10.0) escaped_at = k;
    }
    CHECK_MESSAGE(escaped_at > 0, nf.describe());
    CHECK(monotone);
  }
  const auto e = aut0_noncompact(NormalForm::gaussian_annulus(1.0, 1.0, 2.0)).family.element(5);
  CHECK(std::get<PlaneElement>(e).e == Complex(5.0, 0.0));
  const auto a = aut0_noncompact(NormalForm::annulus_fiber(1.0, 1.0, 2.0)).family.element(3);
  CHECK(std::get<DiscElement>(a).a == Complex(0.875, 0.0));
}

TEST_CASE("invert_z2: parameter maps") {
  check_form(invert_z2(NormalForm::annulus_fiber(1.0, 1.0, 2.0)), FormKind::AnnulusFiber, -1.0, 0.5, 1.0);
  check_form(invert_z2(NormalForm::annulus_fiber(1.0, 2.0, kInfinity)), FormKind::PuncturedFiber, -1.0, 0.0, 0.5);
  check_form(invert_z2(NormalForm::punctured_fiber(1.0, 1.0)), FormKind::AnnulusFiber, -1.0, 1.0, kInfinity);
  check_form(invert_z2(NormalForm::gaussian_annulus(2.0, 1.0, 5.0)), FormKind::GaussianAnnulus, -2.0, 0.2, 1.0);
  check_form(invert_z2(NormalForm::gaussian_annulus(2.0, 4.0, kInfinity)), FormKind::GaussianPunctured, -2.0, 0.0, 0.25);
  check_form(invert_z2(NormalForm::gaussian_punctured(1.0, 1.0)), FormKind::GaussianAnnulus, -1.0, 1.0, kInfinity);
  CHECK_THROWS_AS(invert_z2(NormalForm::disc_fiber(0.5, 1.0)), InputError);
}

TEST_CASE("invert_z2 matches the pointwise map z2 -> 1/z2") {
  for (const auto& nf : sample_forms()) {
    if (nf.kind == FormKind::DiscFiber) continue;
    const auto src = as_domain(nf), dst = as_domain(invert_z2(nf));
    std::mt19937_64 rng(400 + nf.id());
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int i = 0; i < 2000; ++i) {
      const ModulusPoint p{std::exp(0.5 * u(rng)), std::exp(u(rng))};
      if (std::abs(src.g(p)) < 1e-9) continue;
      CHECK((src.g(p) < 0.0) == (dst.g({p.m1, 1.0 / p.m2}) < 0.0));
    }
    if (nf.kind == FormKind::AnnulusFiber || nf.kind == FormKind::GaussianAnnulus) {
      const NormalForm back = invert_z2(invert_z2(nf));
      CHECK(back.kind == nf.kind);
      CHECK(back.r == doctest::Approx(nf.r));
    }
  }
}

TEST_CASE("smooth_admissible: decision rules") {
  const auto inf = SmoothnessOrder::infinity();
  auto a = smooth_admissible(NormalForm::disc_fiber(0.25, 1.0), SmoothnessOrder::finite(5));
  CHECK(a.admissible);
  CHECK(a.achieved == SmoothnessClass::infinity());

  a = smooth_admissible(NormalForm::disc_fiber(0.3, 1.0), SmoothnessOrder::finite(2));
  CHECK_FALSE(a.admissible);
  CHECK(a.achieved == SmoothnessClass::exactly(1));
  CHECK(a.reason == RejectReason::NotCkForRequestedK);
  CHECK(smooth_admissible(NormalForm::disc_fiber(0.3, 1.0), SmoothnessOrder::finite(1)).admissible);

  CHECK(smooth_admissible(NormalForm::disc_fiber(0.0, 1.0), inf).reason == RejectReason::BidiscExcluded);
  CHECK(smooth_admissible(NormalForm::disc_fiber(0.7, 1.0), SmoothnessOrder::finite(1)).reason == RejectReason::NotC1);
  CHECK(smooth_admissible(NormalForm::disc_fiber(-2.0, 1.0), inf).admissible);

  CHECK_FALSE(smooth_admissible(NormalForm::annulus_fiber(1.0, 1.0, kInfinity), inf).admissible);
  CHECK_FALSE(smooth_admissible(NormalForm::annulus_fiber(0.0, 1.0, 2.0), inf).admissible);
  a = smooth_admissible(NormalForm::annulus_fiber(1.0, 1.0, 2.0), inf);
  CHECK(a.admissible);
  REQUIRE(a.via);
  CHECK(a.via->uses(EquivalenceStep::Kind::InvertZ2));
  CHECK_FALSE(smooth_admissible(NormalForm::annulus_fiber(-1.0, 1.0, 2.0), inf).via);

  CHECK(smooth_admissible(NormalForm::punctured_fiber(0.5, 1.0), inf).admissible);
  CHECK_FALSE(smooth_admissible(NormalForm::punctured_fiber(-0.5, 1.0), inf).admissible);
  CHECK_FALSE(smooth_admissible(NormalForm::punctured_fiber(0.0, 1.0), inf).admissible);

  for (double beta : {-3.0, -0.1, 0.1, 3.0}) {
    CHECK(smooth_admissible(NormalForm::gaussian_annulus(beta, 1.0, 2.0), inf).admissible);
    CHECK(smooth_admissible(NormalForm::gaussian_annulus(beta, 1.0, kInfinity), inf).admissible);
    CHECK(smooth_admissible(NormalForm::gaussian_punctured(beta, 2.0), inf).admissible);
  }
  CHECK_THROWS_AS(SmoothnessOrder::finite(0), InputError);
}

TEST_CASE("classify: fixed cases") {
  const auto inf = SmoothnessOrder::infinity();
  auto c = classify(NormalForm::gaussian_annulus(2.0, 1.0, 5.0), inf);
  CHECK(c.theorem_case.kind == TheoremCase::Kind::CaseIII);
  CHECK(c.theorem_case.beta == 2.0);
  CHECK(c.theorem_case.R == doctest::Approx(5.0));
  REQUIRE(c.chain.steps.size() == 1);
  CHECK(c.chain.steps[0].kind == EquivalenceStep::Kind::Dilation);
  CHECK(c.oracle.passed());
  CHECK(c.oracle.samples == 1000);

  c = classify(NormalForm::disc_fiber(0.5, 3.0), inf);
  CHECK(c.theorem_case.kind == TheoremCase::Kind::CaseI);
  CHECK(c.theorem_case.alpha == 0.5);
  REQUIRE(c.chain.steps.size() == 1);
  CHECK(c.chain.steps[0].factors[1] == doctest::Approx(1.0 / 3.0));
  CHECK(c.oracle.passed());

  c = classify(NormalForm::annulus_fiber(2.0, 1.0, 2.0), SmoothnessOrder::finite(1));
  CHECK(c.theorem_case.kind == TheoremCase::Kind::CaseII);
  CHECK(c.theorem_case.alpha == -2.0);
  CHECK(c.theorem_case.R == doctest::Approx(2.0));
  CHECK(c.chain.uses(EquivalenceStep::Kind::InvertZ2));
  CHECK(c.oracle.passed());

  c = classify(NormalForm::disc_fiber(0.3, 1.0), inf);
  CHECK(c.theorem_case.kind == TheoremCase::Kind::Rejected);
  CHECK(c.theorem_case.reason == RejectReason::NotCkForRequestedK);
  CHECK(c.chain.steps.empty());

  c = classify(NormalForm::punctured_fiber(0.5, 2.0), inf);
  CHECK(c.theorem_case.kind == TheoremCase::Kind::CaseII);
  CHECK(std::isinf(c.theorem_case.R));
  CHECK(c.theorem_case.alpha == -0.5);
  CHECK_FALSE(c.notes.empty());

  c = classify(NormalForm::gaussian_punctured(1.5, 2.0), inf);
  CHECK(c.theorem_case.kind == TheoremCase::Kind::CaseIII);
  CHECK(c.theorem_case.beta == -1.5);
  CHECK(std::isinf(c.theorem_case.R));
  CHECK(c.oracle.passed());
}

TEST_CASE("classify: rejections") {
  const auto inf = SmoothnessOrder::infinity();
  CHECK(classify(NormalForm::disc_fiber(0.0, 1.0), inf).theorem_case.reason == RejectReason::BidiscExcluded);
  CHECK(classify(NormalForm::annulus_fiber(1.0, 1.0, kInfinity), inf).theorem_case.reason ==
        RejectReason::NotNormalizableSmooth);
  CHECK(classify(NormalForm::disc_fiber(0.8, 1.0), SmoothnessOrder::finite(1)).theorem_case.reason == RejectReason::NotC1);
  // Negative alpha over the disc has no validated model case; the oracle
  // refuses the naive dilation into the first family.
  const auto neg = classify(NormalForm::disc_fiber(-1.0, 1.0), inf);
  CHECK(neg.theorem_case.kind == TheoremCase::Kind::Rejected);
  CHECK(neg.theorem_case.reason == RejectReason::NotNormalizableSmooth);
  CHECK(neg.oracle.samples == 1000);
  CHECK_FALSE(neg.oracle.passed());
  CHECK_FALSE(neg.notes.empty());
}

TEST_CASE("classify: reduction coherence") {
  const auto inf = SmoothnessOrder::infinity();
  for (const auto& nf : {NormalForm::annulus_fiber(1.0, 1.0, 3.0), NormalForm::annulus_fiber(-2.0, 0.5, 4.0),
                         NormalForm::gaussian_annulus(1.0, 1.0, 2.0), NormalForm::gaussian_annulus(-1.0, 2.0, kInfinity),
                         NormalForm::gaussian_punctured(0.5, 2.0), NormalForm::punctured_fiber(0.5, 1.0)}) {
    const auto a = classify(nf, inf), b = classify(invert_z2(nf), inf);
    if (a.theorem_case.kind == TheoremCase::Kind::Rejected || b.theorem_case.kind == TheoremCase::Kind::Rejected)
      continue;
    CHECK_MESSAGE(a.theorem_case.kind == b.theorem_case.kind, nf.describe());
  }
}

TEST_CASE("equivalence chains") {
  EquivalenceChain chain{{EquivalenceStep::invert_z2(), EquivalenceStep::dilation(2.0, 0.5), EquivalenceStep::swap()}};
  const MonomialMap m = chain.composite();
  CHECK(m.matrix() == IntMatrix2{0, -1, 1, 0});
  const ModulusPoint p{0.3, 4.0};
  const auto step = chain.apply(p);
  const auto direct = m.apply(p);
  REQUIRE(step);
  REQUIRE(direct);
  CHECK(step->m1 == doctest::Approx(direct->m1));
  CHECK(step->m2 == doctest::Approx(direct->m2));
  const auto back = chain.apply_inverse(*step);
  REQUIRE(back);
  CHECK(back->m1 == doctest::Approx(p.m1));
  CHECK(back->m2 == doctest::Approx(p.m2));
  CHECK_FALSE(chain.apply({0.3, 0.0}));
  CHECK_THROWS_AS(EquivalenceStep::dilation(0.0, 1.0).as_map(), InputError);
}

TEST_CASE("validate_chain catches a wrong chain") {
  const auto src = as_domain(NormalForm::gaussian_annulus(2.0, 1.0, 5.0));
  const auto dst = ReinhardtDomain::theorem_iii(2.0, 5.0);
  const EquivalenceChain wrong{{EquivalenceStep::dilation(1.0, 0.5)}};
  const auto rep = validate_chain(src, dst, wrong, 1000, 1e-9, 1);
  CHECK_FALSE(rep.passed());
  CHECK(rep.max_violation > 0.0);
  CHECK_THROWS_AS(validate_chain(src, dst, wrong, 0, 1e-9, 1), InputError);
}

TEST_CASE("finite_nonsmooth_case") {
  CHECK(finite_nonsmooth_case(NormalForm::disc_fiber(0.3, 1.0), 1));
  CHECK_FALSE(finite_nonsmooth_case(NormalForm::disc_fiber(0.3, 1.0), 2));
  CHECK_FALSE(finite_nonsmooth_case(NormalForm::disc_fiber(0.25, 1.0), 2));
  CHECK_FALSE(finite_nonsmooth_case(NormalForm::disc_fiber(-0.3, 1.0), 1));
  CHECK(finite_nonsmooth_case(NormalForm::disc_fiber(0.11, 1.0), 4));
  for (int k = 1; k <= 6; ++k) {
    CHECK_FALSE(finite_nonsmooth_case(NormalForm::gaussian_annulus(1.0, 1.0, 2.0), k));
    CHECK_FALSE(finite_nonsmooth_case(NormalForm::gaussian_punctured(-1.0, 2.0), k));
  }
  CHECK_THROWS_AS(finite_nonsmooth_case(NormalForm::disc_fiber(0.3, 1.0), 0), InputError);
}
