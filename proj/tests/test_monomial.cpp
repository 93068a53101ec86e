#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "reinhardt/domain.hpp"
#include "reinhardt/errors.hpp"
#include "reinhardt/gallery.hpp"
#include "reinhardt/monomial.hpp"

using namespace reinhardt;

namespace {
constexpr double kPi = std::numbers::pi;

MonomialMap random_map(std::mt19937_64& rng) {
  static const auto mats = unimodular_matrices(2);
  std::uniform_int_distribution<std::size_t> pick(0, mats.size() - 1);
  std::uniform_real_distribution<double> c(-3.0, 3.0);
  return {mats[pick(rng)], {c(rng), c(rng)}};
}

void check_close(const MonomialMap& f, const MonomialMap& g, double tol) {
  CHECK(f.matrix() == g.matrix());
  CHECK(f.logscale()[0] == doctest::Approx(g.logscale()[0]).epsilon(tol).scale(1.0));
  CHECK(f.logscale()[1] == doctest::Approx(g.logscale()[1]).epsilon(tol).scale(1.0));
}

const ReinhardtDomain kHyperbolaNeighbourhood = ReinhardtDomain::from_expression("m1*m2 - 1", {true, true});
}  // namespace

TEST_CASE("MonomialMap construction") {
  CHECK_THROWS_AS(MonomialMap({2, 0, 0, 1}, {0.0, 0.0}), InputError);
  CHECK_THROWS_AS(MonomialMap({1, 1, 1, 1}, {0.0, 0.0}), InputError);
  CHECK_THROWS_AS(MonomialMap({1, 0, 0, 1}, {kInfinity, 0.0}), InputError);
  CHECK_NOTHROW(MonomialMap({0, 1, 1, 0}, {1.0, 2.0}));
  CHECK(MonomialMap({1, 2, 0, -1}, {0.0, 0.0}).matrix().det() == -1);
}

TEST_CASE("compose, invert, apply_log: fixed values") {
  const MonomialMap gen = example1_generator();
  const MonomialMap f({1, 1, 0, 1}, {0.0, 0.0});
  CHECK(compose(MonomialMap::identity(), f) == f);
  CHECK(compose(gen, gen) == MonomialMap::scaling(2 * kPi, -2 * kPi));
  CHECK(compose(MonomialMap::swap(), MonomialMap::swap()) == MonomialMap::identity());
  CHECK(invert(MonomialMap::identity()) == MonomialMap::identity());
  CHECK(invert(f) == MonomialMap({1, -1, 0, 1}, {0.0, 0.0}));
  CHECK(invert(gen) == MonomialMap::scaling(-kPi, kPi));
  CHECK(apply_log(MonomialMap::identity(), {0.3, -0.7}) == LogPoint{0.3, -0.7});
  CHECK(apply_log(gen, {0.0, 0.0}) == LogPoint{kPi, -kPi});
  CHECK(apply_log(MonomialMap::swap(), {1.0, 2.0}) == LogPoint{2.0, 1.0});
  // u -> A u + c with A = [[1,1],[0,1]], c = (1, -1)
  CHECK(apply_log(MonomialMap({1, 1, 0, 1}, {1.0, -1.0}), {2.0, 3.0}) == LogPoint{6.0, 2.0});
}

TEST_CASE("action on moduli") {
  const MonomialMap inv2({1, 0, 0, -1}, {0.0, std::log(2.0)});
  const auto img = inv2.apply(ModulusPoint{0.5, 4.0});
  REQUIRE(img);
  CHECK(img->m1 == doctest::Approx(0.5));
  CHECK(img->m2 == doctest::Approx(0.5));
  CHECK_FALSE(inv2.apply(ModulusPoint{0.5, 0.0}));
  const auto axis = MonomialMap::swap().apply(ModulusPoint{0.0, 3.0});
  REQUIRE(axis);
  CHECK(*axis == ModulusPoint{3.0, 0.0});
}

TEST_CASE("group laws on random triples") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const auto f = random_map(rng), g = random_map(rng), h = random_map(rng);
    check_close(compose(f, compose(g, h)), compose(compose(f, g), h), 1e-12);
    check_close(compose(f, invert(f)), MonomialMap::identity(), 1e-12);
    check_close(compose(invert(f), f), MonomialMap::identity(), 1e-12);
    CHECK(compose(MonomialMap::identity(), f) == f);
    CHECK(compose(f, MonomialMap::identity()) == f);
    const auto fg = compose(f, g);
    CHECK(fg.matrix().det() == f.matrix().det() * g.matrix().det());
    CHECK(std::abs(fg.matrix().det()) == 1);
    const LogPoint u{0.1 * i - 10.0, 0.3};
    const LogPoint lhs = apply_log(fg, u), rhs = apply_log(f, apply_log(g, u));
    CHECK(lhs.u1 == doctest::Approx(rhs.u1).epsilon(1e-12).scale(1.0));
    CHECK(lhs.u2 == doctest::Approx(rhs.u2).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("powers of the example generator are exact multiples") {
  const MonomialMap gen = example1_generator();
  for (int k = -12; k <= 12; ++k) {
    const auto c = power(gen, k).logscale();
    CHECK(c[0] == k * kPi);
    CHECK(c[1] == -k * kPi);
    CHECK(power(gen, k).matrix() == IntMatrix2::identity());
  }
  CHECK(power(MonomialMap::swap(), 3) == MonomialMap::swap());
}

TEST_CASE("unimodular_matrices") {
  CHECK(unimodular_matrices(1).size() == 40);
  CHECK(unimodular_matrices(2).size() == 104);
  CHECK(unimodular_matrices(3).size() == 232);
  const auto m = unimodular_matrices(1);
  CHECK(std::is_sorted(m.begin(), m.end()));
  CHECK_THROWS_AS(unimodular_matrices(0), InputError);
}

TEST_CASE("candidate_shapes") {
  const auto both = candidate_shapes({true, true});
  REQUIRE(both.size() == 2);
  CHECK(both[0].tag == ShapeTag::DiagonalId);
  CHECK(both[1].tag == ShapeTag::DiagonalSwap);
  CHECK(both[0].matrices(3) == std::vector<IntMatrix2>{IntMatrix2::identity()});
  CHECK(both[1].matrices(3) == std::vector<IntMatrix2>{IntMatrix2::swap()});

  const auto one = candidate_shapes({true, false});
  REQUIRE(one.size() == 2);
  CHECK(one[0].tag == ShapeTag::AxisShear);
  CHECK(one[1].tag == ShapeTag::AxisShearFlip);
  CHECK_FALSE(one[0].relabeled);
  CHECK(one[0].matrices(3).size() == 7);
  CHECK(one[0].matches({1, -2, 0, 1}));
  CHECK(one[1].matches({1, 3, 0, -1}));
  CHECK_FALSE(one[0].matches({1, 0, 1, 1}));

  const auto other = candidate_shapes({false, true});
  REQUIRE(other.size() == 2);
  CHECK(other[0].relabeled);
  CHECK(other[0].matches({1, 0, 2, 1}));
  CHECK(other[1].matches({-1, 0, 2, 1}));

  CHECK_THROWS_AS(candidate_shapes({false, false}), InputError);
  CHECK(shape_of(IntMatrix2::swap(), {true, true})->tag == ShapeTag::DiagonalSwap);
  CHECK_FALSE(shape_of({1, 1, 0, 1}, {true, true}));
}

TEST_CASE("preserves: fixed verdicts") {
  SamplerSpec dense;
  dense.resolution = 420;
  const auto v = preserves(example1_domain(), example1_generator(), dense, 1e-4);
  CHECK(v.preserved);
  CHECK(v.samples_checked >= 10000);

  CHECK(preserves(ReinhardtDomain::theorem_i(0.5), MonomialMap::swap(), SamplerSpec{}, 1e-4).preserved);
  const auto bad = preserves(ReinhardtDomain::theorem_i(1.0 / 3.0), MonomialMap::swap(), SamplerSpec{}, 1e-4);
  CHECK_FALSE(bad.preserved);
  REQUIRE(bad.witness);
  // The witness really is a point that the swap (or its inverse) pushes out.
  const auto d = ReinhardtDomain::theorem_i(1.0 / 3.0);
  CHECK(shadow_value(d, *bad.witness) < 0.0);
  CHECK(shadow_value(d, apply_log(MonomialMap::swap(), *bad.witness)) >= 1e-4);

  CHECK_FALSE(preserves(example1_domain(), MonomialMap::scaling(1.0, 0.0), SamplerSpec{}, 1e-4).preserved);
  // Swap with the quarter-turn scale is also an automorphism of the example.
  CHECK(preserves(example1_domain(), MonomialMap(IntMatrix2::swap(), {kPi / 2, -kPi / 2}), SamplerSpec{}, 1e-4).preserved);
}

TEST_CASE("preserves: preconditions") {
  CHECK_THROWS_AS(preserves(ReinhardtDomain::theorem_i(0.5), MonomialMap::identity(), SamplerSpec{}, 0.0), InputError);
  CHECK_THROWS_AS(preserves(ReinhardtDomain::theorem_i(0.5), MonomialMap({1, 1, 0, 1}, {0, 0}), SamplerSpec{}, 1e-4),
                  InputError);
  CHECK_THROWS_AS(preserves(ReinhardtDomain::theorem_i(0.5), MonomialMap::identity(), std::vector<LogSample>{}, 1e-4),
                  InputError);
}

TEST_CASE("search_aut_alg: small domains") {
  const auto ball = search_aut_alg(ReinhardtDomain::theorem_i(0.5));
  REQUIRE(ball.classes.size() == 2);
  CHECK(ball.classes[0].map.matrix() == IntMatrix2::swap());
  CHECK(ball.classes[1].map == MonomialMap::identity());
  CHECK(std::hypot(ball.classes[0].map.logscale()[0], ball.classes[0].map.logscale()[1]) < 1e-4);
  CHECK_FALSE(ball.infinite_mod_torus);
  CHECK(ball.restricted_to_shapes);

  const auto third = search_aut_alg(ReinhardtDomain::theorem_i(1.0 / 3.0));
  REQUIRE(third.classes.size() == 1);
  CHECK(third.classes[0].map == MonomialMap::identity());
  CHECK_FALSE(third.infinite_mod_torus);

  SearchOptions bad;
  bad.entry_bound = 0;
  CHECK_THROWS_AS(search_aut_alg(ReinhardtDomain::theorem_i(0.5), bad), InputError);
}

TEST_CASE("search_aut_alg: confirmed classes are closed under inversion") {
  SearchOptions opt;
  opt.entry_bound = 1;
  const auto d = example1_domain();
  const auto rep = search_aut_alg(d, opt);
  CHECK(rep.infinite_mod_torus);
  REQUIRE(rep.generator);
  CHECK(std::abs(rep.generator->logscale()[0] - kPi) < 1e-3);
  CHECK(std::abs(rep.generator->logscale()[1] + kPi) < 1e-3);
  for (const auto& fc : rep.classes) CHECK(preserves(d, invert(fc.map), SamplerSpec{}, opt.tol).preserved);
}

TEST_CASE("search_aut_alg: thread count does not change the report") {
  SearchOptions one, many;
  one.threads = 1;
  many.threads = 3;
  const auto d = ReinhardtDomain::theorem_ii(-1.0, 2.0);
  const auto a = search_aut_alg(d, one), b = search_aut_alg(d, many);
  REQUIRE(a.classes.size() == b.classes.size());
  for (std::size_t i = 0; i < a.classes.size(); ++i) CHECK(a.classes[i].map == b.classes[i].map);
}

TEST_CASE("line_containment_probe") {
  const MonomialMap halve({1, 0, 0, 1}, {std::log(2.0), -std::log(2.0)});
  const auto line = line_containment_probe(kHyperbolaNeighbourhood, halve, {1, 0.0, 1.0});
  CHECK(line.verdict == ProbeVerdict::ContainsLine);
  CHECK(line.line_axis == 2);
  CHECK(line.line_level == 0.0);
  CHECK(line.iterations <= 40);
  CHECK(line.witness.front().radius == 1.0);

  const auto ball = ReinhardtDomain::theorem_i(0.5);
  for (const DiscSeed& s : {DiscSeed{1, 0.0, 0.5}, DiscSeed{2, 0.3, 0.5}, DiscSeed{1, 0.5, 0.8}}) {
    const auto c = line_containment_probe(ball, MonomialMap::identity(), s);
    CHECK(c.verdict == ProbeVerdict::Bounded);
    CHECK(c.iterations == 40);
  }

  const auto band = ReinhardtDomain::theorem_ii(-1.0, 2.0);
  const MonomialMap lift({1, 0, 0, 1}, {0.0, 0.1});
  CHECK(line_containment_probe(band, lift, {1, 1.5, 0.3}).verdict != ProbeVerdict::ContainsLine);

  CHECK_THROWS_AS(line_containment_probe(ball, MonomialMap::identity(), {1, 0.0, 0.5}, {0, 1e8, 64}), InputError);
  CHECK_THROWS_AS(line_containment_probe(ball, MonomialMap::identity(), {1, 0.0, 2.0}), InputError);
  CHECK_THROWS_AS(line_containment_probe(ball, MonomialMap::identity(), {3, 0.0, 0.5}), InputError);
}

TEST_CASE("preserves: exterior samples reject folds of an unbounded shadow") {
  // {|z1|^2 + 1/|z2| < 1}: the flip u2 -> 7.9 - u2 keeps every sampled
  // interior point inside but sends exterior points in.
  const auto d = ReinhardtDomain::theorem_i(-1.0);
  const MonomialMap flip(IntMatrix2{1, 0, 0, -1}, {0.0, 7.9});
  const LogSampleSet set = log_samples(d, SamplerSpec{});
  CHECK(preserves(d, flip, set.interior, 1e-4).preserved);
  const auto v = preserves(d, flip, set, 1e-4);
  CHECK_FALSE(v.preserved);
  CHECK(v.witness_exterior);
  CHECK(preserves(d, MonomialMap::identity(), set, 1e-4).exterior_checked > 0);
  for (const auto& s : set.exterior) CHECK(s.g > 0.0);

  const auto rep = search_aut_alg(d);
  REQUIRE(rep.classes.size() == 1);
  CHECK(rep.classes[0].map == MonomialMap::identity());
  CHECK_FALSE(rep.infinite_mod_torus);
}
