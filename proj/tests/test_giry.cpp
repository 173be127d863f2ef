#include "doctest.h"

#include <vector>

#include <catprob/finspace.hpp>
#include <catprob/giry.hpp>
#include <catprob/measure.hpp>
#include <catprob/sampling.hpp>

#include "support.hpp"

using namespace catprob;
using testsupport::error_code_of;

namespace {
const FinSpace kX = FinSpace::make("X", {"a", "b", "c"}, {{"a"}, {"b", "c"}});
const FinSpace kY = FinSpace::discrete("Y", {"u", "v"});

RationalMeasure prob(const FinSpace& s, std::vector<Rat> w) {
  return RationalMeasure::make(s, std::move(w), MeasureKind::Probability);
}
}  // namespace

TEST_CASE("mixtures canonicalize their support") {
  const auto p = prob(kX, {Rat(1) / 3, Rat(2) / 3});
  const auto q = prob(kX, {Rat(1) / 2, Rat(1) / 2});

  const auto mix = MixMeasure::make(kX, {q, p, q}, {Rat(1) / 4, Rat(1) / 2, Rat(1) / 4});
  REQUIRE(mix.support().size() == 2);
  CHECK(mix.support()[0] == p);
  CHECK(mix.support()[1] == q);
  CHECK(mix.weights() == std::vector<Rat>{Rat(1) / 2, Rat(1) / 2});

  const auto dropped = MixMeasure::make(kX, {p, q}, {1, 0});
  CHECK(dropped == MixMeasure::dirac(p));

  CHECK(error_code_of([&] { MixMeasure::make(kX, {p}, {Rat(1) / 2, Rat(1) / 2}); }) ==
        "ArityMismatch");
  CHECK(error_code_of([&] { MixMeasure::make(kX, {p, q}, {Rat(3) / 2, Rat(-1) / 2}); }) ==
        "NegativeWeight");
  CHECK(error_code_of([&] { MixMeasure::make(kX, {p, q}, {Rat(1) / 2, Rat(1) / 3}); }) ==
        "NotNormalized");
  CHECK(error_code_of([&] { MixMeasure::make(kY, {p}, {1}); }) == "SpaceMismatch");
  CHECK(error_code_of([&] {
          MixMeasure::make(kX, {RationalMeasure::make(kX, {1, 2}, MeasureKind::Finite)}, {1});
        }) == "NotProbability");
}

TEST_CASE("unit, map, and mult realize the functor data") {
  CHECK(giry_unit(kX, "b") == RationalMeasure::dirac(kX, "b"));

  const auto p = prob(kX, {Rat(1) / 3, Rat(2) / 3});
  const auto q = prob(kX, {1, 0});
  const auto f = MeasurableMap::make("f", kX, kY, {{"a", "u"}, {"b", "v"}, {"c", "v"}});

  const auto mix = MixMeasure::make(kX, {p, q}, {Rat(1) / 2, Rat(1) / 2});
  const auto mapped = giry_map(f, mix);
  CHECK(mapped.base() == kY);
  REQUIRE(mapped.support().size() == 2);
  CHECK(mapped.support()[0] == pushforward(p, f));
  CHECK(mapped.support()[1] == pushforward(q, f));

  const auto bary = giry_mult(mix);
  CHECK(bary == prob(kX, {Rat(2) / 3, Rat(1) / 3}));
  CHECK(giry_mult(MixMeasure::dirac(p)) == p);

  CHECK(error_code_of([&] { giry_map(f, mapped); }) == "SpaceMismatch");
}

TEST_CASE("pushforward collisions merge in the mapped mixture") {
  const auto p = prob(kX, {Rat(1) / 3, Rat(2) / 3});
  const auto q = prob(kX, {Rat(1) / 3, Rat(2) / 3});
  const auto r = prob(kX, {1, 0});
  const auto collapse =
      MeasurableMap::make("k", kX, kY, {{"a", "v"}, {"b", "v"}, {"c", "v"}});
  const auto mix = MixMeasure::make(kX, {r, q}, {Rat(1) / 4, Rat(3) / 4});
  const auto mapped = giry_map(collapse, mix);
  CHECK(mapped.support().size() == 1);
  CHECK(mapped.weights() == std::vector<Rat>{1});
  CHECK(mapped.support()[0] == prob(kY, {0, 1}));
  (void)p;
}

TEST_CASE("flatten and inner-mult agree under the barycenter") {
  SampleRng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = random_space(rng, 1, 5, "s");
    const auto mm = random_mix2(rng, s, 4);
    CHECK(giry_mult(mix_flatten(mm)) == giry_mult(map_mult(mm)));
  }
}

TEST_CASE("monad laws hold on random samples") {
  const auto report = run_monad_law_suite(0, 100);
  CHECK(report.left_unit.ok());
  CHECK(report.right_unit.ok());
  CHECK(report.assoc.ok());
  CHECK(report.assoc.checked == 100);
}

TEST_CASE("monad laws hold on a hand-built sample") {
  const auto p = prob(kX, {Rat(1) / 3, Rat(2) / 3});
  const auto q = prob(kX, {1, 0});
  const auto mix = MixMeasure::make(kX, {p, q}, {Rat(1) / 2, Rat(1) / 2});
  const auto mm = MixMixMeasure::make(
      kX, {MixMeasure::dirac(p), mix}, {Rat(1) / 3, Rat(2) / 3});
  const auto report = check_monad_laws(kX, {mm}, {"a", "c"});
  CHECK(report.left_unit.ok());
  CHECK(report.right_unit.ok());
  CHECK(report.assoc.ok());
}

TEST_CASE("evaluation functional properties") {
  const auto theta = RealObservable::make(kX, {2, 4});

  SUBCASE("on diracs it evaluates the observable") {
    for (const auto& point : kX.points()) {
      CHECK(xi(theta, RationalMeasure::dirac(kX, point)) ==
            theta.value(kX.atom_of_point(kX.point_index(point))));
    }
  }

  SUBCASE("on indicators it returns the set measure") {
    const auto p = prob(kX, {Rat(1) / 3, Rat(2) / 3});
    const auto set = MeasurableSet::from_points(kX, {"b", "c"});
    std::vector<Rat> indicator(kX.atom_count(), 0);
    for (const auto a : set.atom_indices()) indicator[a] = 1;
    CHECK(xi(RealObservable::make(kX, indicator), p) == p.mass(set));
  }

  SUBCASE("against a barycenter it is the weighted sum of evaluations") {
    const auto p = prob(kX, {Rat(1) / 3, Rat(2) / 3});
    const auto q = prob(kX, {1, 0});
    const auto mix = MixMeasure::make(kX, {p, q}, {Rat(1) / 4, Rat(3) / 4});
    Rat expected = 0;
    for (std::size_t i = 0; i < mix.support().size(); ++i)
      expected += mix.weights()[i] * xi(theta, mix.support()[i]);
    CHECK(xi(theta, giry_mult(mix)) == expected);
  }
}

TEST_CASE("unit preimage splits into the four indicator cases") {
  const auto set = MeasurableSet::from_points(kX, {"a"});
  CHECK(unit_preimage_case(set, true, true) == MeasurableSet::full(kX));
  CHECK(unit_preimage_case(set, false, true) == set);
  CHECK(unit_preimage_case(set, true, false) == set.complement());
  CHECK(unit_preimage_case(set, false, false) == MeasurableSet::empty(kX));
}

TEST_CASE("unit and mult are natural in the map") {
  const auto f = MeasurableMap::make("f", kX, kY, {{"a", "u"}, {"b", "v"}, {"c", "v"}});
  CHECK(check_unit_naturality(f).ok());
  CHECK(check_unit_naturality(f).checked == 3);

  SampleRng rng(13);
  std::vector<MixMeasure> mixes;
  for (int i = 0; i < 40; ++i) mixes.push_back(random_mix(rng, kX, 4));
  const auto mult = check_mult_naturality(f, mixes);
  CHECK(mult.ok());
  CHECK(mult.checked == 40);
}

TEST_CASE("text renderings are stable") {
  const auto p = prob(kY, {Rat(1) / 3, Rat(2) / 3});
  CHECK(measure_text(p) == "(1/3,2/3)");
  const auto mix = MixMeasure::make(kY, {p, prob(kY, {1, 0})}, {Rat(1) / 2, Rat(1) / 2});
  CHECK(mix_text(mix) == "1/2*(1/3,2/3) + 1/2*(1,0)");
}
