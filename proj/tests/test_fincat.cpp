#include "doctest.h"

#include <algorithm>
#include <string>
#include <vector>

#include <catprob/fincat.hpp>
#include <catprob/finspace.hpp>
#include <catprob/measure.hpp>

#include "support.hpp"

using namespace catprob;
using testsupport::error_code_of;

namespace {

FinCategory ordinal1() {
  FinCategory c;
  c.name = "one";
  c.objects = {"A"};
  c.arrows = {{"idA", "A", "A"}};
  c.ids = {{"A", "idA"}};
  c.comp = {{{"idA", "idA"}, "idA"}};
  return c;
}

FinCategory ordinal2() {
  FinCategory c;
  c.name = "two";
  c.objects = {"A", "B"};
  c.arrows = {{"idA", "A", "A"}, {"idB", "B", "B"}, {"s", "A", "B"}};
  c.ids = {{"A", "idA"}, {"B", "idB"}};
  c.comp = {{{"idA", "idA"}, "idA"},
            {{"idB", "idB"}, "idB"},
            {{"s", "idA"}, "s"},
            {{"idB", "s"}, "s"}};
  return c;
}

FinCategory ordinal3() {
  FinCategory c;
  c.name = "three";
  c.objects = {"A", "B", "C"};
  c.arrows = {{"idA", "A", "A"}, {"idB", "B", "B"}, {"idC", "C", "C"},
              {"f", "A", "B"},   {"g", "B", "C"},   {"h", "A", "C"}};
  c.ids = {{"A", "idA"}, {"B", "idB"}, {"C", "idC"}};
  c.comp = {{{"idA", "idA"}, "idA"}, {{"idB", "idB"}, "idB"}, {{"idC", "idC"}, "idC"},
            {{"f", "idA"}, "f"},     {{"idB", "f"}, "f"},     {{"g", "idB"}, "g"},
            {{"idC", "g"}, "g"},     {{"h", "idA"}, "h"},     {{"idC", "h"}, "h"},
            {{"g", "f"}, "h"}};
  return c;
}

bool has_violation(const AuditReport& report, const std::string& kind) {
  return std::any_of(report.violations.begin(), report.violations.end(),
                     [&](const Violation& v) { return v.kind == kind; });
}

}  // namespace

TEST_CASE("ordinal categories validate") {
  for (const auto& cat : {ordinal1(), ordinal2(), ordinal3()}) {
    const auto report = validate_category(cat);
    CHECK(report.violations.empty());
    CHECK(report.checked > 0);
  }
}

TEST_CASE("table lookups expose composition") {
  const auto c = ordinal3();
  CHECK(c.has_object("B"));
  CHECK(!c.has_object("Z"));
  CHECK(c.arrow("g").dom == "B");
  CHECK(c.composite("g", "f") == "h");
  CHECK(!c.composite("f", "g").has_value());
  CHECK(c.compose("g", "f") == "h");
  CHECK(error_code_of([&] { c.arrow("nope"); }) == "UnknownArrow");
  CHECK(error_code_of([&] { c.compose("nope", "f"); }) == "UnknownArrow");
  CHECK(error_code_of([&] { c.compose("f", "g"); }) == "DomainMismatch");
  auto broken = c;
  broken.comp.erase({"g", "f"});
  CHECK(error_code_of([&] { broken.compose("g", "f"); }) == "MalformedTable");
}

TEST_CASE("structural holes throw while law failures report") {
  SUBCASE("duplicate object") {
    auto c = ordinal1();
    c.objects.push_back("A");
    CHECK(error_code_of([&] { validate_category(c); }) == "MalformedTable");
  }
  SUBCASE("unknown endpoint") {
    auto c = ordinal1();
    c.arrows.push_back({"x", "A", "Z"});
    CHECK(error_code_of([&] { validate_category(c); }) == "MalformedTable");
  }
  SUBCASE("missing identity") {
    auto c = ordinal2();
    c.ids.erase("B");
    CHECK(error_code_of([&] { validate_category(c); }) == "MalformedTable");
  }
  SUBCASE("identity is not an endo-arrow") {
    auto c = ordinal2();
    c.ids["A"] = "s";
    CHECK(error_code_of([&] { validate_category(c); }) == "MalformedTable");
  }
  SUBCASE("missing composite entry") {
    auto c = ordinal3();
    c.comp.erase({"g", "f"});
    CHECK(error_code_of([&] { validate_category(c); }) == "MalformedTable");
  }
  SUBCASE("stray composite entry") {
    auto c = ordinal3();
    c.comp[{"f", "g"}] = "h";
    CHECK(error_code_of([&] { validate_category(c); }) == "MalformedTable");
  }
  SUBCASE("unknown composite value") {
    auto c = ordinal3();
    c.comp[{"g", "f"}] = "zap";
    CHECK(error_code_of([&] { validate_category(c); }) == "MalformedTable");
  }
  SUBCASE("wrong identity composite is a law violation") {
    auto c = ordinal2();
    c.comp[{"s", "idA"}] = "idA";
    const auto report = validate_category(c);
    CHECK(!report.violations.empty());
    CHECK(has_violation(report, "endpoint"));
  }
  SUBCASE("misdirected composite breaks associativity") {
    auto c = ordinal3();
    c.comp[{"g", "f"}] = "f";
    const auto report = validate_category(c);
    CHECK(!report.violations.empty());
  }
}

TEST_CASE("opposite category transposes homs") {
  const auto c2 = ordinal2();
  const auto op = opposite_category(c2);
  CHECK(op.arrow("s").dom == "B");
  CHECK(op.arrow("s").cod == "A");
  CHECK(op.composite("s", "idB") == "s");
  CHECK(validate_category(op).violations.empty());
  CHECK(opposite_category(op) == c2);

  const auto c3 = ordinal3();
  CHECK(opposite_category(opposite_category(c3)) == c3);
  CHECK(validate_category(opposite_category(c3)).violations.empty());
}

TEST_CASE("inverses, initial and terminal objects") {
  const auto c2 = ordinal2();
  CHECK(find_inverse(c2, "idA") == "idA");
  CHECK(!find_inverse(c2, "s").has_value());
  CHECK(error_code_of([&] { find_inverse(c2, "nope"); }) == "UnknownArrow");
  CHECK(initial_objects(c2) == std::vector<ObjId>{"A"});
  CHECK(terminal_objects(c2) == std::vector<ObjId>{"B"});

  const auto c1 = ordinal1();
  CHECK(initial_objects(c1) == std::vector<ObjId>{"A"});
  CHECK(terminal_objects(c1) == std::vector<ObjId>{"A"});

  FinCategory iso;
  iso.name = "iso";
  iso.objects = {"A", "B"};
  iso.arrows = {{"idA", "A", "A"}, {"idB", "B", "B"}, {"f", "A", "B"}, {"g", "B", "A"}};
  iso.ids = {{"A", "idA"}, {"B", "idB"}};
  iso.comp = {{{"idA", "idA"}, "idA"}, {{"idB", "idB"}, "idB"}, {{"f", "idA"}, "f"},
              {{"idB", "f"}, "f"},     {{"g", "idB"}, "g"},     {{"idA", "g"}, "g"},
              {{"g", "f"}, "idA"},     {{"f", "g"}, "idB"}};
  REQUIRE(validate_category(iso).violations.empty());
  CHECK(find_inverse(iso, "f") == "g");
  CHECK(find_inverse(iso, "g") == "f");
}

TEST_CASE("preorder categories are thin and lawful") {
  const std::vector<std::string> elems{"x", "y", "z"};
  const auto leq = [](std::size_t i, std::size_t j) { return i <= j; };
  const auto chain = preorder_category("chain", elems, leq);
  CHECK(chain.arrows.size() == 6);
  CHECK(chain.has_arrow("leq(x,z)"));
  CHECK(chain.composite("leq(y,z)", "leq(x,y)") == "leq(x,z)");
  CHECK(validate_category(chain).violations.empty());

  SUBCASE("every preorder on up to three elements validates") {
    for (std::size_t n = 1; n <= 3; ++n) {
      std::vector<std::string> names;
      for (std::size_t i = 0; i < n; ++i) names.push_back("e" + std::to_string(i));
      const std::size_t pairs = n * n;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
        const auto rel = [&](std::size_t i, std::size_t j) {
          return (mask >> (i * n + j)) & 1;
        };
        bool pre = true;
        for (std::size_t i = 0; i < n && pre; ++i)
          if (!rel(i, i)) pre = false;
        for (std::size_t i = 0; i < n && pre; ++i)
          for (std::size_t j = 0; j < n && pre; ++j)
            for (std::size_t k = 0; k < n && pre; ++k)
              if (rel(i, j) && rel(j, k) && !rel(i, k)) pre = false;
        if (!pre) {
          CHECK(error_code_of([&] { preorder_category("p", names, rel); }) == "NotPreorder");
          continue;
        }
        const auto cat = preorder_category("p", names, rel);
        CHECK(validate_category(cat).violations.empty());
        const auto op = opposite_category(cat);
        CHECK(validate_category(op).violations.empty());
        const auto rev = preorder_category("p_op", names,
                                           [&](std::size_t i, std::size_t j) {
                                             return rel(j, i);
                                           });
        for (const auto& a : names)
          for (const auto& b : names) {
            const auto count = [&](const FinCategory& c) {
              std::size_t hits = 0;
              for (const auto& arr : c.arrows)
                if (arr.dom == a && arr.cod == b) ++hits;
              return hits;
            };
            CHECK(count(op) == count(rev));
          }
      }
    }
  }

  SUBCASE("duplicates and non-preorders are rejected") {
    CHECK(error_code_of([&] {
            preorder_category("p", {"x", "x"}, [](std::size_t, std::size_t) { return true; });
          }) == "MalformedTable");
    CHECK(error_code_of([&] {
            preorder_category("p", elems, [](std::size_t i, std::size_t j) { return i < j; });
          }) == "NotPreorder");
  }
}

TEST_CASE("chi objects pair a sub-sigma-algebra with a probability measure") {
  const auto x = FinSpace::make("X", {"a", "b", "c"}, {{"a"}, {"b", "c"}});
  const auto p =
      RationalMeasure::make(x, {Rat(1) / 3, Rat(2) / 3}, MeasureKind::Probability);
  const auto p0 = RationalMeasure::make(x, {0, 1}, MeasureKind::Probability);

  const auto fine = ChiObject::make({{"a"}, {"b", "c"}}, p);
  const auto coarse = ChiObject::make({{"c", "b", "a"}}, p);
  const auto fine_null = ChiObject::make({{"a"}, {"b", "c"}}, p0);

  CHECK(chi_leq(fine, fine));
  CHECK(chi_leq(coarse, fine));
  CHECK(!chi_leq(fine, coarse));
  CHECK(chi_leq(fine, fine_null));
  CHECK(!chi_leq(fine_null, fine));

  CHECK(error_code_of([&] {
          ChiObject::make({{"a"}, {"b", "c"}},
                          RationalMeasure::make(x, {1, 2}, MeasureKind::Finite));
        }) == "NotProbability");
  CHECK(error_code_of([&] { ChiObject::make({{"a", "b"}, {"c"}}, p); }) == "NotMeasurable");
  const auto y = FinSpace::discrete("Y", {"u"});
  CHECK(error_code_of([&] {
          chi_leq(fine, ChiObject::make({{"u"}}, RationalMeasure::dirac(y, "u")));
        }) == "AmbientMismatch");

  const auto cat = chi_category("chi", {{"v", coarse}, {"u", fine}, {"w", fine_null}});
  CHECK(validate_category(cat).violations.empty());
  CHECK(cat.has_arrow("leq(v,u)"));
  CHECK(cat.has_arrow("leq(u,w)"));
  CHECK(!cat.has_arrow("leq(w,u)"));
  CHECK(error_code_of([&] {
          chi_category("chi", {{"v", coarse},
                               {"y", ChiObject::make({{"u"}}, RationalMeasure::dirac(y, "u"))}});
        }) == "AmbientMismatch");
}

TEST_CASE("functor audits preserve structure") {
  const auto c2 = ordinal2();
  const auto c3 = ordinal3();

  SUBCASE("identity functor passes") {
    FinFunctor idf{"one", c2, c2, {{"A", "A"}, {"B", "B"}},
                   {{"idA", "idA"}, {"idB", "idB"}, {"s", "s"}}};
    const auto report = check_functor(idf);
    CHECK(report.violations.empty());
    CHECK(report.checked > 0);
  }

  SUBCASE("monotone embedding of two into three passes") {
    FinFunctor inc{"inc", c2, c3, {{"A", "A"}, {"B", "C"}},
                   {{"idA", "idA"}, {"idB", "idC"}, {"s", "h"}}};
    CHECK(check_functor(inc).violations.empty());
  }

  SUBCASE("collapsing the generator while separating objects fails") {
    FinFunctor bad{"bad", c2, c3, {{"A", "A"}, {"B", "B"}},
                   {{"idA", "idA"}, {"idB", "idB"}, {"s", "idA"}}};
    const auto report = check_functor(bad);
    CHECK(has_violation(report, "endpoint"));
  }

  SUBCASE("breaking composition is caught") {
    FinFunctor bad{"bad", c3, c3,
                   {{"A", "A"}, {"B", "B"}, {"C", "C"}},
                   {{"idA", "idA"}, {"idB", "idB"}, {"idC", "idC"},
                    {"f", "f"}, {"g", "g"}, {"h", "f"}}};
    const auto report = check_functor(bad);
    CHECK(!report.violations.empty());
  }

  SUBCASE("partial maps are malformed") {
    FinFunctor holey{"holey", c2, c2, {{"A", "A"}}, {}};
    CHECK(error_code_of([&] { check_functor(holey); }) == "MalformedMap");
  }
}

TEST_CASE("natural transformation audits check every square") {
  const auto c2 = ordinal2();
  const FinFunctor idf{"one", c2, c2, {{"A", "A"}, {"B", "B"}},
                       {{"idA", "idA"}, {"idB", "idB"}, {"s", "s"}}};

  SUBCASE("identity transformation passes") {
    NatTransformation eta{"eta", idf, idf, {{"A", "idA"}, {"B", "idB"}}};
    const auto report = check_nat_trans(eta);
    CHECK(report.violations.empty());
    CHECK(report.checked == 3);
  }

  SUBCASE("component living at the wrong object is malformed") {
    NatTransformation bad{"bad", idf, idf, {{"A", "s"}, {"B", "idB"}}};
    CHECK(error_code_of([&] { check_nat_trans(bad); }) == "MalformedComponents");
  }

  SUBCASE("missing component is malformed") {
    NatTransformation bad{"bad", idf, idf, {{"A", "idA"}}};
    CHECK(error_code_of([&] { check_nat_trans(bad); }) == "MalformedComponents");
  }

  SUBCASE("non-parallel functors are malformed") {
    const auto c3 = ordinal3();
    const FinFunctor inc{"inc", c2, c3, {{"A", "A"}, {"B", "C"}},
                         {{"idA", "idA"}, {"idB", "idC"}, {"s", "h"}}};
    NatTransformation bad{"bad", idf, inc, {{"A", "idA"}, {"B", "idB"}}};
    CHECK(error_code_of([&] { check_nat_trans(bad); }) == "MalformedComponents");
  }

  SUBCASE("a failing square is reported with its witness") {
    FinCategory walk;
    walk.name = "walk";
    walk.objects = {"A", "B"};
    walk.arrows = {{"idA", "A", "A"}, {"idB", "B", "B"},
                   {"s", "A", "B"},   {"t", "A", "B"}};
    walk.ids = {{"A", "idA"}, {"B", "idB"}};
    walk.comp = {{{"idA", "idA"}, "idA"}, {{"idB", "idB"}, "idB"},
                 {{"s", "idA"}, "s"},     {{"idB", "s"}, "s"},
                 {{"t", "idA"}, "t"},     {{"idB", "t"}, "t"}};
    REQUIRE(validate_category(walk).violations.empty());
    const FinFunctor send_s{"fs", c2, walk, {{"A", "A"}, {"B", "B"}},
                            {{"idA", "idA"}, {"idB", "idB"}, {"s", "s"}}};
    const FinFunctor send_t{"ft", c2, walk, {{"A", "A"}, {"B", "B"}},
                            {{"idA", "idA"}, {"idB", "idB"}, {"s", "t"}}};
    NatTransformation eta{"eta", send_s, send_t, {{"A", "idA"}, {"B", "idB"}}};
    const auto report = check_nat_trans(eta);
    CHECK(has_violation(report, "naturality"));
  }
}

TEST_CASE("bounded-map fragments close under composition") {
  const auto x = FinSpace::make("X", {"a", "b", "c"}, {{"a"}, {"b", "c"}});
  const auto y = FinSpace::discrete("Y", {"u", "v"});
  const auto p =
      RationalMeasure::make(x, {Rat(1) / 3, Rat(2) / 3}, MeasureKind::Probability);
  const auto r =
      RationalMeasure::make(y, {Rat(1) / 2, Rat(1) / 2}, MeasureKind::Probability);
  const auto r0 = RationalMeasure::make(y, {1, 0}, MeasureKind::Probability);
  const auto f = MeasurableMap::make("f", x, y, {{"a", "u"}, {"b", "v"}, {"c", "v"}});

  SUBCASE("identities only give a discrete category") {
    const auto frag = cps_fragment("disc", {{"P", x, p}, {"R", y, r}}, {});
    CHECK(frag.full);
    CHECK(frag.category.arrows.size() == 2);
    CHECK(validate_category(frag.category).violations.empty());
  }

  SUBCASE("one bounded map gives the shape of the two-ordinal") {
    const auto frag =
        cps_fragment("walk", {{"P", x, p}, {"R", y, r}}, {{"f", "P", "R", f}});
    CHECK(frag.full);
    CHECK(frag.rejected.empty());
    CHECK(frag.category.arrows.size() == 3);
    CHECK(frag.info.at("f").bound == Rat(4) / 3);
    CHECK(validate_category(frag.category).violations.empty());
  }

  SUBCASE("unbounded maps are rejected and flagged") {
    const auto frag =
        cps_fragment("gap", {{"P", x, p}, {"R0", y, r0}}, {{"f", "P", "R0", f}});
    CHECK(!frag.full);
    CHECK(frag.rejected == std::vector<std::string>{"f"});
    CHECK(frag.category.arrows.size() == 2);
  }

  SUBCASE("scaled measures on a shared space are isomorphic") {
    const auto mu = RationalMeasure::make(x, {1, 2}, MeasureKind::Finite);
    const auto scaled = RationalMeasure::make(x, {3, 6}, MeasureKind::Finite);
    const auto id = MeasurableMap::identity(x);
    const auto frag = cps_fragment("scale", {{"M", x, mu}, {"N", x, scaled}},
                                   {{"fwd", "M", "N", id}, {"bwd", "N", "M", id}});
    REQUIRE(frag.full);
    CHECK(frag.info.at("fwd").bound == Rat(1) / 3);
    CHECK(frag.info.at("bwd").bound == 3);
    REQUIRE(validate_category(frag.category).violations.empty());
    CHECK(find_inverse(frag.category, "fwd") == "bwd");
    CHECK(find_inverse(frag.category, "bwd") == "fwd");
  }

  SUBCASE("closure composes bounded arrows") {
    const auto z = FinSpace::discrete("Z", {"s", "t"});
    const auto q =
        RationalMeasure::make(z, {Rat(1) / 4, Rat(3) / 4}, MeasureKind::Probability);
    const auto g = MeasurableMap::make("g", y, z, {{"u", "t"}, {"v", "s"}});
    const auto frag = cps_fragment(
        "chain", {{"P", x, p}, {"R", y, r}, {"Q", z, q}},
        {{"f", "P", "R", f}, {"g", "R", "Q", g}});
    CHECK(frag.full);
    CHECK(frag.category.arrows.size() == 6);
    CHECK(frag.info.count("g_o_f") == 1);
    CHECK(validate_category(frag.category).violations.empty());
  }

  SUBCASE("input validation") {
    CHECK(error_code_of([&] { cps_fragment("dup", {{"P", x, p}, {"P", x, p}}, {}); }) ==
          "MalformedTable");
    CHECK(error_code_of([&] {
            cps_fragment("bad", {{"P", x, p}}, {{"f", "P", "nope", f}});
          }) == "ResolveError");
    CHECK(error_code_of([&] {
            cps_fragment("bad", {{"P", x, p}, {"R", y, r}}, {{"f", "R", "P", f}});
          }) == "SpaceMismatch");
    CHECK(error_code_of([&] { cps_fragment("bad", {{"P", x, r}}, {}); }) == "SpaceMismatch");
  }
}
