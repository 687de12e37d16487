#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "fusion/error.hpp"
#include "fusion/extensions.hpp"
#include "fusion/grading.hpp"

using namespace fusion;

TEST_CASE("FiniteGroup constructors") {
  const FiniteGroup z4 = FiniteGroup::cyclic(4);
  CHECK(z4.order() == 4);
  CHECK(z4.mul(3, 2) == 1);
  CHECK(z4.inverse(1) == 3);
  CHECK(z4.element_order(2) == 2);
  CHECK(z4.is_abelian());
  const FiniteGroup k = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  CHECK(k.order() == 4);
  for (Element g = 0; g < 4; ++g) CHECK(k.mul(g, g) == k.identity());
  CHECK(FiniteGroup::trivial().order() == 1);
}

TEST_CASE("FiniteGroup rejects tables that are not groups") {
  CHECK_THROWS_AS(FiniteGroup({{0, 1}, {1, 1}}, 0), StructuralError);
  CHECK_THROWS_AS(FiniteGroup({{1, 0}, {0, 1}}, 0), StructuralError);
  // Latin square without associativity
  CHECK_THROWS_AS(FiniteGroup({{0, 1, 2, 3, 4},
                               {1, 0, 3, 4, 2},
                               {2, 4, 0, 1, 3},
                               {3, 2, 4, 0, 1},
                               {4, 3, 1, 2, 0}},
                              0),
                  StructuralError);
}

TEST_CASE("non-abelian S3 as a table") {
  // elements: 0=e, 1=r, 2=r^2, 3=s, 4=sr, 5=sr^2
  const FiniteGroup s3({{0, 1, 2, 3, 4, 5},
                        {1, 2, 0, 5, 3, 4},
                        {2, 0, 1, 4, 5, 3},
                        {3, 4, 5, 0, 1, 2},
                        {4, 5, 3, 2, 0, 1},
                        {5, 3, 4, 1, 2, 0}},
                       0);
  CHECK_FALSE(s3.is_abelian());
  CHECK(s3.element_order(1) == 3);
  CHECK(s3.element_order(4) == 2);
}

TEST_CASE("validate_grading") {
  CHECK(validate_grading(fixtures::ising(), fixtures::ising_z2()).passed());
  const FusionRing a = fixtures::a15();
  CHECK(validate_grading(a, Grading{FiniteGroup::trivial(), {0, 0, 0}}).passed());
  const AxiomReport bad =
      validate_grading(fixtures::ising(), Grading{FiniteGroup::cyclic(2), {0, 1, 0}});
  CHECK(bad.has("compatibility"));
  CHECK(validate_grading(fixtures::ising(), Grading{FiniteGroup::cyclic(3), {0, 0, 1}})
            .has("faithfulness"));
  CHECK(validate_grading(fixtures::ising(), Grading{FiniteGroup::cyclic(2), {1, 1, 0}})
            .has("unit-degree"));
  CHECK_THROWS_AS(
      validate_grading(fixtures::ising(), Grading{FiniteGroup::cyclic(2), {0, 0, 7}}),
      StructuralError);
}

TEST_CASE("universal_grading") {
  const Grading is = universal_grading(fixtures::ising());
  CHECK(is.group.order() == 2);
  CHECK(is.component(is.group.identity()) == IndexSet{0, 1});
  CHECK(is.degree[2] != is.group.identity());

  const Grading z3 = universal_grading(fixtures::pointed_cyclic(3));
  CHECK(z3.group.order() == 3);
  for (Element g = 0; g < 3; ++g) CHECK(z3.component(g).size() == 1);

  CHECK(universal_grading(fixtures::a15()).group.order() == 1);
  CHECK(universal_grading(fixtures::trivial_ring()).group.order() == 1);
}

TEST_CASE("property: universal grading validates and respects duals") {
  for (const auto& ring : fixtures::small_rings()) {
    const Grading g = universal_grading(ring);
    CAPTURE(ring.name());
    CHECK(validate_grading(ring, g).passed());
    for (Index i = 0; i < ring.rank(); ++i) {
      CHECK(g.degree[ring.dual(i)] == g.group.inverse(g.degree[i]));
    }
    CHECK(factors_through(g, Grading{FiniteGroup::trivial(),
                                     std::vector<Element>(ring.rank(), 0)}));
  }
  CHECK(factors_through(universal_grading(fixtures::ising()), fixtures::ising_z2()));
}

TEST_CASE("invertible_objects and pointed_part") {
  CHECK(invertible_objects(fixtures::ising()) == IndexSet{0, 1});
  CHECK(invertible_objects(fixtures::a15()) == IndexSet{0});
  CHECK(invertible_objects(fixtures::trivial_ring()) == IndexSet{0});

  const PointedPart pt = pointed_part(fixtures::ising());
  CHECK(pt.members == IndexSet{0, 1});
  CHECK(pt.group.order() == 2);

  const auto ext = synthesize_slightly_trivial(fixtures::ising(), FiniteGroup::cyclic(2));
  const PointedPart ept = pointed_part(ext.ring);
  CHECK(ept.members.size() == 4);
  CHECK(ept.group.order() == 4);
  for (Element g = 0; g < 4; ++g) CHECK(ept.group.mul(g, g) == ept.group.identity());
}

TEST_CASE("property: invertible iff dimension one") {
  for (const auto& ring : fixtures::small_rings()) {
    const auto dims = fp_dims(ring);
    const IndexSet inv = invertible_objects(ring);
    for (Index i = 0; i < ring.rank(); ++i) {
      CHECK(inv.contains(i) == (std::abs(dims[i].value - 1.0) <= dims[i].radius + 1e-12));
    }
  }
}

TEST_CASE("component_type") {
  const FusionRing is = fixtures::ising();
  const Grading g = fixtures::ising_z2();
  const ComponentType e = component_type(is, g, 0);
  REQUIRE(e.entries.size() == 1);
  CHECK(e.entries[0].first.value == doctest::Approx(1.0));
  CHECK(e.entries[0].second == 2);
  const ComponentType x = component_type(is, g, 1);
  REQUIRE(x.entries.size() == 1);
  CHECK(std::abs(x.entries[0].first.value - std::sqrt(2.0)) < 1e-9);
  CHECK(x.entries[0].second == 1);
  CHECK_FALSE(e.same_as(x));
  const ComponentType one =
      component_type(fixtures::trivial_ring(), Grading{FiniteGroup::trivial(), {0}}, 0);
  CHECK(one.size() == 1);
}

TEST_CASE("check_component_dims") {
  CHECK(check_component_dims(fixtures::ising(), fixtures::ising_z2()).passed());
  CHECK(check_component_dims(fixtures::a15(), Grading{FiniteGroup::trivial(), {0, 0, 0}})
            .passed());
  const auto ext = synthesize_slightly_trivial(fixtures::a15(), FiniteGroup::cyclic(2));
  CHECK(check_component_dims(ext.ring, ext.grading).passed());
  for (Element g = 0; g < 2; ++g) {
    Dim total = Dim::exact(0);
    const auto dims = fp_dims(ext.ring);
    for (Index i : ext.grading.component(g)) total = total + dims[i] * dims[i];
    CHECK(std::abs(total.value - fixtures::a15_total()) < 1e-8);
  }
}
