#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "fusion/error.hpp"
#include "fusion/extensions.hpp"

using namespace fusion;

namespace {

std::vector<FiniteGroup> groups_up_to_six() {
  std::vector<FiniteGroup> out;
  for (std::size_t n = 1; n <= 6; ++n) out.push_back(FiniteGroup::cyclic(n));
  out.push_back(FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)));
  out.push_back(fusion::bundled_group("z2xz2"));
  return out;
}

}  // namespace

TEST_CASE("is_similar_component") {
  const FusionRing is = fixtures::ising();
  CHECK_FALSE(is_similar_component(is, fixtures::ising_z2(), 1).has_value());
  const auto trivial = is_similar_component(is, fixtures::ising_z2(), 0);
  REQUIRE(trivial.has_value());
  CHECK(trivial->delta == is.unit());
  CHECK(trivial->image == std::vector<Index>{0, 1});

  const auto ext = synthesize_slightly_trivial(fixtures::a15(), FiniteGroup::cyclic(2));
  const auto entry = is_similar_component(ext.ring, ext.grading, 1);
  REQUIRE(entry.has_value());
  CHECK(entry->delta == 3);
}

TEST_CASE("is_slightly_trivial") {
  const auto is = is_slightly_trivial(fixtures::ising(), fixtures::ising_z2());
  CHECK_FALSE(is);
  CHECK(is.failing == std::vector<Element>{1});

  CHECK(is_slightly_trivial(fixtures::a15(), Grading{FiniteGroup::trivial(), {0, 0, 0}}));

  const auto ext = synthesize_slightly_trivial(fixtures::ising(), FiniteGroup::cyclic(3));
  const auto r = is_slightly_trivial(ext.ring, ext.grading);
  REQUIRE(r);
  CHECK(r.witness->entries.size() == 3);
  CHECK(r.witness->entries[0].delta == ext.ring.unit());
}

TEST_CASE("synthesize_slightly_trivial on the named bases") {
  const auto z3 = synthesize_slightly_trivial(fixtures::trivial_ring(), FiniteGroup::cyclic(3));
  CHECK(z3.ring.same_structure(fixtures::pointed_cyclic(3)));

  const auto is2 = synthesize_slightly_trivial(fixtures::ising(), FiniteGroup::cyclic(2));
  CHECK(is2.ring.rank() == 6);
  CHECK(std::abs(fp_dim_ring(is2.ring).value - 8.0) < 1e-9);
  CHECK(invertible_objects(is2.ring).size() == 4);

  const auto a2 = synthesize_slightly_trivial(fixtures::a15(), FiniteGroup::cyclic(2));
  CHECK(a2.ring.rank() == 6);
  CHECK(std::abs(fp_dim_ring(a2.ring).value - 2 * fixtures::a15_total()) < 1e-8);
  CHECK(std::abs(fp_dim_ring(a2.ring).value - 18.591794) < 1e-6);
  CHECK(is_slightly_trivial(a2.ring, a2.grading));
}

TEST_CASE("synthesis refuses a non-commutative base unless forced") {
  // Group ring of S3 is a non-commutative fusion ring.
  const FiniteGroup s3({{0, 1, 2, 3, 4, 5},
                        {1, 2, 0, 5, 3, 4},
                        {2, 0, 1, 4, 5, 3},
                        {3, 4, 5, 0, 1, 2},
                        {4, 5, 3, 2, 0, 1},
                        {5, 3, 4, 1, 2, 0}},
                       0);
  std::vector<Index> dual(6);
  std::vector<Count> flat(216, 0);
  for (Index i = 0; i < 6; ++i) {
    dual[i] = s3.inverse(i);
    for (Index j = 0; j < 6; ++j) flat[(i * 6 + j) * 6 + s3.mul(i, j)] = 1;
  }
  const FusionRing vec_s3("vec_s3", 6, 0, dual, flat);
  REQUIRE(validate_ring(vec_s3).passed());
  CHECK_THROWS_AS(synthesize_slightly_trivial(vec_s3, FiniteGroup::cyclic(2)), PreconditionError);
  CHECK(synthesize_slightly_trivial(vec_s3, FiniteGroup::cyclic(2), true).ring.rank() == 12);
}

TEST_CASE("property: synthesis round trip over groups of order up to six") {
  for (const auto& base : {fixtures::trivial_ring(), fixtures::fibonacci(), fixtures::ising(),
                           fixtures::a15(), fixtures::rep_s3()}) {
    const ComponentType base_type =
        component_type(base, Grading{FiniteGroup::trivial(), std::vector<Element>(base.rank(), 0)},
                       0);
    for (const auto& group : groups_up_to_six()) {
      CAPTURE(base.name());
      CAPTURE(group.order());
      const Extension ext = synthesize_slightly_trivial(base, group);
      CHECK(validate_ring(ext.ring).passed());
      CHECK(validate_grading(ext.ring, ext.grading).passed());
      CHECK(check_component_dims(ext.ring, ext.grading).passed());
      CHECK(is_slightly_trivial(ext.ring, ext.grading));
      for (Element g = 0; g < group.order(); ++g) {
        CHECK(component_type(ext.ring, ext.grading, g).same_as(base_type));
      }
      CHECK(std::abs(fp_dim_ring(ext.ring).value -
                     static_cast<double>(group.order()) * fp_dim_ring(base).value) < 1e-8);
    }
  }
}

TEST_CASE("property: synthesized fusion rules follow the base rules") {
  const FusionRing base = fixtures::a15();
  const FiniteGroup group = FiniteGroup::cyclic(3);
  const Extension ext = synthesize_slightly_trivial(base, group);
  const std::size_t r = base.rank();
  for (Element g = 0; g < 3; ++g)
    for (Element h = 0; h < 3; ++h)
      for (Index i = 0; i < r; ++i)
        for (Index j = 0; j < r; ++j) {
          BasisVector expected(ext.ring.rank());
          for (Index t = 0; t < r; ++t) expected[group.mul(g, h) * r + t] = base.n(i, j, t);
          REQUIRE(multiply(ext.ring, g * r + i, h * r + j) == expected);
        }
}

TEST_CASE("property: similarity witness matches the brute-force definition") {
  for (const auto& group : groups_up_to_six()) {
    const Extension ext = synthesize_slightly_trivial(fixtures::ising(), group);
    const IndexSet base = ext.grading.component(ext.grading.group.identity());
    for (Element g = 0; g < group.order(); ++g) {
      const auto entry = is_similar_component(ext.ring, ext.grading, g);
      REQUIRE(entry.has_value());
      std::vector<Index> image;
      for (Index i : base) {
        const BasisVector p = multiply(ext.ring, entry->delta, i);
        REQUIRE(p.is_simple());
        image.push_back(p.support().front());
      }
      std::vector<Index> sorted = image;
      std::sort(sorted.begin(), sorted.end());
      const IndexSet comp = ext.grading.component(g);
      CHECK(sorted == std::vector<Index>(comp.begin(), comp.end()));
      CHECK(entry->image == image);
    }
  }
}

TEST_CASE("check_exact_factorization") {
  const FusionRing z6 = fixtures::pointed_cyclic(6);
  const auto ok = check_exact_factorization(z6, {0, 3}, {0, 2, 4});
  REQUIRE(ok);
  CHECK(ok.factorization->pairing.size() == 6);
  CHECK(ok.factorization->pairing[5] == std::pair<Index, Index>{3, 2});

  CHECK_THROWS_AS(check_exact_factorization(fixtures::ising(), {0, 1}, {0, 2}), PreconditionError);
  const auto overlap = check_exact_factorization(z6, {0, 2, 4}, {0, 2, 4});
  CHECK_FALSE(overlap);
  CHECK_FALSE(overlap.diagnostic.empty());

  const auto ext = synthesize_slightly_trivial(fixtures::a15(), FiniteGroup::cyclic(2));
  const auto f = check_exact_factorization(ext.ring, invertible_objects(ext.ring),
                                           ext.grading.component(0));
  CHECK(f);
}

TEST_CASE("factorize_via_pointed") {
  for (const auto& group : groups_up_to_six()) {
    const auto ext = synthesize_slightly_trivial(fixtures::a15(), group);
    const auto f = factorize_via_pointed(ext.ring, ext.grading);
    REQUIRE(f);
    CHECK(f.factorization->left.size() == group.order());
    CHECK(f.factorization->right.size() == 3);
    CHECK(f.factorization->left.size() * f.factorization->right.size() == ext.ring.rank());
  }
  const auto trivial =
      factorize_via_pointed(fixtures::a15(), Grading{FiniteGroup::trivial(), {0, 0, 0}});
  REQUIRE(trivial);
  CHECK(trivial.factorization->left == IndexSet{0});

  const auto is2 = synthesize_slightly_trivial(fixtures::ising(), FiniteGroup::cyclic(2));
  CHECK_THROWS_AS(factorize_via_pointed(is2.ring, is2.grading), PreconditionError);
  CHECK_THROWS_AS(factorize_via_pointed(fixtures::ising(), fixtures::ising_z2()),
                  PreconditionError);
}
