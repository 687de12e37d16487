#include <doctest.h>

#include "fixtures.hpp"
#include "fusion/extensions.hpp"
#include "fusion/ring_io.hpp"

using namespace fusion;

namespace {

const char* kRankTwoBadShape = R"(ring bad rank=2 unit=0
dual 0 1
N 0 0 : 1 0
N 0 1 : 0 1 0
N 1 0 : 0 1
N 1 1 : 1 1
)";

}  // namespace

TEST_CASE("bundled documents") {
  const FusionRing is = bundled_ring("ising");
  CHECK(is.name() == "ising");
  CHECK(is.rank() == 3);
  CHECK(multiply(is, 2, 2) == BasisVector(std::vector<Count>{1, 1, 0}));
  const FusionRing a = bundled_ring("a15");
  CHECK(multiply(a, 1, 1) == BasisVector(std::vector<Count>{1, 0, 1}));
  CHECK(multiply(a, 2, 2) == BasisVector(std::vector<Count>{1, 1, 1}));
  CHECK(bundled_group("z2xz2").order() == 4);
  CHECK(bundled_group("z5") == FiniteGroup::cyclic(5));
  CHECK_FALSE(bundled_document("missing.ring").has_value());
  CHECK_THROWS_AS(bundled_ring("missing"), PreconditionError);
}

TEST_CASE("shape errors point at the offending line") {
  try {
    parse_ring(kRankTwoBadShape);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() > 1);
  }
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_ring("ring x rank=1 unit=0\ndual 0\nN 0 0 : q\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 9);
  }
  CHECK_THROWS_AS(parse_ring("ring x rank=1\n"), ParseError);
  CHECK_THROWS_AS(parse_ring(""), ParseError);
  CHECK_THROWS_AS(parse_ring("ring x rank=1 unit=0\ndual 0\n"), ParseError);
}

TEST_CASE("axiom failures are distinct from parse errors") {
  const std::string text = R"(ring broken rank=2 unit=0
dual 0 1
N 0 0 : 1 0
N 0 1 : 0 1
N 1 0 : 0 1
N 1 1 : 0 1
)";
  try {
    parse_ring(text);
    FAIL("expected an axiom failure");
  } catch (const AxiomFailure& e) {
    CHECK_FALSE(e.report().passed());
  }
  CHECK_NOTHROW(parse_ring(text, false));
}

TEST_CASE("property: emit and parse round trip") {
  for (const auto& ring : fixtures::small_rings()) {
    const std::string text = emit_ring(ring);
    const RingDocument doc = parse_ring(text);
    CHECK(doc.ring.same_structure(ring));
    CHECK(doc.ring.name() == ring.name());
    CHECK_FALSE(doc.grading.has_value());
    CHECK(emit_ring(doc.ring) == text);
  }
  const auto ext = synthesize_slightly_trivial(fixtures::a15(),
                                               FiniteGroup::direct_product(FiniteGroup::cyclic(2),
                                                                           FiniteGroup::cyclic(2)));
  const std::string text = emit_ring(ext.ring, ext.grading);
  const RingDocument doc = parse_ring(text);
  REQUIRE(doc.grading.has_value());
  CHECK(doc.grading->group == ext.grading.group);
  CHECK(doc.grading->degree == ext.grading.degree);
  CHECK(emit_ring(doc.ring, doc.grading) == text);
}

TEST_CASE("group documents round trip") {
  const FiniteGroup g = FiniteGroup::cyclic(6);
  CHECK(parse_group(emit_group(g)) == g);
  CHECK_THROWS_AS(parse_group("group order=2 identity=0\nrow 0 1\nrow 1 1\n"), ParseError);
}

TEST_CASE("canonical_whitespace") {
  CHECK(canonical_whitespace("  a   b \n\n# note\nc\t d  # tail\n") == "a b\nc d\n");
}
