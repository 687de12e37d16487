#include "fusion/extensions.hpp"

#include <algorithm>
#include <iterator>
#include <string>

#include "fusion/error.hpp"

namespace fusion {

namespace {

std::string set_text(const IndexSet& s) {
  std::string out = "{";
  for (Index i : s) {
    if (out.size() > 1) out += ",";
    out += std::to_string(i);
  }
  return out + "}";
}

}  // namespace

std::optional<SimilarityEntry> is_similar_component(const FusionRing& ring,
                                                    const Grading& grading, Element g) {
  const IndexSet component = grading.component(g);
  const IndexSet trivial = grading.component(grading.group.identity());

  std::optional<Index> delta;
  if (g == grading.group.identity()) {
    delta = ring.unit();
  } else {
    const IndexSet invertibles = invertible_objects(ring);
    for (Index i : component) {
      if (invertibles.contains(i)) {
        delta = i;
        break;
      }
    }
  }
  if (!delta) return std::nullopt;

  SimilarityEntry entry{g, *delta, {}};
  IndexSet covered;
  for (Index x : trivial) {
    const BasisVector prod = multiply(ring, *delta, x);
    if (!prod.is_simple()) {
      throw StructuralError("invertible " + std::to_string(*delta) + " times " +
                            std::to_string(x) + " is not simple");
    }
    const Index t = prod.support().front();
    if (!component.contains(t)) {
      throw StructuralError("product of invertible " + std::to_string(*delta) + " and " +
                            std::to_string(x) + " leaves component " + std::to_string(g));
    }
    if (!covered.insert(t).second) {
      throw StructuralError("invertible " + std::to_string(*delta) + " maps two elements to " +
                            std::to_string(t));
    }
    entry.image.push_back(t);
  }
  if (covered != component) {
    throw StructuralError("translates of the trivial component by " + std::to_string(*delta) +
                          " do not exhaust component " + std::to_string(g));
  }
  return entry;
}

SlightlyTrivialResult is_slightly_trivial(const FusionRing& ring, const Grading& grading) {
  SimilarityWitness witness;
  const IndexSet trivial = grading.component(grading.group.identity());
  witness.base.assign(trivial.begin(), trivial.end());

  SlightlyTrivialResult result;
  for (Element g = 0; g < grading.group.order(); ++g) {
    auto entry = is_similar_component(ring, grading, g);
    if (entry) {
      witness.entries.push_back(std::move(*entry));
    } else {
      result.failing.push_back(g);
    }
  }
  if (result.failing.empty()) result.witness = std::move(witness);
  return result;
}

Extension synthesize_slightly_trivial(const FusionRing& base, const FiniteGroup& group,
                                      bool force) {
  if (!force && !is_commutative(base)) {
    throw PreconditionError(
        "synthesis requires a commutative base ring (the fusion rules of a slightly trivial "
        "extension are only determined by the base when the Grothendieck ring is commutative)");
  }
  const std::size_t r = base.rank();
  const std::size_t n = group.order() * r;
  auto flat = [r](Element g, Index i) { return g * r + i; };

  std::vector<Index> dual(n);
  std::vector<Count> constants(n * n * n, 0);
  std::vector<Element> degree(n);
  for (Element g = 0; g < group.order(); ++g) {
    for (Index i = 0; i < r; ++i) {
      const Index p = flat(g, i);
      dual[p] = flat(group.inverse(g), base.dual(i));
      degree[p] = g;
      for (Element h = 0; h < group.order(); ++h) {
        const Element gh = group.mul(g, h);
        for (Index j = 0; j < r; ++j) {
          const auto row = base.product_row(i, j);
          const Index q = flat(h, j);
          for (Index t = 0; t < r; ++t) {
            constants[(p * n + q) * n + flat(gh, t)] = row[t];
          }
        }
      }
    }
  }
  FusionRing ring(base.name() + "_ext" + std::to_string(group.order()), n,
                  flat(group.identity(), base.unit()), std::move(dual), std::move(constants));
  const AxiomReport report = validate_ring(ring);
  if (!report.passed()) {
    throw StructuralError("synthesized extension violates " + report.violations.front().axiom);
  }
  return Extension{std::move(ring), Grading{group, std::move(degree)}};
}

FactorizationResult check_exact_factorization(const FusionRing& ring, const IndexSet& left,
                                              const IndexSet& right) {
  for (const IndexSet* side : {&left, &right}) {
    if (subring_generated(ring, *side) != *side) {
      throw PreconditionError("factor " + set_text(*side) +
                              " is not closed under products and duals");
    }
  }
  FactorizationResult result;
  IndexSet common;
  std::set_intersection(left.begin(), left.end(), right.begin(), right.end(),
                        std::inserter(common, common.begin()));
  if (common != IndexSet{ring.unit()}) {
    result.diagnostic = "factors intersect in " + set_text(common);
    return result;
  }

  const std::size_t r = ring.rank();
  std::vector<std::pair<Index, Index>> pairing(r, {r, r});
  std::vector<std::size_t> hits(r, 0);
  for (Index a : left) {
    for (Index b : right) {
      const BasisVector prod = multiply(ring, a, b);
      if (!prod.is_simple()) {
        result.diagnostic =
            "product " + std::to_string(a) + " * " + std::to_string(b) + " is not simple";
        return result;
      }
      const Index t = prod.support().front();
      if (++hits[t] == 1) pairing[t] = {a, b};
    }
  }
  for (Index t = 0; t < r; ++t) {
    if (hits[t] == 0) {
      result.diagnostic = "basis index " + std::to_string(t) + " is not a product";
      return result;
    }
    if (hits[t] > 1) {
      result.diagnostic = "basis index " + std::to_string(t) + " is covered " +
                          std::to_string(hits[t]) + " times";
      return result;
    }
  }
  result.factorization = Factorization{left, right, std::move(pairing)};
  return result;
}

FactorizationResult factorize_via_pointed(const FusionRing& ring, const Grading& grading) {
  const SlightlyTrivialResult slightly = is_slightly_trivial(ring, grading);
  if (!slightly) {
    std::string failing;
    for (Element g : slightly.failing) failing += " " + std::to_string(g);
    throw PreconditionError("extension is not slightly trivial; components without an "
                            "invertible:" + failing);
  }
  const IndexSet trivial = grading.component(grading.group.identity());
  const IndexSet invertibles = invertible_objects(ring);
  IndexSet base_pointed;
  std::set_intersection(trivial.begin(), trivial.end(), invertibles.begin(), invertibles.end(),
                        std::inserter(base_pointed, base_pointed.begin()));
  if (base_pointed.size() != 1) {
    throw PreconditionError("pointed part of the trivial component is nontrivial: " +
                            set_text(base_pointed));
  }
  FactorizationResult result = check_exact_factorization(ring, invertibles, trivial);
  if (!result) {
    throw TheoryViolation("slightly trivial extension with trivial base pointed part does not "
                          "factor as pointed part times base: " + result.diagnostic);
  }
  return result;
}

}  // namespace fusion
