#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fusion/core.hpp"
#include "fusion/grading.hpp"

namespace fusion {

/// One component's witness: the invertible delta_g it contains and where
/// delta_g X_i lands for every basis element X_i of the trivial component.
struct SimilarityEntry {
  Element g = 0;
  Index delta = 0;
  /// image[k] is the basis index of delta_g X_{base[k]}.
  std::vector<Index> image;
};

struct SimilarityWitness {
  /// Trivial component, ascending.
  std::vector<Index> base;
  /// One entry per group element, in element order.
  std::vector<SimilarityEntry> entries;

  /// Basis index of delta_g X_{base[k]}.
  Index label(Element g, std::size_t k) const { return entries.at(g).image.at(k); }
};

struct SlightlyTrivialResult {
  std::optional<SimilarityWitness> witness;
  std::vector<Element> failing;

  explicit operator bool() const noexcept { return witness.has_value(); }
};

struct Extension {
  FusionRing ring;
  Grading grading;
};

struct Factorization {
  IndexSet left;
  IndexSet right;
  /// pairing[t] = (a, b) with a b = X_t.
  std::vector<std::pair<Index, Index>> pairing;
};

struct FactorizationResult {
  std::optional<Factorization> factorization;
  std::string diagnostic;

  explicit operator bool() const noexcept { return factorization.has_value(); }
};

/// Witness for component g if it contains an invertible (lowest index wins).
std::optional<SimilarityEntry> is_similar_component(const FusionRing& ring,
                                                    const Grading& grading, Element g);

SlightlyTrivialResult is_slightly_trivial(const FusionRing& ring, const Grading& grading);

/// Split extension of `base` by `group`: basis (g, i) flattened as
/// g * rank(base) + i, with (g,i)(h,j) = sum_t N_ij^t (gh, t).
/// A non-commutative base is rejected unless `force` is set.
Extension synthesize_slightly_trivial(const FusionRing& base, const FiniteGroup& group,
                                      bool force = false);

/// Decides whether ring = left . right is an exact factorization. Both sets
/// must be closed fusion subrings (PreconditionError otherwise).
FactorizationResult check_exact_factorization(const FusionRing& ring, const IndexSet& left,
                                              const IndexSet& right);

/// For a slightly trivial extension whose trivial component has no nontrivial
/// invertibles, factorizes as pointed part times trivial component.
FactorizationResult factorize_via_pointed(const FusionRing& ring, const Grading& grading);

}  // namespace fusion
