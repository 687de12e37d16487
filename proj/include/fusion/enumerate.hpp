#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fusion/core.hpp"

namespace fusion {

inline constexpr std::size_t kCensusMaxRank = 6;
inline constexpr Count kCensusMaxConstant = 3;

struct EnumerationSpec {
  std::size_t rank = 1;
  Count max_constant = 1;
  /// Restricts the search to one duality pattern (unit at index 0).
  std::optional<std::vector<Index>> dual_pattern;
  /// Lifts the rank and constant guards.
  bool unguarded = false;
  unsigned threads = 1;
};

/// All fusion rings of the given rank with structure constants bounded by
/// max_constant, one canonical representative per isomorphism class, sorted
/// by flattened tensor then duality.
std::vector<FusionRing> enumerate_fusion_rings(const EnumerationSpec& spec);

/// Lexicographically smallest (dual, tensor) over all basis permutations that
/// fix the unit. Idempotent. Cost grows as (rank - 1)!.
FusionRing canonical_form(const FusionRing& ring);

/// Relabels the basis: new index of old basis element i is perm[i].
FusionRing permute_basis(const FusionRing& ring, const std::vector<Index>& perm);

struct CensusAnomaly {
  std::size_t ring;
  std::string what;
};

struct Census {
  std::vector<FusionRing> rings;
  std::vector<CensusAnomaly> anomalies;
};

/// Enumerates and cross-checks every ring: FP-dimension multiplicativity,
/// invertibility against FPdim = 1, quantization of dimensions below 2, and
/// existence of the universal grading.
Census run_census(const EnumerationSpec& spec);

}  // namespace fusion
