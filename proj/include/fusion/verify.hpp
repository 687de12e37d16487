#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fusion/core.hpp"
#include "fusion/fpdim.hpp"
#include "fusion/grading.hpp"

namespace fusion {

/// Outcome of the low-dimension dichotomy for a component: either it holds an
/// invertible, or x Y is simple for its smallest-dimension element Y.
struct DichotomyOutcome {
  enum class Kind { HasInvertible, SimpleProduct };

  Kind kind;
  /// The invertible, or Y.
  Index witness;
  /// Index of x Y for SimpleProduct.
  std::optional<Index> product;
};

DichotomyOutcome low_simps_dichotomy(const FusionRing& ring, const Grading& grading, Index x,
                                     Element g);

/// First non-unit index present in both decompositions.
std::optional<Index> shared_nonunit_summand(const BasisVector& a, const BasisVector& b,
                                            Index unit = 0);

/// True iff the decompositions share a non-unit summand.
bool common_summand_obstruction(const BasisVector& a, const BasisVector& b, Index unit = 0);

enum class Reason {
  DimBudgetExceeded,
  TotalDimMismatch,
  DichotomyUnsatisfiable,
  CommonSummandObstruction,
};

std::string_view reason_name(Reason reason);

/// A hypothetical graded component with no invertible objects.
///
/// The search is seeded by the smallest object X of the component; when the
/// component has room, the second object is the dichotomy partner x0 X whose
/// data is derived rather than enumerated. Any further objects are recorded
/// only when a consistent completion is found.
struct HypotheticalComponent {
  std::size_t ordinal = 0;
  std::size_t size = 0;
  /// X_k X_k* over the base basis, unit coefficient included (always 1).
  std::vector<BasisVector> self_dual_products;
  std::vector<Dim> dims;
};

struct Elimination {
  HypotheticalComponent candidate;
  Reason reason;
  /// The quantity that failed: partial sum for the budget, derived total for
  /// a mismatch, unit multiplicity of (x0 X)(x0 X)* for the dichotomy.
  double value = 0;
  double bound = 0;
  std::optional<Index> shared_summand;
  std::string detail;
};

struct SearchBounds {
  std::size_t max_size = 0;
  std::size_t max_mult = 0;
  unsigned threads = 1;
};

struct VerificationReport {
  std::string theorem;
  std::string base;
  Index probe = 0;
  Dim probe_dim;
  Dim budget;
  std::size_t max_size = 0;
  std::size_t max_mult = 0;
  std::size_t search_space = 0;
  std::size_t examined = 0;
  std::vector<Elimination> eliminations;
  std::vector<HypotheticalComponent> survivors;
  /// Extra constructive checks run alongside the search, one line each.
  std::vector<std::string> checks;
  bool checks_passed = true;

  bool verified() const noexcept { return survivors.empty() && checks_passed; }
};

/// Exhaustive search over hypothetical invertible-free components of an
/// extension of `base`, pruned by the dimension floor, common-summand
/// obstruction, dimension budget, dichotomy and exact total dimension.
VerificationReport search_invertible_free_component(const FusionRing& base,
                                                    const SearchBounds& bounds);

struct VerifyOptions {
  std::optional<std::size_t> max_size;
  std::optional<std::size_t> max_mult;
  unsigned threads = 1;
};

/// Runs the search for a bundled base ("ising" or "rank3") with the default
/// bounds, plus the constructive extension checks.
VerificationReport verify_theorem(std::string_view theorem, const VerifyOptions& options = {});

/// key: value lines; byte-identical for identical inputs.
std::string format_report(const VerificationReport& report);

}  // namespace fusion
