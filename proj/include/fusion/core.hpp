#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace fusion {

using Index = std::size_t;
using Count = std::uint64_t;
using IndexSet = std::set<Index>;

/// Based ring with nonnegative integer structure constants.
///
/// The constructor only checks shapes and index ranges; the ring axioms are
/// checked separately by validate_ring() so that broken tensors can still be
/// built, inspected and reported on.
class FusionRing {
 public:
  /// `constants` is the flattened tensor, entry (i, j, k) at (i * rank + j) * rank + k.
  FusionRing(std::string name, std::size_t rank, Index unit, std::vector<Index> dual,
             std::vector<Count> constants);

  /// Builds from nested rows N[i][j] = multiplicities of each k in X_i X_j.
  static FusionRing from_nested(std::string name, Index unit, std::vector<Index> dual,
                                const std::vector<std::vector<std::vector<Count>>>& n);

  const std::string& name() const noexcept { return name_; }
  std::size_t rank() const noexcept { return rank_; }
  Index unit() const noexcept { return unit_; }
  Index dual(Index i) const;
  const std::vector<Index>& duals() const noexcept { return dual_; }

  Count n(Index i, Index j, Index k) const;
  std::span<const Count> constants() const noexcept { return constants_; }
  /// Decomposition of X_i X_j as a row of length rank.
  std::span<const Count> product_row(Index i, Index j) const;

  FusionRing renamed(std::string name) const;

  /// Structural equality: rank, unit, dual and tensor; the name is ignored.
  bool same_structure(const FusionRing& other) const noexcept;

 private:
  std::size_t offset(Index i, Index j, Index k) const noexcept {
    return (i * rank_ + j) * rank_ + k;
  }
  void check_index(Index i) const;

  std::string name_;
  std::size_t rank_;
  Index unit_;
  std::vector<Index> dual_;
  std::vector<Count> constants_;
};

/// Non-virtual element of the Grothendieck ring, stored densely.
class BasisVector {
 public:
  explicit BasisVector(std::size_t rank) : coefficients_(rank, 0) {}
  explicit BasisVector(std::vector<Count> coefficients) : coefficients_(std::move(coefficients)) {}

  static BasisVector basis(std::size_t rank, Index i);

  std::size_t rank() const noexcept { return coefficients_.size(); }
  Count operator[](Index i) const { return coefficients_.at(i); }
  Count& operator[](Index i) { return coefficients_.at(i); }
  const std::vector<Count>& coefficients() const noexcept { return coefficients_; }

  /// Total multiplicity (number of simple summands counted with multiplicity).
  Count length() const;
  /// Indices with positive coefficient, ascending.
  std::vector<Index> support() const;
  /// True iff exactly one summand with multiplicity one.
  bool is_simple() const;

  BasisVector& operator+=(const BasisVector& other);
  friend BasisVector operator+(BasisVector a, const BasisVector& b) { return a += b; }
  friend bool operator==(const BasisVector&, const BasisVector&) = default;

 private:
  std::vector<Count> coefficients_;
};

struct Violation {
  std::string axiom;
  std::vector<Index> indices;
  double lhs = 0;
  double rhs = 0;
};

struct AxiomReport {
  std::vector<Violation> violations;

  bool passed() const noexcept { return violations.empty(); }
  bool has(const std::string& axiom) const;
  void add(std::string axiom, std::vector<Index> indices, double lhs, double rhs);
};

/// Checks duality, unit, associativity and Frobenius reciprocity, listing
/// every violation. Throws StructuralError if an associativity sum overflows.
AxiomReport validate_ring(const FusionRing& ring);

BasisVector multiply(const FusionRing& ring, const BasisVector& a, const BasisVector& b);
BasisVector multiply(const FusionRing& ring, Index i, Index j);

bool is_commutative(const FusionRing& ring);

/// Smallest set containing `seeds` and the unit that is closed under duals
/// and under taking summands of products.
IndexSet subring_generated(const FusionRing& ring, const IndexSet& seeds);

/// Re-indexes the structure constants restricted to `subset` (ascending order
/// of original indices). Throws StructuralError if the subset is not closed.
FusionRing restrict_to(const FusionRing& ring, const IndexSet& subset, std::string name = {});

/// Product ring with basis pairs (a, b) flattened as a * rank(rhs) + b.
FusionRing tensor_product(const FusionRing& lhs, const FusionRing& rhs, std::string name = {});

// Checked arithmetic on structure constants.
Count checked_add(Count a, Count b);
Count checked_mul(Count a, Count b);

}  // namespace fusion
