#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fusion/core.hpp"
#include "fusion/fpdim.hpp"

namespace fusion {

using Element = std::size_t;

/// Finite group given by its Cayley table; validated on construction.
class FiniteGroup {
 public:
  FiniteGroup(std::vector<std::vector<Element>> table, Element identity);

  static FiniteGroup trivial();
  static FiniteGroup cyclic(std::size_t n);
  /// Element (a, b) is flattened as a * |rhs| + b.
  static FiniteGroup direct_product(const FiniteGroup& lhs, const FiniteGroup& rhs);

  std::size_t order() const noexcept { return table_.size(); }
  Element identity() const noexcept { return identity_; }
  Element mul(Element a, Element b) const;
  Element inverse(Element a) const;
  std::size_t element_order(Element a) const;
  bool is_abelian() const;
  const std::vector<std::vector<Element>>& table() const noexcept { return table_; }

  friend bool operator==(const FiniteGroup&, const FiniteGroup&) = default;

 private:
  std::vector<std::vector<Element>> table_;
  Element identity_;
  std::vector<Element> inverse_;
};

struct Grading {
  FiniteGroup group;
  std::vector<Element> degree;

  /// Basis indices of degree g, ascending.
  IndexSet component(Element g) const;
};

/// (dimension, multiplicity) pairs, dimensions strictly increasing.
struct ComponentType {
  std::vector<std::pair<Dim, std::size_t>> entries;

  std::size_t size() const;
  /// Same counts and pairwise-overlapping dimensions.
  bool same_as(const ComponentType& other) const;
};

AxiomReport validate_grading(const FusionRing& ring, const Grading& grading);

/// Grading by the classes of the adjoint subring acting on the basis.
Grading universal_grading(const FusionRing& ring);

/// True iff `other` is constant on every component of `universal` and the
/// induced map of groups is multiplicative.
bool factors_through(const Grading& universal, const Grading& other);

/// { i : X_i X_i* = 1 }, decided with integer arithmetic.
IndexSet invertible_objects(const FusionRing& ring);

struct PointedPart {
  IndexSet members;
  /// group element k corresponds to basis index `basis[k]`.
  std::vector<Index> basis;
  FiniteGroup group;
};

PointedPart pointed_part(const FusionRing& ring);

ComponentType component_type(const FusionRing& ring, const Grading& grading, Element g);
ComponentType component_type(const std::vector<Dim>& dims, const IndexSet& members);

/// Components share one FP-dimension and the total is |G| times the trivial one.
AxiomReport check_component_dims(const FusionRing& ring, const Grading& grading);

}  // namespace fusion
