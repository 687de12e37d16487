#include "fusion/core.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "fusion/error.hpp"

namespace fusion {

Count checked_add(Count a, Count b) {
  Count out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw StructuralError("structure constant arithmetic overflowed");
  }
  return out;
}

Count checked_mul(Count a, Count b) {
  Count out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw StructuralError("structure constant arithmetic overflowed");
  }
  return out;
}

FusionRing::FusionRing(std::string name, std::size_t rank, Index unit, std::vector<Index> dual,
                       std::vector<Count> constants)
    : name_(std::move(name)),
      rank_(rank),
      unit_(unit),
      dual_(std::move(dual)),
      constants_(std::move(constants)) {
  if (rank_ == 0) {
    throw StructuralError("fusion ring must have positive rank");
  }
  if (unit_ >= rank_) {
    throw StructuralError("unit index " + std::to_string(unit_) + " out of range for rank " +
                          std::to_string(rank_));
  }
  if (dual_.size() != rank_) {
    throw StructuralError("dual map has " + std::to_string(dual_.size()) + " entries, expected " +
                          std::to_string(rank_));
  }
  for (Index i = 0; i < rank_; ++i) {
    if (dual_[i] >= rank_) {
      throw StructuralError("dual(" + std::to_string(i) + ") = " + std::to_string(dual_[i]) +
                            " out of range");
    }
  }
  if (constants_.size() != rank_ * rank_ * rank_) {
    throw StructuralError("structure tensor has " + std::to_string(constants_.size()) +
                          " entries, expected rank^3 = " + std::to_string(rank_ * rank_ * rank_));
  }
}

FusionRing FusionRing::from_nested(std::string name, Index unit, std::vector<Index> dual,
                                   const std::vector<std::vector<std::vector<Count>>>& n) {
  const std::size_t rank = n.size();
  std::vector<Count> flat;
  flat.reserve(rank * rank * rank);
  for (std::size_t i = 0; i < rank; ++i) {
    if (n[i].size() != rank) {
      throw StructuralError("row " + std::to_string(i) + " has " + std::to_string(n[i].size()) +
                            " columns, expected " + std::to_string(rank));
    }
    for (std::size_t j = 0; j < rank; ++j) {
      if (n[i][j].size() != rank) {
        throw StructuralError("entry (" + std::to_string(i) + ", " + std::to_string(j) + ") has " +
                              std::to_string(n[i][j].size()) + " components, expected " +
                              std::to_string(rank));
      }
      flat.insert(flat.end(), n[i][j].begin(), n[i][j].end());
    }
  }
  return FusionRing(std::move(name), rank, unit, std::move(dual), std::move(flat));
}

void FusionRing::check_index(Index i) const {
  if (i >= rank_) {
    throw StructuralError("basis index " + std::to_string(i) + " out of range for rank " +
                          std::to_string(rank_));
  }
}

Index FusionRing::dual(Index i) const {
  check_index(i);
  return dual_[i];
}

Count FusionRing::n(Index i, Index j, Index k) const {
  check_index(i);
  check_index(j);
  check_index(k);
  return constants_[offset(i, j, k)];
}

std::span<const Count> FusionRing::product_row(Index i, Index j) const {
  check_index(i);
  check_index(j);
  return std::span<const Count>(constants_).subspan(offset(i, j, 0), rank_);
}

FusionRing FusionRing::renamed(std::string name) const {
  FusionRing copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

bool FusionRing::same_structure(const FusionRing& other) const noexcept {
  return rank_ == other.rank_ && unit_ == other.unit_ && dual_ == other.dual_ &&
         constants_ == other.constants_;
}

BasisVector BasisVector::basis(std::size_t rank, Index i) {
  BasisVector v(rank);
  v[i] = 1;
  return v;
}

Count BasisVector::length() const {
  Count total = 0;
  for (Count c : coefficients_) total = checked_add(total, c);
  return total;
}

std::vector<Index> BasisVector::support() const {
  std::vector<Index> out;
  for (Index i = 0; i < coefficients_.size(); ++i) {
    if (coefficients_[i] > 0) out.push_back(i);
  }
  return out;
}

bool BasisVector::is_simple() const { return length() == 1; }

BasisVector& BasisVector::operator+=(const BasisVector& other) {
  if (other.rank() != rank()) {
    throw StructuralError("basis vectors of different rank cannot be added");
  }
  for (Index i = 0; i < coefficients_.size(); ++i) {
    coefficients_[i] = checked_add(coefficients_[i], other.coefficients_[i]);
  }
  return *this;
}

bool AxiomReport::has(const std::string& axiom) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.axiom == axiom; });
}

void AxiomReport::add(std::string axiom, std::vector<Index> indices, double lhs, double rhs) {
  violations.push_back({std::move(axiom), std::move(indices), lhs, rhs});
}

AxiomReport validate_ring(const FusionRing& ring) {
  AxiomReport report;
  const std::size_t r = ring.rank();
  const Index one = ring.unit();

  for (Index i = 0; i < r; ++i) {
    if (ring.dual(ring.dual(i)) != i) {
      report.add("dual-involution", {i}, static_cast<double>(ring.dual(ring.dual(i))),
                 static_cast<double>(i));
    }
  }
  if (ring.dual(one) != one) {
    report.add("dual-unit", {one}, static_cast<double>(ring.dual(one)), static_cast<double>(one));
  }

  for (Index a = 0; a < r; ++a) {
    for (Index b = 0; b < r; ++b) {
      const Count expected = a == b ? 1 : 0;
      if (ring.n(one, a, b) != expected) {
        report.add("left-unit", {one, a, b}, static_cast<double>(ring.n(one, a, b)),
                   static_cast<double>(expected));
      }
      if (ring.n(a, one, b) != expected) {
        report.add("right-unit", {a, one, b}, static_cast<double>(ring.n(a, one, b)),
                   static_cast<double>(expected));
      }
      const Count pairing = ring.dual(a) == b ? 1 : 0;
      if (ring.n(a, b, one) != pairing) {
        report.add("unit-pairing", {a, b, one}, static_cast<double>(ring.n(a, b, one)),
                   static_cast<double>(pairing));
      }
    }
  }

  for (Index i = 0; i < r; ++i) {
    for (Index j = 0; j < r; ++j) {
      for (Index k = 0; k < r; ++k) {
        const Count v = ring.n(i, j, k);
        const Count left = ring.n(ring.dual(i), k, j);
        const Count right = ring.n(k, ring.dual(j), i);
        if (v != left) {
          report.add("frobenius-left", {i, j, k}, static_cast<double>(v),
                     static_cast<double>(left));
        }
        if (v != right) {
          report.add("frobenius-right", {i, j, k}, static_cast<double>(v),
                     static_cast<double>(right));
        }
      }
    }
  }

  for (Index i = 0; i < r; ++i) {
    for (Index j = 0; j < r; ++j) {
      for (Index k = 0; k < r; ++k) {
        for (Index l = 0; l < r; ++l) {
          Count lhs = 0;
          Count rhs = 0;
          for (Index m = 0; m < r; ++m) {
            lhs = checked_add(lhs, checked_mul(ring.n(i, j, m), ring.n(m, k, l)));
            rhs = checked_add(rhs, checked_mul(ring.n(j, k, m), ring.n(i, m, l)));
          }
          if (lhs != rhs) {
            report.add("associativity", {i, j, k, l}, static_cast<double>(lhs),
                       static_cast<double>(rhs));
          }
        }
      }
    }
  }
  return report;
}

BasisVector multiply(const FusionRing& ring, const BasisVector& a, const BasisVector& b) {
  const std::size_t r = ring.rank();
  if (a.rank() != r || b.rank() != r) {
    throw StructuralError("basis vector rank does not match ring rank " + std::to_string(r));
  }
  BasisVector out(r);
  for (Index i = 0; i < r; ++i) {
    if (a[i] == 0) continue;
    for (Index j = 0; j < r; ++j) {
      if (b[j] == 0) continue;
      const Count weight = checked_mul(a[i], b[j]);
      const auto row = ring.product_row(i, j);
      for (Index k = 0; k < r; ++k) {
        if (row[k] != 0) out[k] = checked_add(out[k], checked_mul(weight, row[k]));
      }
    }
  }
  return out;
}

BasisVector multiply(const FusionRing& ring, Index i, Index j) {
  const auto row = ring.product_row(i, j);
  return BasisVector(std::vector<Count>(row.begin(), row.end()));
}

bool is_commutative(const FusionRing& ring) {
  const std::size_t r = ring.rank();
  for (Index i = 0; i < r; ++i) {
    for (Index j = i + 1; j < r; ++j) {
      if (!std::ranges::equal(ring.product_row(i, j), ring.product_row(j, i))) return false;
    }
  }
  return true;
}

IndexSet subring_generated(const FusionRing& ring, const IndexSet& seeds) {
  IndexSet closed = seeds;
  for (Index s : seeds) {
    if (s >= ring.rank()) {
      throw StructuralError("seed index " + std::to_string(s) + " out of range");
    }
  }
  closed.insert(ring.unit());
  bool changed = true;
  while (changed) {
    changed = false;
    const std::vector<Index> current(closed.begin(), closed.end());
    for (Index i : current) {
      changed |= closed.insert(ring.dual(i)).second;
      for (Index j : current) {
        const auto row = ring.product_row(i, j);
        for (Index t = 0; t < ring.rank(); ++t) {
          if (row[t] > 0) changed |= closed.insert(t).second;
        }
      }
    }
  }
  return closed;
}

FusionRing restrict_to(const FusionRing& ring, const IndexSet& subset, std::string name) {
  if (!subset.contains(ring.unit())) {
    throw StructuralError("restriction must contain the unit");
  }
  const std::vector<Index> members(subset.begin(), subset.end());
  std::vector<Index> position(ring.rank(), ring.rank());
  for (Index p = 0; p < members.size(); ++p) position.at(members[p]) = p;

  const std::size_t r = members.size();
  std::vector<Index> dual(r);
  std::vector<Count> flat(r * r * r, 0);
  for (Index p = 0; p < r; ++p) {
    const Index d = ring.dual(members[p]);
    if (position[d] == ring.rank()) {
      throw StructuralError("subset not closed under duals at index " + std::to_string(members[p]));
    }
    dual[p] = position[d];
    for (Index q = 0; q < r; ++q) {
      const auto row = ring.product_row(members[p], members[q]);
      for (Index t = 0; t < ring.rank(); ++t) {
        if (row[t] == 0) continue;
        if (position[t] == ring.rank()) {
          throw StructuralError("subset not closed under products: " + std::to_string(members[p]) +
                                " * " + std::to_string(members[q]) + " contains " +
                                std::to_string(t));
        }
        flat[(p * r + q) * r + position[t]] = row[t];
      }
    }
  }
  return FusionRing(name.empty() ? ring.name() : std::move(name), r, position[ring.unit()],
                    std::move(dual), std::move(flat));
}

FusionRing tensor_product(const FusionRing& lhs, const FusionRing& rhs, std::string name) {
  const std::size_t m = rhs.rank();
  const std::size_t n = lhs.rank() * m;
  std::vector<Index> dual(n);
  std::vector<Count> flat(n * n * n, 0);
  for (Index p = 0; p < n; ++p) {
    dual[p] = lhs.dual(p / m) * m + rhs.dual(p % m);
    for (Index q = 0; q < n; ++q) {
      const auto left = lhs.product_row(p / m, q / m);
      const auto right = rhs.product_row(p % m, q % m);
      for (Index a = 0; a < lhs.rank(); ++a) {
        if (left[a] == 0) continue;
        for (Index b = 0; b < m; ++b) {
          flat[(p * n + q) * n + a * m + b] = checked_mul(left[a], right[b]);
        }
      }
    }
  }
  if (name.empty()) name = lhs.name() + "x" + rhs.name();
  return FusionRing(std::move(name), n, lhs.unit() * m + rhs.unit(), std::move(dual),
                    std::move(flat));
}

}  // namespace fusion
