#include "fusion/grading.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "fusion/error.hpp"

namespace fusion {

FiniteGroup::FiniteGroup(std::vector<std::vector<Element>> table, Element identity)
    : table_(std::move(table)), identity_(identity) {
  const std::size_t n = table_.size();
  if (n == 0) throw StructuralError("group must have at least one element");
  if (identity_ >= n) throw StructuralError("group identity out of range");
  for (std::size_t a = 0; a < n; ++a) {
    if (table_[a].size() != n) {
      throw StructuralError("Cayley table row " + std::to_string(a) + " has wrong length");
    }
    for (Element v : table_[a]) {
      if (v >= n) throw StructuralError("Cayley table entry out of range");
    }
  }
  for (Element a = 0; a < n; ++a) {
    if (table_[identity_][a] != a || table_[a][identity_] != a) {
      throw StructuralError("declared identity fails at element " + std::to_string(a));
    }
  }
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      for (Element c = 0; c < n; ++c) {
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) {
          throw StructuralError("Cayley table not associative at (" + std::to_string(a) + ", " +
                                std::to_string(b) + ", " + std::to_string(c) + ")");
        }
      }
    }
  }
  inverse_.assign(n, n);
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (table_[a][b] == identity_ && table_[b][a] == identity_) inverse_[a] = b;
    }
    if (inverse_[a] == n) {
      throw StructuralError("element " + std::to_string(a) + " has no inverse");
    }
  }
}

FiniteGroup FiniteGroup::trivial() { return cyclic(1); }

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  if (n == 0) throw StructuralError("cyclic group order must be positive");
  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  }
  return FiniteGroup(std::move(table), 0);
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& lhs, const FiniteGroup& rhs) {
  const std::size_t m = rhs.order();
  const std::size_t n = lhs.order() * m;
  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      table[x][y] = lhs.mul(x / m, y / m) * m + rhs.mul(x % m, y % m);
    }
  }
  return FiniteGroup(std::move(table), lhs.identity() * m + rhs.identity());
}

Element FiniteGroup::mul(Element a, Element b) const { return table_.at(a).at(b); }

Element FiniteGroup::inverse(Element a) const { return inverse_.at(a); }

std::size_t FiniteGroup::element_order(Element a) const {
  std::size_t k = 1;
  for (Element x = a; x != identity_; x = mul(x, a)) ++k;
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (Element a = 0; a < order(); ++a) {
    for (Element b = a + 1; b < order(); ++b) {
      if (mul(a, b) != mul(b, a)) return false;
    }
  }
  return true;
}

IndexSet Grading::component(Element g) const {
  if (g >= group.order()) {
    throw StructuralError("group element " + std::to_string(g) + " out of range");
  }
  IndexSet out;
  for (Index i = 0; i < degree.size(); ++i) {
    if (degree[i] == g) out.insert(i);
  }
  return out;
}

std::size_t ComponentType::size() const {
  std::size_t total = 0;
  for (const auto& e : entries) total += e.second;
  return total;
}

bool ComponentType::same_as(const ComponentType& other) const {
  if (entries.size() != other.entries.size()) return false;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (entries[k].second != other.entries[k].second) return false;
    if (!overlaps(entries[k].first, other.entries[k].first)) return false;
  }
  return true;
}

AxiomReport validate_grading(const FusionRing& ring, const Grading& grading) {
  const FiniteGroup& g = grading.group;
  const auto& deg = grading.degree;
  if (deg.size() != ring.rank()) {
    throw StructuralError("degree map has " + std::to_string(deg.size()) + " entries, expected " +
                          std::to_string(ring.rank()));
  }
  for (Index i = 0; i < deg.size(); ++i) {
    if (deg[i] >= g.order()) {
      throw StructuralError("degree of basis index " + std::to_string(i) + " out of range");
    }
  }

  AxiomReport report;
  if (deg[ring.unit()] != g.identity()) {
    report.add("unit-degree", {ring.unit()}, static_cast<double>(deg[ring.unit()]),
               static_cast<double>(g.identity()));
  }
  for (Index i = 0; i < ring.rank(); ++i) {
    const Element want = g.inverse(deg[i]);
    if (deg[ring.dual(i)] != want) {
      report.add("dual-degree", {i, ring.dual(i)}, static_cast<double>(deg[ring.dual(i)]),
                 static_cast<double>(want));
    }
  }
  std::vector<bool> hit(g.order(), false);
  for (Element d : deg) hit[d] = true;
  for (Element e = 0; e < g.order(); ++e) {
    if (!hit[e]) report.add("faithfulness", {e}, 0, 1);
  }
  for (Index i = 0; i < ring.rank(); ++i) {
    for (Index j = 0; j < ring.rank(); ++j) {
      const Element want = g.mul(deg[i], deg[j]);
      const auto row = ring.product_row(i, j);
      for (Index t = 0; t < ring.rank(); ++t) {
        if (row[t] > 0 && deg[t] != want) {
          report.add("compatibility", {i, j, t}, static_cast<double>(deg[t]),
                     static_cast<double>(want));
        }
      }
    }
  }
  return report;
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

Grading universal_grading(const FusionRing& ring) {
  const std::size_t r = ring.rank();
  IndexSet seeds;
  for (Index i = 0; i < r; ++i) {
    for (Index t : multiply(ring, i, ring.dual(i)).support()) seeds.insert(t);
  }
  const IndexSet adjoint = subring_generated(ring, seeds);

  DisjointSets classes(r);
  for (Index a : adjoint) {
    for (Index i = 0; i < r; ++i) {
      const auto row = ring.product_row(a, i);
      for (Index j = 0; j < r; ++j) {
        if (row[j] > 0) classes.unite(i, j);
      }
    }
  }

  // Number classes by their smallest member.
  std::map<std::size_t, Element> label;
  std::vector<Element> degree(r);
  for (Index i = 0; i < r; ++i) {
    const auto root = classes.find(i);
    auto [it, inserted] = label.try_emplace(root, label.size());
    degree[i] = it->second;
  }
  const std::size_t n = label.size();

  std::vector<std::vector<Element>> table(n, std::vector<Element>(n, n));
  for (Index i = 0; i < r; ++i) {
    for (Index j = 0; j < r; ++j) {
      const auto row = ring.product_row(i, j);
      for (Index t = 0; t < r; ++t) {
        if (row[t] == 0) continue;
        Element& cell = table[degree[i]][degree[j]];
        if (cell == n) {
          cell = degree[t];
        } else if (cell != degree[t]) {
          throw StructuralError("adjoint classes do not multiply consistently at " +
                                std::to_string(i) + " * " + std::to_string(j));
        }
      }
    }
  }
  for (const auto& row : table) {
    if (std::find(row.begin(), row.end(), n) != row.end()) {
      throw StructuralError("product of adjoint classes is empty; ring is not valid");
    }
  }
  Grading grading{FiniteGroup(std::move(table), degree[ring.unit()]), std::move(degree)};
  const AxiomReport check = validate_grading(ring, grading);
  if (!check.passed()) {
    throw StructuralError("universal grading failed validation (" +
                          check.violations.front().axiom + ")");
  }
  return grading;
}

bool factors_through(const Grading& universal, const Grading& other) {
  if (universal.degree.size() != other.degree.size()) return false;
  const std::size_t n = universal.group.order();
  std::vector<Element> image(n, other.group.order());
  for (Index i = 0; i < universal.degree.size(); ++i) {
    Element& slot = image[universal.degree[i]];
    if (slot == other.group.order()) {
      slot = other.degree[i];
    } else if (slot != other.degree[i]) {
      return false;
    }
  }
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (image[universal.group.mul(a, b)] != other.group.mul(image[a], image[b])) return false;
    }
  }
  return true;
}

IndexSet invertible_objects(const FusionRing& ring) {
  IndexSet out;
  for (Index i = 0; i < ring.rank(); ++i) {
    if (multiply(ring, i, ring.dual(i)) == BasisVector::basis(ring.rank(), ring.unit())) {
      out.insert(i);
    }
  }
  return out;
}

PointedPart pointed_part(const FusionRing& ring) {
  IndexSet members = invertible_objects(ring);
  std::vector<Index> basis(members.begin(), members.end());
  const std::size_t n = basis.size();
  std::vector<Element> position(ring.rank(), n);
  for (Element k = 0; k < n; ++k) position[basis[k]] = k;

  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      const BasisVector prod = multiply(ring, basis[a], basis[b]);
      const auto support = prod.support();
      if (!prod.is_simple() || position[support.front()] == n) {
        throw StructuralError("product of invertibles " + std::to_string(basis[a]) + " and " +
                              std::to_string(basis[b]) + " is not invertible");
      }
      table[a][b] = position[support.front()];
    }
  }
  FiniteGroup group(std::move(table), position[ring.unit()]);
  return PointedPart{std::move(members), std::move(basis), std::move(group)};
}

ComponentType component_type(const std::vector<Dim>& dims, const IndexSet& members) {
  std::vector<Dim> values;
  for (Index i : members) values.push_back(dims.at(i));
  std::sort(values.begin(), values.end(),
            [](const Dim& a, const Dim& b) { return a.value < b.value; });
  ComponentType type;
  for (const Dim& d : values) {
    if (!type.entries.empty() && overlaps(type.entries.back().first, d)) {
      auto& [rep, count] = type.entries.back();
      rep = Dim::from_bounds(std::min(rep.lo(), d.lo()), std::max(rep.hi(), d.hi()));
      ++count;
    } else {
      type.entries.emplace_back(d, 1);
    }
  }
  return type;
}

ComponentType component_type(const FusionRing& ring, const Grading& grading, Element g) {
  return component_type(fp_dims(ring), grading.component(g));
}

AxiomReport check_component_dims(const FusionRing& ring, const Grading& grading) {
  const auto dims = fp_dims(ring);
  const std::size_t n = grading.group.order();
  std::vector<Dim> sums;
  for (Element g = 0; g < n; ++g) {
    Dim s = Dim::exact(0);
    for (Index i : grading.component(g)) s = s + dims[i] * dims[i];
    sums.push_back(s);
  }
  AxiomReport report;
  const Dim trivial = sums[grading.group.identity()];
  for (Element g = 0; g < n; ++g) {
    if (!overlaps(sums[g], trivial)) {
      report.add("component-dimension", {g, grading.group.identity()}, sums[g].value,
                 trivial.value);
    }
  }
  const Dim total = fp_dim_ring(dims);
  const Dim expected = static_cast<Count>(n) * trivial;
  if (!overlaps(total, expected)) {
    report.add("total-dimension", {}, total.value, expected.value);
  }
  return report;
}

}  // namespace fusion
