#include "fusion/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "fusion/error.hpp"
#include "fusion/fpdim.hpp"
#include "fusion/grading.hpp"

namespace fusion {

FusionRing permute_basis(const FusionRing& ring, const std::vector<Index>& perm) {
  const std::size_t r = ring.rank();
  if (perm.size() != r) throw StructuralError("permutation has wrong length");
  std::vector<Index> dual(r);
  std::vector<Count> flat(r * r * r);
  for (Index i = 0; i < r; ++i) {
    dual[perm[i]] = perm[ring.dual(i)];
    for (Index j = 0; j < r; ++j) {
      const auto row = ring.product_row(i, j);
      for (Index k = 0; k < r; ++k) flat[(perm[i] * r + perm[j]) * r + perm[k]] = row[k];
    }
  }
  return FusionRing(ring.name(), r, perm[ring.unit()], std::move(dual), std::move(flat));
}

namespace {

// Lexicographic comparison of (dual, tensor) of `ring` relabelled by `perm`
// against `best`, without materializing the relabelled ring.
bool relabelled_less(const FusionRing& ring, const std::vector<Index>& inverse,
                     const FusionRing& best) {
  const std::size_t r = ring.rank();
  for (Index p = 0; p < r; ++p) {
    // new dual(p) = perm[dual(inverse[p])]
    Index d = ring.dual(inverse[p]);
    Index mapped = 0;
    for (Index q = 0; q < r; ++q) {
      if (inverse[q] == d) mapped = q;
    }
    if (mapped != best.dual(p)) return mapped < best.dual(p);
  }
  const auto b = best.constants();
  std::size_t pos = 0;
  for (Index p = 0; p < r; ++p) {
    for (Index q = 0; q < r; ++q) {
      for (Index s = 0; s < r; ++s, ++pos) {
        const Count v = ring.n(inverse[p], inverse[q], inverse[s]);
        if (v != b[pos]) return v < b[pos];
      }
    }
  }
  return false;
}

}  // namespace

FusionRing canonical_form(const FusionRing& ring) {
  const std::size_t r = ring.rank();
  std::vector<Index> others;
  for (Index i = 0; i < r; ++i) {
    if (i != ring.unit()) others.push_back(i);
  }
  FusionRing best = ring;
  std::vector<Index> best_perm(r);
  std::iota(best_perm.begin(), best_perm.end(), 0);
  // inverse[new] = old; the unit keeps its position.
  std::vector<Index> slots = others;
  do {
    std::vector<Index> inverse(r);
    inverse[ring.unit()] = ring.unit();
    for (std::size_t k = 0; k < others.size(); ++k) inverse[others[k]] = slots[k];
    if (relabelled_less(ring, inverse, best)) {
      std::vector<Index> perm(r);
      for (Index p = 0; p < r; ++p) perm[inverse[p]] = p;
      best = permute_basis(ring, perm);
    }
  } while (std::next_permutation(slots.begin(), slots.end()));
  return best;
}

namespace {

struct Quad {
  Index i, j, k, l;
};

// Smallest involution with `pairs` two-cycles: self-dual elements first.
std::vector<Index> dual_pattern(std::size_t rank, std::size_t pairs) {
  std::vector<Index> d(rank);
  const std::size_t self = rank - 1 - 2 * pairs;
  for (Index i = 0; i <= self; ++i) d[i] = i;
  for (Index i = self + 1; i < rank; i += 2) {
    d[i] = i + 1;
    d[i + 1] = i;
  }
  return d;
}

class Search {
 public:
  Search(std::size_t rank, Count max, std::vector<Index> dual)
      : r_(rank), max_(max), dual_(std::move(dual)), value_(r_ * r_ * r_, kUnset) {
    for (Index a = 0; a < r_; ++a) {
      for (Index b = 0; b < r_; ++b) {
        set(0, a, b, a == b ? 1 : 0);
        set(a, 0, b, a == b ? 1 : 0);
        set(a, b, 0, dual_[a] == b ? 1 : 0);
      }
    }
    build_orbits();
    build_quads();
  }

  std::size_t orbit_count() const { return orbits_.size(); }

  /// Runs the search with the first orbit pinned to `first` (or all values
  /// when there are no free orbits).
  void run(std::optional<Count> first, std::vector<FusionRing>& out) {
    out_ = &out;
    if (orbits_.empty()) {
      emit();
      return;
    }
    assign(0, *first);
    if (consistent(0)) descend(1);
    assign(0, kUnset);
  }

 private:
  static constexpr Count kUnset = ~Count{0};

  std::size_t cell(Index i, Index j, Index k) const { return (i * r_ + j) * r_ + k; }
  void set(Index i, Index j, Index k, Count v) { value_[cell(i, j, k)] = v; }

  void build_orbits() {
    std::vector<std::size_t> orbit_of(value_.size(), SIZE_MAX);
    for (Index i = 1; i < r_; ++i) {
      for (Index j = 1; j < r_; ++j) {
        for (Index k = 1; k < r_; ++k) {
          const std::size_t c = cell(i, j, k);
          if (orbit_of[c] != SIZE_MAX) continue;
          std::vector<std::size_t> members{c};
          orbit_of[c] = orbits_.size();
          for (std::size_t at = 0; at < members.size(); ++at) {
            const Index a = members[at] / (r_ * r_);
            const Index b = (members[at] / r_) % r_;
            const Index d = members[at] % r_;
            for (std::size_t image : {cell(dual_[a], d, b), cell(d, dual_[b], a)}) {
              if (orbit_of[image] == SIZE_MAX) {
                orbit_of[image] = orbits_.size();
                members.push_back(image);
              }
            }
          }
          std::sort(members.begin(), members.end());
          orbits_.push_back(std::move(members));
        }
      }
    }
  }

  void build_quads() {
    // Quadruples with a unit among i, j, k hold automatically.
    std::vector<std::vector<std::size_t>> by_cell(value_.size());
    for (Index i = 1; i < r_; ++i) {
      for (Index j = 1; j < r_; ++j) {
        for (Index k = 1; k < r_; ++k) {
          for (Index l = 0; l < r_; ++l) {
            const std::size_t q = quads_.size();
            quads_.push_back({i, j, k, l});
            for (Index m = 0; m < r_; ++m) {
              by_cell[cell(i, j, m)].push_back(q);
              by_cell[cell(m, k, l)].push_back(q);
              by_cell[cell(j, k, m)].push_back(q);
              by_cell[cell(i, m, l)].push_back(q);
            }
          }
        }
      }
    }
    orbit_quads_.resize(orbits_.size());
    for (std::size_t o = 0; o < orbits_.size(); ++o) {
      auto& list = orbit_quads_[o];
      for (std::size_t c : orbits_[o]) list.insert(list.end(), by_cell[c].begin(), by_cell[c].end());
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
  }

  void assign(std::size_t orbit, Count v) {
    for (std::size_t c : orbits_[orbit]) value_[c] = v;
  }

  // Interval [lo, hi] for a product term with possibly unassigned factors.
  std::pair<Count, Count> term(std::size_t a, std::size_t b) const {
    const Count x = value_[a];
    const Count y = value_[b];
    if ((x == 0) || (y == 0)) return {0, 0};
    const Count xl = x == kUnset ? 0 : x;
    const Count yl = y == kUnset ? 0 : y;
    const Count xh = x == kUnset ? max_ : x;
    const Count yh = y == kUnset ? max_ : y;
    return {xl * yl, xh * yh};
  }

  bool quad_ok(const Quad& q) const {
    Count llo = 0, lhi = 0, rlo = 0, rhi = 0;
    for (Index m = 0; m < r_; ++m) {
      const auto [a, b] = term(cell(q.i, q.j, m), cell(m, q.k, q.l));
      const auto [c, d] = term(cell(q.j, q.k, m), cell(q.i, m, q.l));
      llo += a;
      lhi += b;
      rlo += c;
      rhi += d;
    }
    return llo <= rhi && rlo <= lhi;
  }

  bool consistent(std::size_t orbit) const {
    for (std::size_t q : orbit_quads_[orbit]) {
      if (!quad_ok(quads_[q])) return false;
    }
    return true;
  }

  void descend(std::size_t orbit) {
    if (orbit == orbits_.size()) {
      emit();
      return;
    }
    for (Count v = 0; v <= max_; ++v) {
      assign(orbit, v);
      if (consistent(orbit)) descend(orbit + 1);
    }
    assign(orbit, kUnset);
  }

  void emit() {
    FusionRing ring("census", r_, 0, dual_, value_);
    if (!validate_ring(ring).passed()) {
      throw StructuralError("census search produced a ring that fails validation");
    }
    if (canonical_form(ring).same_structure(ring)) out_->push_back(std::move(ring));
  }

  std::size_t r_;
  Count max_;
  std::vector<Index> dual_;
  std::vector<Count> value_;
  std::vector<std::vector<std::size_t>> orbits_;
  std::vector<Quad> quads_;
  std::vector<std::vector<std::size_t>> orbit_quads_;
  std::vector<FusionRing>* out_ = nullptr;
};

}  // namespace

std::vector<FusionRing> enumerate_fusion_rings(const EnumerationSpec& spec) {
  if (spec.rank == 0) throw ConfigurationError("rank must be positive");
  if (!spec.unguarded && (spec.rank > kCensusMaxRank || spec.max_constant > kCensusMaxConstant)) {
    throw ConfigurationError("census bounds exceed rank <= " + std::to_string(kCensusMaxRank) +
                             ", max_constant <= " + std::to_string(kCensusMaxConstant));
  }

  std::vector<std::vector<Index>> patterns;
  if (spec.dual_pattern) {
    const auto& d = *spec.dual_pattern;
    if (d.size() != spec.rank || d[0] != 0) {
      throw ConfigurationError("dual pattern must have length rank and fix index 0");
    }
    for (Index i = 0; i < d.size(); ++i) {
      if (d[i] >= d.size() || d[d[i]] != i) {
        throw ConfigurationError("dual pattern is not an involution");
      }
    }
    patterns.push_back(d);
  } else {
    for (std::size_t pairs = 0; 2 * pairs + 1 <= spec.rank; ++pairs) {
      patterns.push_back(dual_pattern(spec.rank, pairs));
    }
  }

  // Independent tasks: (pattern, value of the first free orbit).
  struct Task {
    std::size_t pattern;
    std::optional<Count> first;
  };
  std::vector<Task> tasks;
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    if (Search(spec.rank, spec.max_constant, patterns[p]).orbit_count() == 0) {
      tasks.push_back({p, std::nullopt});
    } else {
      for (Count v = 0; v <= spec.max_constant; ++v) tasks.push_back({p, v});
    }
  }

  std::vector<std::vector<FusionRing>> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      try {
        Search search(spec.rank, spec.max_constant, patterns[tasks[t].pattern]);
        search.run(tasks[t].first, results[t]);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, spec.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<FusionRing> rings;
  for (auto& part : results) {
    for (auto& ring : part) rings.push_back(std::move(ring));
  }
  std::sort(rings.begin(), rings.end(), [](const FusionRing& a, const FusionRing& b) {
    const auto ca = a.constants();
    const auto cb = b.constants();
    if (!std::ranges::equal(ca, cb)) return std::ranges::lexicographical_compare(ca, cb);
    return a.duals() < b.duals();
  });
  for (std::size_t k = 0; k < rings.size(); ++k) {
    rings[k] = rings[k].renamed("r" + std::to_string(spec.rank) + "_" + std::to_string(k));
  }
  return rings;
}

Census run_census(const EnumerationSpec& spec) {
  Census census{enumerate_fusion_rings(spec), {}};
  for (std::size_t n = 0; n < census.rings.size(); ++n) {
    const FusionRing& ring = census.rings[n];
    auto flag = [&](std::string what) { census.anomalies.push_back({n, std::move(what)}); };
    std::vector<Dim> dims;
    try {
      dims = fp_dims(ring);
    } catch (const Error& e) {
      flag(std::string("fpdim failed: ") + e.what());
      continue;
    }
    const std::size_t r = ring.rank();
    for (Index i = 0; i < r; ++i) {
      for (Index j = 0; j < r; ++j) {
        const Dim lhs = dims[i] * dims[j];
        Dim rhs = Dim::exact(0);
        const auto row = ring.product_row(i, j);
        for (Index t = 0; t < r; ++t) {
          if (row[t] > 0) rhs = rhs + row[t] * dims[t];
        }
        if (std::abs(lhs.value - rhs.value) > 1e-8 + lhs.radius + rhs.radius) {
          flag("multiplicativity fails at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
        }
      }
    }
    const IndexSet invertibles = invertible_objects(ring);
    for (Index i = 0; i < r; ++i) {
      const bool unit_dim = std::abs(dims[i].value - 1.0) <= dims[i].radius + 1e-12;
      if (unit_dim != invertibles.contains(i)) {
        flag("invertibility and FPdim = 1 disagree at " + std::to_string(i));
      }
      if (dims[i].value < 2.0 && dims[i].hi() < 2.0 && !quantize_subtwo(dims[i])) {
        flag("dimension " + std::to_string(dims[i].value) + " of " + std::to_string(i) +
             " is not 2cos(pi/n)");
      }
    }
    try {
      universal_grading(ring);
    } catch (const Error& e) {
      flag(std::string("universal grading failed: ") + e.what());
    }
  }
  return census;
}

}  // namespace fusion
