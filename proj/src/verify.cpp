#include "fusion/verify.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>
#include <variant>

#include "fusion/error.hpp"
#include "fusion/extensions.hpp"
#include "fusion/ring_io.hpp"

namespace fusion {

namespace {

// Decisions on dimensions: intervals that overlap are equal, gaps wider than
// the margin are decided, anything in between is refused.
constexpr double kDecisionMargin = 1e-6;

int compare(Dim a, Dim b) {
  if (overlaps(a, b)) return 0;
  const double gap = a.value - b.value;
  if (std::abs(gap) < kDecisionMargin) {
    throw PrecisionError("dimensions " + std::to_string(a.value) + " and " +
                         std::to_string(b.value) + " are too close to decide");
  }
  return gap < 0 ? -1 : 1;
}

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

}  // namespace

DichotomyOutcome low_simps_dichotomy(const FusionRing& ring, const Grading& grading, Index x,
                                     Element g) {
  const auto dims = fp_dims(ring);
  const IndexSet trivial = grading.component(grading.group.identity());
  if (!trivial.contains(x)) {
    throw PreconditionError("basis index " + std::to_string(x) +
                            " is not in the trivial component");
  }
  const Dim dx = dims.at(x);
  if (compare(dx, Dim::exact(1)) <= 0 || compare(dx, Dim::exact(2)) >= 0) {
    throw PreconditionError("dichotomy needs 1 < FPdim(x) < 2, got " + fixed(dx.value));
  }
  const IndexSet component = grading.component(g);
  const IndexSet invertibles = invertible_objects(ring);
  for (Index i : component) {
    if (invertibles.contains(i)) return {DichotomyOutcome::Kind::HasInvertible, i, std::nullopt};
  }
  const Index y = smallest_dim_index(dims, component);
  const BasisVector prod = multiply(ring, x, y);
  if (!prod.is_simple()) {
    throw TheoryViolation("component " + std::to_string(g) +
                          " has no invertible, yet x times its smallest element " +
                          std::to_string(y) + " is not simple");
  }
  return {DichotomyOutcome::Kind::SimpleProduct, y, prod.support().front()};
}

std::optional<Index> shared_nonunit_summand(const BasisVector& a, const BasisVector& b,
                                            Index unit) {
  if (a.rank() != b.rank()) throw StructuralError("decompositions have different rank");
  for (Index i = 0; i < a.rank(); ++i) {
    if (i != unit && a[i] > 0 && b[i] > 0) return i;
  }
  return std::nullopt;
}

bool common_summand_obstruction(const BasisVector& a, const BasisVector& b, Index unit) {
  return shared_nonunit_summand(a, b, unit).has_value();
}

std::string_view reason_name(Reason reason) {
  switch (reason) {
    case Reason::DimBudgetExceeded:
      return "DimBudgetExceeded";
    case Reason::TotalDimMismatch:
      return "TotalDimMismatch";
    case Reason::DichotomyUnsatisfiable:
      return "DichotomyUnsatisfiable";
    case Reason::CommonSummandObstruction:
      return "CommonSummandObstruction";
  }
  return "?";
}

namespace {

struct SearchContext {
  const FusionRing& base;
  std::vector<Dim> dims;
  std::vector<Index> non_unit;
  Index probe;
  BasisVector probe_square;
  Dim budget;
  Dim floor_dim;

  Dim dim_of(const BasisVector& products) const {
    Dim total = Dim::exact(0);
    for (Index i = 0; i < base.rank(); ++i) {
      if (products[i] > 0) total = total + products[i] * dims[i];
    }
    return sqrt(total);
  }
};

using Outcome = std::variant<Elimination, HypotheticalComponent>;

// Lexicographic list of nonzero multiplicity vectors over the non-unit basis.
std::vector<BasisVector> multiplicity_vectors(const SearchContext& ctx, std::size_t max_mult) {
  std::vector<BasisVector> out;
  const std::size_t k = ctx.non_unit.size();
  std::vector<std::size_t> digits(k, 0);
  while (true) {
    BasisVector v(ctx.base.rank());
    v[ctx.base.unit()] = 1;
    bool nonzero = false;
    for (std::size_t p = 0; p < k; ++p) {
      v[ctx.non_unit[p]] = digits[p];
      nonzero |= digits[p] > 0;
    }
    if (nonzero) out.push_back(std::move(v));
    std::size_t p = k;
    while (p > 0 && digits[p - 1] == max_mult) digits[--p] = 0;
    if (p == 0) break;
    ++digits[p - 1];
  }
  return out;
}

// Objects whose squared dimension fits in `room` and whose dimension is at
// least `least`, lexicographic in their multiplicity vector.
std::vector<std::pair<BasisVector, Dim>> completions_pool(const SearchContext& ctx, Dim room,
                                                          Dim least) {
  std::vector<std::pair<BasisVector, Dim>> pool;
  BasisVector v(ctx.base.rank());
  v[ctx.base.unit()] = 1;
  const std::size_t k = ctx.non_unit.size();
  auto recurse = [&](auto&& self, std::size_t p, Dim used) -> void {
    if (p == k) {
      if (v.length() == 1) return;
      const Dim d = sqrt(used);
      if (compare(d, least) >= 0) pool.emplace_back(v, d);
      return;
    }
    const Index idx = ctx.non_unit[p];
    for (Count m = 0;; ++m) {
      const Dim next = used + m * ctx.dims[idx];
      if (m > 0 && compare(next, room) > 0) break;
      v[idx] = m;
      self(self, p + 1, next);
    }
    v[idx] = 0;
  };
  recurse(recurse, 0, Dim::exact(1));
  return pool;
}

// Chooses `count` objects from the pool (nondecreasing pool index) whose
// squared dimensions sum to `target`.
bool find_completion(const std::vector<std::pair<BasisVector, Dim>>& pool, std::size_t count,
                     Dim target, std::size_t from, std::vector<std::size_t>& chosen) {
  if (count == 0) return compare(target, Dim::exact(0)) == 0;
  if (compare(target, Dim::exact(0)) <= 0) return false;
  for (std::size_t p = from; p < pool.size(); ++p) {
    const Dim sq = pool[p].second * pool[p].second;
    if (compare(static_cast<Count>(count) * sq, target) > 0) continue;
    chosen.push_back(p);
    if (find_completion(pool, count - 1, target - sq, p, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

Outcome evaluate(const SearchContext& ctx, std::size_t ordinal, std::size_t size,
                 const BasisVector& seed) {
  HypotheticalComponent cand;
  cand.ordinal = ordinal;
  cand.size = size;
  const Dim dx = ctx.dim_of(seed);
  cand.self_dual_products.push_back(seed);
  cand.dims.push_back(dx);

  auto eliminate = [&](Reason reason, double value, double bound, std::string detail,
                       std::optional<Index> shared = std::nullopt) {
    return Outcome(Elimination{cand, reason, value, bound, shared, std::move(detail)});
  };

  // Floor: no invertibles, so every object has dimension at least sqrt(2).
  if (compare(dx, ctx.floor_dim) < 0) {
    throw StructuralError("hypothetical object below the sqrt(2) floor; base ring is not valid");
  }

  if (auto shared = shared_nonunit_summand(seed, ctx.probe_square, ctx.base.unit())) {
    return eliminate(Reason::CommonSummandObstruction, static_cast<double>(seed[*shared]),
                     static_cast<double>(ctx.probe_square[*shared]),
                     "X X* and x0 x0* share summand " + std::to_string(*shared), shared);
  }

  // Size-level lower bound: X and every further object at least sqrt(2), and
  // the partner x0 X at least FPdim(x0) sqrt(2).
  const Dim floor_sq = ctx.floor_dim * ctx.floor_dim;
  Dim lower = floor_sq;
  if (size >= 2) lower = lower + (ctx.dims[ctx.probe] * ctx.dims[ctx.probe]) * floor_sq;
  if (size >= 3) lower = lower + static_cast<Count>(size - 2) * floor_sq;
  if (compare(lower, ctx.budget) > 0) {
    return eliminate(Reason::DimBudgetExceeded, lower.value, ctx.budget.value,
                     "lower bound on FPdim of a component of size " + std::to_string(size) +
                         " exceeds FPdim of the base");
  }

  if (size < 2) {
    return eliminate(Reason::DichotomyUnsatisfiable, 1, 2,
                     "no room for the simple product x0 X in a component of size 1");
  }
  const BasisVector partner =
      multiply(ctx.base, multiply(ctx.base, BasisVector::basis(ctx.base.rank(), ctx.probe), seed),
               BasisVector::basis(ctx.base.rank(), ctx.base.dual(ctx.probe)));
  const Count unit_mult = partner[ctx.base.unit()];
  if (unit_mult != 1) {
    return eliminate(Reason::DichotomyUnsatisfiable, static_cast<double>(unit_mult), 1,
                     "x0 X is not simple: (x0 X)(x0 X)* contains the unit " +
                         std::to_string(unit_mult) + " times");
  }
  const Dim dy = ctx.dims[ctx.probe] * dx;
  if (compare(ctx.dim_of(partner), dy) != 0) {
    throw StructuralError("dimension of x0 X disagrees with its self-dual product");
  }
  cand.self_dual_products.push_back(partner);
  cand.dims.push_back(dy);

  const Dim total = dx * dx + dy * dy;
  if (size == 2) {
    if (compare(total, ctx.budget) != 0) {
      return eliminate(Reason::TotalDimMismatch, total.value, ctx.budget.value,
                       "FPdim of {X, x0 X} differs from FPdim of the base");
    }
    return Outcome(cand);
  }

  const Dim room = ctx.budget - total;
  if (compare(room, Dim::exact(0)) > 0) {
    const auto pool = completions_pool(ctx, room, dx);
    std::vector<std::size_t> chosen;
    if (find_completion(pool, size - 2, room, 0, chosen)) {
      for (std::size_t p : chosen) {
        cand.self_dual_products.push_back(pool[p].first);
        cand.dims.push_back(pool[p].second);
      }
      return Outcome(cand);
    }
  }
  return eliminate(Reason::TotalDimMismatch, total.value, ctx.budget.value,
                   "no " + std::to_string(size - 2) +
                       " further objects complete FPdim of the base");
}

std::string products_text(const HypotheticalComponent& c) {
  std::string out;
  for (std::size_t k = 0; k < c.self_dual_products.size(); ++k) {
    if (k > 0) out += ';';
    out += '[';
    const auto& coeffs = c.self_dual_products[k].coefficients();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (i > 0) out += ',';
      out += std::to_string(coeffs[i]);
    }
    out += ']';
  }
  return out;
}

std::string dims_text(const HypotheticalComponent& c) {
  std::string out;
  for (std::size_t k = 0; k < c.dims.size(); ++k) {
    if (k > 0) out += ';';
    out += fixed(c.dims[k].value);
  }
  return out;
}

}  // namespace

VerificationReport search_invertible_free_component(const FusionRing& base,
                                                    const SearchBounds& bounds) {
  const AxiomReport axioms = validate_ring(base);
  if (!axioms.passed()) {
    throw PreconditionError("base ring violates " + axioms.violations.front().axiom);
  }
  SearchContext ctx{base, fp_dims(base), {}, 0, BasisVector(base.rank()), Dim{}, Dim{}};
  ctx.budget = fp_dim_ring(ctx.dims);
  ctx.floor_dim = sqrt(Dim::exact(2));

  const IndexSet invertibles = invertible_objects(base);
  IndexSet non_invertible;
  for (Index i = 0; i < base.rank(); ++i) {
    if (i != base.unit()) ctx.non_unit.push_back(i);
    if (!invertibles.contains(i)) non_invertible.insert(i);
  }
  if (non_invertible.empty()) {
    throw PreconditionError("base ring has no simple with 1 < FPdim < 2");
  }
  ctx.probe = smallest_dim_index(ctx.dims, non_invertible);
  if (compare(ctx.dims[ctx.probe], Dim::exact(2)) >= 0) {
    throw PreconditionError("base ring has no simple with 1 < FPdim < 2");
  }
  ctx.probe_square = multiply(base, ctx.probe, base.dual(ctx.probe));

  const auto floor_half = static_cast<std::size_t>(std::floor(ctx.budget.value / 2));
  if (bounds.max_mult < 1) {
    throw ConfigurationError("max_mult must be at least 1");
  }
  if (bounds.max_size < floor_half) {
    throw ConfigurationError("max_size " + std::to_string(bounds.max_size) +
                             " is below floor(FPdim/2) = " + std::to_string(floor_half));
  }

  const auto seeds = multiplicity_vectors(ctx, bounds.max_mult);
  std::vector<std::pair<std::size_t, const BasisVector*>> candidates;
  for (std::size_t size = 1; size <= bounds.max_size; ++size) {
    for (const auto& seed : seeds) candidates.emplace_back(size, &seed);
  }

  std::vector<std::optional<Outcome>> outcomes(candidates.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t k = next.fetch_add(1);
      if (k >= candidates.size()) return;
      try {
        outcomes[k] = evaluate(ctx, k, candidates[k].first, *candidates[k].second);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = candidates.size();
      }
    }
  };
  const unsigned threads = std::max(1u, bounds.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  VerificationReport report;
  report.base = base.name();
  report.probe = ctx.probe;
  report.probe_dim = ctx.dims[ctx.probe];
  report.budget = ctx.budget;
  report.max_size = bounds.max_size;
  report.max_mult = bounds.max_mult;
  report.search_space = candidates.size();
  for (auto& outcome : outcomes) {
    ++report.examined;
    if (auto* e = std::get_if<Elimination>(&*outcome)) {
      report.eliminations.push_back(std::move(*e));
    } else {
      report.survivors.push_back(std::get<HypotheticalComponent>(std::move(*outcome)));
    }
  }
  return report;
}

VerificationReport verify_theorem(std::string_view theorem, const VerifyOptions& options) {
  std::string base_name;
  std::string id;
  if (theorem == "ising") {
    base_name = "ising";
    id = "ising";
  } else if (theorem == "rank3" || theorem == "rank3_A15" || theorem == "a15") {
    base_name = "a15";
    id = "rank3";
  } else {
    throw PreconditionError("unknown theorem '" + std::string(theorem) + "'");
  }
  const FusionRing base = bundled_ring(base_name);
  const Dim budget = fp_dim_ring(base);
  SearchBounds bounds;
  bounds.max_size = options.max_size.value_or(
      static_cast<std::size_t>(std::ceil(budget.value / 2)) + 1);
  bounds.max_mult = options.max_mult.value_or(3);
  bounds.threads = options.threads;

  VerificationReport report = search_invertible_free_component(base, bounds);
  report.theorem = id;

  const std::vector<std::pair<std::string, FiniteGroup>> groups = {
      {"z2", FiniteGroup::cyclic(2)},
      {"z3", FiniteGroup::cyclic(3)},
      {"z2xz2", FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2))},
  };
  for (const auto& [label, group] : groups) {
    const Extension ext = synthesize_slightly_trivial(base, group);
    bool similar = true;
    for (Element g = 0; g < group.order(); ++g) {
      similar &= is_similar_component(ext.ring, ext.grading, g).has_value();
    }
    report.checks.push_back("extension " + label + " similar_components=" +
                            (similar ? "yes" : "no"));
    report.checks_passed &= similar;

    if (id == "rank3") {
      const FactorizationResult f = factorize_via_pointed(ext.ring, ext.grading);
      const bool sizes_ok =
          f.factorization->left.size() == group.order() && f.factorization->right.size() == 3;
      report.checks.push_back("factorization " + label + " left=" +
                              std::to_string(f.factorization->left.size()) +
                              " right=" + std::to_string(f.factorization->right.size()) +
                              (sizes_ok ? " ok" : " wrong-sizes"));
      report.checks_passed &= sizes_ok;
    }
  }
  return report;
}

std::string format_report(const VerificationReport& report) {
  std::ostringstream out;
  out << "theorem: " << report.theorem << "\n";
  out << "base: " << report.base << "\n";
  out << "probe: " << report.probe << "\n";
  out << "probe_dim: " << fixed(report.probe_dim.value) << "\n";
  out << "budget: " << fixed(report.budget.value) << "\n";
  out << "max_size: " << report.max_size << "\n";
  out << "max_mult: " << report.max_mult << "\n";
  out << "search_space: " << report.search_space << "\n";
  out << "examined: " << report.examined << "\n";
  out << "eliminated: " << report.eliminations.size() << "\n";
  out << "surviving: " << report.survivors.size() << "\n";
  for (const auto& e : report.eliminations) {
    out << "elimination: #" << e.candidate.ordinal << " size=" << e.candidate.size
        << " products=" << products_text(e.candidate) << " dims=" << dims_text(e.candidate)
        << " reason=" << reason_name(e.reason) << " value=" << fixed(e.value)
        << " bound=" << fixed(e.bound);
    if (e.shared_summand) out << " shared=" << *e.shared_summand;
    out << "\n";
  }
  for (const auto& s : report.survivors) {
    out << "survivor: #" << s.ordinal << " size=" << s.size << " products=" << products_text(s)
        << " dims=" << dims_text(s) << "\n";
  }
  for (const auto& c : report.checks) out << "check: " << c << "\n";
  out << "status: " << (report.verified() ? "verified" : "failed") << "\n";
  return out.str();
}

}  // namespace fusion
