// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "fusion/cli.hpp"
#include "fusion/enumerate.hpp"
#include "fusion/extensions.hpp"
#include "fusion/fpdim.hpp"
#include "fusion/grading.hpp"
#include "fusion/ring_io.hpp"
#include "fusion/verify.hpp"

using namespace fusion;

namespace {

struct Outcome {
  bool pass = true;
  std::string note;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!note.empty()) note += "; ";
      note += what;
    }
  }
};

int cli(std::vector<std::string> args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = cli::run(args, o, e);
  if (out) *out = o.str();
  return code;
}

const Elimination* find(const VerificationReport& r, std::size_t size,
                        const std::vector<Count>& m) {
  for (const auto& e : r.eliminations) {
    if (e.candidate.size == size && e.candidate.self_dual_products.front().coefficients() == m)
      return &e;
  }
  return nullptr;
}

std::vector<FiniteGroup> acceptance_groups() {
  return {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3),
          FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2))};
}

Outcome fp_dimensions() {
  Outcome o;
  const double c = std::cos(std::numbers::pi / 7);
  const FusionRing is = bundled_ring("ising");
  const FusionRing a = bundled_ring("a15");
  o.require(std::abs(fp_dim_simple(is, 2).value - std::sqrt(2.0)) <= 1e-9, "Ising X");
  o.require(std::abs(fp_dim_ring(is).value - 4.0) <= 1e-9, "Ising total");
  o.require(std::abs(fp_dim_simple(a, 1).value - 2 * c) <= 1e-9, "alpha");
  o.require(std::abs(fp_dim_simple(a, 2).value - (4 * c * c - 1)) <= 1e-9, "beta");
  return o;
}

Outcome quantization() {
  Outcome o;
  o.require(quantize_subtwo(fp_dim_simple(bundled_ring("ising"), 2)) == 4, "Ising X n");
  o.require(quantize_subtwo(fp_dim_simple(bundled_ring("a15"), 1)) == 7, "alpha n");
  return o;
}

Outcome ising_theorem() {
  Outcome o;
  std::string text;
  o.require(cli({"verify-theorems", "ising"}, &text) == 0, "exit code");
  const VerificationReport r = verify_theorem("ising");
  o.require(r.survivors.empty(), "survivors");
  const Elimination* e = find(r, 2, {1, 1, 0});
  o.require(e != nullptr && e->reason == Reason::CommonSummandObstruction &&
                std::abs(e->candidate.dims.front().value - std::sqrt(2.0)) < 1e-9,
            "size-2 candidate with X times X* = 1 + delta not killed by the obstruction");
  return o;
}

Outcome rank3_theorem() {
  Outcome o;
  std::string text;
  o.require(cli({"verify-theorems", "rank3"}, &text) == 0, "exit code");
  const VerificationReport r = verify_theorem("rank3");
  o.require(r.survivors.empty(), "survivors");
  const std::vector<Dim> dims = fp_dims(bundled_ring("a15"));
  const double da = dims[1].value;
  const double db = dims[2].value;
  const double budget = 1 + da * da + db * db;
  // partial sum for three or more simples: 2 + 2 da^2, from the eigenvalues
  const double partial = 4 + 2 * da * da;
  bool budget_hit = false;
  for (const auto& e : r.eliminations) {
    if (e.candidate.size >= 3 && e.reason == Reason::DimBudgetExceeded &&
        std::abs(e.value - partial) < 1e-8 && e.value > e.bound &&
        std::abs(e.bound - budget) < 1e-8) {
      budget_hit = true;
      break;
    }
  }
  o.require(budget_hit, "no size>=3 budget elimination at " + std::to_string(partial));
  const Elimination* e = find(r, 2, {1, 1, 0});
  const double mismatch = (1 + da) * (1 + da * da);
  o.require(e != nullptr && e->reason == Reason::TotalDimMismatch &&
                std::abs(e->value - mismatch) < 1e-8 && std::abs(e->value - 11.8999) < 5e-4 &&
                std::abs(e->bound - 9.2959) < 5e-5,
            "size-2 candidate 1 + alpha not killed by total-dimension mismatch");
  o.note += o.note.empty() ? "" : "; ";
  if (e) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "mismatch %.6f vs %.6f", e->value, e->bound);
    o.note += buf;
  }
  return o;
}

Outcome synthesis_round_trip() {
  Outcome o;
  for (const char* name : {"ising", "a15"}) {
    const FusionRing base = bundled_ring(name);
    const Dim base_dim = fp_dim_ring(base);
    const ComponentType base_type =
        component_type(base, Grading{FiniteGroup::trivial(), std::vector<Element>(base.rank(), 0)},
                       0);
    for (const auto& g : acceptance_groups()) {
      const std::string tag = std::string(name) + "/" + std::to_string(g.order());
      const Extension ext = synthesize_slightly_trivial(base, g);
      o.require(validate_ring(ext.ring).passed(), tag + " ring");
      o.require(validate_grading(ext.ring, ext.grading).passed(), tag + " grading");
      o.require(static_cast<bool>(is_slightly_trivial(ext.ring, ext.grading)), tag + " similar");
      o.require(check_component_dims(ext.ring, ext.grading).passed(), tag + " component dims");
      o.require(std::abs(fp_dim_ring(ext.ring).value -
                         static_cast<double>(g.order()) * base_dim.value) <= 1e-8,
                tag + " total");
      for (Element e = 0; e < g.order(); ++e) {
        o.require(component_type(ext.ring, ext.grading, e).same_as(base_type), tag + " type");
      }
    }
  }
  return o;
}

Outcome exact_factorization() {
  Outcome o;
  for (const auto& g : acceptance_groups()) {
    const Extension ext = synthesize_slightly_trivial(bundled_ring("a15"), g);
    const FactorizationResult f = factorize_via_pointed(ext.ring, ext.grading);
    o.require(f && f.factorization->left.size() == g.order() &&
                  f.factorization->right.size() == 3,
              "a15/" + std::to_string(g.order()));
    const Extension is = synthesize_slightly_trivial(bundled_ring("ising"), g);
    bool refused = false;
    try {
      factorize_via_pointed(is.ring, is.grading);
    } catch (const PreconditionError&) {
      refused = true;
    }
    o.require(refused, "ising/" + std::to_string(g.order()) + " not refused");
  }
  return o;
}

std::string census_text(unsigned threads) {
  std::string text;
  for (std::size_t rank = 1; rank <= 3; ++rank) {
    EnumerationSpec spec;
    spec.rank = rank;
    spec.max_constant = 1;
    spec.threads = threads;
    for (const auto& r : enumerate_fusion_rings(spec)) text += emit_ring(r);
  }
  return text;
}

Outcome census() {
  Outcome o;
  const FusionRing is = bundled_ring("ising");
  const FusionRing a = bundled_ring("a15");
  bool saw_ising = false;
  bool saw_a15 = false;
  std::size_t total = 0;
  for (std::size_t rank = 1; rank <= 3; ++rank) {
    EnumerationSpec spec;
    spec.rank = rank;
    spec.max_constant = 1;
    for (const auto& ring : enumerate_fusion_rings(spec)) {
      ++total;
      o.require(validate_ring(ring).passed(), ring.name() + " invalid");
      o.require(canonical_form(ring).same_structure(ring), ring.name() + " not canonical");
      saw_ising |= ring.same_structure(is);
      saw_a15 |= ring.same_structure(a);
      const auto dims = fp_dims(ring);
      const IndexSet inv = invertible_objects(ring);
      for (Index i = 0; i < ring.rank(); ++i) {
        o.require(inv.contains(i) == (std::abs(dims[i].value - 1) <= dims[i].radius + 1e-12),
                  ring.name() + " invertibility");
        for (Index j = 0; j < ring.rank(); ++j) {
          double sum = 0;
          double slack = dims[i].radius * dims[j].value + dims[j].radius * dims[i].value;
          for (Index t = 0; t < ring.rank(); ++t) {
            sum += static_cast<double>(ring.n(i, j, t)) * dims[t].value;
            slack += static_cast<double>(ring.n(i, j, t)) * dims[t].radius;
          }
          o.require(std::abs(dims[i].value * dims[j].value - sum) <= 1e-8 + slack,
                    ring.name() + " multiplicativity");
        }
      }
    }
  }
  o.require(saw_ising, "Ising tensor missing");
  o.require(saw_a15, "rank-3 tensor missing");
  if (o.pass) o.note = std::to_string(total) + " rings";
  return o;
}

Outcome determinism() {
  Outcome o;
  for (const char* t : {"ising", "rank3"}) {
    std::string first, again, threaded;
    cli({"verify-theorems", t, "--threads", "1"}, &first);
    cli({"verify-theorems", t, "--threads", "1"}, &again);
    cli({"verify-theorems", t, "--threads", "8"}, &threaded);
    o.require(!first.empty() && first == again, std::string(t) + " repeat");
    o.require(first == threaded, std::string(t) + " threads");
  }
  const std::string one = census_text(1);
  o.require(one == census_text(1), "census repeat");
  o.require(one == census_text(8), "census threads");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "FP-dimension reproduction", 1.0, fp_dimensions},
      {2, "quantization", 1.0, quantization},
      {3, "Ising theorem verification", 5.0, ising_theorem},
      {4, "rank-3 theorem verification", 10.0, rank3_theorem},
      {5, "synthesis round trip", 5.0, synthesis_round_trip},
      {6, "exact factorization", 1.0, exact_factorization},
      {7, "census oracle", 60.0, census},
      {8, "determinism", 120.0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_s) o.require(false, "too slow");
    std::printf("criterion %d %-30s %s  (%.3f s)%s%s\n", c.id, c.name, o.pass ? "PASS" : "FAIL",
                secs, o.note.empty() ? "" : "  ", o.note.c_str());
    failures += o.pass ? 0 : 1;
  }
  std::printf("%s: %d of %zu criteria passed\n", failures ? "FAILED" : "OK",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures ? 1 : 0;
}
