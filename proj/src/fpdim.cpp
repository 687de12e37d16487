#include "fusion/fpdim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "fusion/error.hpp"

namespace fusion {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Rounding slack for a freshly computed double of magnitude |v|.
double slack(double v) { return 4 * kEps * std::abs(v); }

}  // namespace

Dim Dim::from_bounds(double lo, double hi) {
  if (hi < lo) std::swap(lo, hi);
  const double mid = lo + (hi - lo) / 2;
  return {mid, std::max(mid - lo, hi - mid)};
}

Dim operator+(Dim a, Dim b) {
  const double v = a.value + b.value;
  return {v, a.radius + b.radius + slack(v)};
}

Dim operator-(Dim a, Dim b) {
  const double v = a.value - b.value;
  return {v, a.radius + b.radius + slack(v)};
}

Dim operator*(Dim a, Dim b) {
  const double v = a.value * b.value;
  const double r =
      std::abs(a.value) * b.radius + std::abs(b.value) * a.radius + a.radius * b.radius;
  return {v, r + slack(v)};
}

Dim operator*(Count k, Dim a) {
  const double kd = static_cast<double>(k);
  const double v = kd * a.value;
  return {v, kd * a.radius + slack(v)};
}

Dim sqrt(Dim a) {
  if (a.lo() < 0) {
    throw PreconditionError("square root of an interval reaching below zero");
  }
  const double v = std::sqrt(a.value);
  const double up = std::sqrt(a.hi()) - v;
  const double down = v - std::sqrt(a.lo());
  return {v, std::max(up, down) + slack(v)};
}

bool overlaps(Dim a, Dim b) noexcept { return a.lo() <= b.hi() && b.lo() <= a.hi(); }

IntMatrix left_mult_matrix(const FusionRing& ring, Index i) {
  const std::size_t r = ring.rank();
  if (i >= r) {
    throw StructuralError("basis index " + std::to_string(i) + " out of range");
  }
  IntMatrix m(r);
  for (Index j = 0; j < r; ++j) {
    const auto row = ring.product_row(i, j);
    for (Index k = 0; k < r; ++k) m(k, j) = row[k];
  }
  return m;
}

std::optional<Dim> perron_root_by_iteration(const IntMatrix& m, const PerronOptions& options) {
  const std::size_t n = m.size();
  std::vector<double> x(n, 1.0);
  std::vector<double> mx(n);
  for (std::size_t iter = 0; iter <= options.max_iterations; ++iter) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0;
    for (std::size_t r = 0; r < n; ++r) {
      double s = 0;
      for (std::size_t c = 0; c < n; ++c) s += static_cast<double>(m(r, c)) * x[c];
      mx[r] = s;
      const double ratio = s / x[r];
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    // For positive x, min and max of (Mx)_r / x_r bracket the spectral radius.
    lo -= slack(lo) * static_cast<double>(n);
    hi += slack(hi) * static_cast<double>(n);
    if (hi - lo <= 2 * options.target_radius) return Dim::from_bounds(lo, hi);

    double top = 0;
    for (std::size_t r = 0; r < n; ++r) {
      x[r] += mx[r];
      top = std::max(top, x[r]);
    }
    for (double& v : x) v /= top;
  }
  return std::nullopt;
}

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

// Coefficients low degree first.
using Poly = std::vector<cpp_rational>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly characteristic_polynomial(const IntMatrix& a) {
  // Faddeev-LeVerrier over exact integers.
  const std::size_t n = a.size();
  std::vector<cpp_int> coeff(n + 1);
  coeff[n] = 1;
  std::vector<cpp_int> mk(n * n, 0);
  std::vector<cpp_int> amk(n * n, 0);
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        cpp_int s = 0;
        for (std::size_t t = 0; t < n; ++t) {
          if (a(r, t) != 0) s += cpp_int(a(r, t)) * mk[t * n + c];
        }
        amk[r * n + c] = s;
      }
    }
    for (std::size_t r = 0; r < n; ++r) amk[r * n + r] += coeff[n - k + 1];
    mk.swap(amk);
    cpp_int trace = 0;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t t = 0; t < n; ++t) {
        if (a(r, t) != 0) trace += cpp_int(a(r, t)) * mk[t * n + r];
      }
    }
    coeff[n - k] = -trace / static_cast<long>(k);
  }
  Poly p;
  for (const auto& c : coeff) p.emplace_back(c);
  return p;
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

// Remainder and quotient of polynomial division.
std::pair<Poly, Poly> divide(Poly num, const Poly& den) {
  Poly quotient(num.size() >= den.size() ? num.size() - den.size() + 1 : 0);
  while (!num.empty() && num.size() >= den.size()) {
    const std::size_t shift = num.size() - den.size();
    const cpp_rational factor = num.back() / den.back();
    quotient[shift] = factor;
    for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= factor * den[i];
    trim(num);
  }
  trim(quotient);
  return {quotient, num};
}

Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = divide(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  const cpp_rational lead = a.back();
  for (auto& c : a) c /= lead;
  return a;
}

int sign_at(const Poly& p, const cpp_rational& x) {
  cpp_rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc > 0 ? 1 : (acc < 0 ? -1 : 0);
}

std::vector<Poly> sturm_chain(const Poly& p) {
  std::vector<Poly> chain{p, derivative(p)};
  while (!chain.back().empty()) {
    Poly r = divide(chain[chain.size() - 2], chain.back()).second;
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    chain.push_back(std::move(r));
  }
  if (chain.back().empty()) chain.pop_back();
  return chain;
}

int sign_changes(const std::vector<Poly>& chain, const cpp_rational& x) {
  int changes = 0;
  int last = 0;
  for (const auto& p : chain) {
    const int s = sign_at(p, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

Dim perron_root_by_charpoly(const IntMatrix& m, double lo, double hi, double target_radius) {
  const Poly p = characteristic_polynomial(m);
  const Poly squarefree = divide(p, gcd(p, derivative(p))).first;
  const auto chain = sturm_chain(squarefree);
  // Number of distinct roots in (a, b].
  auto roots_in = [&](double a, double b) {
    return sign_changes(chain, cpp_rational(a)) - sign_changes(chain, cpp_rational(b));
  };
  double a = lo - std::max(1e-9, slack(lo) * 16);
  double b = hi;
  if (roots_in(a, b) < 1) {
    throw ComputationError("characteristic polynomial has no root in the Perron bracket");
  }
  // Invariant: the largest root in (a, hi] lies in (a, b].
  while (b - a > 2 * target_radius) {
    const double mid = a + (b - a) / 2;
    if (mid <= a || mid >= b) break;
    if (roots_in(mid, b) >= 1) {
      a = mid;
    } else {
      b = mid;
    }
  }
  if (b - a > 2 * kMaxDimRadius) {
    throw ComputationError("Sturm bisection stalled before reaching the certified radius");
  }
  return Dim::from_bounds(a, b);
}

Dim fp_dim_simple(const FusionRing& ring, Index i, const PerronOptions& options) {
  const IntMatrix m = left_mult_matrix(ring, i);
  if (i == ring.unit()) return Dim::exact(1.0);
  std::optional<Dim> root = perron_root_by_iteration(m, options);
  if (!root) {
    if (!options.allow_fallback) {
      throw ComputationError("power iteration for basis element " + std::to_string(i) +
                             " did not converge within " +
                             std::to_string(options.max_iterations) + " iterations");
    }
    // Row sums bound the spectral radius from above; 1 bounds a simple's
    // dimension from below.
    double row_max = 1;
    for (std::size_t r = 0; r < m.size(); ++r) {
      double s = 0;
      for (std::size_t c = 0; c < m.size(); ++c) s += static_cast<double>(m(r, c));
      row_max = std::max(row_max, s);
    }
    root = perron_root_by_charpoly(m, 1.0, row_max, options.target_radius);
  }
  // Simples have dimension at least one.
  const double lo = std::max(root->lo(), 1.0);
  const double hi = root->hi();
  if (hi < 1.0) {
    throw ComputationError("Perron root of basis element " + std::to_string(i) +
                           " is below one; ring is not valid");
  }
  Dim d = Dim::from_bounds(lo, hi);
  if (d.radius > kMaxDimRadius) {
    throw ComputationError("dimension of basis element " + std::to_string(i) +
                           " not certified to radius 1e-9");
  }
  return d;
}

std::vector<Dim> fp_dims(const FusionRing& ring, const PerronOptions& options) {
  std::vector<Dim> out;
  out.reserve(ring.rank());
  for (Index i = 0; i < ring.rank(); ++i) out.push_back(fp_dim_simple(ring, i, options));
  return out;
}

Dim fp_dim_ring(const std::vector<Dim>& dims) {
  Dim total = Dim::exact(0);
  for (const Dim& d : dims) total = total + d * d;
  return total;
}

Dim fp_dim_ring(const FusionRing& ring) { return fp_dim_ring(fp_dims(ring)); }

std::optional<int> quantize_subtwo(Dim d, int ceiling) {
  if (d.lo() >= 2.0 || d.value >= 2.0) {
    throw PreconditionError("quantization applies to dimensions below 2, got " +
                            std::to_string(d.value));
  }
  if (d.hi() < 1.0) {
    throw PreconditionError("dimension below 1 cannot belong to a simple object");
  }
  for (int n = 3; n <= ceiling; ++n) {
    const double candidate = 2 * std::cos(std::numbers::pi / n);
    if (std::abs(d.value - candidate) <= d.radius + 1e-9) return n;
  }
  return std::nullopt;
}

Index smallest_dim_index(const std::vector<Dim>& dims, const IndexSet& subset) {
  if (subset.empty()) {
    throw PreconditionError("smallest_dim_index needs a non-empty subset");
  }
  Index best = *subset.begin();
  for (Index i : subset) {
    const Dim& cand = dims.at(i);
    const Dim& cur = dims.at(best);
    if (!overlaps(cand, cur) && cand.value < cur.value) best = i;
  }
  return best;
}

Index smallest_dim_index(const FusionRing& ring, const IndexSet& subset) {
  return smallest_dim_index(fp_dims(ring), subset);
}

}  // namespace fusion
