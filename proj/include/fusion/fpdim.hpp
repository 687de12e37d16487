#pragma once

#include <optional>
#include <vector>

#include "fusion/core.hpp"

namespace fusion {

/// A real number known to lie in [value - radius, value + radius].
struct Dim {
  double value = 0;
  double radius = 0;

  double lo() const noexcept { return value - radius; }
  double hi() const noexcept { return value + radius; }

  static Dim exact(double v) { return {v, 0}; }
  static Dim from_bounds(double lo, double hi);
};

Dim operator+(Dim a, Dim b);
Dim operator-(Dim a, Dim b);
Dim operator*(Dim a, Dim b);
Dim operator*(Count k, Dim a);
Dim sqrt(Dim a);

/// True iff the two intervals intersect.
bool overlaps(Dim a, Dim b) noexcept;

/// Dense square matrix of structure constants.
class IntMatrix {
 public:
  explicit IntMatrix(std::size_t n) : n_(n), data_(n * n, 0) {}

  std::size_t size() const noexcept { return n_; }
  Count& operator()(std::size_t r, std::size_t c) { return data_.at(r * n_ + c); }
  Count operator()(std::size_t r, std::size_t c) const { return data_.at(r * n_ + c); }
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<Count> data_;
};

struct PerronOptions {
  std::size_t max_iterations = 200000;
  double target_radius = 1e-12;
  bool allow_fallback = true;
};

/// Largest allowed radius on a dimension returned by this module.
inline constexpr double kMaxDimRadius = 1e-9;

/// M[k][j] = N[i][j][k]: column j holds the decomposition of X_i X_j.
IntMatrix left_mult_matrix(const FusionRing& ring, Index i);

/// Collatz-Wielandt bracketing of the Perron root driven by power iteration on
/// M + I. Returns nullopt if the bracket is still wider than the target after
/// the iteration budget.
std::optional<Dim> perron_root_by_iteration(const IntMatrix& m, const PerronOptions& options = {});

/// Largest real root of the characteristic polynomial inside [lo, hi],
/// located by exact-arithmetic Sturm bisection.
Dim perron_root_by_charpoly(const IntMatrix& m, double lo, double hi, double target_radius = 1e-12);

/// Frobenius-Perron dimension of basis element i.
Dim fp_dim_simple(const FusionRing& ring, Index i, const PerronOptions& options = {});
std::vector<Dim> fp_dims(const FusionRing& ring, const PerronOptions& options = {});
/// Sum of squares of the simple dimensions.
Dim fp_dim_ring(const FusionRing& ring);
Dim fp_dim_ring(const std::vector<Dim>& dims);

/// n >= 3 with 2cos(pi/n) matching d, scanning up to `ceiling`.
std::optional<int> quantize_subtwo(Dim d, int ceiling = 100);

/// Index in `subset` with the smallest dimension; values whose intervals
/// overlap count as equal and the lower index wins.
Index smallest_dim_index(const FusionRing& ring, const IndexSet& subset);
Index smallest_dim_index(const std::vector<Dim>& dims, const IndexSet& subset);

}  // namespace fusion
