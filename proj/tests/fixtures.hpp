#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fusion/core.hpp"
#include "fusion/grading.hpp"
#include "fusion/ring_io.hpp"

namespace fixtures {

using fusion::Count;
using fusion::FusionRing;
using fusion::Index;

inline FusionRing ising() { return fusion::bundled_ring("ising"); }
inline FusionRing a15() { return fusion::bundled_ring("a15"); }

inline FusionRing trivial_ring() { return FusionRing("vec", 1, 0, {0}, {1}); }

inline FusionRing fibonacci() {
  return FusionRing::from_nested("fib", 0, {0, 1},
                                 {{{1, 0}, {0, 1}}, {{0, 1}, {1, 1}}});
}

// Group ring of Z_n with basis element k standing for the class of k.
inline FusionRing pointed_cyclic(std::size_t n) {
  std::vector<Index> dual(n);
  std::vector<Count> flat(n * n * n, 0);
  for (Index i = 0; i < n; ++i) {
    dual[i] = (n - i) % n;
    for (Index j = 0; j < n; ++j) flat[(i * n + j) * n + (i + j) % n] = 1;
  }
  return FusionRing("z" + std::to_string(n), n, 0, dual, flat);
}

inline FusionRing rep_s3() {
  return FusionRing::from_nested("rep_s3", 0, {0, 1, 2},
                                 {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
                                  {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}},
                                  {{0, 0, 1}, {0, 0, 1}, {1, 1, 1}}});
}

// Ising grading with deg(X) the generator of Z2.
inline fusion::Grading ising_z2() {
  return {fusion::FiniteGroup::cyclic(2), {0, 0, 1}};
}

inline double c7() { return std::cos(std::numbers::pi / 7); }
inline double alpha_dim() { return 2 * c7(); }
inline double beta_dim() { return 4 * c7() * c7() - 1; }
inline double a15_total() {
  return 1 + alpha_dim() * alpha_dim() + beta_dim() * beta_dim();
}

inline std::vector<FusionRing> small_rings() {
  return {trivial_ring(), pointed_cyclic(2), pointed_cyclic(3), pointed_cyclic(4), fibonacci(),
          ising(),        a15(),             rep_s3()};
}

}  // namespace fixtures
