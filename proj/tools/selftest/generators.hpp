#pragma once

// Seeded random generators for models, tensors, morphisms, tuples, covers
// and decomposition data. Every draw goes through Rng so that a seed fixes
// every generated value on every platform.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gradedvb/cocycles.hpp"
#include "gradedvb/decomp.hpp"
#include "gradedvb/nman.hpp"
#include "gradedvb/snvb.hpp"

namespace gvb::gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform integer in [lo, hi].
  int uniform(int lo, int hi);
  bool coin() { return uniform(0, 1) == 1; }
  // A small rational with numerator in [-3, 3] and denominator in {1, 2, 3}.
  Rational small_rational();
  std::uint64_t next() { return engine_(); }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v.at(static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1)));
  }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[static_cast<std::size_t>(uniform(0, static_cast<int>(i) - 1))]);
  }

 private:
  std::mt19937_64 engine_;
};

// Mixes a base seed with a case number.
std::uint64_t case_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

std::vector<std::string> point_labels(int count, const std::string& prefix = "p");

MultiTensor random_tensor(Rng& rng, const std::vector<int>& degrees, const std::vector<int>& dims, int out_dim);
MultiTensor random_graded_symmetric(Rng& rng, const std::vector<int>& degrees, const std::vector<int>& dims,
                                    int out_dim);
// A graded-symmetric tensor that is not zero, or the zero tensor when the
// shape admits none.
MultiTensor random_nonzero_graded_symmetric(Rng& rng, const std::vector<int>& degrees, const std::vector<int>& dims,
                                            int out_dim);
// An invertible dim × dim linear map.
MultiTensor random_invertible(Rng& rng, int degree, int dim);
Permutation random_permutation(Rng& rng, int n);

SplitModel random_split_model(Rng& rng, int n, int max_rank, int points, const std::string& prefix = "p");
// Graded-symmetric components; the linear part is invertible when asked
// (the ranks must then agree).
GradedMorphism random_graded_morphism(Rng& rng, const SplitModel& source, const SplitModel& target,
                                      bool invertible = false);

SymModel random_sym_model(Rng& rng, int n, int min_dim, int max_dim, int points, const std::string& prefix = "p");
SymMorphism random_sym_morphism(Rng& rng, const SymModel& source, const SymModel& target, bool invertible = false);
DecTuple random_tuple(Rng& rng, const SymModel& m, std::size_t point);

// A normalized decomposition of E^dec: identity on single blocks, random
// elsewhere.
GeneralDecMorphism random_normalized_decomposition(Rng& rng, const SymModel& m);
// A random (not necessarily equivariant) decomposition of the ρ-core.
CoreDecomposition random_core_decomposition(Rng& rng, const SymModel& m, const OrderedPartition& rho);

// Three charts "a", "b", "c" with a common point and a few points in pairs
// and single charts.
Cover random_cover(Rng& rng);
// Random invertible symmetric morphisms over the identity per chart and point.
std::map<std::string, PointMorphisms> random_trivializations(Rng& rng, const Cover& cover, int n,
                                                             const std::vector<int>& dims);

}  // namespace gvb::gen
