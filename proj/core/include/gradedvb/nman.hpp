#pragma once

// Split [n]-manifolds over finite sample bases and their morphisms:
// pullback of graded-symmetric functions, composition and inversion.

#include <functional>
#include <string>
#include <vector>

#include "gradedvb/tensors.hpp"

namespace gvb {

// E_1[-1] ⊕ ... ⊕ E_n[-n] over a finite set of sample points.
struct SplitModel {
  int n = 1;
  std::vector<int> ranks;           // ranks[i-1] = rank of E_i
  std::vector<std::string> points;  // distinct labels

  int rank(int degree) const { return ranks.at(degree - 1); }
  bool operator==(const SplitModel& o) const { return n == o.n && ranks == o.ranks && points == o.points; }
};

void validate(const SplitModel& m);

// A morphism M → N of split manifolds. At a source point x with image
// y = base_map[x], components[x][p] is μ_p : E_{p_1} ⊗ ... ⊗ E_{p_l} → F_{Σp}
// (E the bundles of the source, F those of the target). Every p ∈ P(m)
// whose parts are at most n is present.
struct GradedMorphism {
  SplitModel source;
  SplitModel target;
  std::vector<std::size_t> base_map;
  std::vector<ComponentMap> components;

  const MultiTensor& component(std::size_t point, const IntegerPartition& p) const;
  bool operator==(const GradedMorphism& o) const {
    return source == o.source && target == o.target && base_map == o.base_map && components == o.components;
  }
};

// Integer partitions of total at most `max_total` whose parts are at most
// `max_part`, in the order of integer_partitions.
std::vector<IntegerPartition> admissible_partitions(int max_total, int max_part);

// The zero tensor with the shape of the p-component.
MultiTensor zero_component(const SplitModel& source, const SplitModel& target, const IntegerPartition& p);

// Fills missing components with zeros and checks shapes and the base map.
// Throws ShapeMismatch or DomainError.
void normalize(GradedMorphism& mu);

GradedMorphism identity_morphism(const SplitModel& m);
// Linear morphism over the identity with the given (i)-components per point.
GradedMorphism linear_morphism(const SplitModel& m, const std::vector<std::vector<MultiTensor>>& blocks);

// A graded function: components keyed by the shape of the slots.
using GradedFunction = ComponentMap;

// μ*(f) at a source point, where f is the value of a graded function at
// the image point. Each component of f must be graded-symmetric.
GradedFunction pullback_at(const GradedMorphism& mu, std::size_t point, const GradedFunction& f);
// Pullback of a graded function given at every target point.
std::vector<GradedFunction> pullback(const GradedMorphism& mu, const std::vector<GradedFunction>& f);

// (ν∘μ)_p at a source point of μ.
MultiTensor compose_component(const GradedMorphism& nu, const GradedMorphism& mu, std::size_t point,
                              const IntegerPartition& p);
// ν ∘ μ. Throws DomainError on a model mismatch.
GradedMorphism compose(const GradedMorphism& nu, const GradedMorphism& mu);

bool is_isomorphism(const GradedMorphism& mu);
// Throws NotAnIsomorphism.
GradedMorphism invert(const GradedMorphism& mu);

// Generic inversion by partition length, shared with the symmetric bundle
// module. `partial_component(nu, p)` must return the p-component of ν∘μ
// computed with the current ν (whose p-component is still zero).
// `linear_inverses[i-1]` is the inverse of μ_{(i)} at the point.
ComponentMap invert_components(const std::vector<IntegerPartition>& partitions,
                               const std::vector<MultiTensor>& linear_inverses,
                               const std::function<MultiTensor(const ComponentMap&, const IntegerPartition&)>& partial_component,
                               ComponentMap nu);

}  // namespace gvb
