#pragma once

// Decompositions of decomposed models built from a linear splitting and
// decompositions of the highest-order cores, and the averaging that makes
// 2-core decompositions S_n-equivariant.

#include <map>
#include <vector>

#include "gradedvb/cores.hpp"
#include "gradedvb/snvb.hpp"

namespace gvb {

// x +_{n̄\{s}} y: entries containing s are added, the others must agree.
// Throws ProjectionMismatch.
DecTuple add_in_direction(const SymModel& m, const DecTuple& x, const DecTuple& y, int s);
// q ·_{n̄\{s}} x: entries containing s are scaled.
DecTuple scale_in_direction(const SymModel& m, const DecTuple& x, int s, const Rational& q);
// The zero over p_{n̄\{s}}(x): entries containing s are set to zero.
DecTuple zero_over_projection(const SymModel& m, const DecTuple& x, int s);

// A linear splitting: Σ_K : A_1^{⊗#K} → A_{#K} for #K ≥ 2 at every point;
// Σ on singletons is the identity.
struct Splitting {
  SymModel model;
  std::vector<std::map<Subset, MultiTensor, CanonicalLess>> components;

  bool operator==(const Splitting& o) const { return model == o.model && components == o.components; }
};

MultiTensor zero_component(const SymModel& m, const Subset& K);
void normalize(Splitting& sigma);
Splitting canonical_inclusion(const SymModel& m);
// Σ applied to a tuple supported on singletons. Throws DomainError otherwise.
DecTuple apply_splitting(const Splitting& sigma, const DecTuple& x);

// A decomposition of the ρ-core: components τ_π for the partitions π of
// objects of ◊^ρ into at least two object pieces. Single pieces act by
// the identity.
struct CoreDecomposition {
  OrderedPartition rho;
  SymModel model;
  std::vector<PartitionComponents> components;

  bool operator==(const CoreDecomposition& o) const {
    return rho == o.rho && model == o.model && components == o.components;
  }
};

// Partitions of objects of ◊^ρ into at least two object pieces.
std::vector<OrderedPartition> multi_piece_partitions(const OrderedPartition& rho);
void normalize(CoreDecomposition& c);
CoreDecomposition identity_core_decomposition(const SymModel& m, const OrderedPartition& rho);
// Throws DomainError when z is not a member of the ρ-core.
DecTuple apply_core_decomposition(const CoreDecomposition& c, const DecTuple& z);

// Core decompositions keyed by their (canonical) partition.
using CoreFamily = std::map<OrderedPartition, CoreDecomposition>;

// The 2-element subsets of n̄ in canonical order.
std::vector<Subset> two_subsets(int n);
// ρ_J: the block J together with the singletons of n̄ \ J, canonical.
OrderedPartition pair_partition(int n, const Subset& J);

// A decomposition S of E^dec in general morphism form; single blocks act by
// the identity.
bool is_normalized_decomposition(const GeneralDecMorphism& s);
// S ∘ ι: the all-singleton components of S.
Splitting splitting_of(const GeneralDecMorphism& s);
// The induced decomposition of the ρ-core.
CoreDecomposition core_decomposition_of(const GeneralDecMorphism& s, const OrderedPartition& rho);

// Checks that the ρ_J-decompositions agree on the common cores and restrict
// to Σ. Throws CompatibilityError naming the violating pair.
void check_compatibility(const Splitting& sigma, const CoreFamily& decs);

// S(x) computed by the recursion along the ordering J_1, ..., J_N of the
// 2-element subsets.
DecTuple apply_recursive_decomposition(const Splitting& sigma, const CoreFamily& decs,
                                       const std::vector<Subset>& ordering, const DecTuple& x);
// The decomposition S with S ∘ ι = Σ and ρ_J-core restrictions S^J.
// Throws CompatibilityError.
GeneralDecMorphism build_decomposition(const Splitting& sigma, const CoreFamily& decs,
                                       const std::vector<Subset>& ordering);
// Every supplied ordering yields identical components.
bool check_order_independence(const Splitting& sigma, const CoreFamily& decs,
                              const std::vector<std::vector<Subset>>& orderings);

// The 2-partitions {I, n̄ \ I} of n̄, canonical, in the order of set_partitions.
std::vector<OrderedPartition> two_partitions(int n);
// Averages a family of 2-core decompositions over S_n: the value on a
// core member x is (1/n!) ·_K Σ^K_σ Ψ_{σ^{-1}} S^{σ(ρ)} Ψ_σ (x), with the sum
// and scaling taken over n̄ \ K for the block K = ρ.blocks[block_choice].
CoreFamily symmetrize_2core(const CoreFamily& family, int block_choice = 1);
// Ψ_σ ∘ S^ρ = S^{σ(ρ)} ∘ Ψ_σ on every core member basis tuple, for all σ.
bool is_equivariant_family(const CoreFamily& family);
// Ψ_σ ∘ Σ = Σ ∘ Ψ_σ on vacant tuples.
bool is_symmetric_splitting(const Splitting& sigma);
// Equivariance of the family and of Σ, and agreement of every all-singleton
// component of every S^ρ with Σ.
bool check_symmetric_compatibility(const CoreFamily& family, const Splitting& sigma);

}  // namespace gvb
