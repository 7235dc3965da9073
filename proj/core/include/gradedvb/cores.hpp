#pragma once

// Iterated higher-order cores of decomposed models, indexed by partitions
// of n̄. Cores are described by membership predicates on tuples.

#include <map>
#include <vector>

#include "gradedvb/snvb.hpp"

namespace gvb {

// Throws DomainError unless rho partitions {1..m.n}.
void check_core_partition(const SymModel& m, const OrderedPartition& rho);

// x lies in E^ρ(I): every entry a_J with J ⊆ I that is not an object of
// ◊^ρ vanishes. Throws DomainError when I is not an object of ◊^ρ.
bool core_membership(const SymModel& m, const DecTuple& x, const OrderedPartition& rho, const Subset& I);
// Membership in E^ρ(n̄).
bool is_core_member(const SymModel& m, const DecTuple& x, const OrderedPartition& rho);
// Zeroes every entry that is not an object of ◊^ρ.
DecTuple project_to_core(const SymModel& m, const DecTuple& x, const OrderedPartition& rho);

// Fiber dimension of E^ρ(I) for every object I (the empty set included).
std::map<Subset, int, CanonicalLess> core_dims(const SymModel& m, const OrderedPartition& rho);
// Building bundles of the core: every nonempty object J with dim A_{#J}.
std::map<Subset, int, CanonicalLess> building_bundles(const SymModel& m, const OrderedPartition& rho);

// Canonical set partitions of nonempty objects of ◊^ρ whose blocks are
// objects, listed object by object in canonical order.
std::vector<OrderedPartition> object_partitions(const OrderedPartition& rho);

// The restriction of a decomposed morphism to the ρ-cores: the components
// indexed by partitions of objects into objects.
struct CoreMorphism {
  OrderedPartition rho;
  SymModel source;
  SymModel target;
  std::vector<std::size_t> base_map;
  std::vector<PartitionComponents> components;
};

CoreMorphism restrict_morphism(const GeneralDecMorphism& g, const OrderedPartition& rho);
CoreMorphism restrict_morphism(const SymMorphism& tau, const OrderedPartition& rho);
// Top map of the restriction on a core member; non-object entries are zero.
// Throws DomainError when x is not a member.
DecTuple core_top_map(const CoreMorphism& c, const DecTuple& x);

// Ψ_σ restricted to E^ρ → E^{σ(ρ)}. Throws DomainError when x is not a
// member of the ρ-core.
DecTuple restrict_action(const SymModel& m, const Permutation& sigma, const OrderedPartition& rho, const DecTuple& x);

// All chains singletons = ρ_0, ρ_1, ..., ρ_k = ρ in which each step merges
// two blocks (partitions kept canonical).
std::vector<std::vector<OrderedPartition>> merge_chains(const OrderedPartition& rho);
// Membership by iterating highest-order cores along a chain: at each step
// the objects of the current cube containing exactly one of the two merged
// blocks must carry zero entries.
bool chain_membership(const SymModel& m, const DecTuple& x, const std::vector<OrderedPartition>& chain);

}  // namespace gvb
