#pragma once

// Reference computations that do not go through the library's own
// algorithms: brute-force inversion counts, the alternation formula for
// wedge products and direct enumeration of cube objects.

#include <cstdint>
#include <set>
#include <vector>

#include "gradedvb/partitions.hpp"
#include "gradedvb/tensors.hpp"

namespace gvb::oracle {

// (-1)^(number of pairs i < j with seq[i] > seq[j]), by checking every pair.
int inversion_sign(const std::vector<int>& seq);

// Sign of σ restricted to I, read off the cycle structure of the
// permutation that sorts (σ(i))_{i ∈ I}.
int epsilon_by_cycles(const Permutation& sigma, const Subset& I);

// The elements of the blocks of rho listed block after block.
std::vector<int> concatenation(const OrderedPartition& rho);

// Every ordered partition of I: each set partition with its blocks in
// every order.
std::vector<OrderedPartition> ordered_partitions(const Subset& I);

// (ω ∧ η)(e_1, ..., e_{k+l}) = 1/(k! l!) Σ_{π ∈ S_{k+l}} sgn(π) ω(e_π(1), ...)
// η(e_π(k+1), ...), for scalar-valued tensors with all slots of degree 1
// and a common dimension.
MultiTensor wedge_by_alternation(const MultiTensor& omega, const MultiTensor& eta);

// Masks of all unions of blocks of rho, by running through the subsets of
// the block index set.
std::set<std::uint32_t> objects_by_enumeration(const OrderedPartition& rho);

// Block-wise graded skew-symmetrization of ξ_1 ⊗ ... ⊗ ξ_l for single-slot
// covectors: Σ over degree-preserving slot permutations of the slots of
// the tensor product, with the sign of the odd-degree reorderings.
MultiTensor blockwise_skew_product(const std::vector<MultiTensor>& covectors);

}  // namespace gvb::oracle
