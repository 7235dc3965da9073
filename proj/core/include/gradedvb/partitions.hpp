#pragma once

// Subsets of {1..n}, permutations, ordered partitions, signs, canonical
// partitions, coarsements, cube categories and the split enumerations used
// by every composition formula.

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace gvb {

// A finite subset of the positive integers, stored as a bit mask
// (element i is bit i-1). Elements are always reported in increasing order.
class Subset {
 public:
  Subset() = default;
  Subset(std::initializer_list<int> elems);
  explicit Subset(const std::vector<int>& elems);

  static Subset from_mask(std::uint32_t mask) {
    Subset s;
    s.mask_ = mask;
    return s;
  }
  // {first, first+1, ..., last}; empty when last < first.
  static Subset range(int first, int last);
  static Subset full(int n) { return range(1, n); }

  std::uint32_t mask() const { return mask_; }
  int size() const;
  bool empty() const { return mask_ == 0; }
  bool contains(int i) const { return i >= 1 && i <= 32 && ((mask_ >> (i - 1)) & 1u); }
  bool subset_of(const Subset& o) const { return (mask_ & ~o.mask_) == 0; }
  bool disjoint(const Subset& o) const { return (mask_ & o.mask_) == 0; }
  int min() const;
  int max() const;
  std::vector<int> elements() const;

  Subset operator|(const Subset& o) const { return from_mask(mask_ | o.mask_); }
  Subset operator&(const Subset& o) const { return from_mask(mask_ & o.mask_); }
  Subset minus(const Subset& o) const { return from_mask(mask_ & ~o.mask_); }
  bool operator==(const Subset& o) const { return mask_ == o.mask_; }
  bool operator!=(const Subset& o) const { return mask_ != o.mask_; }

  // "1,2,3"; the empty set prints as "{}".
  std::string to_string() const;

 private:
  std::uint32_t mask_ = 0;
};

// Canonical block order: cardinality first, then lexicographic order of the
// sorted element lists.
bool canonical_less(const Subset& a, const Subset& b);

struct CanonicalLess {
  bool operator()(const Subset& a, const Subset& b) const { return canonical_less(a, b); }
};

// All subsets of s in canonical order (the empty set first when included).
std::vector<Subset> subsets_of(const Subset& s, bool include_empty = false);

// A bijection of {1..n}; images()[i-1] is the image of i.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int n);
  // The transposition exchanging a and b in S_n.
  static Permutation transposition(int n, int a, int b);

  int n() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_.at(i - 1); }
  Subset operator()(const Subset& s) const;
  Permutation inverse() const;
  const std::vector<int>& images() const { return images_; }
  bool is_identity() const;

  bool operator==(const Permutation& o) const { return images_ == o.images_; }
  bool operator!=(const Permutation& o) const { return images_ != o.images_; }

  // One-line notation, e.g. "2,1,3".
  std::string to_string() const;

 private:
  std::vector<int> images_;
};

// Composition: (a * b)(i) = a(b(i)).
Permutation operator*(const Permutation& a, const Permutation& b);

// All of S_n in lexicographic order of the one-line notation.
std::vector<Permutation> all_permutations(int n);

// An ordered list of pairwise disjoint nonempty subsets.
struct OrderedPartition {
  std::vector<Subset> blocks;

  Subset ambient() const;
  std::size_t size() const { return blocks.size(); }
  bool is_canonical() const;
  // "2|1,4|3"
  std::string to_string() const;

  bool operator==(const OrderedPartition& o) const { return blocks == o.blocks; }
  bool operator!=(const OrderedPartition& o) const { return !(*this == o); }
  // Arbitrary strict total order, for use as a map key.
  bool operator<(const OrderedPartition& o) const;
};

// Validates the blocks (nonempty, pairwise disjoint) and keeps their order.
OrderedPartition make_partition(std::vector<Subset> blocks);
// Validates the blocks and sorts them canonically.
OrderedPartition canonical_order(std::vector<Subset> blocks);

// sigma(rho) = (sigma(I_1), ..., sigma(I_l)), block order preserved.
OrderedPartition apply(const Permutation& sigma, const OrderedPartition& rho);

// Integer partitions are plain lists of positive parts.
using IntegerPartition = std::vector<int>;

int sum(const IntegerPartition& p);
// "1,2,3"
std::string to_string(const IntegerPartition& p);
IntegerPartition parse_integer_partition(const std::string& text);
OrderedPartition parse_partition(const std::string& text);
Permutation parse_permutation(const std::string& text);

// Block cardinalities in block order.
IntegerPartition block_sizes(const OrderedPartition& rho);

// (-1)^#{(i,j) in I x I : i < j, sigma(i) > sigma(j)}
int epsilon(const Permutation& sigma, const Subset& I);

// Sign of the reordering of the ambient set induced by listing the blocks
// of rho one after the other.
int sgn(const OrderedPartition& rho);

// The ordered partition of {1..sum(p)} with block sizes p (in the given
// order) whose induced order is the natural one.
OrderedPartition canonical_partition(const IntegerPartition& p);

// P(n): naturally ordered integer partitions of every j in 1..n, listed by
// sum and then lexicographically.
std::vector<IntegerPartition> integer_partitions(int n);

// Naturally ordered integer partitions of exactly k.
std::vector<IntegerPartition> integer_partitions_of(int k);

// P(I): canonically ordered set partitions of I, fewest blocks first.
std::vector<OrderedPartition> set_partitions(const Subset& I);

// All canonical coarsements of rho (rho itself and the one-block partition
// included), fewest blocks first.
std::vector<OrderedPartition> coarsements(const OrderedPartition& rho);

// rho ∩ J: the blocks of rho contained in J, canonically ordered. Throws
// DomainError when J is not a union of blocks of rho.
OrderedPartition intersect_partition(const OrderedPartition& rho, const Subset& J);

// Obj(◊^rho): all unions of blocks of rho, the empty set included, in
// canonical order.
std::vector<Subset> cube_objects(const OrderedPartition& rho);
bool is_cube_object(const OrderedPartition& rho, const Subset& s);

// rho_ij ⊓ rho_rs for two distinct (l-1)-coarsements of a common
// l-partition. Throws DomainError otherwise.
OrderedPartition cube_intersection(const OrderedPartition& rho_ij,
                                   const OrderedPartition& rho_rs);

// A grouping of the blocks of a canonical partition K into labelled groups.
// groups[j] lists 0-based block indices of K in increasing order.
struct Split {
  std::vector<std::vector<int>> groups;
  int sign = 1;

  // The sub-partitions (rho_1, ..., rho_l) of K described by the groups.
  std::vector<OrderedPartition> parts(const OrderedPartition& K) const;
  // The union of each group.
  std::vector<Subset> unions(const OrderedPartition& K) const;
};

struct SplitSet {
  IntegerPartition p;     // naturally ordered union of the input shapes
  OrderedPartition K;     // canonical_partition(p)
  std::vector<Split> splits;
};

// All ways to write K = rho_can^p as rho_1 ∪ ... ∪ rho_l with block sizes of
// rho_j equal to p_list[j]. With increasing_unions only the splits whose
// unions are in canonical order are kept.
SplitSet enumerate_splits(const std::vector<IntegerPartition>& p_list,
                          bool increasing_unions = false);

// All groupings of the blocks of rho_can^p into nonempty groups, listed with
// the groups in canonical order of their unions.
std::vector<Split> block_groupings(const IntegerPartition& p);

}  // namespace gvb
