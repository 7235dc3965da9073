#pragma once

// Decomposed symmetric n-fold vector bundles over finite sample bases: the
// S_n-action on tuples, symmetric and general morphism families, top maps,
// equivariance, composition and the pullback bundle.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gradedvb/tensors.hpp"

namespace gvb {

// Building bundles A_1, ..., A_n (A_i sits at every I with #I = i) over a
// finite set of sample points.
struct SymModel {
  int n = 1;
  std::vector<int> dims;            // dims[i-1] = dim A_i
  std::vector<std::string> points;  // distinct labels

  int dim(int cardinality) const { return dims.at(cardinality - 1); }
  bool operator==(const SymModel& o) const { return n == o.n && dims == o.dims && points == o.points; }
};

void validate(const SymModel& m);

// A point of E^A(n̄): one vector in A_{#I} for every nonempty I ⊆ n̄.
// entries is indexed by the subset mask; entries[0] is unused and empty.
struct DecTuple {
  std::size_t point = 0;
  std::vector<Vector> entries;

  const Vector& at(const Subset& I) const { return entries.at(I.mask()); }
  Vector& at(const Subset& I) { return entries.at(I.mask()); }
  bool operator==(const DecTuple& o) const { return point == o.point && entries == o.entries; }
  bool operator!=(const DecTuple& o) const { return !(*this == o); }
};

DecTuple zero_tuple(const SymModel& m, std::size_t point);
// Throws ShapeMismatch when the entries do not fit the model.
void check_tuple(const SymModel& m, const DecTuple& x);
std::string to_string(const DecTuple& x);

// Ψ_σ: the entry at J of the image is ε(σ^{-1}, J) · a_{σ^{-1}(J)}.
DecTuple sn_action(const SymModel& m, const Permutation& sigma, const DecTuple& x);

// Calls fn on every tuple whose entries on the blocks of rho are standard
// basis vectors and which vanishes elsewhere. idx[j] is the basis index
// used on block j. Blocks of dimension zero yield no tuples.
void for_each_basis_tuple(const SymModel& m, std::size_t point, const OrderedPartition& rho,
                          const std::function<void(const DecTuple&, const std::vector<int>&)>& fn);

// A morphism of decomposed symmetric bundles given by τ_p for p ∈ P(n):
// τ_p : A_{p_1} ⊗ ... ⊗ A_{p_k} → B_{Σp}, one family per source point.
struct SymMorphism {
  SymModel source;
  SymModel target;
  std::vector<std::size_t> base_map;
  std::vector<ComponentMap> components;

  bool operator==(const SymMorphism& o) const {
    return source == o.source && target == o.target && base_map == o.base_map && components == o.components;
  }
};

MultiTensor zero_component(const SymModel& source, const SymModel& target, const IntegerPartition& p);
// Fills missing components with zeros and checks shapes.
void normalize(SymMorphism& tau);
SymMorphism identity_morphism(const SymModel& m);
// True iff every τ_p is symmetric in entries of even degree and skew in
// entries of odd degree.
bool satisfies_symmetry(const SymMorphism& tau);

// A morphism of general decomposed bundles: τ_ρ for every canonically
// ordered ρ ∈ P(I) and every nonempty I ⊆ n̄. τ_ρ maps
// A_{#I_1} ⊗ ... ⊗ A_{#I_k} to B_{#I}.
using PartitionComponents = std::map<OrderedPartition, MultiTensor>;

struct GeneralDecMorphism {
  SymModel source;
  SymModel target;
  std::vector<std::size_t> base_map;
  std::vector<PartitionComponents> components;

  bool operator==(const GeneralDecMorphism& o) const {
    return source == o.source && target == o.target && base_map == o.base_map && components == o.components;
  }
};

MultiTensor zero_component(const SymModel& source, const SymModel& target, const OrderedPartition& rho);
void normalize(GeneralDecMorphism& g);
GeneralDecMorphism general_identity(const SymModel& m);

// τ_ρ = sgn(ρ) · τ_{(#I_1, ..., #I_k)}. Throws InvalidMorphism when the
// symmetry constraints fail.
GeneralDecMorphism expand(const SymMorphism& tau);

// Σ_{ρ ∈ P(I)} sgn(ρ) τ_{|ρ|}(a_{I_1}, ..., a_{I_k}).
Vector top_map_entry(const SymMorphism& tau, const DecTuple& x, const Subset& I);
DecTuple top_map(const SymMorphism& tau, const DecTuple& x);
// Σ_{ρ ∈ P(I)} τ_ρ(a_{I_1}, ..., a_{I_k}).
DecTuple general_top_map(const GeneralDecMorphism& g, const DecTuple& x);

using TopMap = std::function<DecTuple(const DecTuple&)>;

// Recovers τ from its top map by feeding basis vectors on the blocks of the
// canonical partitions, then re-checks on `checks` pseudo-random tuples
// drawn from `seed`. Throws ExtractionMismatch when the top map is not the
// top map of a symmetric morphism.
SymMorphism extract(const TopMap& top, const SymModel& source, const SymModel& target,
                    const std::vector<std::size_t>& base_map, unsigned long long seed = 1, int checks = 4);
// The same for general decomposed morphisms (basis vectors on every
// canonical set partition).
GeneralDecMorphism extract_general(const TopMap& top, const SymModel& source, const SymModel& target,
                                   const std::vector<std::size_t>& base_map, unsigned long long seed = 1,
                                   int checks = 4);

// top_map ∘ Ψ_σ = Ψ_σ ∘ top_map for every σ ∈ S_n, checked exactly on every
// basis tuple of every set partition.
bool check_equivariance(const SymMorphism& tau);
bool check_equivariance(const GeneralDecMorphism& g);

// τ ∘ η (η applied first), by the signed sum over coarsements of ρ_can^p.
SymMorphism compose_sym(const SymMorphism& tau, const SymMorphism& eta);
// μ ∘ τ (τ applied first), by the unsigned sum over coarsements.
GeneralDecMorphism compose_general(const GeneralDecMorphism& mu, const GeneralDecMorphism& tau);

bool is_isomorphism(const SymMorphism& tau);
// Throws NotAnIsomorphism.
SymMorphism invert(const SymMorphism& tau);

// The n-pullback P of E^A: n-tuples (e_1, ..., e_n) with e_i ∈ E(n̄ \ {i})
// agreeing on common faces. Faces are stored as tuples vanishing outside
// the subsets of n̄ \ {i}.
using PullbackElement = std::vector<DecTuple>;

struct PullbackBundle {
  SymModel base;
  SymModel model;  // building dims (a_1, ..., a_{n-1}, 0)
};

PullbackBundle pullback_bundle(const SymModel& m);
// π(e) = (p_{n̄\{1}}(e), ..., p_{n̄\{n}}(e)).
PullbackElement pullback_projection(const SymModel& m, const DecTuple& x);
bool is_pullback_element(const SymModel& m, const PullbackElement& e);
// Φ_σ(e)_i = Ψ_σ(e_{σ^{-1}(i)}).
PullbackElement pullback_action(const SymModel& m, const Permutation& sigma, const PullbackElement& e);
// The element of the pullback model with the same proper entries.
DecTuple pullback_to_model(const PullbackBundle& pb, const PullbackElement& e);
// dim P(n̄) minus the rank of the joint projection to the faces.
int pullback_ultracore_dimension(const SymModel& m);

}  // namespace gvb
