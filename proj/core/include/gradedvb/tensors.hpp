#pragma once

// Dense exact-rational multilinear maps, graded symmetry and the graded
// product of graded-symmetric tensors.

#include <map>
#include <vector>

#include "gradedvb/partitions.hpp"
#include "gradedvb/rational.hpp"

namespace gvb {

// A multilinear map V_1 ⊗ ... ⊗ V_k → W with dim V_j = dims[j] and
// dim W = out_dim. Scalar-valued tensors (sections of dual bundles) use
// out_dim = 1. Each input slot carries a degree which drives the graded
// symmetry conventions. Coefficients are stored row-major with the output
// index first: coeffs[((o * d_1 + i_1) * d_2 + i_2) ...].
struct MultiTensor {
  std::vector<int> degrees;
  std::vector<int> dims;
  int out_dim = 1;
  std::vector<Rational> coeffs;

  static MultiTensor zeros(std::vector<int> degrees, std::vector<int> dims, int out_dim);
  // The identity of a single slot of the given degree and dimension.
  static MultiTensor identity(int degree, int dim);
  // The scalar-valued coordinate function e^index on a single slot.
  static MultiTensor covector(int degree, int dim, int index);

  int arity() const { return static_cast<int>(dims.size()); }
  std::size_t input_size() const;
  std::size_t flat_index(int out, const std::vector<int>& idx) const;
  Rational& at(int out, const std::vector<int>& idx) { return coeffs[flat_index(out, idx)]; }
  const Rational& at(int out, const std::vector<int>& idx) const { return coeffs[flat_index(out, idx)]; }
  bool is_zero() const;

  bool operator==(const MultiTensor& o) const {
    return degrees == o.degrees && dims == o.dims && out_dim == o.out_dim && coeffs == o.coeffs;
  }
  bool operator!=(const MultiTensor& o) const { return !(*this == o); }
};

// Per-point morphism data: one tensor per integer partition. A missing key
// stands for the zero map.
using ComponentMap = std::map<IntegerPartition, MultiTensor>;

// Throws ShapeMismatch when the coefficient count does not match the shape.
void check_shape(const MultiTensor& t);
bool same_shape(const MultiTensor& a, const MultiTensor& b);

MultiTensor operator+(const MultiTensor& a, const MultiTensor& b);
MultiTensor operator-(const MultiTensor& a, const MultiTensor& b);
MultiTensor operator*(const Rational& q, const MultiTensor& t);
MultiTensor& operator+=(MultiTensor& a, const MultiTensor& b);

// Multilinear contraction t(v_1, ..., v_k), a vector of length out_dim.
Vector evaluate(const MultiTensor& t, const std::vector<Vector>& args);

// outer ∘ (inner_1, ..., inner_k): slot j of outer is fed by inner_j, whose
// out_dim must equal outer.dims[j]. The result has the concatenated input
// slots of the inner tensors.
MultiTensor apply_multilinear(const MultiTensor& outer, const std::vector<MultiTensor>& inners);

// R(v_0, ..., v_{k-1}) = t(v_{order[0]}, ..., v_{order[k-1]}).
MultiTensor reorder_slots(const MultiTensor& t, const std::vector<int>& order);

// Outer product of scalar-valued tensors, slots concatenated.
MultiTensor tensor_product(const std::vector<MultiTensor>& factors);

// Composition b ∘ a of single-slot linear maps.
MultiTensor compose_linear(const MultiTensor& b, const MultiTensor& a);
// Inverse of a single-slot square linear map. Throws NotAnIsomorphism.
MultiTensor inverse_linear(const MultiTensor& a);
bool is_invertible_linear(const MultiTensor& a);

// Rank of a matrix given by its rows, by exact elimination.
int matrix_rank(std::vector<Vector> rows);

// Projection onto the graded-symmetric subspace: the average over all slot
// permutations preserving degrees, with the sign of the permutation on the
// odd-degree slots.
MultiTensor graded_symmetrize(const MultiTensor& t);
// Swapping two slots of equal degree d multiplies the map by (-1)^d.
bool is_graded_symmetric(const MultiTensor& t);

// ξ_1 ⊙ ... ⊙ ξ_l for scalar-valued graded-symmetric tensors whose slot
// degrees are nondecreasing. The result has the naturally ordered union of
// the shapes; its value on (v_1, ..., v_s) is the signed sum over all
// splits of the slots into groups of the prescribed shapes. Arity-zero
// factors act by scalar multiplication.
MultiTensor graded_product(const std::vector<MultiTensor>& factors);

}  // namespace gvb
