#include "gradedvb/tensors.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "gradedvb/errors.hpp"

namespace gvb {

namespace {

std::size_t product_of(const std::vector<int>& dims, std::size_t from = 0, std::size_t to = std::size_t(-1)) {
  std::size_t p = 1;
  to = std::min(to, dims.size());
  for (std::size_t i = from; i < to; ++i) p *= static_cast<std::size_t>(dims[i]);
  return p;
}

std::string shape_string(const MultiTensor& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.dims.size(); ++i) {
    if (i) s += ',';
    s += "deg" + std::to_string(t.degrees[i]) + ":" + std::to_string(t.dims[i]);
  }
  return s + ")->" + std::to_string(t.out_dim);
}

// Advances a multi-index over `dims`; returns false after the last one.
bool next_index(std::vector<int>& idx, const std::vector<int>& dims) {
  for (int j = static_cast<int>(idx.size()) - 1; j >= 0; --j) {
    if (++idx[j] < dims[j]) return true;
    idx[j] = 0;
  }
  return false;
}

}  // namespace

MultiTensor MultiTensor::zeros(std::vector<int> degrees, std::vector<int> dims, int out_dim) {
  if (degrees.size() != dims.size()) throw ShapeMismatch("degree and dimension lists differ in length");
  for (int d : dims) {
    if (d < 0) throw ShapeMismatch("negative slot dimension");
  }
  if (out_dim < 0) throw ShapeMismatch("negative output dimension");
  MultiTensor t;
  t.degrees = std::move(degrees);
  t.dims = std::move(dims);
  t.out_dim = out_dim;
  t.coeffs.assign(static_cast<std::size_t>(out_dim) * t.input_size(), Rational(0));
  return t;
}

MultiTensor MultiTensor::identity(int degree, int dim) {
  MultiTensor t = zeros({degree}, {dim}, dim);
  for (int i = 0; i < dim; ++i) t.at(i, {i}) = 1;
  return t;
}

MultiTensor MultiTensor::covector(int degree, int dim, int index) {
  if (index < 0 || index >= dim) throw ShapeMismatch("covector index out of range");
  MultiTensor t = zeros({degree}, {dim}, 1);
  t.at(0, {index}) = 1;
  return t;
}

std::size_t MultiTensor::input_size() const { return product_of(dims); }

std::size_t MultiTensor::flat_index(int out, const std::vector<int>& idx) const {
  if (idx.size() != dims.size()) throw ShapeMismatch("index arity mismatch");
  if (out < 0 || out >= out_dim) throw ShapeMismatch("output index out of range");
  std::size_t f = static_cast<std::size_t>(out);
  for (std::size_t j = 0; j < dims.size(); ++j) {
    if (idx[j] < 0 || idx[j] >= dims[j]) throw ShapeMismatch("slot index out of range");
    f = f * static_cast<std::size_t>(dims[j]) + static_cast<std::size_t>(idx[j]);
  }
  return f;
}

bool MultiTensor::is_zero() const {
  for (const auto& c : coeffs) {
    if (c != 0) return false;
  }
  return true;
}

void check_shape(const MultiTensor& t) {
  if (t.degrees.size() != t.dims.size()) throw ShapeMismatch("degree and dimension lists differ in length");
  if (t.coeffs.size() != static_cast<std::size_t>(t.out_dim) * t.input_size()) {
    throw ShapeMismatch("coefficient count " + std::to_string(t.coeffs.size()) + " does not match shape " +
                        shape_string(t));
  }
}

bool same_shape(const MultiTensor& a, const MultiTensor& b) {
  return a.degrees == b.degrees && a.dims == b.dims && a.out_dim == b.out_dim;
}

MultiTensor operator+(const MultiTensor& a, const MultiTensor& b) {
  MultiTensor r = a;
  r += b;
  return r;
}

MultiTensor& operator+=(MultiTensor& a, const MultiTensor& b) {
  if (!same_shape(a, b)) throw ShapeMismatch("adding " + shape_string(a) + " and " + shape_string(b));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] += b.coeffs[i];
  return a;
}

MultiTensor operator-(const MultiTensor& a, const MultiTensor& b) {
  return a + Rational(-1) * b;
}

MultiTensor operator*(const Rational& q, const MultiTensor& t) {
  MultiTensor r = t;
  for (auto& c : r.coeffs) c *= q;
  return r;
}

Vector evaluate(const MultiTensor& t, const std::vector<Vector>& args) {
  if (args.size() != t.dims.size()) throw ShapeMismatch("evaluate: expected " + std::to_string(t.arity()) + " arguments");
  for (std::size_t j = 0; j < args.size(); ++j) {
    if (static_cast<int>(args[j].size()) != t.dims[j]) {
      throw ShapeMismatch("evaluate: argument " + std::to_string(j) + " has the wrong dimension");
    }
  }
  Vector out(t.out_dim, Rational(0));
  const std::size_t in = t.input_size();
  if (in == 0) return out;
  std::vector<int> idx(t.dims.size(), 0);
  std::size_t f = 0;
  do {
    Rational w = 1;
    for (std::size_t j = 0; j < idx.size() && w != 0; ++j) w *= args[j][idx[j]];
    if (w != 0) {
      for (int o = 0; o < t.out_dim; ++o) {
        const Rational& c = t.coeffs[static_cast<std::size_t>(o) * in + f];
        if (c != 0) out[o] += c * w;
      }
    }
    ++f;
  } while (next_index(idx, t.dims));
  return out;
}

namespace {

// Replaces slot j of t by the input slots of `inner`.
MultiTensor substitute_slot(const MultiTensor& t, std::size_t j, const MultiTensor& inner) {
  if (inner.out_dim != t.dims[j]) {
    throw ShapeMismatch("slot " + std::to_string(j) + " of " + shape_string(t) + " cannot take " + shape_string(inner));
  }
  std::vector<int> degrees(t.degrees.begin(), t.degrees.begin() + j);
  std::vector<int> dims(t.dims.begin(), t.dims.begin() + j);
  degrees.insert(degrees.end(), inner.degrees.begin(), inner.degrees.end());
  dims.insert(dims.end(), inner.dims.begin(), inner.dims.end());
  degrees.insert(degrees.end(), t.degrees.begin() + j + 1, t.degrees.end());
  dims.insert(dims.end(), t.dims.begin() + j + 1, t.dims.end());
  MultiTensor r = MultiTensor::zeros(std::move(degrees), std::move(dims), t.out_dim);

  const std::size_t pre = static_cast<std::size_t>(t.out_dim) * product_of(t.dims, 0, j);
  const std::size_t d = static_cast<std::size_t>(t.dims[j]);
  const std::size_t post = product_of(t.dims, j + 1);
  const std::size_t isz = inner.input_size();
  for (std::size_t a = 0; a < pre; ++a) {
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t b = 0; b < post; ++b) {
        const Rational& c = t.coeffs[(a * d + i) * post + b];
        if (c == 0) continue;
        for (std::size_t J = 0; J < isz; ++J) {
          const Rational& e = inner.coeffs[i * isz + J];
          if (e == 0) continue;
          r.coeffs[(a * isz + J) * post + b] += c * e;
        }
      }
    }
  }
  return r;
}

}  // namespace

MultiTensor apply_multilinear(const MultiTensor& outer, const std::vector<MultiTensor>& inners) {
  if (inners.size() != outer.dims.size()) {
    throw ShapeMismatch("apply_multilinear: " + std::to_string(inners.size()) + " inner maps for " +
                        std::to_string(outer.arity()) + " slots");
  }
  MultiTensor r = outer;
  for (std::size_t j = inners.size(); j-- > 0;) r = substitute_slot(r, j, inners[j]);
  return r;
}

MultiTensor reorder_slots(const MultiTensor& t, const std::vector<int>& order) {
  const std::size_t k = t.dims.size();
  if (order.size() != k) throw ShapeMismatch("reorder_slots: order has the wrong length");
  std::vector<int> degrees(k), dims(k);
  std::vector<bool> seen(k, false);
  for (std::size_t i = 0; i < k; ++i) {
    int target = order[i];
    if (target < 0 || target >= static_cast<int>(k) || seen[target]) throw ShapeMismatch("reorder_slots: not a permutation");
    seen[target] = true;
    degrees[target] = t.degrees[i];
    dims[target] = t.dims[i];
  }
  MultiTensor r = MultiTensor::zeros(degrees, dims, t.out_dim);
  const std::size_t in = t.input_size();
  if (in == 0) return r;
  // Strides of r, addressed by the slots of t.
  std::vector<std::size_t> rstride(k, 1);
  for (int s = static_cast<int>(k) - 2; s >= 0; --s) rstride[s] = rstride[s + 1] * static_cast<std::size_t>(dims[s + 1]);
  std::vector<int> idx(k, 0);
  std::size_t f = 0;
  do {
    std::size_t g = 0;
    for (std::size_t i = 0; i < k; ++i) g += rstride[order[i]] * static_cast<std::size_t>(idx[i]);
    for (int o = 0; o < t.out_dim; ++o) r.coeffs[static_cast<std::size_t>(o) * in + g] = t.coeffs[static_cast<std::size_t>(o) * in + f];
    ++f;
  } while (next_index(idx, t.dims));
  return r;
}

MultiTensor tensor_product(const std::vector<MultiTensor>& factors) {
  MultiTensor r = MultiTensor::zeros({}, {}, 1);
  r.coeffs[0] = 1;
  for (const auto& f : factors) {
    if (f.out_dim != 1) throw ShapeMismatch("tensor_product expects scalar-valued factors");
    MultiTensor n = MultiTensor::zeros({}, {}, 1);
    n.degrees = r.degrees;
    n.degrees.insert(n.degrees.end(), f.degrees.begin(), f.degrees.end());
    n.dims = r.dims;
    n.dims.insert(n.dims.end(), f.dims.begin(), f.dims.end());
    n.coeffs.assign(r.coeffs.size() * f.coeffs.size(), Rational(0));
    for (std::size_t a = 0; a < r.coeffs.size(); ++a) {
      if (r.coeffs[a] == 0) continue;
      for (std::size_t b = 0; b < f.coeffs.size(); ++b) n.coeffs[a * f.coeffs.size() + b] = r.coeffs[a] * f.coeffs[b];
    }
    r = std::move(n);
  }
  return r;
}

MultiTensor compose_linear(const MultiTensor& b, const MultiTensor& a) {
  if (b.arity() != 1 || a.arity() != 1) throw ShapeMismatch("compose_linear expects single-slot maps");
  return apply_multilinear(b, {a});
}

namespace {

// Gauss-Jordan elimination on an augmented matrix; returns the rank of the
// left block of width `cols`.
int eliminate(std::vector<Vector>& m, std::size_t cols) {
  int rank = 0;
  const std::size_t rows = m.size();
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    Rational inv = 1 / m[rank][c];
    for (auto& x : m[rank]) x *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == static_cast<std::size_t>(rank) || m[r][c] == 0) continue;
      Rational f = m[r][c];
      for (std::size_t k = 0; k < m[r].size(); ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

int matrix_rank(std::vector<Vector> rows) {
  if (rows.empty()) return 0;
  return eliminate(rows, rows.front().size());
}

bool is_invertible_linear(const MultiTensor& a) {
  if (a.arity() != 1 || a.dims[0] != a.out_dim) return false;
  std::vector<Vector> m(a.out_dim, Vector(a.out_dim));
  for (int r = 0; r < a.out_dim; ++r) {
    for (int c = 0; c < a.out_dim; ++c) m[r][c] = a.at(r, {c});
  }
  return matrix_rank(std::move(m)) == a.out_dim;
}

MultiTensor inverse_linear(const MultiTensor& a) {
  if (a.arity() != 1) throw ShapeMismatch("inverse_linear expects a single-slot map");
  const int d = a.out_dim;
  if (a.dims[0] != d) throw NotAnIsomorphism("linear map " + shape_string(a) + " is not square");
  std::vector<Vector> m(d, Vector(2 * static_cast<std::size_t>(d), Rational(0)));
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) m[r][c] = a.at(r, {c});
    m[r][d + r] = 1;
  }
  if (eliminate(m, static_cast<std::size_t>(d)) != d) throw NotAnIsomorphism("linear map is singular");
  MultiTensor inv = MultiTensor::zeros(a.degrees, {d}, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) inv.at(r, {c}) = m[r][d + c];
  }
  return inv;
}

namespace {

// All slot permutations that preserve degrees, each with the sign of its
// restriction to the odd-degree slots.
std::vector<std::pair<std::vector<int>, int>> degree_preserving_permutations(const std::vector<int>& degrees) {
  std::map<int, std::vector<int>> classes;
  for (std::size_t i = 0; i < degrees.size(); ++i) classes[degrees[i]].push_back(static_cast<int>(i));
  std::vector<std::pair<std::vector<int>, int>> out;
  std::vector<int> perm(degrees.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  std::vector<std::vector<int>> members;
  for (auto& [d, m] : classes) members.push_back(m);
  std::function<void(std::size_t)> rec = [&](std::size_t c) {
    if (c == members.size()) {
      int inv = 0;
      for (std::size_t a = 0; a < perm.size(); ++a) {
        if (degrees[a] % 2 == 0) continue;
        for (std::size_t b = a + 1; b < perm.size(); ++b) {
          if (degrees[b] == degrees[a] && perm[a] > perm[b]) ++inv;
        }
      }
      out.emplace_back(perm, inv % 2 ? -1 : 1);
      return;
    }
    std::vector<int> images = members[c];
    do {
      for (std::size_t i = 0; i < images.size(); ++i) perm[members[c][i]] = images[i];
      rec(c + 1);
    } while (std::next_permutation(images.begin(), images.end()));
    for (int i : members[c]) perm[i] = i;
  };
  rec(0);
  return out;
}

}  // namespace

MultiTensor graded_symmetrize(const MultiTensor& t) {
  check_shape(t);
  auto perms = degree_preserving_permutations(t.degrees);
  MultiTensor r = MultiTensor::zeros(t.degrees, t.dims, t.out_dim);
  for (const auto& [perm, sign] : perms) {
    // Slots of equal degree share a dimension, so the reordered tensor has
    // the same shape as t.
    MultiTensor p = reorder_slots(t, perm);
    if (p.dims != t.dims) throw ShapeMismatch("slots of equal degree must have equal dimension");
    r += Rational(sign) * p;
  }
  return Rational(1, static_cast<unsigned long>(perms.size())) * r;
}

bool is_graded_symmetric(const MultiTensor& t) {
  check_shape(t);
  const std::size_t k = t.degrees.size();
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      if (t.degrees[a] != t.degrees[b]) continue;
      if (t.dims[a] != t.dims[b]) return false;
      std::vector<int> swap(k);
      for (std::size_t i = 0; i < k; ++i) swap[i] = static_cast<int>(i);
      std::swap(swap[a], swap[b]);
      MultiTensor s = reorder_slots(t, swap);
      Rational sign = (t.degrees[a] % 2) ? -1 : 1;
      if (s != sign * t) return false;
      break;  // transpositions of neighbours within a class generate it
    }
  }
  return true;
}

MultiTensor graded_product(const std::vector<MultiTensor>& factors) {
  Rational scalar = 1;
  std::vector<const MultiTensor*> graded;
  std::map<int, int> dim_of_degree;
  for (const auto& f : factors) {
    check_shape(f);
    if (f.out_dim != 1) throw ShapeMismatch("graded_product expects scalar-valued factors");
    if (f.arity() == 0) {
      scalar *= f.coeffs[0];
      continue;
    }
    for (std::size_t i = 0; i < f.degrees.size(); ++i) {
      if (f.degrees[i] < 1) throw ShapeMismatch("slot degrees must be positive");
      if (i > 0 && f.degrees[i] < f.degrees[i - 1]) throw ShapeMismatch("factor degrees must be nondecreasing");
      auto [it, fresh] = dim_of_degree.emplace(f.degrees[i], f.dims[i]);
      if (!fresh && it->second != f.dims[i]) {
        throw ShapeMismatch("degree " + std::to_string(f.degrees[i]) + " used with two fiber dimensions");
      }
    }
    graded.push_back(&f);
  }
  if (graded.empty()) {
    MultiTensor r = MultiTensor::zeros({}, {}, 1);
    r.coeffs[0] = scalar;
    return r;
  }
  std::vector<IntegerPartition> shapes;
  std::vector<MultiTensor> parts;
  for (const auto* f : graded) {
    shapes.push_back(f->degrees);
    parts.push_back(*f);
  }
  SplitSet ss = enumerate_splits(shapes);
  std::vector<int> dims;
  for (int d : ss.p) dims.push_back(dim_of_degree.at(d));
  MultiTensor r = MultiTensor::zeros(ss.p, dims, 1);
  MultiTensor tp = tensor_product(parts);
  for (const auto& split : ss.splits) {
    std::vector<int> order;
    for (const auto& g : split.groups) order.insert(order.end(), g.begin(), g.end());
    r += Rational(split.sign) * reorder_slots(tp, order);
  }
  return scalar * r;
}

}  // namespace gvb
