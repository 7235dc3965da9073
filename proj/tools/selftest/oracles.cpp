#include "oracles.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace gvb::oracle {

int inversion_sign(const std::vector<int>& seq) {
  int count = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      if (seq[i] > seq[j]) ++count;
    }
  }
  return count % 2 == 0 ? 1 : -1;
}

int epsilon_by_cycles(const Permutation& sigma, const Subset& I) {
  std::vector<int> images;
  for (int i : I.elements()) images.push_back(sigma(i));
  // rank[k] is the position of images[k] in sorted order.
  std::vector<int> sorted = images;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> rank(images.size());
  for (std::size_t k = 0; k < images.size(); ++k) {
    rank[k] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), images[k]) - sorted.begin());
  }
  std::vector<bool> seen(images.size(), false);
  std::size_t cycles = 0;
  for (std::size_t k = 0; k < images.size(); ++k) {
    if (seen[k]) continue;
    ++cycles;
    for (std::size_t j = k; !seen[j]; j = rank[j]) seen[j] = true;
  }
  return (images.size() - cycles) % 2 == 0 ? 1 : -1;
}

std::vector<int> concatenation(const OrderedPartition& rho) {
  std::vector<int> seq;
  for (const auto& b : rho.blocks) {
    for (int e : b.elements()) seq.push_back(e);
  }
  return seq;
}

std::vector<OrderedPartition> ordered_partitions(const Subset& I) {
  std::vector<OrderedPartition> out;
  for (const auto& rho : set_partitions(I)) {
    std::vector<std::size_t> order(rho.size());
    std::iota(order.begin(), order.end(), 0);
    do {
      OrderedPartition r;
      for (std::size_t k : order) r.blocks.push_back(rho.blocks[k]);
      out.push_back(std::move(r));
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return out;
}

namespace {

Rational factorial(int k) {
  Rational f(1);
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Calls fn on every index tuple of the given extents, last index fastest.
template <class Fn>
void for_each_index(const std::vector<int>& extents, Fn fn) {
  if (std::any_of(extents.begin(), extents.end(), [](int e) { return e == 0; })) return;
  std::vector<int> idx(extents.size(), 0);
  for (;;) {
    fn(idx);
    int j = static_cast<int>(extents.size()) - 1;
    while (j >= 0 && ++idx[static_cast<std::size_t>(j)] == extents[static_cast<std::size_t>(j)]) {
      idx[static_cast<std::size_t>(j)] = 0;
      --j;
    }
    if (j < 0) return;
  }
}

}  // namespace

MultiTensor wedge_by_alternation(const MultiTensor& omega, const MultiTensor& eta) {
  const int k = omega.arity();
  const int l = eta.arity();
  const int dim = k > 0 ? omega.dims[0] : (l > 0 ? eta.dims[0] : 0);
  MultiTensor out = MultiTensor::zeros(std::vector<int>(k + l, 1), std::vector<int>(k + l, dim), 1);
  const Rational scale = 1 / (factorial(k) * factorial(l));
  std::vector<int> perm(static_cast<std::size_t>(k + l));
  for_each_index(out.dims, [&](const std::vector<int>& idx) {
    Rational total(0);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<int> a, b;
      for (int i = 0; i < k; ++i) a.push_back(idx[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]);
      for (int i = k; i < k + l; ++i) b.push_back(idx[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]);
      total += inversion_sign(perm) * omega.at(0, a) * eta.at(0, b);
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.at(0, idx) = total * scale;
  });
  return out;
}

std::set<std::uint32_t> objects_by_enumeration(const OrderedPartition& rho) {
  std::set<std::uint32_t> out;
  const std::size_t l = rho.size();
  for (std::uint32_t choice = 0; choice < (1u << l); ++choice) {
    std::uint32_t mask = 0;
    for (std::size_t b = 0; b < l; ++b) {
      if ((choice >> b) & 1u) mask |= rho.blocks[b].mask();
    }
    out.insert(mask);
  }
  return out;
}

MultiTensor blockwise_skew_product(const std::vector<MultiTensor>& covectors) {
  const std::size_t l = covectors.size();
  std::vector<int> degrees;
  std::map<int, int> dim_of;
  for (const auto& c : covectors) {
    degrees.push_back(c.degrees.at(0));
    dim_of[c.degrees.at(0)] = c.dims.at(0);
  }
  std::vector<int> slot_degrees = degrees;
  std::sort(slot_degrees.begin(), slot_degrees.end());
  std::vector<int> dims;
  for (int d : slot_degrees) dims.push_back(dim_of[d]);
  MultiTensor out = MultiTensor::zeros(slot_degrees, dims, 1);
  // Assignments of factors to slots with matching degree; factor j goes to
  // slot target[j].
  std::vector<int> target(l);
  std::iota(target.begin(), target.end(), 0);
  std::vector<std::vector<int>> assignments;
  do {
    bool ok = true;
    for (std::size_t j = 0; j < l; ++j) ok = ok && slot_degrees[static_cast<std::size_t>(target[j])] == degrees[j];
    if (ok) assignments.push_back(target);
  } while (std::next_permutation(target.begin(), target.end()));
  for_each_index(dims, [&](const std::vector<int>& idx) {
    Rational total(0);
    for (const auto& t : assignments) {
      int sign = 1;
      for (std::size_t a = 0; a < l; ++a) {
        for (std::size_t b = a + 1; b < l; ++b) {
          if (t[a] > t[b] && (degrees[a] * degrees[b]) % 2 == 1) sign = -sign;
        }
      }
      Rational term(sign);
      for (std::size_t j = 0; j < l; ++j) term *= covectors[j].at(0, {idx[static_cast<std::size_t>(t[j])]});
      total += term;
    }
    out.at(0, idx) = total;
  });
  return out;
}

}  // namespace gvb::oracle
