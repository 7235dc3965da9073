#include "gradedvb/decomp.hpp"

#include <algorithm>
#include <functional>

#include "gradedvb/config.hpp"
#include "gradedvb/errors.hpp"

namespace gvb {

// ------------------------------------------------ directional structure

DecTuple add_in_direction(const SymModel& m, const DecTuple& x, const DecTuple& y, int s) {
  check_tuple(m, x);
  check_tuple(m, y);
  if (x.point != y.point) throw ProjectionMismatch("tuples over different base points");
  DecTuple r = x;
  for (std::uint32_t mask = 1; mask < x.entries.size(); ++mask) {
    if (Subset::from_mask(mask).contains(s)) {
      for (std::size_t i = 0; i < r.entries[mask].size(); ++i) r.entries[mask][i] += y.entries[mask][i];
    } else if (x.entries[mask] != y.entries[mask]) {
      throw ProjectionMismatch("tuples differ at " + Subset::from_mask(mask).to_string() + ", which does not contain " +
                               std::to_string(s));
    }
  }
  return r;
}

DecTuple scale_in_direction(const SymModel& m, const DecTuple& x, int s, const Rational& q) {
  check_tuple(m, x);
  DecTuple r = x;
  for (std::uint32_t mask = 1; mask < x.entries.size(); ++mask) {
    if (Subset::from_mask(mask).contains(s)) {
      for (auto& c : r.entries[mask]) c *= q;
    }
  }
  return r;
}

DecTuple zero_over_projection(const SymModel& m, const DecTuple& x, int s) {
  return scale_in_direction(m, x, s, Rational(0));
}

// ----------------------------------------------------------- splittings

MultiTensor zero_component(const SymModel& m, const Subset& K) {
  return MultiTensor::zeros(std::vector<int>(K.size(), 1), std::vector<int>(K.size(), m.dim(1)), m.dim(K.size()));
}

void normalize(Splitting& sigma) {
  validate(sigma.model);
  sigma.components.resize(sigma.model.points.size());
  for (auto& comp : sigma.components) {
    for (const auto& [K, t] : comp) {
      if (K.size() < 2 || !K.subset_of(Subset::full(sigma.model.n))) {
        throw ShapeMismatch("splitting component key " + K.to_string() + " is not a subset with at least two elements");
      }
    }
    for (const auto& K : subsets_of(Subset::full(sigma.model.n))) {
      if (K.size() < 2) continue;
      MultiTensor z = zero_component(sigma.model, K);
      auto it = comp.find(K);
      if (it == comp.end()) {
        comp.emplace(K, std::move(z));
      } else {
        check_shape(it->second);
        if (!same_shape(it->second, z)) throw ShapeMismatch("splitting component " + K.to_string() + " has the wrong shape");
      }
    }
  }
}

Splitting canonical_inclusion(const SymModel& m) {
  Splitting s{m, {}};
  normalize(s);
  return s;
}

DecTuple apply_splitting(const Splitting& sigma, const DecTuple& x) {
  const SymModel& m = sigma.model;
  check_tuple(m, x);
  DecTuple y = zero_tuple(m, x.point);
  for (std::uint32_t mask = 1; mask < x.entries.size(); ++mask) {
    Subset K = Subset::from_mask(mask);
    if (K.size() == 1) {
      y.entries[mask] = x.entries[mask];
      continue;
    }
    if (!is_zero(x.entries[mask])) throw DomainError("splitting applied to a tuple with a non-singleton entry");
    std::vector<Vector> args;
    for (int e : K.elements()) args.push_back(x.at(Subset{e}));
    y.entries[mask] = evaluate(sigma.components.at(x.point).at(K), args);
  }
  return y;
}

// ---------------------------------------------------- core decompositions

std::vector<OrderedPartition> multi_piece_partitions(const OrderedPartition& rho) {
  std::vector<OrderedPartition> out;
  for (auto& pi : object_partitions(rho)) {
    if (pi.size() >= 2) out.push_back(std::move(pi));
  }
  return out;
}

void normalize(CoreDecomposition& c) {
  validate(c.model);
  check_core_partition(c.model, c.rho);
  if (!c.rho.is_canonical()) throw DomainError("core decomposition partition " + c.rho.to_string() + " is not canonical");
  c.components.resize(c.model.points.size());
  const auto keys = multi_piece_partitions(c.rho);
  for (auto& comp : c.components) {
    for (const auto& [pi, t] : comp) {
      if (std::find(keys.begin(), keys.end(), pi) == keys.end()) {
        throw ShapeMismatch("component " + pi.to_string() + " is not a multi-piece partition into objects of " +
                            c.rho.to_string());
      }
    }
    for (const auto& pi : keys) {
      MultiTensor z = zero_component(c.model, c.model, pi);
      auto it = comp.find(pi);
      if (it == comp.end()) {
        comp.emplace(pi, std::move(z));
      } else {
        check_shape(it->second);
        if (!same_shape(it->second, z)) throw ShapeMismatch("component " + pi.to_string() + " has the wrong shape");
      }
    }
  }
}

CoreDecomposition identity_core_decomposition(const SymModel& m, const OrderedPartition& rho) {
  CoreDecomposition c{rho, m, {}};
  normalize(c);
  return c;
}

DecTuple apply_core_decomposition(const CoreDecomposition& c, const DecTuple& z) {
  if (!is_core_member(c.model, z, c.rho)) {
    throw DomainError("tuple is not a member of the " + c.rho.to_string() + "-core");
  }
  DecTuple y = z;
  for (const auto& [pi, t] : c.components.at(z.point)) {
    std::vector<Vector> args;
    bool nonzero = true;
    for (const auto& b : pi.blocks) {
      if (is_zero(z.at(b))) {
        nonzero = false;
        break;
      }
      args.push_back(z.at(b));
    }
    if (!nonzero) continue;
    Vector v = evaluate(t, args);
    Vector& out = y.at(pi.ambient());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += v[i];
  }
  return y;
}

std::vector<Subset> two_subsets(int n) {
  std::vector<Subset> out;
  for (const auto& J : subsets_of(Subset::full(n))) {
    if (J.size() == 2) out.push_back(J);
  }
  return out;
}

OrderedPartition pair_partition(int n, const Subset& J) {
  std::vector<Subset> blocks{J};
  for (int e : Subset::full(n).minus(J).elements()) blocks.push_back(Subset{e});
  return canonical_order(blocks);
}

// ---------------------------------------------- decompositions of E^dec

bool is_normalized_decomposition(const GeneralDecMorphism& s) {
  if (!(s.source == s.target)) return false;
  for (const auto& comp : s.components) {
    for (const auto& I : subsets_of(Subset::full(s.source.n))) {
      auto it = comp.find(OrderedPartition{{I}});
      if (it == comp.end() || it->second != MultiTensor::identity(I.size(), s.source.dim(I.size()))) return false;
    }
  }
  return true;
}

Splitting splitting_of(const GeneralDecMorphism& s) {
  Splitting sigma{s.source, {}};
  sigma.components.resize(s.source.points.size());
  for (std::size_t x = 0; x < s.components.size(); ++x) {
    for (const auto& K : subsets_of(Subset::full(s.source.n))) {
      if (K.size() < 2) continue;
      std::vector<Subset> singles;
      for (int e : K.elements()) singles.push_back(Subset{e});
      auto it = s.components[x].find(canonical_order(singles));
      if (it != s.components[x].end()) sigma.components[x].emplace(K, it->second);
    }
  }
  normalize(sigma);
  return sigma;
}

CoreDecomposition core_decomposition_of(const GeneralDecMorphism& s, const OrderedPartition& rho) {
  CoreDecomposition c{rho, s.source, {}};
  c.components.resize(s.source.points.size());
  for (std::size_t x = 0; x < s.components.size(); ++x) {
    for (const auto& pi : multi_piece_partitions(rho)) {
      auto it = s.components[x].find(pi);
      if (it != s.components[x].end()) c.components[x].emplace(pi, it->second);
    }
  }
  normalize(c);
  return c;
}

void check_compatibility(const Splitting& sigma, const CoreFamily& decs) {
  const SymModel& m = sigma.model;
  const auto pairs = two_subsets(m.n);
  std::vector<const CoreDecomposition*> by_pair;
  for (const auto& J : pairs) {
    auto it = decs.find(pair_partition(m.n, J));
    if (it == decs.end()) throw CompatibilityError("missing core decomposition for J = {" + J.to_string() + "}");
    if (!(it->second.model == m)) throw CompatibilityError("core decomposition for {" + J.to_string() + "} has another model");
    by_pair.push_back(&it->second);
  }
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    const CoreDecomposition& sa = *by_pair[a];
    // Restriction to Σ on the faces away from J.
    for (const auto& K : subsets_of(Subset::full(m.n).minus(pairs[a]))) {
      if (K.size() < 2) continue;
      std::vector<Subset> singles;
      for (int e : K.elements()) singles.push_back(Subset{e});
      const OrderedPartition pi = canonical_order(singles);
      for (std::size_t x = 0; x < m.points.size(); ++x) {
        if (sa.components.at(x).at(pi) != sigma.components.at(x).at(K)) {
          throw CompatibilityError("core decomposition for {" + pairs[a].to_string() + "} and the splitting differ at " +
                                   pi.to_string() + " over point " + m.points[x]);
        }
      }
    }
    for (std::size_t b = a + 1; b < pairs.size(); ++b) {
      const CoreDecomposition& sb = *by_pair[b];
      const OrderedPartition common = cube_intersection(sa.rho, sb.rho);
      for (const auto& pi : multi_piece_partitions(common)) {
        for (std::size_t x = 0; x < m.points.size(); ++x) {
          if (sa.components.at(x).at(pi) != sb.components.at(x).at(pi)) {
            throw CompatibilityError("core decompositions for {" + pairs[a].to_string() + "} and {" +
                                     pairs[b].to_string() + "} differ at " + pi.to_string() + " over point " +
                                     m.points[x]);
          }
        }
      }
    }
  }
}

namespace {

void check_ordering(int n, const std::vector<Subset>& ordering) {
  auto expected = two_subsets(n);
  auto given = ordering;
  std::sort(given.begin(), given.end(), canonical_less);
  if (given != expected) throw DomainError("ordering must list every 2-element subset exactly once");
}

}  // namespace

DecTuple apply_recursive_decomposition(const Splitting& sigma, const CoreFamily& decs,
                                       const std::vector<Subset>& ordering, const DecTuple& x) {
  const SymModel& m = sigma.model;
  check_ordering(m.n, ordering);
  check_tuple(m, x);
  std::vector<const CoreDecomposition*> steps;
  for (const auto& J : ordering) steps.push_back(&decs.at(pair_partition(m.n, J)));

  // S^k on E^k, where E^k allows the entries I with #I = 1 or J_i ⊆ I
  // for some i ≤ k.
  std::function<DecTuple(std::size_t, const DecTuple&)> rec = [&](std::size_t k, const DecTuple& v) -> DecTuple {
    if (k == 0) return apply_splitting(sigma, v);
    const Subset J = ordering[k - 1];
    const Subset outside = Subset::full(m.n).minus(J);
    auto earlier_inside = [&](const Subset& I) {
      for (std::size_t i = 0; i + 1 < k; ++i) {
        if (ordering[i].subset_of(I)) return true;
      }
      return false;
    };
    DecTuple y = zero_tuple(m, v.point);
    DecTuple z = zero_tuple(m, v.point);
    for (std::uint32_t mask = 1; mask < v.entries.size(); ++mask) {
      const Subset I = Subset::from_mask(mask);
      const bool kept = I.size() == 1 || earlier_inside(I);
      if (kept) y.entries[mask] = v.entries[mask];
      if (I.subset_of(outside)) {
        z.entries[mask] = y.entries[mask];
      } else if (J.subset_of(I) && !earlier_inside(I)) {
        z.entries[mask] = v.entries[mask];
      }
    }
    const auto st = J.elements();
    const int s = st[0];
    const int t = st[1];
    DecTuple sy = rec(k - 1, y);
    DecTuple sz = apply_core_decomposition(*steps[k - 1], z);
    return add_in_direction(m, sy, add_in_direction(m, zero_over_projection(m, sy, s), sz, t), s);
  };
  return rec(ordering.size(), x);
}

GeneralDecMorphism build_decomposition(const Splitting& sigma, const CoreFamily& decs,
                                       const std::vector<Subset>& ordering) {
  check_compatibility(sigma, decs);
  check_ordering(sigma.model.n, ordering);
  const SymModel& m = sigma.model;
  std::vector<std::size_t> base(m.points.size());
  for (std::size_t x = 0; x < base.size(); ++x) base[x] = x;
  try {
    return extract_general([&](const DecTuple& x) { return apply_recursive_decomposition(sigma, decs, ordering, x); },
                           m, m, base);
  } catch (const ProjectionMismatch& e) {
    throw CompatibilityError(std::string("inputs are not compatible: ") + e.what());
  }
}

bool check_order_independence(const Splitting& sigma, const CoreFamily& decs,
                              const std::vector<std::vector<Subset>>& orderings) {
  if (orderings.empty()) return true;
  const GeneralDecMorphism first = build_decomposition(sigma, decs, orderings.front());
  for (std::size_t i = 1; i < orderings.size(); ++i) {
    if (!(build_decomposition(sigma, decs, orderings[i]) == first)) return false;
  }
  return true;
}

// ------------------------------------------------------------ symmetry

std::vector<OrderedPartition> two_partitions(int n) {
  std::vector<OrderedPartition> out;
  for (auto& rho : set_partitions(Subset::full(n))) {
    if (rho.size() == 2) out.push_back(std::move(rho));
  }
  return out;
}

namespace {

const CoreDecomposition& image_decomposition(const CoreFamily& family, const Permutation& sigma,
                                             const OrderedPartition& rho) {
  const OrderedPartition key = canonical_order(apply(sigma, rho).blocks);
  auto it = family.find(key);
  if (it == family.end()) throw DomainError("family has no decomposition for " + key.to_string());
  return it->second;
}

}  // namespace

CoreFamily symmetrize_2core(const CoreFamily& family, int block_choice) {
  if (family.empty()) return family;
  const SymModel& m = family.begin()->second.model;
  if (m.n < 2) return family;
  const auto perms = all_permutations(m.n);
  const Rational scale(1, static_cast<unsigned long>(perms.size()));
  const Subset full = Subset::full(m.n);
  CoreFamily out;
  for (const auto& rho : two_partitions(m.n)) {
    auto it = family.find(rho);
    if (it == family.end()) throw DomainError("family has no decomposition for " + rho.to_string());
    if (!(it->second.model == m)) throw DomainError("family members live on different models");
    if (block_choice < 0 || block_choice > 1) throw DomainError("block_choice must be 0 or 1");
    const int s = rho.blocks[block_choice].min();
    CoreDecomposition avg{rho, m, {}};
    avg.components.resize(m.points.size());
    for (std::size_t x = 0; x < m.points.size(); ++x) {
      MultiTensor t = zero_component(m, m, rho);
      for_each_basis_tuple(m, x, rho, [&](const DecTuple& v, const std::vector<int>& idx) {
        DecTuple acc;
        bool first = true;
        for (const auto& sigma : perms) {
          const CoreDecomposition& img = image_decomposition(family, sigma, rho);
          DecTuple w = sn_action(m, sigma.inverse(), apply_core_decomposition(img, sn_action(m, sigma, v)));
          acc = first ? w : add_in_direction(m, acc, w, s);
          first = false;
        }
        acc = scale_in_direction(m, acc, s, scale);
        const Vector& top = acc.at(full);
        for (int o = 0; o < t.out_dim; ++o) t.at(o, idx) = top[o];
      });
      avg.components[x].emplace(rho, std::move(t));
    }
    normalize(avg);
    out.emplace(rho, std::move(avg));
  }
  return out;
}

bool is_equivariant_family(const CoreFamily& family) {
  for (const auto& [rho, dec] : family) {
    const SymModel& m = dec.model;
    const auto perms = all_permutations(m.n);
    for (const auto& sigma : perms) {
      const OrderedPartition key = canonical_order(apply(sigma, rho).blocks);
      auto it = family.find(key);
      if (it == family.end()) return false;
      const CoreDecomposition& img = it->second;
      for (std::size_t x = 0; x < m.points.size(); ++x) {
        bool ok = true;
        for (const auto& pi : object_partitions(rho)) {
          for_each_basis_tuple(m, x, pi, [&](const DecTuple& v, const std::vector<int>&) {
            if (!ok) return;
            DecTuple lhs = sn_action(m, sigma, apply_core_decomposition(dec, v));
            DecTuple rhs = apply_core_decomposition(img, sn_action(m, sigma, v));
            if (lhs != rhs) ok = false;
          });
          if (!ok) return false;
        }
      }
    }
  }
  return true;
}

bool is_symmetric_splitting(const Splitting& sigma) {
  const SymModel& m = sigma.model;
  const auto perms = all_permutations(m.n);
  for (std::size_t x = 0; x < m.points.size(); ++x) {
    for (const auto& K : subsets_of(Subset::full(m.n))) {
      std::vector<Subset> singles;
      for (int e : K.elements()) singles.push_back(Subset{e});
      bool ok = true;
      for_each_basis_tuple(m, x, canonical_order(singles), [&](const DecTuple& v, const std::vector<int>&) {
        if (!ok) return;
        DecTuple image = apply_splitting(sigma, v);
        for (const auto& p : perms) {
          if (sn_action(m, p, image) != apply_splitting(sigma, sn_action(m, p, v))) {
            ok = false;
            return;
          }
        }
      });
      if (!ok) return false;
    }
  }
  return true;
}

bool check_symmetric_compatibility(const CoreFamily& family, const Splitting& sigma) {
  if (!is_equivariant_family(family) || !is_symmetric_splitting(sigma)) return false;
  for (const auto& [rho, dec] : family) {
    if (!(dec.model == sigma.model)) return false;
    for (const auto& pi : multi_piece_partitions(rho)) {
      bool singletons = std::all_of(pi.blocks.begin(), pi.blocks.end(), [](const Subset& b) { return b.size() == 1; });
      if (!singletons) continue;
      for (std::size_t x = 0; x < dec.components.size(); ++x) {
        if (dec.components[x].at(pi) != sigma.components.at(x).at(pi.ambient())) return false;
      }
    }
  }
  return true;
}

}  // namespace gvb
