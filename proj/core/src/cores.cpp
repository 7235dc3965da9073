#include "gradedvb/cores.hpp"

#include <algorithm>
#include <functional>

#include "gradedvb/errors.hpp"

namespace gvb {

void check_core_partition(const SymModel& m, const OrderedPartition& rho) {
  make_partition(rho.blocks);
  if (rho.ambient() != Subset::full(m.n)) {
    throw DomainError(rho.to_string() + " is not a partition of 1.." + std::to_string(m.n));
  }
}

bool core_membership(const SymModel& m, const DecTuple& x, const OrderedPartition& rho, const Subset& I) {
  check_core_partition(m, rho);
  check_tuple(m, x);
  if (!is_cube_object(rho, I)) throw DomainError(I.to_string() + " is not an object of the cube of " + rho.to_string());
  for (const auto& J : subsets_of(I)) {
    if (!is_cube_object(rho, J) && !is_zero(x.at(J))) return false;
  }
  return true;
}

bool is_core_member(const SymModel& m, const DecTuple& x, const OrderedPartition& rho) {
  return core_membership(m, x, rho, Subset::full(m.n));
}

DecTuple project_to_core(const SymModel& m, const DecTuple& x, const OrderedPartition& rho) {
  check_core_partition(m, rho);
  DecTuple y = x;
  for (const auto& J : subsets_of(Subset::full(m.n))) {
    if (!is_cube_object(rho, J)) {
      for (auto& c : y.at(J)) c = 0;
    }
  }
  return y;
}

std::map<Subset, int, CanonicalLess> core_dims(const SymModel& m, const OrderedPartition& rho) {
  check_core_partition(m, rho);
  std::map<Subset, int, CanonicalLess> out;
  for (const auto& I : cube_objects(rho)) {
    int d = 0;
    for (const auto& K : subsets_of(I)) {
      if (is_cube_object(rho, K)) d += m.dim(K.size());
    }
    out[I] = d;
  }
  return out;
}

std::map<Subset, int, CanonicalLess> building_bundles(const SymModel& m, const OrderedPartition& rho) {
  check_core_partition(m, rho);
  std::map<Subset, int, CanonicalLess> out;
  for (const auto& J : cube_objects(rho)) {
    if (!J.empty()) out[J] = m.dim(J.size());
  }
  return out;
}

std::vector<OrderedPartition> object_partitions(const OrderedPartition& rho) {
  std::vector<OrderedPartition> out;
  for (const auto& I : cube_objects(rho)) {
    if (I.empty()) continue;
    for (auto& pi : set_partitions(I)) {
      bool ok = std::all_of(pi.blocks.begin(), pi.blocks.end(),
                            [&rho](const Subset& b) { return is_cube_object(rho, b); });
      if (ok) out.push_back(std::move(pi));
    }
  }
  return out;
}

CoreMorphism restrict_morphism(const GeneralDecMorphism& g, const OrderedPartition& rho) {
  check_core_partition(g.source, rho);
  CoreMorphism c{rho, g.source, g.target, g.base_map, {}};
  const auto keys = object_partitions(rho);
  for (const auto& comp : g.components) {
    PartitionComponents pc;
    for (const auto& pi : keys) {
      auto it = comp.find(pi);
      pc.emplace(pi, it == comp.end() ? zero_component(g.source, g.target, pi) : it->second);
    }
    c.components.push_back(std::move(pc));
  }
  return c;
}

CoreMorphism restrict_morphism(const SymMorphism& tau, const OrderedPartition& rho) {
  return restrict_morphism(expand(tau), rho);
}

DecTuple core_top_map(const CoreMorphism& c, const DecTuple& x) {
  if (!is_core_member(c.source, x, c.rho)) throw DomainError("tuple is not a member of the " + c.rho.to_string() + "-core");
  DecTuple y = zero_tuple(c.target, c.base_map.at(x.point));
  const PartitionComponents& comp = c.components.at(x.point);
  for (const auto& [pi, t] : comp) {
    std::vector<Vector> args;
    bool nonzero = true;
    for (const auto& b : pi.blocks) {
      if (is_zero(x.at(b))) {
        nonzero = false;
        break;
      }
      args.push_back(x.at(b));
    }
    if (!nonzero) continue;
    Vector v = evaluate(t, args);
    Vector& out = y.at(pi.ambient());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += v[i];
  }
  return y;
}

DecTuple restrict_action(const SymModel& m, const Permutation& sigma, const OrderedPartition& rho, const DecTuple& x) {
  if (!is_core_member(m, x, rho)) throw DomainError("tuple is not a member of the " + rho.to_string() + "-core");
  return sn_action(m, sigma, x);
}

std::vector<std::vector<OrderedPartition>> merge_chains(const OrderedPartition& rho) {
  const Subset all = rho.ambient();
  std::vector<Subset> singles;
  for (int e : all.elements()) singles.push_back(Subset{e});
  std::vector<std::vector<OrderedPartition>> out;
  std::vector<OrderedPartition> chain{canonical_order(singles)};
  // A partition can be reached from the current one iff every current
  // block lies inside a block of rho.
  std::function<void()> rec = [&]() {
    const OrderedPartition cur = chain.back();
    if (cur.size() == rho.size()) {
      out.push_back(chain);
      return;
    }
    for (std::size_t a = 0; a < cur.size(); ++a) {
      for (std::size_t b = a + 1; b < cur.size(); ++b) {
        Subset merged = cur.blocks[a] | cur.blocks[b];
        bool inside = std::any_of(rho.blocks.begin(), rho.blocks.end(),
                                  [&merged](const Subset& r) { return merged.subset_of(r); });
        if (!inside) continue;
        std::vector<Subset> blocks{merged};
        for (std::size_t k = 0; k < cur.size(); ++k) {
          if (k != a && k != b) blocks.push_back(cur.blocks[k]);
        }
        chain.push_back(canonical_order(blocks));
        rec();
        chain.pop_back();
      }
    }
  };
  rec();
  return out;
}

bool chain_membership(const SymModel& m, const DecTuple& x, const std::vector<OrderedPartition>& chain) {
  check_tuple(m, x);
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    const OrderedPartition& cur = chain[k];
    const OrderedPartition& next = chain[k + 1];
    // The two blocks of cur merged in next.
    std::vector<Subset> merged;
    for (const auto& b : cur.blocks) {
      if (std::find(next.blocks.begin(), next.blocks.end(), b) == next.blocks.end()) merged.push_back(b);
    }
    if (merged.size() != 2) throw DomainError("chain step does not merge exactly two blocks");
    for (const auto& K : cube_objects(cur)) {
      if (K.empty()) continue;
      bool has_a = merged[0].subset_of(K);
      bool has_b = merged[1].subset_of(K);
      if (has_a != has_b && !is_zero(x.at(K))) return false;
    }
  }
  return true;
}

}  // namespace gvb
