#include "gradedvb/snvb.hpp"

#include <bit>
#include <random>
#include <tuple>
#include <unordered_map>
#include <set>

#include "gradedvb/config.hpp"
#include "gradedvb/errors.hpp"
#include "gradedvb/nman.hpp"

namespace gvb {

void validate(const SymModel& m) {
  check_n(m.n);
  if (static_cast<int>(m.dims.size()) != m.n) {
    throw ShapeMismatch("model with n = " + std::to_string(m.n) + " needs " + std::to_string(m.n) + " building dims");
  }
  for (int d : m.dims) {
    if (d < 0) throw ShapeMismatch("negative building dimension");
  }
  std::set<std::string> seen(m.points.begin(), m.points.end());
  if (seen.size() != m.points.size()) throw DomainError("duplicate sample point label");
}

DecTuple zero_tuple(const SymModel& m, std::size_t point) {
  DecTuple x;
  x.point = point;
  x.entries.resize(std::size_t{1} << m.n);
  for (std::uint32_t mask = 1; mask < (1u << m.n); ++mask) {
    x.entries[mask].assign(m.dim(std::popcount(mask)), Rational(0));
  }
  return x;
}

void check_tuple(const SymModel& m, const DecTuple& x) {
  if (x.entries.size() != (std::size_t{1} << m.n)) throw ShapeMismatch("tuple has the wrong number of entries");
  if (x.point >= m.points.size()) throw DomainError("tuple base point out of range");
  for (std::uint32_t mask = 1; mask < (1u << m.n); ++mask) {
    if (static_cast<int>(x.entries[mask].size()) != m.dim(std::popcount(mask))) {
      throw ShapeMismatch("entry " + Subset::from_mask(mask).to_string() + " has the wrong dimension");
    }
  }
}

std::string to_string(const DecTuple& x) {
  std::string s = "@" + std::to_string(x.point);
  for (std::uint32_t mask = 1; mask < x.entries.size(); ++mask) {
    if (is_zero(x.entries[mask])) continue;
    s += " [" + Subset::from_mask(mask).to_string() + "]=(";
    for (std::size_t i = 0; i < x.entries[mask].size(); ++i) {
      if (i) s += ' ';
      s += to_string(x.entries[mask][i]);
    }
    s += ')';
  }
  return s;
}

DecTuple sn_action(const SymModel& m, const Permutation& sigma, const DecTuple& x) {
  if (sigma.n() != m.n) throw DomainError("permutation degree does not match the model");
  check_tuple(m, x);
  const Permutation inv = sigma.inverse();
  DecTuple y = x;
  for (std::uint32_t mask = 1; mask < (1u << m.n); ++mask) {
    Subset J = Subset::from_mask(mask);
    Subset src = inv(J);
    int e = epsilon(inv, J);
    Vector v = x.entries[src.mask()];
    if (e < 0) {
      for (auto& c : v) c = -c;
    }
    y.entries[mask] = std::move(v);
  }
  return y;
}

void for_each_basis_tuple(const SymModel& m, std::size_t point, const OrderedPartition& rho,
                          const std::function<void(const DecTuple&, const std::vector<int>&)>& fn) {
  std::vector<int> dims;
  for (const auto& b : rho.blocks) dims.push_back(m.dim(b.size()));
  for (int d : dims) {
    if (d == 0) return;
  }
  std::vector<int> idx(dims.size(), 0);
  DecTuple base = zero_tuple(m, point);
  while (true) {
    DecTuple x = base;
    for (std::size_t j = 0; j < idx.size(); ++j) x.entries[rho.blocks[j].mask()][idx[j]] = 1;
    fn(x, idx);
    int j = static_cast<int>(idx.size()) - 1;
    while (j >= 0 && ++idx[j] == dims[j]) {
      idx[j] = 0;
      --j;
    }
    if (j < 0) return;
  }
}

// ------------------------------------------------------ symmetric maps

MultiTensor zero_component(const SymModel& source, const SymModel& target, const IntegerPartition& p) {
  std::vector<int> dims;
  for (int part : p) dims.push_back(source.dim(part));
  return MultiTensor::zeros(p, dims, target.dim(sum(p)));
}

namespace {

void check_base(const SymModel& source, const SymModel& target, const std::vector<std::size_t>& base_map) {
  validate(source);
  validate(target);
  if (source.n != target.n) throw DomainError("source and target have different n");
  if (base_map.size() != source.points.size()) throw ShapeMismatch("base map must have one entry per source point");
  for (std::size_t y : base_map) {
    if (y >= target.points.size()) throw DomainError("base map leaves the target points");
  }
}

}  // namespace

void normalize(SymMorphism& tau) {
  check_base(tau.source, tau.target, tau.base_map);
  tau.components.resize(tau.source.points.size());
  const auto keys = integer_partitions(tau.source.n);
  for (auto& comp : tau.components) {
    for (const auto& [p, t] : comp) {
      if (p.empty() || sum(p) > tau.source.n) throw ShapeMismatch("component key " + to_string(p) + " is not in P(n)");
      for (std::size_t i = 1; i < p.size(); ++i) {
        if (p[i] < p[i - 1]) throw ShapeMismatch("component key " + to_string(p) + " is not naturally ordered");
      }
    }
    for (const auto& p : keys) {
      MultiTensor z = zero_component(tau.source, tau.target, p);
      auto it = comp.find(p);
      if (it == comp.end()) {
        comp.emplace(p, std::move(z));
      } else {
        check_shape(it->second);
        if (!same_shape(it->second, z)) throw ShapeMismatch("component " + to_string(p) + " has the wrong shape");
      }
    }
  }
}

SymMorphism identity_morphism(const SymModel& m) {
  SymMorphism id{m, m, {}, {}};
  for (std::size_t x = 0; x < m.points.size(); ++x) id.base_map.push_back(x);
  id.components.resize(m.points.size());
  for (auto& comp : id.components) {
    for (int i = 1; i <= m.n; ++i) comp[{i}] = MultiTensor::identity(i, m.dim(i));
  }
  normalize(id);
  return id;
}

bool satisfies_symmetry(const SymMorphism& tau) {
  for (const auto& comp : tau.components) {
    for (const auto& [p, t] : comp) {
      if (!is_graded_symmetric(t)) return false;
    }
  }
  return true;
}

// -------------------------------------------------------- general maps

MultiTensor zero_component(const SymModel& source, const SymModel& target, const OrderedPartition& rho) {
  std::vector<int> degrees, dims;
  for (const auto& b : rho.blocks) {
    degrees.push_back(b.size());
    dims.push_back(source.dim(b.size()));
  }
  return MultiTensor::zeros(degrees, dims, target.dim(rho.ambient().size()));
}

namespace {

std::vector<OrderedPartition> all_set_partitions(int n) {
  std::vector<OrderedPartition> out;
  for (const auto& I : subsets_of(Subset::full(n))) {
    auto ps = set_partitions(I);
    out.insert(out.end(), ps.begin(), ps.end());
  }
  return out;
}

}  // namespace

void normalize(GeneralDecMorphism& g) {
  check_base(g.source, g.target, g.base_map);
  g.components.resize(g.source.points.size());
  const auto keys = all_set_partitions(g.source.n);
  for (auto& comp : g.components) {
    for (const auto& [rho, t] : comp) {
      if (!rho.is_canonical() || !rho.ambient().subset_of(Subset::full(g.source.n))) {
        throw ShapeMismatch("component key " + rho.to_string() + " is not a canonical partition of a subset of n");
      }
    }
    for (const auto& rho : keys) {
      MultiTensor z = zero_component(g.source, g.target, rho);
      auto it = comp.find(rho);
      if (it == comp.end()) {
        comp.emplace(rho, std::move(z));
      } else {
        check_shape(it->second);
        if (!same_shape(it->second, z)) throw ShapeMismatch("component " + rho.to_string() + " has the wrong shape");
      }
    }
  }
}

GeneralDecMorphism general_identity(const SymModel& m) {
  GeneralDecMorphism id{m, m, {}, {}};
  for (std::size_t x = 0; x < m.points.size(); ++x) id.base_map.push_back(x);
  id.components.resize(m.points.size());
  for (auto& comp : id.components) {
    for (const auto& I : subsets_of(Subset::full(m.n))) {
      comp[OrderedPartition{{I}}] = MultiTensor::identity(I.size(), m.dim(I.size()));
    }
  }
  normalize(id);
  return id;
}

GeneralDecMorphism expand(const SymMorphism& tau) {
  for (const auto& comp : tau.components) {
    for (const auto& [p, t] : comp) {
      if (!is_graded_symmetric(t)) {
        throw InvalidMorphism("component " + to_string(p) + " violates the (skew-)symmetry constraints");
      }
    }
  }
  GeneralDecMorphism g{tau.source, tau.target, tau.base_map, {}};
  const auto keys = all_set_partitions(tau.source.n);
  for (const auto& comp : tau.components) {
    PartitionComponents pc;
    for (const auto& rho : keys) {
      auto it = comp.find(block_sizes(rho));
      if (it == comp.end()) {
        pc.emplace(rho, zero_component(tau.source, tau.target, rho));
      } else {
        pc.emplace(rho, Rational(sgn(rho)) * it->second);
      }
    }
    g.components.push_back(std::move(pc));
  }
  return g;
}

// ----------------------------------------------------------- top maps

namespace {

bool gather_blocks(const DecTuple& x, const OrderedPartition& rho, std::vector<Vector>& args) {
  args.clear();
  for (const auto& b : rho.blocks) {
    const Vector& v = x.entries[b.mask()];
    if (is_zero(v)) return false;
    args.push_back(v);
  }
  return true;
}

// The set partitions of I with their block sizes and signs, cached per
// thread because top maps are evaluated many times over the same subsets.
struct KeyedPartition {
  OrderedPartition rho;
  IntegerPartition sizes;
  int sign;
};

const std::vector<KeyedPartition>& keyed_partitions(const Subset& I) {
  thread_local std::unordered_map<std::uint32_t, std::vector<KeyedPartition>> cache;
  auto it = cache.find(I.mask());
  if (it == cache.end()) {
    std::vector<KeyedPartition> entries;
    for (auto& rho : set_partitions(I)) {
      IntegerPartition sizes = block_sizes(rho);
      const int sign = sgn(rho);
      entries.push_back({std::move(rho), std::move(sizes), sign});
    }
    it = cache.emplace(I.mask(), std::move(entries)).first;
  }
  return it->second;
}

void add_into(Vector& acc, const Vector& v, int sign) {
  for (std::size_t i = 0; i < acc.size(); ++i) {
    if (sign > 0) {
      acc[i] += v[i];
    } else {
      acc[i] -= v[i];
    }
  }
}

}  // namespace

Vector top_map_entry(const SymMorphism& tau, const DecTuple& x, const Subset& I) {
  check_tuple(tau.source, x);
  const ComponentMap& comp = tau.components.at(x.point);
  Vector out(tau.target.dim(I.size()), Rational(0));
  std::vector<Vector> args;
  for (const auto& [rho, sizes, sign] : keyed_partitions(I)) {
    if (!gather_blocks(x, rho, args)) continue;
    auto it = comp.find(sizes);
    if (it == comp.end()) continue;
    add_into(out, evaluate(it->second, args), sign);
  }
  return out;
}

DecTuple top_map(const SymMorphism& tau, const DecTuple& x) {
  DecTuple y = zero_tuple(tau.target, tau.base_map.at(x.point));
  for (const auto& I : subsets_of(Subset::full(tau.source.n))) y.entries[I.mask()] = top_map_entry(tau, x, I);
  return y;
}

DecTuple general_top_map(const GeneralDecMorphism& g, const DecTuple& x) {
  check_tuple(g.source, x);
  const PartitionComponents& comp = g.components.at(x.point);
  DecTuple y = zero_tuple(g.target, g.base_map.at(x.point));
  std::vector<Vector> args;
  for (const auto& I : subsets_of(Subset::full(g.source.n))) {
    Vector& out = y.entries[I.mask()];
    for (const auto& entry : keyed_partitions(I)) {
      const OrderedPartition& rho = entry.rho;
      if (!gather_blocks(x, rho, args)) continue;
      auto it = comp.find(rho);
      if (it == comp.end()) continue;
      add_into(out, evaluate(it->second, args), 1);
    }
  }
  return y;
}

// ---------------------------------------------------------- extraction

namespace {

DecTuple random_tuple(const SymModel& m, std::size_t point, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-3, 3);
  DecTuple x = zero_tuple(m, point);
  for (std::uint32_t mask = 1; mask < x.entries.size(); ++mask) {
    for (auto& c : x.entries[mask]) c = coef(rng);
  }
  return x;
}

void fill_component(MultiTensor& t, const TopMap& top, const SymModel& source, std::size_t point,
                    const OrderedPartition& rho) {
  const Subset I = rho.ambient();
  for_each_basis_tuple(source, point, rho, [&](const DecTuple& x, const std::vector<int>& idx) {
    DecTuple y = top(x);
    const Vector& v = y.entries.at(I.mask());
    if (static_cast<int>(v.size()) != t.out_dim) throw ExtractionMismatch("top map output has the wrong dimension");
    for (int o = 0; o < t.out_dim; ++o) t.at(o, idx) = v[o];
  });
}

void recheck(const TopMap& top, const TopMap& rebuilt, const SymModel& source, std::size_t points,
             unsigned long long seed, int checks) {
  std::mt19937_64 rng(seed);
  for (std::size_t x = 0; x < points; ++x) {
    for (int k = 0; k < checks; ++k) {
      DecTuple t = random_tuple(source, x, rng);
      DecTuple a = top(t);
      DecTuple b = rebuilt(t);
      if (a != b) {
        throw ExtractionMismatch("top map disagrees with the extracted morphism on " + to_string(t) + ": " +
                                 to_string(a) + " vs " + to_string(b));
      }
    }
  }
}

}  // namespace

SymMorphism extract(const TopMap& top, const SymModel& source, const SymModel& target,
                    const std::vector<std::size_t>& base_map, unsigned long long seed, int checks) {
  SymMorphism tau{source, target, base_map, {}};
  tau.components.resize(source.points.size());
  for (std::size_t x = 0; x < source.points.size(); ++x) {
    for (const auto& p : integer_partitions(source.n)) {
      MultiTensor t = zero_component(source, target, p);
      fill_component(t, top, source, x, canonical_partition(p));
      tau.components[x].emplace(p, std::move(t));
    }
  }
  normalize(tau);
  if (!satisfies_symmetry(tau)) throw ExtractionMismatch("extracted components violate the (skew-)symmetry constraints");
  recheck(top, [&tau](const DecTuple& t) { return top_map(tau, t); }, source, source.points.size(), seed, checks);
  return tau;
}

GeneralDecMorphism extract_general(const TopMap& top, const SymModel& source, const SymModel& target,
                                   const std::vector<std::size_t>& base_map, unsigned long long seed, int checks) {
  GeneralDecMorphism g{source, target, base_map, {}};
  g.components.resize(source.points.size());
  const auto keys = all_set_partitions(source.n);
  for (std::size_t x = 0; x < source.points.size(); ++x) {
    for (const auto& rho : keys) {
      MultiTensor t = zero_component(source, target, rho);
      fill_component(t, top, source, x, rho);
      g.components[x].emplace(rho, std::move(t));
    }
  }
  normalize(g);
  recheck(top, [&g](const DecTuple& t) { return general_top_map(g, t); }, source, source.points.size(), seed, checks);
  return g;
}

// --------------------------------------------------------- equivariance

namespace {

bool equivariant(const TopMap& top, const SymModel& source, const SymModel& target) {
  const auto perms = all_permutations(source.n);
  const auto keys = all_set_partitions(source.n);
  bool ok = true;
  for (std::size_t x = 0; x < source.points.size() && ok; ++x) {
    for (const auto& rho : keys) {
      for_each_basis_tuple(source, x, rho, [&](const DecTuple& t, const std::vector<int>&) {
        if (!ok) return;
        DecTuple image = top(t);
        for (const auto& sigma : perms) {
          if (top(sn_action(source, sigma, t)) != sn_action(target, sigma, image)) {
            ok = false;
            return;
          }
        }
      });
      if (!ok) break;
    }
  }
  return ok;
}

}  // namespace

bool check_equivariance(const SymMorphism& tau) {
  return equivariant([&tau](const DecTuple& t) { return top_map(tau, t); }, tau.source, tau.target);
}

bool check_equivariance(const GeneralDecMorphism& g) {
  return equivariant([&g](const DecTuple& t) { return general_top_map(g, t); }, g.source, g.target);
}

// ---------------------------------------------------------- composition

namespace {

// Position of every block of rho, addressed by block.
std::vector<int> positions_in(const OrderedPartition& rho, const std::vector<OrderedPartition>& parts) {
  std::vector<int> order;
  for (const auto& part : parts) {
    for (const auto& b : part.blocks) {
      for (std::size_t k = 0; k < rho.size(); ++k) {
        if (rho.blocks[k] == b) order.push_back(static_cast<int>(k));
      }
    }
  }
  return order;
}

MultiTensor compose_sym_component(const ComponentMap& tau, const ComponentMap& eta, const IntegerPartition& p,
                                  MultiTensor result) {
  const OrderedPartition K = canonical_partition(p);
  for (const auto& J : coarsements(K)) {
    std::vector<OrderedPartition> parts;
    IntegerPartition outer_key;
    std::vector<MultiTensor> inners;
    bool present = true;
    for (const auto& Jj : J.blocks) {
      OrderedPartition part = intersect_partition(K, Jj);
      outer_key.push_back(Jj.size());
      auto it = eta.find(block_sizes(part));
      if (it == eta.end()) {
        present = false;
        break;
      }
      inners.push_back(it->second);
      parts.push_back(std::move(part));
    }
    if (!present) continue;
    auto ot = tau.find(outer_key);
    if (ot == tau.end()) continue;
    OrderedPartition concat;
    for (const auto& part : parts) concat.blocks.insert(concat.blocks.end(), part.blocks.begin(), part.blocks.end());
    result += Rational(sgn(concat)) * reorder_slots(apply_multilinear(ot->second, inners), positions_in(K, parts));
  }
  return result;
}

}  // namespace

SymMorphism compose_sym(const SymMorphism& tau, const SymMorphism& eta) {
  if (!(eta.target == tau.source)) throw DomainError("compose_sym: target of the first map is not the source of the second");
  SymMorphism r{eta.source, tau.target, {}, {}};
  for (std::size_t x = 0; x < eta.source.points.size(); ++x) {
    const std::size_t y = eta.base_map.at(x);
    r.base_map.push_back(tau.base_map.at(y));
    ComponentMap comp;
    for (const auto& p : integer_partitions(eta.source.n)) {
      comp.emplace(p, compose_sym_component(tau.components.at(y), eta.components.at(x), p,
                                            zero_component(eta.source, tau.target, p)));
    }
    r.components.push_back(std::move(comp));
  }
  return r;
}

GeneralDecMorphism compose_general(const GeneralDecMorphism& mu, const GeneralDecMorphism& tau) {
  if (!(tau.target == mu.source)) throw DomainError("compose_general: target of the first map is not the source of the second");
  GeneralDecMorphism r{tau.source, mu.target, {}, {}};
  const auto keys = all_set_partitions(tau.source.n);
  for (std::size_t x = 0; x < tau.source.points.size(); ++x) {
    const std::size_t y = tau.base_map.at(x);
    r.base_map.push_back(mu.base_map.at(y));
    const PartitionComponents& outer = mu.components.at(y);
    const PartitionComponents& inner = tau.components.at(x);
    PartitionComponents comp;
    for (const auto& rho : keys) {
      MultiTensor acc = zero_component(tau.source, mu.target, rho);
      for (const auto& J : coarsements(rho)) {
        auto ot = outer.find(J);
        if (ot == outer.end()) continue;
        std::vector<OrderedPartition> parts;
        std::vector<MultiTensor> inners;
        bool present = true;
        for (const auto& Jj : J.blocks) {
          OrderedPartition part = intersect_partition(rho, Jj);
          auto it = inner.find(part);
          if (it == inner.end()) {
            present = false;
            break;
          }
          inners.push_back(it->second);
          parts.push_back(std::move(part));
        }
        if (!present) continue;
        acc += reorder_slots(apply_multilinear(ot->second, inners), positions_in(rho, parts));
      }
      comp.emplace(rho, std::move(acc));
    }
    r.components.push_back(std::move(comp));
  }
  return r;
}

bool is_isomorphism(const SymMorphism& tau) {
  if (tau.source.dims != tau.target.dims || tau.source.points.size() != tau.target.points.size()) return false;
  std::vector<bool> hit(tau.target.points.size(), false);
  for (std::size_t y : tau.base_map) {
    if (y >= hit.size() || hit[y]) return false;
    hit[y] = true;
  }
  for (const auto& comp : tau.components) {
    for (int i = 1; i <= tau.source.n; ++i) {
      auto it = comp.find({i});
      if (it == comp.end() || !is_invertible_linear(it->second)) return false;
    }
  }
  return true;
}

SymMorphism invert(const SymMorphism& tau) {
  if (!is_isomorphism(tau)) throw NotAnIsomorphism("symmetric morphism is not invertible (base map or linear part)");
  const std::size_t np = tau.source.points.size();
  SymMorphism inv{tau.target, tau.source, std::vector<std::size_t>(np), std::vector<ComponentMap>(np)};
  std::vector<std::size_t> pre(np);
  for (std::size_t x = 0; x < np; ++x) {
    inv.base_map[tau.base_map[x]] = x;
    pre[tau.base_map[x]] = x;
  }
  const auto keys = integer_partitions(tau.source.n);
  for (std::size_t y = 0; y < np; ++y) {
    const ComponentMap& tc = tau.components[pre[y]];
    std::vector<MultiTensor> lin;
    for (int i = 1; i <= tau.source.n; ++i) lin.push_back(inverse_linear(tc.at({i})));
    ComponentMap start;
    for (const auto& p : keys) start.emplace(p, zero_component(inv.source, inv.target, p));
    auto partial = [&](const ComponentMap& cur, const IntegerPartition& p) {
      return compose_sym_component(cur, tc, p, zero_component(tau.source, tau.source, p));
    };
    inv.components[y] = invert_components(keys, lin, partial, std::move(start));
  }
  return inv;
}

// ------------------------------------------------------ pullback bundle

PullbackBundle pullback_bundle(const SymModel& m) {
  validate(m);
  PullbackBundle pb{m, m};
  pb.model.dims.back() = 0;
  return pb;
}

PullbackElement pullback_projection(const SymModel& m, const DecTuple& x) {
  check_tuple(m, x);
  PullbackElement e;
  for (int i = 1; i <= m.n; ++i) {
    DecTuple face = x;
    for (std::uint32_t mask = 1; mask < face.entries.size(); ++mask) {
      if (Subset::from_mask(mask).contains(i)) {
        for (auto& c : face.entries[mask]) c = 0;
      }
    }
    e.push_back(std::move(face));
  }
  return e;
}

bool is_pullback_element(const SymModel& m, const PullbackElement& e) {
  if (static_cast<int>(e.size()) != m.n) return false;
  for (int i = 1; i <= m.n; ++i) {
    check_tuple(m, e[i - 1]);
    if (e[i - 1].point != e[0].point) return false;
    for (std::uint32_t mask = 1; mask < e[i - 1].entries.size(); ++mask) {
      Subset J = Subset::from_mask(mask);
      if (J.contains(i) && !is_zero(e[i - 1].entries[mask])) return false;
    }
  }
  for (int i = 1; i <= m.n; ++i) {
    for (int j = i + 1; j <= m.n; ++j) {
      for (std::uint32_t mask = 1; mask < e[0].entries.size(); ++mask) {
        Subset J = Subset::from_mask(mask);
        if (J.contains(i) || J.contains(j)) continue;
        if (e[i - 1].entries[mask] != e[j - 1].entries[mask]) return false;
      }
    }
  }
  return true;
}

PullbackElement pullback_action(const SymModel& m, const Permutation& sigma, const PullbackElement& e) {
  if (static_cast<int>(e.size()) != m.n) throw ShapeMismatch("pullback element needs n faces");
  const Permutation inv = sigma.inverse();
  PullbackElement f;
  for (int i = 1; i <= m.n; ++i) f.push_back(sn_action(m, sigma, e[inv(i) - 1]));
  return f;
}

DecTuple pullback_to_model(const PullbackBundle& pb, const PullbackElement& e) {
  DecTuple y = zero_tuple(pb.model, e.at(0).point);
  const std::uint32_t full = Subset::full(pb.base.n).mask();
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    Subset J = Subset::from_mask(mask);
    for (int i = 1; i <= pb.base.n; ++i) {
      if (!J.contains(i)) {
        y.entries[mask] = e[i - 1].entries[mask];
        break;
      }
    }
  }
  return y;
}

int pullback_ultracore_dimension(const SymModel& model) {
  validate(model);
  SymModel m = model;
  if (m.points.empty()) m.points.push_back("*");
  const std::uint32_t full = Subset::full(m.n).mask();
  // Coordinates of P(n̄): one per proper nonempty J and basis index.
  std::vector<std::pair<std::uint32_t, int>> coords;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    for (int k = 0; k < m.dim(std::popcount(mask)); ++k) coords.emplace_back(mask, k);
  }
  // Coordinates of the faces, in the order (i, J ⊆ n̄\{i}, k).
  std::vector<std::tuple<int, std::uint32_t, int>> face_coords;
  for (int i = 1; i <= m.n; ++i) {
    for (std::uint32_t mask = 1; mask < full; ++mask) {
      if (Subset::from_mask(mask).contains(i)) continue;
      for (int k = 0; k < m.dim(std::popcount(mask)); ++k) face_coords.emplace_back(i, mask, k);
    }
  }
  std::vector<Vector> rows;
  for (const auto& [mask, k] : coords) {
    DecTuple x = zero_tuple(m, 0);
    x.entries[mask][k] = 1;
    PullbackElement e = pullback_projection(m, x);
    Vector row;
    for (const auto& [i, fm, fk] : face_coords) row.push_back(e[i - 1].entries[fm][fk]);
    rows.push_back(std::move(row));
  }
  return static_cast<int>(coords.size()) - matrix_rank(std::move(rows));
}

}  // namespace gvb
