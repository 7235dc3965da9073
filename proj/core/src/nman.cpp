#include "gradedvb/nman.hpp"

#include <algorithm>
#include <set>

#include "gradedvb/config.hpp"
#include "gradedvb/errors.hpp"

namespace gvb {

void validate(const SplitModel& m) {
  check_n(m.n);
  if (static_cast<int>(m.ranks.size()) != m.n) {
    throw ShapeMismatch("model of degree " + std::to_string(m.n) + " needs " + std::to_string(m.n) + " ranks");
  }
  for (int r : m.ranks) {
    if (r < 0) throw ShapeMismatch("negative rank");
  }
  std::set<std::string> seen(m.points.begin(), m.points.end());
  if (seen.size() != m.points.size()) throw DomainError("duplicate sample point label");
}

const MultiTensor& GradedMorphism::component(std::size_t point, const IntegerPartition& p) const {
  auto it = components.at(point).find(p);
  if (it == components.at(point).end()) throw DomainError("no component " + to_string(p));
  return it->second;
}

std::vector<IntegerPartition> admissible_partitions(int max_total, int max_part) {
  std::vector<IntegerPartition> out;
  for (auto& p : integer_partitions(max_total)) {
    if (p.back() <= max_part) out.push_back(std::move(p));
  }
  return out;
}

MultiTensor zero_component(const SplitModel& source, const SplitModel& target, const IntegerPartition& p) {
  std::vector<int> dims;
  for (int part : p) dims.push_back(source.rank(part));
  return MultiTensor::zeros(p, dims, target.rank(sum(p)));
}

void normalize(GradedMorphism& mu) {
  validate(mu.source);
  validate(mu.target);
  const std::size_t np = mu.source.points.size();
  if (mu.base_map.size() != np) throw ShapeMismatch("base map must have one entry per source point");
  for (std::size_t y : mu.base_map) {
    if (y >= mu.target.points.size()) throw DomainError("base map leaves the target points");
  }
  if (mu.components.size() != np) mu.components.resize(np);
  const auto keys = admissible_partitions(mu.target.n, mu.source.n);
  for (auto& comp : mu.components) {
    for (const auto& [p, t] : comp) {
      if (std::find(keys.begin(), keys.end(), p) == keys.end()) {
        if (!t.is_zero()) throw ShapeMismatch("component " + to_string(p) + " is not admissible");
      }
    }
    for (auto it = comp.begin(); it != comp.end();) {
      if (std::find(keys.begin(), keys.end(), it->first) == keys.end()) {
        it = comp.erase(it);
      } else {
        ++it;
      }
    }
    for (const auto& p : keys) {
      MultiTensor z = zero_component(mu.source, mu.target, p);
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

GradedMorphism identity_morphism(const SplitModel& m) {
  GradedMorphism id{m, m, {}, {}};
  for (std::size_t x = 0; x < m.points.size(); ++x) id.base_map.push_back(x);
  id.components.resize(m.points.size());
  for (auto& comp : id.components) {
    for (int i = 1; i <= m.n; ++i) comp[{i}] = MultiTensor::identity(i, m.rank(i));
  }
  normalize(id);
  return id;
}

GradedMorphism linear_morphism(const SplitModel& m, const std::vector<std::vector<MultiTensor>>& blocks) {
  GradedMorphism mu{m, m, {}, {}};
  for (std::size_t x = 0; x < m.points.size(); ++x) mu.base_map.push_back(x);
  mu.components.resize(m.points.size());
  for (std::size_t x = 0; x < m.points.size(); ++x) {
    for (int i = 1; i <= m.n; ++i) mu.components[x][{i}] = blocks.at(x).at(i - 1);
  }
  normalize(mu);
  return mu;
}

namespace {

const MultiTensor* lookup(const ComponentMap& m, const IntegerPartition& p) {
  auto it = m.find(p);
  return it == m.end() ? nullptr : &it->second;
}

// sign · outer(inner_1(v_{ρ_1}), ...) with the slots put back in the order of
// the blocks of ρ_can^p. Returns false when a factor is missing.
bool grouped_term(const MultiTensor& outer, const ComponentMap& inner, const IntegerPartition& p, const Split& split,
                  MultiTensor& out) {
  std::vector<MultiTensor> inners;
  std::vector<int> order;
  for (const auto& g : split.groups) {
    IntegerPartition sizes;
    for (int b : g) sizes.push_back(p[b]);
    const MultiTensor* t = lookup(inner, sizes);
    if (t == nullptr) return false;
    inners.push_back(*t);
    order.insert(order.end(), g.begin(), g.end());
  }
  out = Rational(split.sign) * reorder_slots(apply_multilinear(outer, inners), order);
  return true;
}

IntegerPartition group_degrees(const IntegerPartition& p, const Split& split) {
  IntegerPartition d;
  for (const auto& g : split.groups) {
    int s = 0;
    for (int b : g) s += p[b];
    d.push_back(s);
  }
  return d;
}

MultiTensor compose_maps(const ComponentMap& nu, const ComponentMap& mu, const IntegerPartition& p, MultiTensor result) {
  for (const auto& split : block_groupings(p)) {
    const MultiTensor* outer = lookup(nu, group_degrees(p, split));
    if (outer == nullptr) continue;
    MultiTensor term;
    if (grouped_term(*outer, mu, p, split, term)) result += term;
  }
  return result;
}

void check_chain(const GradedMorphism& nu, const GradedMorphism& mu) {
  if (!(mu.target == nu.source)) throw DomainError("composition: target of the first map is not the source of the second");
}

}  // namespace

GradedFunction pullback_at(const GradedMorphism& mu, std::size_t point, const GradedFunction& f) {
  GradedFunction out;
  const ComponentMap& comp = mu.components.at(point);
  for (const auto& [d, t] : f) {
    check_shape(t);
    if (t.degrees != d || t.out_dim != 1) throw ShapeMismatch("graded function component " + to_string(d) + " has the wrong shape");
    if (d.empty()) {
      auto [it, fresh] = out.emplace(d, t);
      if (!fresh) it->second += t;
      continue;
    }
    if (!is_graded_symmetric(t)) throw ShapeMismatch("graded function component " + to_string(d) + " is not graded-symmetric");
    for (const auto& q : integer_partitions_of(sum(d))) {
      if (q.back() > mu.source.n) continue;
      for (const auto& split : block_groupings(q)) {
        if (group_degrees(q, split) != d) continue;
        MultiTensor term;
        if (!grouped_term(t, comp, q, split, term)) continue;
        auto it = out.find(q);
        if (it == out.end()) {
          out.emplace(q, std::move(term));
        } else {
          it->second += term;
        }
      }
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  }
  return out;
}

std::vector<GradedFunction> pullback(const GradedMorphism& mu, const std::vector<GradedFunction>& f) {
  if (f.size() != mu.target.points.size()) throw ShapeMismatch("graded function must be given at every target point");
  std::vector<GradedFunction> out;
  for (std::size_t x = 0; x < mu.source.points.size(); ++x) out.push_back(pullback_at(mu, x, f.at(mu.base_map[x])));
  return out;
}

MultiTensor compose_component(const GradedMorphism& nu, const GradedMorphism& mu, std::size_t point,
                              const IntegerPartition& p) {
  check_chain(nu, mu);
  return compose_maps(nu.components.at(mu.base_map.at(point)), mu.components.at(point), p,
                      zero_component(mu.source, nu.target, p));
}

GradedMorphism compose(const GradedMorphism& nu, const GradedMorphism& mu) {
  check_chain(nu, mu);
  GradedMorphism r{mu.source, nu.target, {}, {}};
  const auto keys = admissible_partitions(nu.target.n, mu.source.n);
  for (std::size_t x = 0; x < mu.source.points.size(); ++x) {
    r.base_map.push_back(nu.base_map.at(mu.base_map[x]));
    ComponentMap comp;
    for (const auto& p : keys) comp.emplace(p, compose_component(nu, mu, x, p));
    r.components.push_back(std::move(comp));
  }
  return r;
}

bool is_isomorphism(const GradedMorphism& mu) {
  if (mu.source.n != mu.target.n || mu.source.ranks != mu.target.ranks) return false;
  if (mu.source.points.size() != mu.target.points.size()) return false;
  std::vector<bool> hit(mu.target.points.size(), false);
  for (std::size_t y : mu.base_map) {
    if (y >= hit.size() || hit[y]) return false;
    hit[y] = true;
  }
  for (const auto& comp : mu.components) {
    for (int i = 1; i <= mu.source.n; ++i) {
      auto it = comp.find({i});
      if (it == comp.end() || !is_invertible_linear(it->second)) return false;
    }
  }
  return true;
}

ComponentMap invert_components(const std::vector<IntegerPartition>& partitions,
                               const std::vector<MultiTensor>& linear_inverses,
                               const std::function<MultiTensor(const ComponentMap&, const IntegerPartition&)>& partial_component,
                               ComponentMap nu) {
  std::vector<IntegerPartition> order = partitions;
  std::stable_sort(order.begin(), order.end(),
                   [](const IntegerPartition& a, const IntegerPartition& b) { return a.size() < b.size(); });
  for (const auto& p : order) {
    if (p.size() == 1) {
      nu[p] = linear_inverses.at(p[0] - 1);
      continue;
    }
    MultiTensor rest = partial_component(nu, p);
    std::vector<MultiTensor> inv;
    for (int part : p) inv.push_back(linear_inverses.at(part - 1));
    nu[p] = Rational(-1) * apply_multilinear(rest, inv);
  }
  return nu;
}

GradedMorphism invert(const GradedMorphism& mu) {
  if (!is_isomorphism(mu)) throw NotAnIsomorphism("morphism is not invertible (base map or linear part)");
  const std::size_t np = mu.source.points.size();
  GradedMorphism nu{mu.target, mu.source, std::vector<std::size_t>(np), std::vector<ComponentMap>(np)};
  std::vector<std::size_t> pre(np);
  for (std::size_t x = 0; x < np; ++x) {
    nu.base_map[mu.base_map[x]] = x;
    pre[mu.base_map[x]] = x;
  }
  const auto keys = admissible_partitions(mu.source.n, mu.source.n);
  for (std::size_t y = 0; y < np; ++y) {
    const std::size_t x = pre[y];
    const ComponentMap& mc = mu.components[x];
    std::vector<MultiTensor> lin;
    for (int i = 1; i <= mu.source.n; ++i) lin.push_back(inverse_linear(mc.at({i})));
    ComponentMap start;
    for (const auto& p : keys) start.emplace(p, zero_component(nu.source, nu.target, p));
    auto partial = [&](const ComponentMap& cur, const IntegerPartition& p) {
      return compose_maps(cur, mc, p, zero_component(mu.source, mu.source, p));
    };
    nu.components[y] = invert_components(keys, lin, partial, std::move(start));
  }
  return nu;
}

}  // namespace gvb
