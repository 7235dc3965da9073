#include "gradedvb/cocycles.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

#include "gradedvb/errors.hpp"

namespace gvb {

// ----------------------------------------------------------------- covers

void validate(const Cover& cover) {
  if (cover.charts.size() != cover.points.size()) throw DomainError("cover has a chart/point list count mismatch");
  std::set<std::string> seen(cover.charts.begin(), cover.charts.end());
  if (seen.size() != cover.charts.size()) throw DomainError("cover has duplicate chart labels");
  for (std::size_t a = 0; a < cover.points.size(); ++a) {
    std::set<std::string> pts(cover.points[a].begin(), cover.points[a].end());
    if (pts.size() != cover.points[a].size()) throw DomainError("chart " + cover.charts[a] + " repeats a point");
  }
}

std::size_t chart_index(const Cover& cover, const std::string& chart) {
  auto it = std::find(cover.charts.begin(), cover.charts.end(), chart);
  if (it == cover.charts.end()) throw DomainError("unknown chart " + chart);
  return static_cast<std::size_t>(it - cover.charts.begin());
}

namespace {

bool in_chart(const Cover& cover, const std::string& chart, const std::string& point) {
  const auto& pts = cover.points[chart_index(cover, chart)];
  return std::find(pts.begin(), pts.end(), point) != pts.end();
}

}  // namespace

std::vector<std::string> overlap(const Cover& cover, const std::string& alpha, const std::string& beta) {
  std::vector<std::string> out;
  for (const auto& x : cover.points[chart_index(cover, alpha)]) {
    if (in_chart(cover, beta, x)) out.push_back(x);
  }
  return out;
}

std::vector<std::string> overlap(const Cover& cover, const std::string& alpha, const std::string& beta,
                                 const std::string& gamma) {
  std::vector<std::string> out;
  for (const auto& x : overlap(cover, alpha, beta)) {
    if (in_chart(cover, gamma, x)) out.push_back(x);
  }
  return out;
}

std::vector<std::string> all_points(const Cover& cover) {
  std::vector<std::string> out;
  for (const auto& pts : cover.points) {
    for (const auto& x : pts) {
      if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    }
  }
  return out;
}

// ------------------------------------------------------------------ views

NmanCocycle as_nman_cocycle(const SnCocycle& c) { return NmanCocycle{c.cover, c.n, c.dims, c.transitions}; }

SnCocycle as_snvb_cocycle(const NmanCocycle& c) { return SnCocycle{c.cover, c.n, c.ranks, c.transitions}; }

SymModel point_model(int n, const std::vector<int>& dims, const std::string& point) {
  SymModel m{n, dims, {point}};
  validate(m);
  return m;
}

namespace {

const ComponentMap& transition_at(const Transitions& t, const std::string& alpha, const std::string& beta,
                                  const std::string& point) {
  auto it = t.find({alpha, beta});
  if (it == t.end()) throw DomainError("no transition for charts " + alpha + "," + beta);
  auto jt = it->second.find(point);
  if (jt == it->second.end()) throw DomainError("transition " + alpha + "," + beta + " is missing point " + point);
  return jt->second;
}

bool has_transition(const Transitions& t, const std::string& alpha, const std::string& beta, const std::string& point) {
  auto it = t.find({alpha, beta});
  return it != t.end() && it->second.count(point) > 0;
}

SymMorphism sym_point_morphism(int n, const std::vector<int>& src_dims, const std::string& x,
                               const std::vector<int>& dst_dims, const std::string& y, const ComponentMap& comp) {
  SymMorphism tau{point_model(n, src_dims, x), point_model(n, dst_dims, y), {0}, {comp}};
  normalize(tau);
  return tau;
}

}  // namespace

SymMorphism point_morphism(const SnCocycle& c, const std::string& alpha, const std::string& beta,
                           const std::string& point) {
  return sym_point_morphism(c.n, c.dims, point, c.dims, point, transition_at(c.transitions, alpha, beta, point));
}

GradedMorphism point_morphism(const NmanCocycle& c, const std::string& alpha, const std::string& beta,
                              const std::string& point) {
  SplitModel m{c.n, c.ranks, {point}};
  GradedMorphism mu{m, m, {0}, {transition_at(c.transitions, alpha, beta, point)}};
  normalize(mu);
  return mu;
}

// ------------------------------------------------------------- reports

bool Violation::operator==(const Violation& o) const {
  return kind == o.kind && alpha == o.alpha && beta == o.beta && gamma == o.gamma && point == o.point &&
         partition == o.partition;
}

bool Violation::operator<(const Violation& o) const {
  return std::tie(alpha, beta, gamma, point, kind, partition) <
         std::tie(o.alpha, o.beta, o.gamma, o.point, o.kind, o.partition);
}

std::string Violation::to_string() const {
  std::string s = kind + " alpha=" + alpha + " beta=" + beta;
  if (!gamma.empty()) s += " gamma=" + gamma;
  s += " point=" + point;
  if (!partition.empty()) s += " partition=" + gvb::to_string(partition);
  return s;
}

bool MorphismViolation::operator<(const MorphismViolation& o) const {
  return std::tie(alpha, beta, alpha_prime, beta_prime, point, partition) <
         std::tie(o.alpha, o.beta, o.alpha_prime, o.beta_prime, o.point, o.partition);
}

bool MorphismViolation::operator==(const MorphismViolation& o) const {
  return alpha == o.alpha && beta == o.beta && alpha_prime == o.alpha_prime && beta_prime == o.beta_prime &&
         point == o.point && partition == o.partition;
}

std::string MorphismViolation::to_string() const {
  std::string s = "alpha=" + alpha + " beta=" + beta + " alpha'=" + alpha_prime + " beta'=" + beta_prime +
                  " point=" + point;
  s += partition.empty() ? std::string(" missing component") : " partition=" + gvb::to_string(partition);
  return s;
}

// ------------------------------------------------------------ checking

namespace {

// Runs fn(i) for i in [0, count) on up to `jobs` threads.
template <class Fn>
void parallel_for(std::size_t count, int jobs, Fn fn) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (std::size_t i = next++; i < count; i = next++) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct SymPath {
  const SnCocycle& c;
  using Morphism = SymMorphism;
  Morphism at(const std::string& a, const std::string& b, const std::string& x) const {
    return point_morphism(c, a, b, x);
  }
  static Morphism compose(const Morphism& f, const Morphism& g) { return compose_sym(f, g); }
  static bool invertible(const Morphism& f, int i) { return is_invertible_linear(f.components[0].at({i})); }
  Morphism identity(const std::string& x) const { return identity_morphism(point_model(c.n, c.dims, x)); }
};

struct NmanPath {
  const NmanCocycle& c;
  using Morphism = GradedMorphism;
  Morphism at(const std::string& a, const std::string& b, const std::string& x) const {
    return point_morphism(c, a, b, x);
  }
  static Morphism compose(const Morphism& f, const Morphism& g) { return gvb::compose(f, g); }
  static bool invertible(const Morphism& f, int i) { return is_invertible_linear(f.components[0].at({i})); }
  Morphism identity(const std::string& x) const { return identity_morphism(SplitModel{c.n, c.ranks, {x}}); }
};

template <class Cocycle>
void check_layout(const Cocycle& c) {
  validate(c.cover);
  for (const auto& [pair, per_point] : c.transitions) {
    chart_index(c.cover, pair.first);
    chart_index(c.cover, pair.second);
    const auto pts = overlap(c.cover, pair.first, pair.second);
    for (const auto& [x, comp] : per_point) {
      if (std::find(pts.begin(), pts.end(), x) == pts.end()) {
        throw DomainError("transition " + pair.first + "," + pair.second + " is given at " + x +
                          ", which is not in the overlap");
      }
    }
  }
}

template <class Cocycle>
std::vector<TripleKey> triple_tasks(const Cocycle& c) {
  std::vector<TripleKey> tasks;
  for (const auto& a : c.cover.charts) {
    for (const auto& b : c.cover.charts) {
      for (const auto& g : c.cover.charts) {
        for (const auto& x : overlap(c.cover, a, b, g)) {
          if (has_transition(c.transitions, a, g, x) && has_transition(c.transitions, g, b, x)) {
            tasks.emplace_back(a, b, g, x);
          }
        }
      }
    }
  }
  return tasks;
}

template <class Path, class Cocycle>
std::map<TripleKey, ComponentMap> composites(const Cocycle& c, int jobs) {
  check_layout(c);
  const Path path{c};
  const auto tasks = triple_tasks(c);
  std::vector<ComponentMap> results(tasks.size());
  parallel_for(tasks.size(), jobs, [&](std::size_t i) {
    const auto& [a, b, g, x] = tasks[i];
    results[i] = Path::compose(path.at(a, g, x), path.at(g, b, x)).components[0];
  });
  std::map<TripleKey, ComponentMap> out;
  for (std::size_t i = 0; i < tasks.size(); ++i) out.emplace(tasks[i], std::move(results[i]));
  return out;
}

void compare_components(const ComponentMap& expected, const ComponentMap& actual, Violation base,
                        std::vector<Violation>& out) {
  for (const auto& [p, t] : expected) {
    auto it = actual.find(p);
    if (it == actual.end() || it->second != t) {
      base.partition = p;
      out.push_back(base);
    }
  }
}

template <class Path, class Cocycle>
CocycleReport check(const Cocycle& c, int jobs) {
  const auto comps = composites<Path>(c, jobs);
  const Path path{c};
  CocycleReport report;
  for (const auto& a : c.cover.charts) {
    for (const auto& b : c.cover.charts) {
      for (const auto& x : overlap(c.cover, a, b)) {
        if (!has_transition(c.transitions, a, b, x)) {
          report.violations.push_back({"missing", a, b, "", x, {}});
          continue;
        }
        const auto f = path.at(a, b, x);
        for (int i = 1; i <= c.n; ++i) {
          if (!Path::invertible(f, i)) report.violations.push_back({"not-invertible", a, b, "", x, {i}});
        }
        if (a == b) {
          ++report.checked;
          compare_components(path.identity(x).components[0], f.components[0], {"identity", a, b, "", x, {}},
                             report.violations);
        }
      }
    }
  }
  for (const auto& [key, comp] : comps) {
    const auto& [a, b, g, x] = key;
    if (!has_transition(c.transitions, a, b, x)) continue;
    ++report.checked;
    compare_components(path.at(a, b, x).components[0], comp, {"triple", a, b, g, x, {}}, report.violations);
  }
  std::sort(report.violations.begin(), report.violations.end());
  return report;
}

}  // namespace

std::map<TripleKey, ComponentMap> triple_composites(const SnCocycle& c, int jobs) {
  return composites<SymPath>(c, jobs);
}

std::map<TripleKey, ComponentMap> triple_composites(const NmanCocycle& c, int jobs) {
  return composites<NmanPath>(c, jobs);
}

CocycleReport check_cocycle(const SnCocycle& c, int jobs) { return check<SymPath>(c, jobs); }

CocycleReport check_cocycle(const NmanCocycle& c, int jobs) { return check<NmanPath>(c, jobs); }

// ------------------------------------------------------- constructions

namespace {

const ComponentMap& chart_map_at(const std::map<std::string, PointMorphisms>& phis, const std::string& chart,
                                 const std::string& x) {
  auto it = phis.find(chart);
  if (it == phis.end()) throw DomainError("no trivialization for chart " + chart);
  auto jt = it->second.find(x);
  if (jt == it->second.end()) throw DomainError("trivialization of chart " + chart + " is missing point " + x);
  return jt->second;
}

}  // namespace

SnCocycle from_trivializations(const Cover& cover, int n, const std::vector<int>& dims,
                               const std::map<std::string, PointMorphisms>& phis) {
  validate(cover);
  SnCocycle c{cover, n, dims, {}};
  for (const auto& a : cover.charts) {
    for (const auto& b : cover.charts) {
      const auto pts = overlap(cover, a, b);
      if (pts.empty()) continue;
      PointMorphisms& out = c.transitions[{a, b}];
      for (const auto& x : pts) {
        SymMorphism fa = sym_point_morphism(n, dims, x, dims, x, chart_map_at(phis, a, x));
        SymMorphism fb = sym_point_morphism(n, dims, x, dims, x, chart_map_at(phis, b, x));
        out[x] = compose_sym(fa, invert(fb)).components[0];
      }
    }
  }
  return c;
}

CocycleMorphismReport check_cocycle_morphism(const CocycleMorphism& m, const SnCocycle& source,
                                             const SnCocycle& target) {
  validate(source.cover);
  validate(target.cover);
  if (source.n != target.n) throw DomainError("cocycles of different n");
  CocycleMorphismReport report;
  for (const auto& a : source.cover.charts) {
    for (const auto& b : source.cover.charts) {
      for (const auto& x : overlap(source.cover, a, b)) {
        auto bt = m.base_map.find(x);
        if (bt == m.base_map.end()) throw DomainError("base map is undefined at " + x);
        const std::string& y = bt->second;
        if (!has_transition(source.transitions, a, b, x)) continue;
        for (const auto& ap : target.cover.charts) {
          for (const auto& bp : target.cover.charts) {
            if (!in_chart(target.cover, ap, y) || !in_chart(target.cover, bp, y)) continue;
            if (!has_transition(target.transitions, bp, ap, y)) continue;
            ++report.checked;
            if (!has_transition(m.components, a, ap, x) || !has_transition(m.components, b, bp, x)) {
              report.violations.push_back({a, b, ap, bp, x, {}});
              continue;
            }
            SymMorphism w = sym_point_morphism(source.n, source.dims, x, source.dims, x,
                                               transition_at(source.transitions, a, b, x));
            SymMorphism fa = sym_point_morphism(source.n, source.dims, x, target.dims, y,
                                                transition_at(m.components, a, ap, x));
            SymMorphism wp = sym_point_morphism(target.n, target.dims, y, target.dims, y,
                                                transition_at(target.transitions, bp, ap, y));
            SymMorphism fb = sym_point_morphism(source.n, source.dims, x, target.dims, y,
                                                transition_at(m.components, b, bp, x));
            const ComponentMap rhs = compose_sym(wp, compose_sym(fa, w)).components[0];
            for (const auto& [p, t] : fb.components[0]) {
              if (rhs.at(p) != t) report.violations.push_back({a, b, ap, bp, x, p});
            }
          }
        }
      }
    }
  }
  std::sort(report.violations.begin(), report.violations.end());
  return report;
}

CocycleMorphism induced_cocycle_morphism(const SnCocycle& source, const std::map<std::string, PointMorphisms>& phis,
                                         const SnCocycle& target, const std::map<std::string, PointMorphisms>& psis,
                                         const SymMorphism& f) {
  if (f.source.dims != source.dims || f.target.dims != target.dims || f.source.n != source.n) {
    throw DomainError("morphism of reference models does not match the cocycles");
  }
  CocycleMorphism m;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < f.source.points.size(); ++i) {
    index[f.source.points[i]] = i;
    m.base_map[f.source.points[i]] = f.target.points.at(f.base_map.at(i));
  }
  for (const auto& a : source.cover.charts) {
    for (const auto& x : source.cover.points[chart_index(source.cover, a)]) {
      auto it = index.find(x);
      if (it == index.end()) throw DomainError("morphism of reference models is undefined at " + x);
      const std::string& y = m.base_map.at(x);
      SymMorphism fx = sym_point_morphism(source.n, source.dims, x, target.dims, y, f.components.at(it->second));
      SymMorphism phi = sym_point_morphism(source.n, source.dims, x, source.dims, x, chart_map_at(phis, a, x));
      const SymMorphism right = compose_sym(fx, invert(phi));
      for (const auto& ap : target.cover.charts) {
        if (!in_chart(target.cover, ap, y)) continue;
        SymMorphism psi = sym_point_morphism(target.n, target.dims, y, target.dims, y, chart_map_at(psis, ap, y));
        m.components[{a, ap}][x] = compose_sym(psi, right).components[0];
      }
    }
  }
  return m;
}

}  // namespace gvb
