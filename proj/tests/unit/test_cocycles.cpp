#include <doctest.h>

#include <algorithm>

#include "generators.hpp"
#include "gradedvb/cocycles.hpp"
#include "gradedvb/errors.hpp"

using namespace gvb;

namespace {

struct Fixture {
  Cover cover;
  int n;
  std::vector<int> dims;
  std::map<std::string, PointMorphisms> phis;
  SnCocycle cocycle;
};

Fixture fixture(std::uint64_t seed, int n) {
  gen::Rng rng(seed);
  Fixture f{gen::random_cover(rng), n, {}, {}, {}};
  for (int i = 0; i < n; ++i) f.dims.push_back(rng.uniform(1, 2));
  f.phis = gen::random_trivializations(rng, f.cover, n, f.dims);
  f.cocycle = from_trivializations(f.cover, n, f.dims, f.phis);
  return f;
}

// Adds a nonzero graded-symmetric perturbation to one component.
IntegerPartition perturb(gen::Rng& rng, ComponentMap& comp, int n) {
  for (const auto& p : integer_partitions(n)) {
    MultiTensor& t = comp.at(p);
    const MultiTensor delta = gen::random_nonzero_graded_symmetric(rng, t.degrees, t.dims, t.out_dim);
    if (!delta.is_zero()) {
      t += delta;
      return p;
    }
  }
  FAIL("no component admits a perturbation");
  return {};
}

}  // namespace

TEST_CASE("covers and overlaps") {
  const Cover cover{{"a", "b", "c"}, {{"x", "y"}, {"y", "z", "x"}, {"x"}}};
  CHECK_NOTHROW(validate(cover));
  CHECK(overlap(cover, "a", "b") == std::vector<std::string>{"x", "y"});
  CHECK(overlap(cover, "b", "a") == std::vector<std::string>{"y", "x"});
  CHECK(overlap(cover, "a", "b", "c") == std::vector<std::string>{"x"});
  CHECK(all_points(cover) == std::vector<std::string>{"x", "y", "z"});
  CHECK_THROWS_AS(validate(Cover{{"a", "a"}, {{}, {}}}), DomainError);
  CHECK_THROWS_AS(validate(Cover{{"a"}, {}}), DomainError);
}

TEST_CASE("a single chart with identity transitions is a cocycle") {
  const Cover cover{{"a"}, {{"x"}}};
  SnCocycle c{cover, 2, {1, 2}, {}};
  c.transitions[{"a", "a"}]["x"] = identity_morphism(point_model(2, {1, 2}, "x")).components[0];
  const CocycleReport report = check_cocycle(c);
  CHECK(report.ok());
  CHECK(report.checked > 0);
  CHECK(report == check_cocycle(as_nman_cocycle(c)));

  SnCocycle wrong = c;
  wrong.transitions[{"a", "a"}]["x"].at({1}).coeffs[0] = 2;
  const CocycleReport bad = check_cocycle(wrong);
  REQUIRE_FALSE(bad.ok());
  CHECK(std::any_of(bad.violations.begin(), bad.violations.end(),
                    [](const Violation& v) { return v.kind == "identity" && v.point == "x"; }));
  CHECK(bad == check_cocycle(as_nman_cocycle(wrong)));
}

TEST_CASE("two charts glued by an isomorphism and its inverse") {
  gen::Rng rng(500);
  const Cover cover{{"a", "b"}, {{"x"}, {"x"}}};
  const SymModel m = point_model(3, {1, 1, 2}, "x");
  const SymMorphism w = gen::random_sym_morphism(rng, m, m, true);
  SnCocycle c{cover, 3, {1, 1, 2}, {}};
  c.transitions[{"a", "a"}]["x"] = identity_morphism(m).components[0];
  c.transitions[{"b", "b"}]["x"] = identity_morphism(m).components[0];
  c.transitions[{"a", "b"}]["x"] = w.components[0];
  c.transitions[{"b", "a"}]["x"] = invert(w).components[0];
  CHECK(check_cocycle(c).ok());
  CHECK(check_cocycle(as_nman_cocycle(c)).ok());

  SnCocycle missing = c;
  missing.transitions.erase({"b", "a"});
  const CocycleReport report = check_cocycle(missing);
  CHECK(std::any_of(report.violations.begin(), report.violations.end(),
                    [](const Violation& v) { return v.kind == "missing"; }));
  CHECK(report == check_cocycle(as_nman_cocycle(missing)));
}

TEST_CASE("cocycles from trivializations") {
  for (int n = 1; n <= 3; ++n) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Fixture f = fixture(510 + seed, n);
      const CocycleReport sym = check_cocycle(f.cocycle);
      CHECK(sym.ok());
      CHECK(sym == check_cocycle(as_nman_cocycle(f.cocycle), 3));
      CHECK(as_snvb_cocycle(as_nman_cocycle(f.cocycle)) == f.cocycle);
      CHECK(triple_composites(f.cocycle) == triple_composites(as_nman_cocycle(f.cocycle), 2));
    }
  }
}

TEST_CASE("a perturbed transition is reported on both sides") {
  gen::Rng rng(520);
  const Fixture f = fixture(521, 3);
  SnCocycle bad = f.cocycle;
  const std::string x = overlap(f.cover, "a", "b", "c").front();
  const IntegerPartition p = perturb(rng, bad.transitions[{"a", "b"}][x], 3);
  const CocycleReport sym = check_cocycle(bad);
  const Violation expected{"triple", "a", "b", "c", x, p};
  CHECK(std::find(sym.violations.begin(), sym.violations.end(), expected) != sym.violations.end());
  CHECK(sym == check_cocycle(as_nman_cocycle(bad)));
  CHECK(std::is_sorted(sym.violations.begin(), sym.violations.end()));
}

TEST_CASE("relabelling points leaves the verdict unchanged") {
  const Fixture f = fixture(530, 2);
  SnCocycle renamed = f.cocycle;
  auto rename = [](const std::string& x) { return "q_" + x; };
  for (auto& pts : renamed.cover.points) {
    for (auto& x : pts) x = rename(x);
  }
  for (auto& [pair, per_point] : renamed.transitions) {
    PointMorphisms moved;
    for (auto& [x, comp] : per_point) moved.emplace(rename(x), comp);
    per_point = moved;
  }
  const CocycleReport a = check_cocycle(f.cocycle), b = check_cocycle(renamed);
  CHECK(a.ok());
  CHECK(b.ok());
  CHECK(a.checked == b.checked);
}

TEST_CASE("the identity morphism of a cocycle") {
  const Fixture f = fixture(540, 2);
  const SymModel reference{f.n, f.dims, all_points(f.cover)};
  const CocycleMorphism induced =
      induced_cocycle_morphism(f.cocycle, f.phis, f.cocycle, f.phis, identity_morphism(reference));
  // Φ_{α'α} = φ_{α'} ∘ φ_α^{-1} = ω^{α'α}.
  CocycleMorphism expected;
  for (const auto& x : reference.points) expected.base_map[x] = x;
  for (const auto& a : f.cover.charts) {
    for (const auto& ap : f.cover.charts) {
      for (const auto& x : overlap(f.cover, a, ap)) expected.components[{a, ap}][x] = f.cocycle.transitions.at({ap, a}).at(x);
    }
  }
  CHECK(induced == expected);
  const CocycleMorphismReport report = check_cocycle_morphism(induced, f.cocycle, f.cocycle);
  CHECK(report.ok());
  CHECK(report.checked > 0);
}

TEST_CASE("induced cocycle morphisms satisfy the gluing condition") {
  gen::Rng rng(550);
  for (int k = 0; k < 5; ++k) {
    const int n = rng.uniform(1, 3);
    const Fixture src = fixture(560 + static_cast<std::uint64_t>(k), n);
    Fixture tgt = fixture(570 + static_cast<std::uint64_t>(k), n);
    // Rebuild the target with the dimensions of a random target model.
    std::vector<int> dims;
    for (int i = 0; i < n; ++i) dims.push_back(rng.uniform(1, 2));
    tgt.dims = dims;
    tgt.phis = gen::random_trivializations(rng, tgt.cover, n, dims);
    tgt.cocycle = from_trivializations(tgt.cover, n, dims, tgt.phis);
    const SymModel a{n, src.dims, all_points(src.cover)};
    const SymModel b{n, tgt.dims, all_points(tgt.cover)};
    SymMorphism f = gen::random_sym_morphism(rng, a, b);
    for (auto& y : f.base_map) y = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(b.points.size()) - 1));
    const CocycleMorphism m = induced_cocycle_morphism(src.cocycle, src.phis, tgt.cocycle, tgt.phis, f);
    CHECK(check_cocycle_morphism(m, src.cocycle, tgt.cocycle).ok());

    CocycleMorphism bad = m;
    auto& [key, per_point] = *bad.components.begin();
    perturb(rng, per_point.begin()->second, n);
    const CocycleMorphismReport report = check_cocycle_morphism(bad, src.cocycle, tgt.cocycle);
    CHECK_FALSE(report.ok());
    CHECK(std::is_sorted(report.violations.begin(), report.violations.end()));
  }
}

TEST_CASE("trivializations must be invertible") {
  const Fixture f = fixture(580, 2);
  auto phis = f.phis;
  ComponentMap& comp = phis.begin()->second.begin()->second;
  for (auto& [p, t] : comp) {
    if (p.size() == 1) t = MultiTensor::zeros(t.degrees, t.dims, t.out_dim);
  }
  CHECK_THROWS_AS(from_trivializations(f.cover, f.n, f.dims, phis), NotAnIsomorphism);
}
