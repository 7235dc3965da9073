#include <doctest.h>

#include <algorithm>

#include "generators.hpp"
#include "gradedvb/errors.hpp"
#include "gradedvb/nman.hpp"

using namespace gvb;

namespace {

// Drops zero components so that functions compare by value.
GradedFunction prune(GradedFunction f) {
  for (auto it = f.begin(); it != f.end();) it = it->second.is_zero() ? f.erase(it) : std::next(it);
  return f;
}

// The product of two graded functions, expanded bilinearly.
GradedFunction product(const GradedFunction& f, const GradedFunction& g) {
  GradedFunction out;
  for (const auto& [p, a] : f) {
    for (const auto& [q, b] : g) {
      IntegerPartition key = p;
      key.insert(key.end(), q.begin(), q.end());
      std::sort(key.begin(), key.end());
      const MultiTensor c = graded_product({a, b});
      auto it = out.find(key);
      if (it == out.end()) {
        out.emplace(key, c);
      } else {
        it->second += c;
      }
    }
  }
  return out;
}

GradedFunction generator(int degree, const MultiTensor& xi) { return {{{degree}, xi}}; }

}  // namespace

TEST_CASE("models and normalization") {
  SplitModel bad{2, {1}, {"x"}};
  CHECK_THROWS(validate(bad));
  SplitModel m{2, {1, 2}, {"x", "y"}};
  GradedMorphism mu{m, m, {0, 1}, {}};
  normalize(mu);
  REQUIRE(mu.components.size() == 2);
  // P(2) with parts at most 2: (1), (1,1), (2).
  CHECK(mu.components[0].size() == 3);
  CHECK(mu.component(0, {1, 1}).dims == std::vector<int>{1, 1});
  GradedMorphism wrong{m, m, {0, 5}, {}};
  CHECK_THROWS_AS(normalize(wrong), DomainError);
}

TEST_CASE("pullback of a single generator sums the components of its degree") {
  gen::Rng rng(100);
  for (int k = 0; k < 20; ++k) {
    const SplitModel M = gen::random_split_model(rng, rng.uniform(1, 3), 2, 1, "m");
    const SplitModel N = gen::random_split_model(rng, 3, 2, 1, "n");
    const GradedMorphism mu = gen::random_graded_morphism(rng, M, N);
    for (int d = 1; d <= 3; ++d) {
      const MultiTensor xi = gen::random_tensor(rng, {d}, {N.rank(d)}, 1);
      GradedFunction expected;
      for (const auto& [p, t] : mu.components[0]) {
        if (sum(p) == d) expected.emplace(p, apply_multilinear(xi, {t}));
      }
      CHECK(prune(pullback_at(mu, 0, generator(d, xi))) == prune(expected));
    }
  }
}

TEST_CASE("pullback along a linear morphism maps products to products of single terms") {
  gen::Rng rng(101);
  const SplitModel M{3, {2, 1, 2}, {"x"}};
  std::vector<MultiTensor> blocks;
  for (int i = 1; i <= 3; ++i) blocks.push_back(gen::random_tensor(rng, {i}, {M.rank(i)}, M.rank(i)));
  const GradedMorphism mu = linear_morphism(M, {blocks});
  const MultiTensor x = gen::random_tensor(rng, {1}, {2}, 1);
  const MultiTensor y = gen::random_tensor(rng, {2}, {1}, 1);
  const GradedFunction f{{{1, 2}, graded_product({x, y})}};
  const MultiTensor px = apply_multilinear(x, {blocks[0]});
  const MultiTensor py = apply_multilinear(y, {blocks[1]});
  CHECK(prune(pullback_at(mu, 0, f)) == prune(GradedFunction{{{1, 2}, graded_product({px, py})}}));
}

TEST_CASE("pullback is a morphism of graded algebras") {
  gen::Rng rng(102);
  for (int k = 0; k < 30; ++k) {
    const SplitModel M = gen::random_split_model(rng, rng.uniform(1, 3), 2, 1, "m");
    const SplitModel N = gen::random_split_model(rng, 3, 2, 1, "n");
    const GradedMorphism mu = gen::random_graded_morphism(rng, M, N);
    const int a = rng.uniform(1, 2), b = rng.uniform(1, 3 - a + 1);
    const GradedFunction f = generator(a, gen::random_tensor(rng, {a}, {N.rank(a)}, 1));
    const GradedFunction g = generator(b, gen::random_tensor(rng, {b}, {N.rank(b)}, 1));
    const GradedFunction lhs = pullback_at(mu, 0, product(f, g));
    const GradedFunction rhs = product(pullback_at(mu, 0, f), pullback_at(mu, 0, g));
    CHECK(prune(lhs) == prune(rhs));
  }
}

TEST_CASE("composition with identities") {
  gen::Rng rng(103);
  for (int k = 0; k < 10; ++k) {
    const SplitModel M = gen::random_split_model(rng, rng.uniform(1, 3), 2, 2, "m");
    const SplitModel N = gen::random_split_model(rng, rng.uniform(1, 3), 2, 2, "n");
    const GradedMorphism mu = gen::random_graded_morphism(rng, M, N);
    CHECK(compose(identity_morphism(N), mu) == mu);
    CHECK(compose(mu, identity_morphism(M)) == mu);
  }
}

TEST_CASE("linear morphisms compose blockwise") {
  gen::Rng rng(104);
  const SplitModel M{3, {2, 1, 2}, {"x"}};
  std::vector<MultiTensor> a, b, ab;
  for (int i = 1; i <= 3; ++i) {
    a.push_back(gen::random_tensor(rng, {i}, {M.rank(i)}, M.rank(i)));
    b.push_back(gen::random_tensor(rng, {i}, {M.rank(i)}, M.rank(i)));
    ab.push_back(compose_linear(b.back(), a.back()));
  }
  CHECK(compose(linear_morphism(M, {b}), linear_morphism(M, {a})) == linear_morphism(M, {ab}));
}

TEST_CASE("composition is associative") {
  gen::Rng rng(105);
  for (int k = 0; k < 15; ++k) {
    const SplitModel A = gen::random_split_model(rng, rng.uniform(1, 4), 2, 2, "a");
    const SplitModel B = gen::random_split_model(rng, rng.uniform(1, 4), 2, 2, "b");
    const SplitModel C = gen::random_split_model(rng, rng.uniform(1, 4), 2, 1, "c");
    const SplitModel D = gen::random_split_model(rng, rng.uniform(1, 4), 2, 1, "d");
    const GradedMorphism mu = gen::random_graded_morphism(rng, A, B);
    const GradedMorphism nu = gen::random_graded_morphism(rng, B, C);
    const GradedMorphism chi = gen::random_graded_morphism(rng, C, D);
    CHECK(compose(chi, compose(nu, mu)) == compose(compose(chi, nu), mu));
  }
}

TEST_CASE("composition requires matching models") {
  gen::Rng rng(106);
  const SplitModel A = gen::random_split_model(rng, 2, 2, 1, "a");
  const SplitModel B = gen::random_split_model(rng, 2, 2, 1, "b");
  const GradedMorphism mu = gen::random_graded_morphism(rng, A, B);
  CHECK_THROWS_AS(compose(mu, mu), DomainError);
}

TEST_CASE("inversion") {
  gen::Rng rng(107);
  const SplitModel M = gen::random_split_model(rng, 3, 2, 2, "m");
  CHECK(invert(identity_morphism(M)) == identity_morphism(M));
  CHECK(is_isomorphism(identity_morphism(M)));
  for (int k = 0; k < 15; ++k) {
    const SplitModel A = gen::random_split_model(rng, rng.uniform(1, 4), 2, 2, "a");
    SplitModel B = A;
    B.points = gen::point_labels(2, "b");
    const GradedMorphism mu = gen::random_graded_morphism(rng, A, B, true);
    CHECK(is_isomorphism(mu));
    const GradedMorphism inv = invert(mu);
    CHECK(compose(inv, mu) == identity_morphism(A));
    CHECK(compose(mu, inv) == identity_morphism(B));
    CHECK(invert(inv) == mu);
  }
}

TEST_CASE("linear morphisms invert blockwise") {
  gen::Rng rng(108);
  const SplitModel M{2, {2, 2}, {"x"}};
  std::vector<MultiTensor> a, inv;
  for (int i = 1; i <= 2; ++i) {
    a.push_back(gen::random_invertible(rng, i, 2));
    inv.push_back(inverse_linear(a.back()));
  }
  CHECK(invert(linear_morphism(M, {a})) == linear_morphism(M, {inv}));
}

TEST_CASE("a rank-deficient linear part is not invertible") {
  gen::Rng rng(109);
  const SplitModel M{2, {2, 1}, {"x"}};
  GradedMorphism mu = gen::random_graded_morphism(rng, M, M, true);
  mu.components[0][{1}] = MultiTensor::zeros({1}, {2}, 2);
  CHECK_FALSE(is_isomorphism(mu));
  CHECK_THROWS_AS(invert(mu), NotAnIsomorphism);
}
