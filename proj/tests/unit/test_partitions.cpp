#include <doctest.h>

#include <algorithm>
#include <set>

#include "generators.hpp"
#include "gradedvb/errors.hpp"
#include "gradedvb/partitions.hpp"
#include "oracles.hpp"

using namespace gvb;

namespace {

OrderedPartition P(const std::string& text) { return parse_partition(text); }

}  // namespace

TEST_CASE("subsets and permutations") {
  CHECK(Subset{3, 1}.elements() == std::vector<int>{1, 3});
  CHECK(Subset::range(2, 4) == Subset{2, 3, 4});
  CHECK(Subset::range(3, 2).empty());
  CHECK(Subset{}.to_string() == "{}");
  const Permutation s = parse_permutation("2,3,1");
  CHECK(s(1) == 2);
  CHECK((s * s.inverse()).is_identity());
  CHECK(s(Subset{1, 2}) == Subset{2, 3});
  CHECK((s * Permutation::transposition(3, 1, 2))(1) == s(2));
  CHECK(all_permutations(4).size() == 24);
  CHECK_THROWS_AS(parse_permutation("1,1,2"), ParseError);
}

TEST_CASE("canonical_order") {
  CHECK(canonical_order({{2, 3}, {1}, {4}}) == make_partition({{1}, {4}, {2, 3}}));
  // The canonical partition of (1,2,1,3,3) is not canonically ordered.
  const OrderedPartition ten = P("1|2,3|4|5,6,7|8,9,10");
  CHECK_FALSE(ten.is_canonical());
  CHECK(canonical_order(ten.blocks) == P("1|4|2,3|5,6,7|8,9,10"));
  CHECK(canonical_order({{3, 4}, {1, 2}}) == P("1,2|3,4"));
  CHECK(canonical_order({{1}, {2, 3}}).is_canonical());
  CHECK_THROWS_AS(canonical_order({{1, 2}, {2, 3}}), InvalidPartition);
  CHECK_THROWS_AS(canonical_order({{1}, Subset{}}), InvalidPartition);
  CHECK_THROWS_AS(parse_partition("1,2|2"), ParseError);
}

TEST_CASE("epsilon examples") {
  for (const auto& I : subsets_of(Subset::full(4), true)) CHECK(epsilon(Permutation::identity(4), I) == 1);
  CHECK(epsilon(Permutation::transposition(2, 1, 2), Subset{1, 2}) == -1);
  CHECK(epsilon(Permutation::transposition(3, 1, 3), Subset{1, 2, 3}) == -1);
  CHECK(epsilon(Permutation::transposition(3, 1, 3), Subset{1, 3}) == -1);
  CHECK(epsilon(Permutation::transposition(3, 1, 3), Subset{2}) == 1);
}

TEST_CASE("sgn examples") {
  CHECK(sgn(P("4,5,6|1|2,3")) == -1);
  CHECK(sgn(P("2|1,4|3")) == 1);
  CHECK(sgn(P("1|2,3|4|5,6,7|8,9,10")) == 1);
  for (int n = 1; n <= 5; ++n) {
    for (const auto& p : integer_partitions(n)) CHECK(sgn(canonical_partition(p)) == 1);
  }
}

TEST_CASE("sgn agrees with the inversion count of the concatenation") {
  for (const auto& rho : oracle::ordered_partitions(Subset::full(5))) {
    CHECK(sgn(rho) == oracle::inversion_sign(oracle::concatenation(rho)));
  }
}

TEST_CASE("epsilon property: product formula on random permutations of 5 and 6") {
  gen::Rng rng(20260101);
  for (int k = 0; k < 500; ++k) {
    const int n = rng.uniform(5, 6);
    const Permutation sigma = gen::random_permutation(rng, n);
    const Permutation nu = gen::random_permutation(rng, n);
    const Subset I = Subset::from_mask(static_cast<std::uint32_t>(rng.uniform(0, (1 << n) - 1)));
    CHECK(epsilon(sigma * nu, I) == epsilon(sigma, nu(I)) * epsilon(nu, I));
    CHECK(epsilon(sigma, I) == oracle::epsilon_by_cycles(sigma, I));
  }
}

TEST_CASE("canonical_partition") {
  CHECK(canonical_partition({1, 2, 1, 3, 3}) == P("1|2,3|4|5,6,7|8,9,10"));
  CHECK(canonical_partition({4}) == P("1,2,3,4"));
  CHECK(canonical_partition({1, 1}) == P("1|2"));
  CHECK(block_sizes(canonical_partition({3, 1, 2})) == IntegerPartition{3, 1, 2});
}

TEST_CASE("coarsements") {
  auto c2 = coarsements(P("1|2"));
  std::sort(c2.begin(), c2.end());
  std::vector<OrderedPartition> e2{P("1|2"), P("1,2")};
  std::sort(e2.begin(), e2.end());
  CHECK(c2 == e2);
  const auto c3 = coarsements(P("1|2|3"));
  CHECK(c3.size() == 5);
  CHECK(std::find(c3.begin(), c3.end(), P("1|2|3")) != c3.end());
  CHECK(std::find(c3.begin(), c3.end(), P("1,2,3")) != c3.end());
  // Bell numbers.
  CHECK(coarsements(P("1|2|3|4")).size() == 15);
  CHECK(coarsements(P("1|2|3|4|5")).size() == 52);
  const OrderedPartition rho = P("1|2,3|4");
  CHECK(intersect_partition(rho, Subset{2, 3}) == P("2,3"));
  CHECK(intersect_partition(rho, Subset{1, 4}) == P("1|4"));
  CHECK_THROWS_AS(intersect_partition(rho, Subset{1, 2}), DomainError);
}

TEST_CASE("coarsements agree with a brute-force enumeration of block unions") {
  for (const auto& rho : set_partitions(Subset::full(5))) {
    std::set<std::vector<std::uint32_t>> expected;
    for (const auto& coarse : set_partitions(Subset::full(5))) {
      const bool unions = std::all_of(coarse.blocks.begin(), coarse.blocks.end(), [&](const Subset& b) {
        return std::all_of(rho.blocks.begin(), rho.blocks.end(),
                           [&](const Subset& r) { return r.subset_of(b) || r.disjoint(b); });
      });
      if (!unions) continue;
      std::vector<std::uint32_t> masks;
      for (const auto& b : coarse.blocks) masks.push_back(b.mask());
      expected.insert(masks);
    }
    std::set<std::vector<std::uint32_t>> got;
    for (const auto& c : coarsements(rho)) {
      CHECK(c.is_canonical());
      std::vector<std::uint32_t> masks;
      for (const auto& b : c.blocks) masks.push_back(b.mask());
      got.insert(masks);
    }
    CHECK(got == expected);
  }
}

TEST_CASE("cube_objects") {
  const auto objs = cube_objects(P("1,2|3"));
  CHECK(objs == std::vector<Subset>{Subset{}, Subset{3}, Subset{1, 2}, Subset{1, 2, 3}});
  CHECK(cube_objects(P("1|2|3|4")).size() == 16);
  CHECK(is_cube_object(P("1,2|3"), Subset{3}));
  CHECK_FALSE(is_cube_object(P("1,2|3"), Subset{1}));
}

TEST_CASE("cube_intersection examples") {
  CHECK(cube_intersection(P("1,2|3|4"), P("1|2|3,4")) == P("1,2|3,4"));
  CHECK(cube_intersection(P("1,2|3"), P("2|1,3")) == P("1,2,3"));
  CHECK_THROWS_AS(cube_intersection(P("1,2|3|4"), P("1,2|3|4")), DomainError);
  CHECK(cube_intersection(P("1,2|3,4"), P("1|2,3,4")) == P("1,2,3,4"));
  // No common refinement with three blocks.
  CHECK_THROWS_AS(cube_intersection(P("1,2|3,4"), P("1,3|2,4")), DomainError);
}

TEST_CASE("enumerate_splits: shapes (1,3) and (1,2)") {
  const SplitSet s = enumerate_splits({{1, 3}, {1, 2}});
  CHECK(s.p == IntegerPartition{1, 1, 2, 3});
  CHECK(s.K == P("1|2|3,4|5,6,7"));
  bool found = false;
  for (const auto& split : s.splits) {
    const auto parts = split.parts(s.K);
    if (parts[0] == P("2|5,6,7") && parts[1] == P("1|3,4")) {
      found = true;
      CHECK(split.sign == sgn(P("2|5,6,7|1|3,4")));
    }
  }
  CHECK(found);
}

TEST_CASE("enumerate_splits: the four splits with signs 1, -1, 1, -1") {
  const SplitSet s = enumerate_splits({{1}, {1, 2}, {2, 3}});
  CHECK(s.K == P("1|2|3,4|5,6|7,8,9"));
  std::set<std::pair<std::string, int>> got;
  for (const auto& split : s.splits) {
    std::string key;
    for (const auto& part : split.parts(s.K)) key += "(" + part.to_string() + ")";
    got.insert({key, split.sign});
  }
  const std::set<std::pair<std::string, int>> expected{
      {"(1)(2|3,4)(5,6|7,8,9)", 1},
      {"(2)(1|3,4)(5,6|7,8,9)", -1},
      {"(1)(2|5,6)(3,4|7,8,9)", 1},
      {"(2)(1|5,6)(3,4|7,8,9)", -1},
  };
  CHECK(got == expected);
}

TEST_CASE("enumerate_splits: single input and counts") {
  const SplitSet one = enumerate_splits({{1, 2, 2}});
  REQUIRE(one.splits.size() == 1);
  CHECK(one.splits[0].sign == 1);
  // Assigning the blocks of sizes (1,1,2,2,3) to shapes (1),(1,2),(2,3):
  // the single 3-block is forced, the two 2-blocks and the two 1-blocks
  // each have two choices.
  CHECK(enumerate_splits({{1}, {1, 2}, {2, 3}}).splits.size() == 4);
  // With equal shapes every assignment of the blocks of sizes (1,1,1,1) to
  // two groups of two counts: C(4,2) = 6.
  CHECK(enumerate_splits({{1, 1}, {1, 1}}).splits.size() == 6);
  CHECK(enumerate_splits({{1, 1}, {1, 1}}, true).splits.size() == 3);
}

TEST_CASE("split sign multiplicativity") {
  // sgn(ρ, ρ_3) · sgn^ρ(ρ_1, ρ_2) = sgn(ρ_1, ρ_2, ρ_3), with ρ the merge of
  // the first two groups, for every 3-split of total degree at most 7.
  std::size_t checked = 0;
  for (int d = 3; d <= 7; ++d) {
    for (const auto& p : integer_partitions_of(d)) {
      const OrderedPartition K = canonical_partition(p);
      for (const auto& split : block_groupings(p)) {
        if (split.groups.size() != 3) continue;
        const auto parts = split.parts(K);
        OrderedPartition all;
        for (const auto& part : parts) all.blocks.insert(all.blocks.end(), part.blocks.begin(), part.blocks.end());
        OrderedPartition merged = parts[0];
        merged.blocks.insert(merged.blocks.end(), parts[1].blocks.begin(), parts[1].blocks.end());
        const OrderedPartition rho = canonical_order(merged.blocks);
        OrderedPartition outer = rho;
        outer.blocks.insert(outer.blocks.end(), parts[2].blocks.begin(), parts[2].blocks.end());
        CHECK(sgn(outer) * sgn(merged) == sgn(all));
        ++checked;
      }
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("integer_partitions") {
  CHECK(integer_partitions(1) == std::vector<IntegerPartition>{{1}});
  CHECK(integer_partitions(3) == std::vector<IntegerPartition>{{1}, {1, 1}, {2}, {1, 1, 1}, {1, 2}, {3}});
  CHECK(integer_partitions(4).size() == 11);
  // Brute force: nondecreasing sequences with sum at most 5.
  std::size_t count = 0;
  for (int a = 1; a <= 5; ++a) {
    ++count;
    for (int b = a; a + b <= 5; ++b) {
      ++count;
      for (int c = b; a + b + c <= 5; ++c) {
        ++count;
        for (int d = c; a + b + c + d <= 5; ++d) {
          ++count;
          for (int e = d; a + b + c + d + e <= 5; ++e) ++count;
        }
      }
    }
  }
  CHECK(integer_partitions(5).size() == count);
}

TEST_CASE("set_partitions exclude the empty set") {
  CHECK(set_partitions(Subset::full(3)).size() == 5);
  CHECK(set_partitions(Subset::full(4)).size() == 15);
  CHECK(set_partitions(Subset{}).empty());
  for (const auto& rho : set_partitions(Subset::full(4))) CHECK(rho.is_canonical());
}
