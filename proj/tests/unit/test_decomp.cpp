#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "generators.hpp"
#include "gradedvb/decomp.hpp"
#include "gradedvb/errors.hpp"

using namespace gvb;

namespace {

OrderedPartition P(const std::string& text) { return parse_partition(text); }

// The splitting and the ρ_J-core decompositions of a known decomposition.
struct Data {
  GeneralDecMorphism truth;
  Splitting sigma;
  CoreFamily decs;
};

Data data_from(gen::Rng& rng, const SymModel& m) {
  Data d{gen::random_normalized_decomposition(rng, m), {}, {}};
  d.sigma = splitting_of(d.truth);
  for (const auto& J : two_subsets(m.n)) {
    const OrderedPartition rho = pair_partition(m.n, J);
    d.decs.emplace(rho, core_decomposition_of(d.truth, rho));
  }
  return d;
}

// x with the entries containing s taken from r.
DecTuple along(const DecTuple& x, const DecTuple& r, int s) {
  DecTuple y = x;
  for (std::uint32_t mask = 1; mask < y.entries.size(); ++mask) {
    if (Subset::from_mask(mask).contains(s)) y.entries[mask] = r.entries[mask];
  }
  return y;
}

std::vector<std::vector<Subset>> all_orderings(int n) {
  std::vector<Subset> base = two_subsets(n);
  std::vector<std::size_t> idx(base.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::vector<Subset>> out;
  do {
    std::vector<Subset> o;
    for (std::size_t i : idx) o.push_back(base[i]);
    out.push_back(o);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

}  // namespace

TEST_CASE("directional addition and scaling") {
  gen::Rng rng(400);
  const SymModel m{3, {1, 2, 1}, {"x"}};
  for (int k = 0; k < 20; ++k) {
    const int s = rng.uniform(1, 3);
    const DecTuple x = gen::random_tuple(rng, m, 0);
    // y and z share the projection of x away from s.
    const DecTuple y = along(x, gen::random_tuple(rng, m, 0), s);
    const DecTuple z = along(x, gen::random_tuple(rng, m, 0), s);
    const DecTuple base = zero_over_projection(m, y, s);
    CHECK(add_in_direction(m, x, zero_over_projection(m, x, s), s) == x);
    CHECK(scale_in_direction(m, x, s, 1) == x);
    CHECK(scale_in_direction(m, x, s, 0) == zero_over_projection(m, x, s));
    CHECK(add_in_direction(m, y, z, s) == add_in_direction(m, z, y, s));
    const Rational q = rng.small_rational();
    CHECK(scale_in_direction(m, add_in_direction(m, y, z, s), s, q) ==
          add_in_direction(m, scale_in_direction(m, y, s, q), scale_in_direction(m, z, s, q), s));
    CHECK(zero_over_projection(m, add_in_direction(m, y, z, s), s) == base);
  }
  DecTuple a = zero_tuple(m, 0), b = zero_tuple(m, 0);
  b.at(Subset{2}) = {1};
  CHECK_THROWS_AS(add_in_direction(m, a, b, 1), ProjectionMismatch);
  CHECK_NOTHROW(add_in_direction(m, a, b, 2));
}

TEST_CASE("the canonical inclusion fixes tuples supported on singletons") {
  gen::Rng rng(401);
  const SymModel m{3, {2, 1, 2}, {"x"}};
  DecTuple x = zero_tuple(m, 0);
  for (int i = 1; i <= 3; ++i) x.at(Subset{i}) = gen::random_tuple(rng, m, 0).at(Subset{i});
  CHECK(apply_splitting(canonical_inclusion(m), x) == x);
  x.at(Subset{1, 2}) = {1};
  CHECK_THROWS_AS(apply_splitting(canonical_inclusion(m), x), DomainError);
}

TEST_CASE("two-subsets and pair partitions") {
  CHECK(two_subsets(3) == std::vector<Subset>{Subset{1, 2}, Subset{1, 3}, Subset{2, 3}});
  CHECK(two_subsets(1).empty());
  CHECK(pair_partition(4, Subset{2, 4}) == P("1|3|2,4"));
  CHECK(two_partitions(3) == std::vector<OrderedPartition>{P("1|2,3"), P("2|1,3"), P("3|1,2")});
  CHECK(two_partitions(4).size() == 7);
}

TEST_CASE("identity inputs build the identity decomposition") {
  for (int n = 1; n <= 4; ++n) {
    const SymModel m{n, std::vector<int>(static_cast<std::size_t>(n), 1), {"x"}};
    CoreFamily decs;
    for (const auto& J : two_subsets(n)) {
      const OrderedPartition rho = pair_partition(n, J);
      decs.emplace(rho, identity_core_decomposition(m, rho));
    }
    const GeneralDecMorphism s = build_decomposition(canonical_inclusion(m), decs, two_subsets(n));
    CHECK(s == general_identity(m));
  }
}

TEST_CASE("the built decomposition restricts to its inputs") {
  gen::Rng rng(402);
  for (int k = 0; k < 8; ++k) {
    const int n = rng.uniform(2, 4);
    const SymModel m = gen::random_sym_model(rng, n, 1, 2, rng.uniform(1, 2), "p");
    const Data d = data_from(rng, m);
    CHECK_NOTHROW(check_compatibility(d.sigma, d.decs));
    std::vector<Subset> ordering = two_subsets(n);
    rng.shuffle(ordering);
    const GeneralDecMorphism s = build_decomposition(d.sigma, d.decs, ordering);
    CHECK(is_normalized_decomposition(s));
    CHECK(splitting_of(s) == d.sigma);
    for (const auto& [rho, c] : d.decs) CHECK(core_decomposition_of(s, rho) == c);
    CHECK(s == d.truth);
    for (int j = 0; j < 3; ++j) {
      const DecTuple x = gen::random_tuple(rng, m, static_cast<std::size_t>(rng.uniform(0, static_cast<int>(m.points.size()) - 1)));
      CHECK(apply_recursive_decomposition(d.sigma, d.decs, ordering, x) == general_top_map(s, x));
    }
  }
}

TEST_CASE("the decomposition does not depend on the ordering") {
  gen::Rng rng(403);
  for (int k = 0; k < 5; ++k) {
    const SymModel m = gen::random_sym_model(rng, 3, 1, 2, 1, "p");
    const Data d = data_from(rng, m);
    CHECK(check_order_independence(d.sigma, d.decs, all_orderings(3)));
  }
  CHECK_THROWS_AS(build_decomposition(canonical_inclusion(SymModel{3, {1, 1, 1}, {"x"}}), {}, {Subset{1, 2}}),
                  Error);
}

TEST_CASE("incompatible core decompositions are rejected") {
  gen::Rng rng(404);
  const SymModel m = gen::random_sym_model(rng, 4, 1, 1, 1, "p");
  const Data d = data_from(rng, m);
  REQUIRE_NOTHROW(check_compatibility(d.sigma, d.decs));

  // The ρ_{12} and ρ_{34} decompositions share the component at 1,2|3,4.
  CoreFamily common = d.decs;
  MultiTensor& shared = common.at(pair_partition(4, Subset{1, 2})).components[0].at(P("1,2|3,4"));
  shared.coeffs[0] += 1;
  CHECK_THROWS_AS(check_compatibility(d.sigma, common), CompatibilityError);
  CHECK_THROWS_AS(build_decomposition(d.sigma, common, two_subsets(4)), CompatibilityError);

  // Away from J the ρ_J decomposition must restrict to Σ.
  CoreFamily face = d.decs;
  face.at(pair_partition(4, Subset{1, 2})).components[0].at(P("3|4")).coeffs[0] += 1;
  CHECK_THROWS_AS(check_compatibility(d.sigma, face), CompatibilityError);

  CoreFamily missing = d.decs;
  missing.erase(pair_partition(4, Subset{2, 3}));
  CHECK_THROWS_AS(check_compatibility(d.sigma, missing), CompatibilityError);
}

TEST_CASE("averaging 2-core decompositions") {
  gen::Rng rng(405);
  for (int n = 2; n <= 3; ++n) {
    const SymModel m = gen::random_sym_model(rng, n, 1, 2, 1, "p");
    CoreFamily identities;
    for (const auto& rho : two_partitions(n)) identities.emplace(rho, identity_core_decomposition(m, rho));
    CHECK(is_equivariant_family(identities));
    CHECK(symmetrize_2core(identities) == identities);
    for (int k = 0; k < 5; ++k) {
      CoreFamily family;
      for (const auto& rho : two_partitions(n)) family.emplace(rho, gen::random_core_decomposition(rng, m, rho));
      const CoreFamily avg = symmetrize_2core(family);
      CHECK(is_equivariant_family(avg));
      CHECK(symmetrize_2core(avg) == avg);
      CHECK(symmetrize_2core(family, 0) == avg);
    }
  }
}

TEST_CASE("a family that breaks equivariance is detected") {
  const SymModel m{3, {1, 1, 1}, {"x"}};
  CoreFamily family;
  for (const auto& rho : two_partitions(3)) family.emplace(rho, identity_core_decomposition(m, rho));
  family.at(P("3|1,2")).components[0].at(P("3|1,2")).coeffs[0] = 1;
  CHECK_FALSE(is_equivariant_family(family));
  CHECK(is_equivariant_family(symmetrize_2core(family)));
  CHECK(check_symmetric_compatibility(symmetrize_2core(family), canonical_inclusion(m)));
}

TEST_CASE("symmetric splittings") {
  const SymModel m{2, {2, 1}, {"x"}};
  CHECK(is_symmetric_splitting(canonical_inclusion(m)));
  Splitting sigma = canonical_inclusion(m);
  MultiTensor& t = sigma.components[0].at(Subset{1, 2});
  // Σ(u, v) = u_1 v_2 is not graded-symmetric under the swap.
  t.at(0, {0, 1}) = 1;
  CHECK_FALSE(is_symmetric_splitting(sigma));
  // Σ(u, v) = u_1 v_2 − u_2 v_1 is.
  t.at(0, {1, 0}) = -1;
  CHECK(is_symmetric_splitting(sigma));
}
