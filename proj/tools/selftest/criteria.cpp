#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <thread>

#include "generators.hpp"
#include "gradedvb/cocycles.hpp"
#include "gradedvb/cores.hpp"
#include "gradedvb/decomp.hpp"
#include "gradedvb/errors.hpp"
#include "gradedvb/nman.hpp"
#include "gradedvb/snvb.hpp"
#include "oracles.hpp"
#include "selftest.hpp"

namespace gvb::selftest {

namespace {

// Counts checks and keeps the first failure message.
class Tally {
 public:
  template <class Describe>
  void expect(bool ok, Describe describe) {
    ++checks_;
    if (!ok) {
      ++failures_;
      if (first_.empty()) first_ = describe();
    }
  }
  std::size_t checks() const { return checks_; }
  std::size_t failures() const { return failures_; }
  bool ok() const { return failures_ == 0; }
  std::string verdict(const std::string& summary) const {
    std::ostringstream s;
    s << summary << "; " << checks_ << " checks";
    if (failures_ > 0) s << ", " << failures_ << " failed, first: " << first_;
    return s.str();
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::string first_;
};

struct Context {
  int max_n;
  std::uint64_t seed;

  int cap(int n) const { return max_n > 0 ? std::min(n, max_n) : n; }
  gen::Rng rng(int criterion, std::uint64_t index) const { return gen::Rng(gen::case_seed(seed, criterion, index)); }
};

using Outcome = std::pair<bool, std::string>;

Outcome finish(const Tally& t, const std::string& summary) { return {t.ok(), t.verdict(summary)}; }

std::string str(const IntegerPartition& p) { return "(" + to_string(p) + ")"; }

// ------------------------------------------------------------ criterion 1

Outcome sign_well_definedness(const Context& ctx) {
  Tally t;
  std::size_t partitions = 0, pairs = 0;
  const int top = ctx.cap(5);
  for (int n = 1; n <= top; ++n) {
    const auto perms = all_permutations(n);
    for (const auto& I : subsets_of(Subset::full(n))) {
      const int i = I.size();
      for (const auto& rho : oracle::ordered_partitions(I)) {
        ++partitions;
        const int expected = oracle::inversion_sign(oracle::concatenation(rho));
        t.expect(sgn(rho) == expected, [&] { return "sgn(" + rho.to_string() + ")"; });
        const OrderedPartition K = canonical_partition(block_sizes(rho));
        std::size_t valid = 0;
        for (const auto& sigma : perms) {
          bool maps = true;
          for (std::size_t j = 0; j < rho.size() && maps; ++j) maps = sigma(K.blocks[j]) == rho.blocks[j];
          if (!maps) continue;
          ++valid;
          int q = epsilon(sigma, Subset::range(1, i));
          for (const auto& k : K.blocks) q *= epsilon(sigma, k);
          t.expect(q == expected, [&] { return "quotient for " + rho.to_string() + " and " + sigma.to_string(); });
        }
        pairs += valid;
        long count = 1;
        for (const auto& b : rho.blocks) {
          for (int f = 2; f <= b.size(); ++f) count *= f;
        }
        for (int f = 2; f <= n - i; ++f) count *= f;
        t.expect(static_cast<long>(valid) == count, [&] { return "number of valid permutations for " + rho.to_string(); });
      }
    }
  }
  return finish(t, "n<=" + std::to_string(top) + ": " + std::to_string(partitions) + " ordered partitions, " +
                       std::to_string(pairs) + " (rho, sigma) pairs");
}

// ------------------------------------------------------------ criterion 2

Outcome product_formula(const Context& ctx) {
  Tally t;
  const int top = ctx.cap(4);
  for (int n = 1; n <= top; ++n) {
    const auto perms = all_permutations(n);
    const auto subsets = subsets_of(Subset::full(n), true);
    for (const auto& sigma : perms) {
      for (const auto& I : subsets) {
        t.expect(epsilon(sigma, I) == oracle::epsilon_by_cycles(sigma, I),
                 [&] { return "epsilon(" + sigma.to_string() + ", " + I.to_string() + ")"; });
      }
      for (const auto& nu : perms) {
        for (const auto& I : subsets) {
          t.expect(epsilon(sigma * nu, I) == epsilon(sigma, nu(I)) * epsilon(nu, I), [&] {
            return "sigma=" + sigma.to_string() + " nu=" + nu.to_string() + " I=" + I.to_string();
          });
        }
      }
    }
  }
  std::string summary = "exhaustive n<=" + std::to_string(top);
  if (ctx.cap(6) == 6) {
    for (int k = 0; k < 1000; ++k) {
      gen::Rng rng = ctx.rng(2, static_cast<std::uint64_t>(k));
      const Permutation sigma = gen::random_permutation(rng, 6);
      const Permutation nu = gen::random_permutation(rng, 6);
      const Subset I = Subset::from_mask(static_cast<std::uint32_t>(rng.uniform(0, 63)));
      t.expect(epsilon(sigma * nu, I) == epsilon(sigma, nu(I)) * epsilon(nu, I), [&] {
        return "sigma=" + sigma.to_string() + " nu=" + nu.to_string() + " I=" + I.to_string();
      });
      t.expect(epsilon(sigma, I) == oracle::epsilon_by_cycles(sigma, I), [&] { return "epsilon at n=6"; });
    }
    summary += ", 1000 random cases at n=6";
  }
  return finish(t, summary);
}

// ------------------------------------------------------------ criterion 3

int parity_sign(int a, int b) { return (a * b) % 2 == 0 ? 1 : -1; }

int total_degree(const MultiTensor& t) { return std::accumulate(t.degrees.begin(), t.degrees.end(), 0); }

Outcome graded_product_laws(const Context& ctx) {
  Tally t;
  std::size_t triples = 0;
  // Generator triples of total degree at most 6.
  for (int d1 = 1; d1 <= 4; ++d1) {
    for (int d2 = 1; d1 + d2 <= 5; ++d2) {
      for (int d3 = 1; d1 + d2 + d3 <= 6; ++d3) {
        std::vector<int> distinct{d1, d2, d3};
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (int assign = 0; assign < (1 << distinct.size()); ++assign) {
          auto dim = [&](int d) {
            const auto k = std::find(distinct.begin(), distinct.end(), d) - distinct.begin();
            return ((assign >> k) & 1) + 1;
          };
          for (int i1 = 0; i1 < dim(d1); ++i1) {
            for (int i2 = 0; i2 < dim(d2); ++i2) {
              for (int i3 = 0; i3 < dim(d3); ++i3) {
                ++triples;
                const MultiTensor x = MultiTensor::covector(d1, dim(d1), i1);
                const MultiTensor y = MultiTensor::covector(d2, dim(d2), i2);
                const MultiTensor z = MultiTensor::covector(d3, dim(d3), i3);
                auto where = [&] {
                  return "generators of degrees " + std::to_string(d1) + "," + std::to_string(d2) + "," +
                         std::to_string(d3);
                };
                const MultiTensor left = graded_product({graded_product({x, y}), z});
                const MultiTensor right = graded_product({x, graded_product({y, z})});
                const MultiTensor flat = graded_product({x, y, z});
                t.expect(left == right, [&] { return "associativity for " + where(); });
                t.expect(left == flat, [&] { return "three-factor product for " + where(); });
                t.expect(flat == oracle::blockwise_skew_product({x, y, z}),
                         [&] { return "skew-symmetrization oracle for " + where(); });
                t.expect(is_graded_symmetric(flat), [&] { return "graded symmetry for " + where(); });
                t.expect(graded_product({x, y}) == parity_sign(d1, d2) * graded_product({y, x}),
                         [&] { return "graded commutativity for " + where(); });
              }
            }
          }
        }
      }
    }
  }
  // Random graded-symmetric factors with total degree at most 6.
  for (int k = 0; k < 60; ++k) {
    gen::Rng rng = ctx.rng(3, static_cast<std::uint64_t>(k));
    std::vector<int> dim_of(7);
    for (int d = 1; d <= 6; ++d) dim_of[static_cast<std::size_t>(d)] = rng.uniform(1, 2);
    int budget = 6;
    std::vector<MultiTensor> f;
    for (int j = 0; j < 3; ++j) {
      const int remaining_factors = 2 - j;
      const int total = rng.uniform(1, std::max(1, std::min(3, budget - remaining_factors)));
      budget -= total;
      std::vector<int> degrees;
      int left = total;
      while (left > 0) {
        const int d = rng.uniform(1, left);
        degrees.push_back(d);
        left -= d;
      }
      std::sort(degrees.begin(), degrees.end());
      std::vector<int> dims;
      for (int d : degrees) dims.push_back(dim_of[static_cast<std::size_t>(d)]);
      f.push_back(gen::random_graded_symmetric(rng, degrees, dims, 1));
    }
    const MultiTensor left = graded_product({graded_product({f[0], f[1]}), f[2]});
    const MultiTensor right = graded_product({f[0], graded_product({f[1], f[2]})});
    t.expect(left == right, [&] { return "associativity for random case " + std::to_string(k); });
    const int s = parity_sign(total_degree(f[0]), total_degree(f[1]));
    t.expect(graded_product({f[0], f[1]}) == s * graded_product({f[1], f[0]}),
             [&] { return "graded commutativity for random case " + std::to_string(k); });
  }
  // Degree-1 forms against the alternation formula.
  std::size_t wedges = 0;
  for (int k = 0; k < 60; ++k) {
    gen::Rng rng = ctx.rng(31, static_cast<std::uint64_t>(k));
    const int dim = rng.uniform(2, 4);
    const int a = rng.uniform(1, 3);
    const int b = rng.uniform(1, 4 - a);
    const MultiTensor omega = gen::random_graded_symmetric(rng, std::vector<int>(a, 1), std::vector<int>(a, dim), 1);
    const MultiTensor eta = gen::random_graded_symmetric(rng, std::vector<int>(b, 1), std::vector<int>(b, dim), 1);
    ++wedges;
    t.expect(graded_product({omega, eta}) == oracle::wedge_by_alternation(omega, eta),
             [&] { return "wedge of degrees " + std::to_string(a) + "," + std::to_string(b) + " in dim " + std::to_string(dim); });
  }
  return finish(t, std::to_string(triples) + " generator triples, 60 random triples, " + std::to_string(wedges) +
                       " wedge cases");
}

// ------------------------------------------------------------ criterion 4

Outcome composition_coherence(const Context& ctx) {
  Tally t;
  const int top = ctx.cap(4);
  std::size_t generators = 0;
  for (int k = 0; k < 100; ++k) {
    gen::Rng rng = ctx.rng(4, static_cast<std::uint64_t>(k));
    const SplitModel M = gen::random_split_model(rng, rng.uniform(1, top), 2, rng.uniform(1, 2), "m");
    const SplitModel N = gen::random_split_model(rng, rng.uniform(1, top), 2, rng.uniform(1, 2), "n");
    const SplitModel Q = gen::random_split_model(rng, rng.uniform(1, top), 2, rng.uniform(1, 2), "q");
    const GradedMorphism mu = gen::random_graded_morphism(rng, M, N);
    const GradedMorphism nu = gen::random_graded_morphism(rng, N, Q);
    const GradedMorphism composite = compose(nu, mu);
    for (int d = 1; d <= Q.n; ++d) {
      for (int i = 0; i < Q.rank(d); ++i) {
        ++generators;
        std::vector<GradedFunction> xi(Q.points.size(), GradedFunction{{{d}, MultiTensor::covector(d, Q.rank(d), i)}});
        const auto lhs = pullback(composite, xi);
        const auto rhs = pullback(mu, pullback(nu, xi));
        t.expect(lhs == rhs, [&] {
          return "case " + std::to_string(k) + ", generator of degree " + std::to_string(d) + " index " +
                 std::to_string(i);
        });
      }
    }
  }
  return finish(t, "100 random morphism pairs, degrees<=" + std::to_string(top) + ", " + std::to_string(generators) +
                       " generators");
}

// ------------------------------------------------------------ criterion 5

Outcome symmetric_characterization(const Context& ctx) {
  Tally t;
  const int top = ctx.cap(4);
  std::size_t violations = 0;
  for (int k = 0; k < 200; ++k) {
    gen::Rng rng = ctx.rng(5, static_cast<std::uint64_t>(k));
    const int n = 1 + k % top;
    const SymModel A = gen::random_sym_model(rng, n, 1, 2, rng.uniform(1, 2), "a");
    const SymModel B = gen::random_sym_model(rng, n, 1, 2, rng.uniform(1, 2), "b");
    SymMorphism tau = gen::random_sym_morphism(rng, A, B);
    t.expect(satisfies_symmetry(tau) && check_equivariance(tau),
             [&] { return "symmetric family not equivariant, case " + std::to_string(k); });
    std::vector<IntegerPartition> repeated;
    for (const auto& p : integer_partitions(n)) {
      if (std::adjacent_find(p.begin(), p.end()) != p.end()) repeated.push_back(p);
    }
    if (repeated.empty()) continue;
    const IntegerPartition p = rng.pick(repeated);
    const std::size_t x = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(A.points.size()) - 1));
    const MultiTensor& shape = tau.components[x].at(p);
    MultiTensor defect = MultiTensor::zeros(shape.degrees, shape.dims, shape.out_dim);
    for (int attempt = 0; attempt < 8 && defect.is_zero(); ++attempt) {
      const MultiTensor r = gen::random_tensor(rng, shape.degrees, shape.dims, shape.out_dim);
      defect = r - graded_symmetrize(r);
    }
    if (defect.is_zero()) continue;
    ++violations;
    tau.components[x][p] += defect;
    t.expect(!satisfies_symmetry(tau) && !check_equivariance(tau),
             [&] { return "violation at " + str(p) + " not detected, case " + std::to_string(k); });
  }
  return finish(t, "200 random families, n<=" + std::to_string(top) + ", " + std::to_string(violations) +
                       " constructed violations");
}

// ------------------------------------------------------------ criterion 6

Outcome composition_agreement(const Context& ctx) {
  Tally t;
  const int top = ctx.cap(4);
  for (int k = 0; k < 100; ++k) {
    gen::Rng rng = ctx.rng(6, static_cast<std::uint64_t>(k));
    const int n = 1 + k % top;
    const SymModel A = gen::random_sym_model(rng, n, 1, 2, rng.uniform(1, 2), "a");
    const SymModel B = gen::random_sym_model(rng, n, 1, 2, rng.uniform(1, 2), "b");
    const SymModel C = gen::random_sym_model(rng, n, 1, 2, rng.uniform(1, 2), "c");
    const SymMorphism eta = gen::random_sym_morphism(rng, A, B);
    const SymMorphism tau = gen::random_sym_morphism(rng, B, C);
    const SymMorphism composite = compose_sym(tau, eta);
    std::vector<std::size_t> base(A.points.size());
    for (std::size_t x = 0; x < base.size(); ++x) base[x] = tau.base_map[eta.base_map[x]];
    const SymMorphism extracted = extract([&](const DecTuple& x) { return top_map(tau, top_map(eta, x)); }, A, C,
                                          base, gen::case_seed(ctx.seed, 61, static_cast<std::uint64_t>(k)));
    t.expect(extracted == composite, [&] { return "extracted top-map composite, case " + std::to_string(k); });
    t.expect(compose_general(expand(tau), expand(eta)) == expand(composite),
             [&] { return "general composition of expansions, case " + std::to_string(k); });
  }
  return finish(t, "100 random pairs, n<=" + std::to_string(top));
}

// ------------------------------------------------------------ criterion 7

Outcome cocycle_equivalence(const Context& ctx) {
  Tally t;
  const int n = ctx.cap(3);
  std::size_t identities = 0;
  for (int k = 0; k < 50; ++k) {
    gen::Rng rng = ctx.rng(7, static_cast<std::uint64_t>(k));
    const Cover cover = gen::random_cover(rng);
    std::vector<int> dims;
    for (int i = 0; i < n; ++i) dims.push_back(rng.uniform(1, 2));
    const auto phis = gen::random_trivializations(rng, cover, n, dims);
    const SnCocycle c = from_trivializations(cover, n, dims, phis);
    const NmanCocycle view = as_nman_cocycle(c);
    const std::string label = "cocycle " + std::to_string(k);
    t.expect(as_snvb_cocycle(view) == c, [&] { return label + " does not round-trip"; });
    t.expect(triple_composites(c) == triple_composites(view),
             [&] { return label + ": composites differ between the two composition laws"; });
    const CocycleReport sym = check_cocycle(c);
    const CocycleReport man = check_cocycle(view);
    identities += sym.checked;
    t.expect(sym.ok(), [&] { return label + " fails: " + sym.violations.front().to_string(); });
    t.expect(sym == man, [&] { return label + ": reports differ"; });

    // Perturb one component of ω^{ab} at a point of the triple overlap.
    SnCocycle bad = c;
    const std::string x = overlap(cover, "a", "b", "c").front();
    const auto keys = integer_partitions(n);
    IntegerPartition p = rng.pick(keys);
    ComponentMap& comp = bad.transitions[{"a", "b"}][x];
    MultiTensor delta = gen::random_nonzero_graded_symmetric(rng, comp.at(p).degrees, comp.at(p).dims,
                                                             comp.at(p).out_dim);
    if (delta.is_zero()) {
      p = {1};
      delta = gen::random_nonzero_graded_symmetric(rng, comp.at(p).degrees, comp.at(p).dims, comp.at(p).out_dim);
    }
    comp.at(p) += delta;
    const CocycleReport bad_sym = check_cocycle(bad);
    const CocycleReport bad_man = check_cocycle(as_nman_cocycle(bad));
    const Violation expected{"triple", "a", "b", "c", x, p};
    t.expect(!bad_sym.ok(), [&] { return label + ": perturbation at " + str(p) + " passes"; });
    t.expect(std::find(bad_sym.violations.begin(), bad_sym.violations.end(), expected) != bad_sym.violations.end(),
             [&] { return label + ": perturbation not reported at " + expected.to_string(); });
    t.expect(bad_sym == bad_man, [&] { return label + ": reports on the perturbed cocycle differ"; });
  }
  return finish(t, "50 random 3-chart cocycles at n=" + std::to_string(n) + ", " + std::to_string(identities) +
                       " identities per path");
}

// ------------------------------------------------------------ criterion 8

Outcome order_independence(const Context& ctx) {
  Tally t;
  auto run_case = [&](int n, std::uint64_t index, int orderings_wanted) {
    gen::Rng rng = ctx.rng(8, index);
    const SymModel m = gen::random_sym_model(rng, n, 1, 2, 1, "p");
    const GeneralDecMorphism truth = gen::random_normalized_decomposition(rng, m);
    const Splitting sigma = splitting_of(truth);
    CoreFamily decs;
    for (const auto& J : two_subsets(n)) {
      const OrderedPartition rho = pair_partition(n, J);
      decs.emplace(rho, core_decomposition_of(truth, rho));
    }
    std::vector<std::vector<Subset>> orderings;
    std::vector<Subset> base = two_subsets(n);
    if (orderings_wanted == 0) {
      std::vector<std::size_t> idx(base.size());
      std::iota(idx.begin(), idx.end(), 0);
      do {
        std::vector<Subset> o;
        for (std::size_t i : idx) o.push_back(base[i]);
        orderings.push_back(o);
      } while (std::next_permutation(idx.begin(), idx.end()));
    } else {
      for (int k = 0; k < orderings_wanted; ++k) {
        rng.shuffle(base);
        orderings.push_back(base);
      }
    }
    for (const auto& o : orderings) {
      t.expect(build_decomposition(sigma, decs, o) == truth, [&] {
        std::string s = "n=" + std::to_string(n) + " input " + std::to_string(index) + " ordering";
        for (const auto& J : o) s += " {" + J.to_string() + "}";
        return s;
      });
    }
    return orderings.size();
  };
  const int small = ctx.cap(3);
  std::size_t builds = 0;
  for (int k = 0; k < 20; ++k) builds += run_case(small, static_cast<std::uint64_t>(k), 0);
  std::string summary = "20 inputs at n=" + std::to_string(small) + " over all orderings";
  if (ctx.cap(4) == 4) {
    for (int k = 0; k < 5; ++k) builds += run_case(4, static_cast<std::uint64_t>(100 + k), 20);
    summary += ", 5 inputs at n=4 over 20 sampled orderings";
  }
  return finish(t, summary + ", " + std::to_string(builds) + " builds");
}

// ------------------------------------------------------------ criterion 9

Outcome averaging(const Context& ctx) {
  Tally t;
  const int n = ctx.cap(3);
  if (n < 2) {
    t.expect(two_partitions(n).empty(), [] { return "2-partitions at n=1"; });
    return finish(t, "n=1 has no 2-partitions");
  }
  std::size_t asymmetric_inputs = 0;
  for (int k = 0; k < 50; ++k) {
    gen::Rng rng = ctx.rng(9, static_cast<std::uint64_t>(k));
    const SymModel m = gen::random_sym_model(rng, n, 1, 2, rng.uniform(1, 2), "p");
    CoreFamily family;
    for (const auto& rho : two_partitions(n)) family.emplace(rho, gen::random_core_decomposition(rng, m, rho));
    if (!is_equivariant_family(family)) ++asymmetric_inputs;
    const CoreFamily avg = symmetrize_2core(family, 1);
    const std::string label = "input " + std::to_string(k);
    t.expect(is_equivariant_family(avg), [&] { return label + ": average is not equivariant"; });
    t.expect(symmetrize_2core(avg, 1) == avg, [&] { return label + ": averaging a symmetric family changes it"; });
    t.expect(symmetrize_2core(family, 0) == avg, [&] { return label + ": average depends on the direction"; });
  }
  return finish(t, "50 random 2-core families at n=" + std::to_string(n) + " (" + std::to_string(asymmetric_inputs) +
                       " not equivariant before averaging)");
}

// ----------------------------------------------------------- criterion 10

OrderedPartition merge(const OrderedPartition& rho, std::size_t a, std::size_t b) {
  std::vector<Subset> blocks{rho.blocks[a] | rho.blocks[b]};
  for (std::size_t k = 0; k < rho.size(); ++k) {
    if (k != a && k != b) blocks.push_back(rho.blocks[k]);
  }
  return canonical_order(blocks);
}

Outcome cube_intersections(const Context& ctx) {
  Tally t;
  const int top = ctx.cap(5);
  std::size_t pairs = 0;
  for (int n = 1; n <= top; ++n) {
    for (const auto& rho : set_partitions(Subset::full(n))) {
      if (rho.size() < 3) continue;
      std::vector<OrderedPartition> coarse;
      for (std::size_t a = 0; a < rho.size(); ++a) {
        for (std::size_t b = a + 1; b < rho.size(); ++b) coarse.push_back(merge(rho, a, b));
      }
      for (std::size_t i = 0; i < coarse.size(); ++i) {
        for (std::size_t j = i + 1; j < coarse.size(); ++j) {
          ++pairs;
          const OrderedPartition common = cube_intersection(coarse[i], coarse[j]);
          const auto oi = oracle::objects_by_enumeration(coarse[i]);
          const auto oj = oracle::objects_by_enumeration(coarse[j]);
          std::set<std::uint32_t> both;
          std::set_intersection(oi.begin(), oi.end(), oj.begin(), oj.end(), std::inserter(both, both.begin()));
          const std::string where = coarse[i].to_string() + " and " + coarse[j].to_string();
          t.expect(common.size() + 2 == rho.size(), [&] { return "block count of the intersection of " + where; });
          t.expect(both == oracle::objects_by_enumeration(common), [&] { return "objects of " + where; });
          std::set<std::uint32_t> listed;
          for (const auto& s : cube_objects(common)) listed.insert(s.mask());
          t.expect(listed == both, [&] { return "cube_objects of the intersection of " + where; });
        }
      }
    }
  }
  return finish(t, "n<=" + std::to_string(top) + ", " + std::to_string(pairs) + " coarsement pairs");
}

// ----------------------------------------------------------- criterion 11

Outcome pullback_bundle_checks(const Context& ctx) {
  Tally t;
  const int top = ctx.cap(4);
  std::size_t tuples = 0;
  for (int n = 1; n <= top; ++n) {
    gen::Rng rng = ctx.rng(11, static_cast<std::uint64_t>(n));
    const SymModel m = gen::random_sym_model(rng, n, 1, 2, 2, "p");
    const std::string label = "n=" + std::to_string(n);
    t.expect(pullback_ultracore_dimension(m) == 0, [&] { return label + ": ultracore is not trivial"; });
    std::vector<int> expected(m.dims.begin(), m.dims.end() - 1);
    expected.push_back(0);
    t.expect(pullback_bundle(m).model.dims == expected, [&] { return label + ": pullback dims"; });
    const auto perms = all_permutations(n);
    for (int k = 0; k < 50; ++k) {
      ++tuples;
      const DecTuple x = gen::random_tuple(rng, m, static_cast<std::size_t>(k % 2));
      const PullbackElement e = pullback_projection(m, x);
      t.expect(is_pullback_element(m, e), [&] { return label + ": projection is not in the pullback"; });
      for (const auto& sigma : perms) {
        t.expect(pullback_projection(m, sn_action(m, sigma, x)) == pullback_action(m, sigma, e),
                 [&] { return label + ": projection not equivariant under " + sigma.to_string(); });
      }
    }
  }
  return finish(t, "n<=" + std::to_string(top) + ", " + std::to_string(tuples) + " tuples");
}

struct Criterion {
  const char* name;
  double budget;
  Outcome (*fn)(const Context&);
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"sign well-definedness", 30, sign_well_definedness},
      {"product formula for epsilon", 10, product_formula},
      {"graded product laws", 60, graded_product_laws},
      {"morphism composition coherence", 60, composition_coherence},
      {"symmetric morphism characterization", 60, symmetric_characterization},
      {"composition agreement", 60, composition_agreement},
      {"cocycle-level equivalence", 60, cocycle_equivalence},
      {"decomposition order-independence", 120, order_independence},
      {"2-core averaging", 30, averaging},
      {"cube-category intersection", 30, cube_intersections},
      {"pullback bundle", 10, pullback_bundle_checks},
  };
  return all;
}

}  // namespace

int criterion_count() { return static_cast<int>(criteria().size()); }

std::string criterion_name(int id) { return criteria().at(static_cast<std::size_t>(id - 1)).name; }

double criterion_budget(int id) { return criteria().at(static_cast<std::size_t>(id - 1)).budget; }

std::vector<Result> run(const Options& options) {
  std::vector<int> ids = options.only;
  if (ids.empty()) {
    for (int i = 1; i <= criterion_count(); ++i) ids.push_back(i);
  }
  for (int id : ids) {
    if (id < 1 || id > criterion_count()) throw DomainError("no criterion " + std::to_string(id));
  }
  const Context ctx{options.max_n, options.seed};
  std::vector<Result> results(ids.size());
  auto work = [&](std::size_t i) {
    const Criterion& c = criteria()[static_cast<std::size_t>(ids[i] - 1)];
    Result& r = results[i];
    r.id = ids[i];
    r.name = c.name;
    r.budget = c.budget;
    const auto start = std::chrono::steady_clock::now();
    try {
      auto [pass, detail] = c.fn(ctx);
      r.pass = pass;
      r.detail = detail;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (options.timings && r.seconds > r.budget) {
      r.pass = false;
      r.detail += "; exceeded the time budget";
    }
  };
  const std::size_t workers = std::min<std::size_t>(ids.size(), static_cast<std::size_t>(std::max(1, options.jobs)));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (std::size_t i = next++; i < ids.size(); i = next++) work(i);
    });
  }
  for (std::size_t i = next++; i < ids.size(); i = next++) work(i);
  for (auto& th : pool) th.join();
  return results;
}

std::string format_report(const Options& options, const std::vector<Result>& results) {
  std::ostringstream out;
  out << "gradedvb selftest seed=" << options.seed << " max-n=" << (options.max_n > 0 ? std::to_string(options.max_n) : "full")
      << "\n";
  int passed = 0;
  for (const auto& r : results) {
    if (r.pass) ++passed;
    out << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.name << "): " << r.detail;
    if (options.timings) {
      out << std::fixed << std::setprecision(2) << " [" << r.seconds << " s, budget " << std::setprecision(0)
          << r.budget << " s]";
    }
    out << "\n";
  }
  out << "SUMMARY " << (passed == static_cast<int>(results.size()) ? "PASS" : "FAIL") << " " << passed << "/"
      << results.size() << " criteria seed=" << options.seed << "\n";
  return out.str();
}

}  // namespace gvb::selftest
