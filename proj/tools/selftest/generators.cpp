#include "generators.hpp"

#include "gradedvb/cores.hpp"

namespace gvb::gen {

int Rng::uniform(int lo, int hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t r = engine_();
  while (r >= limit) r = engine_();
  return lo + static_cast<int>(r % span);
}

Rational Rng::small_rational() {
  Rational q(uniform(-3, 3), uniform(1, 3));
  q.canonicalize();
  return q;
}

std::uint64_t case_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream * 1000003ULL + index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<std::string> point_labels(int count, const std::string& prefix) {
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

MultiTensor random_tensor(Rng& rng, const std::vector<int>& degrees, const std::vector<int>& dims, int out_dim) {
  MultiTensor t = MultiTensor::zeros(degrees, dims, out_dim);
  for (auto& c : t.coeffs) c = rng.small_rational();
  return t;
}

MultiTensor random_graded_symmetric(Rng& rng, const std::vector<int>& degrees, const std::vector<int>& dims,
                                    int out_dim) {
  return graded_symmetrize(random_tensor(rng, degrees, dims, out_dim));
}

MultiTensor random_nonzero_graded_symmetric(Rng& rng, const std::vector<int>& degrees, const std::vector<int>& dims,
                                            int out_dim) {
  MultiTensor t = MultiTensor::zeros(degrees, dims, out_dim);
  for (int attempt = 0; attempt < 16 && t.is_zero(); ++attempt) t = random_graded_symmetric(rng, degrees, dims, out_dim);
  return t;
}

MultiTensor random_invertible(Rng& rng, int degree, int dim) {
  for (;;) {
    MultiTensor t = random_tensor(rng, {degree}, {dim}, dim);
    if (is_invertible_linear(t)) return t;
  }
}

Permutation random_permutation(Rng& rng, int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) images[static_cast<std::size_t>(i)] = i + 1;
  rng.shuffle(images);
  return Permutation(images);
}

namespace {

std::vector<std::size_t> random_base_map(Rng& rng, std::size_t source_points, std::size_t target_points,
                                         bool bijective) {
  std::vector<std::size_t> out(source_points);
  if (bijective) {
    for (std::size_t i = 0; i < source_points; ++i) out[i] = i;
    rng.shuffle(out);
  } else {
    for (auto& y : out) y = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(target_points) - 1));
  }
  return out;
}

template <class Map>
void randomize(Rng& rng, Map& comp) {
  for (auto& [key, t] : comp) t = random_graded_symmetric(rng, t.degrees, t.dims, t.out_dim);
}

}  // namespace

SplitModel random_split_model(Rng& rng, int n, int max_rank, int points, const std::string& prefix) {
  SplitModel m{n, {}, point_labels(points, prefix)};
  for (int i = 0; i < n; ++i) m.ranks.push_back(rng.uniform(1, max_rank));
  return m;
}

GradedMorphism random_graded_morphism(Rng& rng, const SplitModel& source, const SplitModel& target, bool invertible) {
  GradedMorphism mu{source, target, random_base_map(rng, source.points.size(), target.points.size(), invertible), {}};
  normalize(mu);
  for (auto& comp : mu.components) {
    randomize(rng, comp);
    if (invertible) {
      for (int i = 1; i <= source.n; ++i) comp[{i}] = random_invertible(rng, i, source.rank(i));
    }
  }
  return mu;
}

SymModel random_sym_model(Rng& rng, int n, int min_dim, int max_dim, int points, const std::string& prefix) {
  SymModel m{n, {}, point_labels(points, prefix)};
  for (int i = 0; i < n; ++i) m.dims.push_back(rng.uniform(min_dim, max_dim));
  return m;
}

SymMorphism random_sym_morphism(Rng& rng, const SymModel& source, const SymModel& target, bool invertible) {
  SymMorphism tau{source, target, random_base_map(rng, source.points.size(), target.points.size(), invertible), {}};
  normalize(tau);
  for (auto& comp : tau.components) {
    randomize(rng, comp);
    if (invertible) {
      for (int i = 1; i <= source.n; ++i) comp[{i}] = random_invertible(rng, i, source.dim(i));
    }
  }
  return tau;
}

DecTuple random_tuple(Rng& rng, const SymModel& m, std::size_t point) {
  DecTuple x = zero_tuple(m, point);
  for (std::size_t mask = 1; mask < x.entries.size(); ++mask) {
    for (auto& c : x.entries[mask]) c = rng.small_rational();
  }
  return x;
}

GeneralDecMorphism random_normalized_decomposition(Rng& rng, const SymModel& m) {
  GeneralDecMorphism s = general_identity(m);
  for (auto& comp : s.components) {
    for (auto& [rho, t] : comp) {
      if (rho.size() >= 2) t = random_tensor(rng, t.degrees, t.dims, t.out_dim);
    }
  }
  return s;
}

CoreDecomposition random_core_decomposition(Rng& rng, const SymModel& m, const OrderedPartition& rho) {
  CoreDecomposition c = identity_core_decomposition(m, rho);
  for (auto& comp : c.components) {
    for (auto& [pi, t] : comp) t = random_tensor(rng, t.degrees, t.dims, t.out_dim);
  }
  return c;
}

Cover random_cover(Rng& rng) {
  Cover cover{{"a", "b", "c"}, {{}, {}, {}}};
  int next = 0;
  auto add = [&](std::vector<int> charts) {
    const std::string label = "x" + std::to_string(next++);
    for (int c : charts) cover.points[static_cast<std::size_t>(c)].push_back(label);
  };
  const int common = rng.uniform(1, 2);
  for (int i = 0; i < common; ++i) add({0, 1, 2});
  if (rng.coin()) add({0, 1});
  if (rng.coin()) add({1, 2});
  if (rng.coin()) add({0, 2});
  if (rng.coin()) add({rng.uniform(0, 2)});
  return cover;
}

std::map<std::string, PointMorphisms> random_trivializations(Rng& rng, const Cover& cover, int n,
                                                             const std::vector<int>& dims) {
  std::map<std::string, PointMorphisms> phis;
  for (std::size_t a = 0; a < cover.charts.size(); ++a) {
    for (const auto& x : cover.points[a]) {
      const SymModel m = point_model(n, dims, x);
      phis[cover.charts[a]][x] = random_sym_morphism(rng, m, m, true).components[0];
    }
  }
  return phis;
}

}  // namespace gvb::gen
