#pragma once

// Cocycles of symmetric n-fold vector bundles and of [n]-manifolds over
// finite covers, their verification, and morphisms of cocycles.

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gradedvb/nman.hpp"
#include "gradedvb/snvb.hpp"

namespace gvb {

// A finite cover: chart labels and the sample points of every chart.
struct Cover {
  std::vector<std::string> charts;
  std::vector<std::vector<std::string>> points;

  bool operator==(const Cover& o) const { return charts == o.charts && points == o.points; }
};

// Throws DomainError on duplicate labels or a chart/point count mismatch.
void validate(const Cover& cover);
std::size_t chart_index(const Cover& cover, const std::string& chart);
// Points of U_α ∩ U_β, in the order of U_α.
std::vector<std::string> overlap(const Cover& cover, const std::string& alpha, const std::string& beta);
std::vector<std::string> overlap(const Cover& cover, const std::string& alpha, const std::string& beta,
                                 const std::string& gamma);
// All points of the cover, in order of first appearance.
std::vector<std::string> all_points(const Cover& cover);

// Components of a morphism over the identity, one family per point label.
using PointMorphisms = std::map<std::string, ComponentMap>;
using ChartPair = std::pair<std::string, std::string>;
using Transitions = std::map<ChartPair, PointMorphisms>;

// Transitions ω^{αβ} stored per integer partition.
struct SnCocycle {
  Cover cover;
  int n = 1;
  std::vector<int> dims;  // V^1, ..., V^n
  Transitions transitions;

  bool operator==(const SnCocycle& o) const {
    return cover == o.cover && n == o.n && dims == o.dims && transitions == o.transitions;
  }
};

// The same data read as transitions of a split [n]-manifold.
struct NmanCocycle {
  Cover cover;
  int n = 1;
  std::vector<int> ranks;
  Transitions transitions;

  bool operator==(const NmanCocycle& o) const {
    return cover == o.cover && n == o.n && ranks == o.ranks && transitions == o.transitions;
  }
};

NmanCocycle as_nman_cocycle(const SnCocycle& c);
SnCocycle as_snvb_cocycle(const NmanCocycle& c);

// The single-point model and morphisms used for pointwise composition.
SymModel point_model(int n, const std::vector<int>& dims, const std::string& point);
SymMorphism point_morphism(const SnCocycle& c, const std::string& alpha, const std::string& beta,
                           const std::string& point);
GradedMorphism point_morphism(const NmanCocycle& c, const std::string& alpha, const std::string& beta,
                              const std::string& point);

struct Violation {
  std::string kind;  // "missing", "identity", "not-invertible" or "triple"
  std::string alpha;
  std::string beta;
  std::string gamma;
  std::string point;
  IntegerPartition partition;

  bool operator==(const Violation& o) const;
  bool operator<(const Violation& o) const;
  std::string to_string() const;
};

struct CocycleReport {
  std::size_t checked = 0;  // number of (identity or triple) identities examined
  std::vector<Violation> violations;  // sorted

  bool ok() const { return violations.empty(); }
  bool operator==(const CocycleReport& o) const { return checked == o.checked && violations == o.violations; }
};

// The composite ω^{αγ} ∘ ω^{γβ} for every ordered triple and every point of
// U_αβγ, keyed by (α, β, γ, point).
using TripleKey = std::tuple<std::string, std::string, std::string, std::string>;
std::map<TripleKey, ComponentMap> triple_composites(const SnCocycle& c, int jobs = 1);
std::map<TripleKey, ComponentMap> triple_composites(const NmanCocycle& c, int jobs = 1);

// Checks presence, ω^{αα} = id, invertibility and ω^{αβ} = ω^{αγ} ∘ ω^{γβ}
// at every point of every U_αβγ. Every violation is listed.
CocycleReport check_cocycle(const SnCocycle& c, int jobs = 1);
CocycleReport check_cocycle(const NmanCocycle& c, int jobs = 1);

// ω^{αβ} = φ_α ∘ φ_β^{-1}, where phis[α] holds φ_α at every point of U_α.
// Throws NotAnIsomorphism or DomainError.
SnCocycle from_trivializations(const Cover& cover, int n, const std::vector<int>& dims,
                               const std::map<std::string, PointMorphisms>& phis);

// Φ_0 on point labels and Φ_{α'α} at every x ∈ U_α with Φ_0(x) ∈ U'_{α'},
// keyed by (α, α').
struct CocycleMorphism {
  std::map<std::string, std::string> base_map;
  Transitions components;

  bool operator==(const CocycleMorphism& o) const { return base_map == o.base_map && components == o.components; }
};

struct MorphismViolation {
  std::string alpha, beta, alpha_prime, beta_prime, point;
  IntegerPartition partition;  // empty when a component is missing

  bool operator<(const MorphismViolation& o) const;
  bool operator==(const MorphismViolation& o) const;
  std::string to_string() const;
};

struct CocycleMorphismReport {
  std::size_t checked = 0;
  std::vector<MorphismViolation> violations;

  bool ok() const { return violations.empty(); }
};

// Φ_{β'β}(x) = ω'_{β'α'}(Φ_0 x) ∘ Φ_{α'α}(x) ∘ ω_{αβ}(x) for every admissible
// quadruple of charts and every point.
CocycleMorphismReport check_cocycle_morphism(const CocycleMorphism& m, const SnCocycle& source,
                                             const SnCocycle& target);

// The morphism of cocycles induced by a morphism f of reference models:
// Φ_{α'α}(x) = ψ_{α'}(Φ_0 x) ∘ f(x) ∘ φ_α(x)^{-1}. The base map of f is read
// through the point labels of its source and target models.
CocycleMorphism induced_cocycle_morphism(const SnCocycle& source, const std::map<std::string, PointMorphisms>& phis,
                                         const SnCocycle& target, const std::map<std::string, PointMorphisms>& psis,
                                         const SymMorphism& f);

}  // namespace gvb
