#pragma once

// JSON encodings of tensors, models, morphisms, cocycles and decomposition
// inputs. Rationals are written as "num/den" strings. Every reader throws
// ParseError naming the JSON path of the offending item.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gradedvb/cocycles.hpp"
#include "gradedvb/decomp.hpp"

namespace gvb::io {

using Json = nlohmann::json;

// {"degrees": [...], "dims": [...], "out_dim": k, "coeffs": nested arrays}
// with the output index outermost and one nesting level per slot.
Json to_json(const MultiTensor& t);
MultiTensor tensor_from_json(const Json& j, const std::string& where = "");

// Models: {"n": n, "dims": [...], "points": [...]} and
// {"n": n, "ranks": [...], "points": [...]}.
Json to_json(const SymModel& m);
SymModel sym_model_from_json(const Json& j, const std::string& where = "");
Json to_json(const SplitModel& m);
SplitModel split_model_from_json(const Json& j, const std::string& where = "");

// Morphism files: {"kind": "sym" | "nman" | "general", "source", "target",
// "base_map": {point: point}, "components": {point: {key: tensor}}}. Keys
// are "1,2" for integer partitions and "1|2,3" for set partitions.
Json to_json(const SymMorphism& tau);
Json to_json(const GradedMorphism& mu);
Json to_json(const GeneralDecMorphism& g);
SymMorphism sym_morphism_from_json(const Json& j, const std::string& where = "");
GradedMorphism graded_morphism_from_json(const Json& j, const std::string& where = "");
GeneralDecMorphism general_morphism_from_json(const Json& j, const std::string& where = "");

// Cocycle files: {"kind": "cocycle", "n", "dims", "cover": [{"chart",
// "points"}], "transitions": {"alpha,beta": {point: {key: tensor}}}}.
Json to_json(const SnCocycle& c);
SnCocycle cocycle_from_json(const Json& j, const std::string& where = "");

// {"kind": "cocycle_morphism", "source": cocycle, "target": cocycle,
// "base_map": {point: point}, "components": {"alpha,alpha'": {...}}}.
struct CocycleMorphismFile {
  SnCocycle source;
  SnCocycle target;
  CocycleMorphism morphism;
};
Json to_json(const CocycleMorphismFile& f);
CocycleMorphismFile cocycle_morphism_from_json(const Json& j, const std::string& where = "");

// {"kind": "decompose", "model", "splitting": {point: {"1,2": tensor}},
// "cores": {"1,2|3": {point: {"1|2,3": tensor}}}, "orderings" (optional):
// [["1,2", "1,3", "2,3"], ...]}.
struct DecomposeInput {
  Splitting splitting;
  CoreFamily cores;
  std::vector<std::vector<Subset>> orderings;
};
Json to_json(const DecomposeInput& d);
DecomposeInput decompose_input_from_json(const Json& j, const std::string& where = "");

// The "kind" field. Throws ParseError when absent.
std::string kind_of(const Json& j, const std::string& where = "");

// Throws ParseError with the file name and the parser position.
Json read_json_file(const std::string& path);
// Throws Error when the file cannot be written.
void write_json_file(const std::string& path, const Json& j);

}  // namespace gvb::io
