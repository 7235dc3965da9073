#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "generators.hpp"
#include "gradedvb/errors.hpp"
#include "gradedvb/io.hpp"

using namespace gvb;
using gvb::io::Json;

namespace {

// The message of the ParseError thrown by fn, or "" when none is thrown.
template <class F>
std::string parse_error(F&& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& text, const std::string& part) { return text.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("tensors round-trip through JSON") {
  gen::Rng rng(600);
  for (int k = 0; k < 10; ++k) {
    const MultiTensor t = gen::random_tensor(rng, {1, 2}, {2, rng.uniform(1, 3)}, rng.uniform(1, 2));
    const Json j = io::to_json(t);
    CHECK(io::tensor_from_json(j) == t);
    CHECK(io::tensor_from_json(Json::parse(j.dump())) == t);
  }
  MultiTensor scalar = MultiTensor::zeros({}, {}, 1);
  scalar.coeffs[0] = Rational(-5, 3);
  CHECK(io::tensor_from_json(io::to_json(scalar)) == scalar);
  CHECK(io::to_json(scalar)["coeffs"] == Json::array({"-5/3"}));
}

TEST_CASE("models and morphisms round-trip through JSON") {
  gen::Rng rng(601);
  const SymModel a = gen::random_sym_model(rng, 3, 1, 2, 2, "a");
  const SymModel b = gen::random_sym_model(rng, 3, 1, 2, 1, "b");
  CHECK(io::sym_model_from_json(io::to_json(a)) == a);
  const SymMorphism tau = gen::random_sym_morphism(rng, a, b);
  CHECK(io::sym_morphism_from_json(io::to_json(tau)) == tau);
  CHECK(io::kind_of(io::to_json(tau)) == "sym");
  const GeneralDecMorphism g = expand(tau);
  CHECK(io::general_morphism_from_json(io::to_json(g)) == g);
  CHECK(io::kind_of(io::to_json(g)) == "general");

  const SplitModel m = gen::random_split_model(rng, 3, 2, 2, "m");
  const SplitModel n = gen::random_split_model(rng, 2, 2, 1, "n");
  CHECK(io::split_model_from_json(io::to_json(m)) == m);
  const GradedMorphism mu = gen::random_graded_morphism(rng, m, n);
  CHECK(io::graded_morphism_from_json(io::to_json(mu)) == mu);
  CHECK(io::kind_of(io::to_json(mu)) == "nman");
}

TEST_CASE("cocycles and decomposition inputs round-trip through JSON") {
  gen::Rng rng(602);
  const Cover cover = gen::random_cover(rng);
  const std::vector<int> dims{1, 2};
  const auto phis = gen::random_trivializations(rng, cover, 2, dims);
  const SnCocycle c = from_trivializations(cover, 2, dims, phis);
  CHECK(io::cocycle_from_json(io::to_json(c)) == c);

  const SymModel ref{2, dims, all_points(cover)};
  io::CocycleMorphismFile f{c, c, induced_cocycle_morphism(c, phis, c, phis, identity_morphism(ref))};
  const io::CocycleMorphismFile back = io::cocycle_morphism_from_json(io::to_json(f));
  CHECK(back.source == c);
  CHECK(back.target == c);
  CHECK(back.morphism == f.morphism);

  const SymModel m = gen::random_sym_model(rng, 3, 1, 2, 1, "p");
  const GeneralDecMorphism truth = gen::random_normalized_decomposition(rng, m);
  io::DecomposeInput in{splitting_of(truth), {}, {two_subsets(3)}};
  for (const auto& J : two_subsets(3)) {
    const OrderedPartition rho = pair_partition(3, J);
    in.cores.emplace(rho, core_decomposition_of(truth, rho));
  }
  const io::DecomposeInput read = io::decompose_input_from_json(io::to_json(in));
  CHECK(read.splitting == in.splitting);
  CHECK(read.cores == in.cores);
  CHECK(read.orderings == in.orderings);
}

TEST_CASE("parse errors name the offending item") {
  Json t = io::to_json(MultiTensor::zeros({1}, {2}, 1));
  t["coeffs"][0][1] = "1/0";
  const std::string bad_rational = parse_error([&] { io::tensor_from_json(t, "file.json"); });
  CHECK(contains(bad_rational, "file.json"));
  CHECK(contains(bad_rational, "coeffs"));

  Json short_row = io::to_json(MultiTensor::zeros({1}, {2}, 1));
  short_row["coeffs"][0].erase(1);
  CHECK_THROWS_AS(io::tensor_from_json(short_row), Error);

  CHECK(contains(parse_error([] { io::kind_of(Json::object(), "in.json"); }), "in.json"));
  CHECK(contains(parse_error([] { io::sym_model_from_json(Json{{"n", 2}, {"dims", {1}}}, "m"); }), "m"));
  CHECK(parse_error([] { io::sym_model_from_json(Json{{"n", "two"}, {"dims", {1, 1}}, {"points", {"x"}}}); }) != "");
}

TEST_CASE("files") {
  const auto dir = std::filesystem::temp_directory_path() / "gradedvb_io_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "model.json").string();
  const SymModel m{2, {1, 3}, {"x", "y"}};
  io::write_json_file(path, io::to_json(m));
  CHECK(io::sym_model_from_json(io::read_json_file(path)) == m);
  const std::string broken = (dir / "broken.json").string();
  {
    std::ofstream(broken) << "{\"n\": 2,";
  }
  const std::string message = parse_error([&] { io::read_json_file(broken); });
  CHECK(contains(message, "broken.json"));
  CHECK_THROWS_AS(io::read_json_file((dir / "absent.json").string()), Error);
  std::filesystem::remove_all(dir);
}
