#include "commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "generators.hpp"
#include "gradedvb/config.hpp"
#include "gradedvb/cores.hpp"
#include "gradedvb/decomp.hpp"
#include "gradedvb/errors.hpp"
#include "gradedvb/io.hpp"
#include "selftest.hpp"

namespace gvb::cli {

namespace {

std::string signed_text(int s) { return s > 0 ? "+1" : "-1"; }

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw ParseError(what, "expected a comma-separated list of integers, got '" + text + "'");
    }
  }
  return out;
}

// ------------------------------------------------------------------ sign

struct SignArgs {
  std::string partition;
  std::string permutation;
  std::string subset;
};

int sign_command(const SignArgs& a, std::ostream& out) {
  if (!a.partition.empty()) {
    if (!a.permutation.empty() || !a.subset.empty()) throw DomainError("--partition excludes --permutation and --subset");
    out << signed_text(sgn(parse_partition(a.partition))) << "\n";
    return kOk;
  }
  if (a.permutation.empty()) throw DomainError("either --partition or --permutation is required");
  const Permutation sigma = parse_permutation(a.permutation);
  const Subset I = a.subset.empty() ? Subset::full(sigma.n()) : Subset(parse_int_list(a.subset, "--subset"));
  for (int i : I.elements()) {
    if (i > sigma.n()) throw DomainError("--subset element " + std::to_string(i) + " exceeds n = " + std::to_string(sigma.n()));
  }
  out << signed_text(epsilon(sigma, I)) << "\n";
  return kOk;
}

// ------------------------------------------------------------ partitions

int partitions_command(int n, bool sets, std::ostream& out) {
  check_n(n);
  if (sets) {
    const auto all = set_partitions(Subset::full(n));
    for (const auto& rho : all) out << rho.to_string() << "\n";
    out << "count " << all.size() << "\n";
    return kOk;
  }
  const auto all = integer_partitions(n);
  for (const auto& p : all) out << to_string(p) << "  canonical " << canonical_partition(p).to_string() << "\n";
  out << "count " << all.size() << "\n";
  return kOk;
}

// --------------------------------------------------------------- compose

int compose_command(const std::string& a_path, const std::string& b_path, const std::string& out_path,
                    std::ostream& out) {
  const io::Json a = io::read_json_file(a_path);
  const io::Json b = io::read_json_file(b_path);
  const std::string kind = io::kind_of(a, a_path);
  if (io::kind_of(b, b_path) != kind) {
    throw DomainError("cannot compose a '" + kind + "' morphism with a '" + io::kind_of(b, b_path) + "' morphism");
  }
  io::Json result;
  if (kind == "sym") {
    result = io::to_json(compose_sym(io::sym_morphism_from_json(a, a_path), io::sym_morphism_from_json(b, b_path)));
  } else if (kind == "nman") {
    result = io::to_json(compose(io::graded_morphism_from_json(a, a_path), io::graded_morphism_from_json(b, b_path)));
  } else if (kind == "general") {
    result = io::to_json(
        compose_general(io::general_morphism_from_json(a, a_path), io::general_morphism_from_json(b, b_path)));
  } else {
    throw ParseError(a_path + ": kind", "expected 'sym', 'nman' or 'general', got '" + kind + "'");
  }
  if (out_path.empty() || out_path == "-") {
    out << result.dump(2) << "\n";
  } else {
    io::write_json_file(out_path, result);
    out << "wrote " << kind << " morphism to " << out_path << "\n";
  }
  return kOk;
}

// -------------------------------------------------------- verify-cocycle

int verify_cocycle_command(const std::string& path, int jobs, std::ostream& out) {
  const io::Json j = io::read_json_file(path);
  const std::string kind = io::kind_of(j, path);
  if (kind == "cocycle") {
    const SnCocycle c = io::cocycle_from_json(j, path);
    const CocycleReport sym = check_cocycle(c, jobs);
    const CocycleReport man = check_cocycle(as_nman_cocycle(c), jobs);
    out << "cocycle " << path << ": n=" << c.n << ", " << c.cover.charts.size() << " charts, " << sym.checked
        << " identities checked\n";
    for (const auto& v : sym.violations) out << "  violation " << v.to_string() << "\n";
    const bool agree = sym == man;
    out << (sym.ok() ? "PASS" : "FAIL") << " cocycle condition (symmetric bundle side)\n";
    out << (man.ok() ? "PASS" : "FAIL") << " cocycle condition ([n]-manifold side)\n";
    out << (agree ? "PASS" : "FAIL") << " both sides report identical results\n";
    return sym.ok() && man.ok() && agree ? kOk : kVerificationFailed;
  }
  if (kind == "cocycle_morphism") {
    const io::CocycleMorphismFile f = io::cocycle_morphism_from_json(j, path);
    const CocycleReport src = check_cocycle(f.source, jobs);
    const CocycleReport tgt = check_cocycle(f.target, jobs);
    const CocycleMorphismReport m = check_cocycle_morphism(f.morphism, f.source, f.target);
    for (const auto& v : src.violations) out << "  source violation " << v.to_string() << "\n";
    for (const auto& v : tgt.violations) out << "  target violation " << v.to_string() << "\n";
    for (const auto& v : m.violations) out << "  morphism violation " << v.to_string() << "\n";
    out << (src.ok() ? "PASS" : "FAIL") << " source cocycle (" << src.checked << " identities)\n";
    out << (tgt.ok() ? "PASS" : "FAIL") << " target cocycle (" << tgt.checked << " identities)\n";
    out << (m.ok() ? "PASS" : "FAIL") << " morphism condition (" << m.checked << " identities)\n";
    return src.ok() && tgt.ok() && m.ok() ? kOk : kVerificationFailed;
  }
  throw ParseError(path + ": kind", "expected 'cocycle' or 'cocycle_morphism', got '" + kind + "'");
}

// ------------------------------------------------------------------ core

int core_command(int n, const std::string& partition, const std::string& dims_text, std::ostream& out) {
  check_n(n);
  std::vector<int> dims = dims_text.empty() ? std::vector<int>(static_cast<std::size_t>(n), 1)
                                            : parse_int_list(dims_text, "--dims");
  if (static_cast<int>(dims.size()) != n) {
    throw DomainError("--dims needs " + std::to_string(n) + " entries, got " + std::to_string(dims.size()));
  }
  const SymModel m{n, dims, {"x"}};
  validate(m);
  const OrderedPartition rho = parse_partition(partition);
  check_core_partition(m, rho);
  out << "core of " << rho.to_string() << " over n=" << n << " with dims " << join(dims) << "\n";
  out << "objects:";
  for (const auto& s : cube_objects(rho)) out << " {" << s.to_string() << "}";
  out << "\n";
  out << "building bundles:\n";
  for (const auto& [J, d] : building_bundles(m, rho)) out << "  {" << J.to_string() << "} dim " << d << "\n";
  out << "fiber dims:\n";
  for (const auto& [I, d] : core_dims(m, rho)) out << "  {" << I.to_string() << "} " << d << "\n";
  return kOk;
}

// ------------------------------------------------------------- decompose

std::vector<std::vector<Subset>> default_orderings(int n, std::uint64_t seed) {
  std::vector<Subset> base = two_subsets(n);
  std::vector<std::vector<Subset>> out;
  if (base.size() <= 4) {
    std::vector<std::size_t> idx(base.size());
    std::iota(idx.begin(), idx.end(), 0);
    do {
      std::vector<Subset> o;
      for (std::size_t i : idx) o.push_back(base[i]);
      out.push_back(o);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return out;
  }
  out.push_back(base);
  gen::Rng rng(seed);
  for (int k = 1; k < 20; ++k) {
    rng.shuffle(base);
    out.push_back(base);
  }
  return out;
}

int decompose_command(const std::string& path, const std::string& out_path, std::uint64_t seed, std::ostream& out) {
  const io::Json j = io::read_json_file(path);
  const std::string kind = io::kind_of(j, path);
  if (kind != "decompose") throw ParseError(path + ": kind", "expected 'decompose', got '" + kind + "'");
  const io::DecomposeInput in = io::decompose_input_from_json(j, path);
  const int n = in.splitting.model.n;
  const auto orderings = in.orderings.empty() ? default_orderings(n, seed) : in.orderings;
  GeneralDecMorphism first;
  try {
    first = build_decomposition(in.splitting, in.cores, orderings.front());
  } catch (const CompatibilityError& e) {
    out << "FAIL compatibility: " << e.what() << "\n";
    return kVerificationFailed;
  }
  std::size_t agreeing = 1;
  for (std::size_t k = 1; k < orderings.size(); ++k) {
    if (build_decomposition(in.splitting, in.cores, orderings[k]) == first) ++agreeing;
  }
  if (out_path.empty() || out_path == "-") {
    out << io::to_json(first).dump(2) << "\n";
  } else {
    io::write_json_file(out_path, io::to_json(first));
    out << "wrote decomposition to " << out_path << "\n";
  }
  const bool independent = agreeing == orderings.size();
  out << "PASS compatibility of the splitting and the core decompositions\n";
  out << (independent ? "PASS" : "FAIL") << " order independence: " << agreeing << "/" << orderings.size()
      << " orderings give the same decomposition\n";
  return independent ? kOk : kVerificationFailed;
}

// -------------------------------------------------------------- selftest

int selftest_command(selftest::Options options, std::ostream& out) {
  if (const char* env = std::getenv("GRADEDVB_MAX_N"); env != nullptr && *env != '\0') {
    const int cap = max_n();
    options.max_n = options.max_n > 0 ? std::min(options.max_n, cap) : cap;
  }
  const auto results = selftest::run(options);
  out << selftest::format_report(options, results);
  const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
  return ok ? kOk : kVerificationFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with graded manifolds and symmetric vector bundles", "gradedvb"};
  app.require_subcommand(1);

  SignArgs sign_args;
  auto* sign = app.add_subcommand("sign", "Sign of an ordered partition, or ε(σ, I) of a permutation");
  sign->add_option("--partition", sign_args.partition, "Ordered partition such as \"4,5,6|1|2,3\"");
  sign->add_option("--permutation", sign_args.permutation, "Permutation images such as \"2,3,1\"");
  sign->add_option("--subset", sign_args.subset, "Subset I such as \"1,3\" (default: all of {1..n})");

  int partitions_n = 0;
  bool partitions_sets = false;
  auto* partitions = app.add_subcommand("partitions", "List the integer partitions of n with canonical set partitions");
  partitions->add_option("--n", partitions_n, "n")->required();
  partitions->add_flag("--sets", partitions_sets, "List all set partitions of {1..n} instead");

  std::string compose_a, compose_b, compose_out;
  auto* compose_cmd = app.add_subcommand("compose", "Compose two morphism files: A after B");
  compose_cmd->add_option("a", compose_a, "Outer morphism file")->required()->check(CLI::ExistingFile);
  compose_cmd->add_option("b", compose_b, "Inner morphism file")->required()->check(CLI::ExistingFile);
  compose_cmd->add_option("-o", compose_out, "Output file (default: standard output)");

  std::string cocycle_path;
  int cocycle_jobs = 1;
  auto* verify = app.add_subcommand("verify-cocycle", "Check a cocycle or a morphism of cocycles");
  verify->add_option("file", cocycle_path, "Cocycle or cocycle morphism file")->required()->check(CLI::ExistingFile);
  verify->add_option("--jobs", cocycle_jobs, "Worker threads")->check(CLI::PositiveNumber);

  int core_n = 0;
  std::string core_partition, core_dims;
  auto* core = app.add_subcommand("core", "Objects and building bundles of the core of a partition");
  core->add_option("--n", core_n, "n")->required();
  core->add_option("--partition", core_partition, "Partition of {1..n} such as \"1,2|3\"")->required();
  core->add_option("--dims", core_dims, "Fiber dims of A_1..A_n such as \"1,2,1\" (default: all 1)");

  std::string decompose_path, decompose_out;
  std::uint64_t decompose_seed = 1;
  auto* decompose = app.add_subcommand("decompose", "Build a decomposition from a splitting and core decompositions");
  decompose->add_option("file", decompose_path, "Decomposition input file")->required()->check(CLI::ExistingFile);
  decompose->add_option("-o", decompose_out, "Output file (default: standard output)");
  decompose->add_option("--seed", decompose_seed, "Seed for sampling orderings when n >= 4");

  selftest::Options options;
  auto* self = app.add_subcommand("selftest", "Run the acceptance suite");
  self->add_option("--n", options.max_n, "Cap on n for every criterion (0: full ranges)")->check(CLI::NonNegativeNumber);
  self->add_option("--seed", options.seed, "Seed of the random cases");
  self->add_option("--jobs", options.jobs, "Criteria run in parallel")->check(CLI::PositiveNumber);
  self->add_option("--only", options.only, "Criteria to run (1-based)");
  self->add_flag("--timings", options.timings, "Report times and enforce the time budgets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*sign) return sign_command(sign_args, out);
    if (*partitions) return partitions_command(partitions_n, partitions_sets, out);
    if (*compose_cmd) return compose_command(compose_a, compose_b, compose_out, out);
    if (*verify) return verify_cocycle_command(cocycle_path, cocycle_jobs, out);
    if (*core) return core_command(core_n, core_partition, core_dims, out);
    if (*decompose) return decompose_command(decompose_path, decompose_out, decompose_seed, out);
    if (*self) return selftest_command(options, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace gvb::cli
