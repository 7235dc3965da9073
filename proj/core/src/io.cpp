#include "gradedvb/io.hpp"

#include <algorithm>
#include <fstream>

#include "gradedvb/errors.hpp"

namespace gvb::io {

namespace {

std::string child(const std::string& where, const std::string& key) { return where + "/" + key; }

const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where, "missing field \"" + key + "\"");
  return *it;
}

int to_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where, "expected an integer");
  return j.get<int>();
}

std::string to_str(const Json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where, "expected a string");
  return j.get<std::string>();
}

std::vector<int> int_list(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(to_int(j[i], child(where, std::to_string(i))));
  return out;
}

std::vector<std::string> string_list(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(to_str(j[i], child(where, std::to_string(i))));
  return out;
}

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  try {
    return parse_rational(to_str(j, where));
  } catch (const ParseError& e) {
    throw ParseError(where, e.what());
  }
}

// Runs a parser for keys and structural checks, reporting `where` on failure.
template <class Fn>
auto located(const std::string& where, Fn fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw ParseError(where, e.what());
  }
}

void write_nested(const MultiTensor& t, std::size_t depth, std::size_t& pos, Json& out) {
  const int extent = depth == 0 ? t.out_dim : t.dims[depth - 1];
  out = Json::array();
  for (int i = 0; i < extent; ++i) {
    if (depth == t.dims.size()) {
      out.push_back(to_string(t.coeffs[pos++]));
    } else {
      Json sub;
      write_nested(t, depth + 1, pos, sub);
      out.push_back(std::move(sub));
    }
  }
}

void read_nested(const Json& j, const MultiTensor& shape, std::size_t depth, std::vector<Rational>& out,
                 const std::string& where) {
  const int extent = depth == 0 ? shape.out_dim : shape.dims[depth - 1];
  if (!j.is_array() || j.size() != static_cast<std::size_t>(extent)) {
    throw ParseError(where, "expected an array of length " + std::to_string(extent));
  }
  for (int i = 0; i < extent; ++i) {
    const std::string w = child(where, std::to_string(i));
    if (depth == shape.dims.size()) {
      out.push_back(rational_from_json(j[i], w));
    } else {
      read_nested(j[i], shape, depth + 1, out, w);
    }
  }
}

std::size_t point_index(const std::vector<std::string>& points, const std::string& label, const std::string& where) {
  auto it = std::find(points.begin(), points.end(), label);
  if (it == points.end()) throw ParseError(where, "unknown point \"" + label + "\"");
  return static_cast<std::size_t>(it - points.begin());
}

Json base_map_to_json(const std::vector<std::string>& src, const std::vector<std::string>& dst,
                      const std::vector<std::size_t>& base) {
  Json j = Json::object();
  for (std::size_t x = 0; x < src.size(); ++x) j[src[x]] = dst.at(base.at(x));
  return j;
}

std::vector<std::size_t> base_map_from_json(const Json& j, const std::vector<std::string>& src,
                                            const std::vector<std::string>& dst, const std::string& where) {
  std::vector<std::size_t> out;
  for (const auto& x : src) {
    const std::string w = child(where, x);
    out.push_back(point_index(dst, to_str(field(j, x, where), w), w));
  }
  return out;
}

template <class Map, class KeyString>
Json components_to_json(const Map& comp, KeyString key_string) {
  Json j = Json::object();
  for (const auto& [k, t] : comp) j[key_string(k)] = to_json(t);
  return j;
}

template <class Map, class KeyParse>
Map components_from_json(const Json& j, KeyParse key_parse, const std::string& where) {
  if (!j.is_object()) throw ParseError(where, "expected an object of components");
  Map out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string w = child(where, it.key());
    auto key = located(w, [&]() { return key_parse(it.key()); });
    out.emplace(std::move(key), tensor_from_json(it.value(), w));
  }
  return out;
}

template <class Comp, class KeyString>
Json per_point_to_json(const std::vector<std::string>& points, const std::vector<Comp>& comps, KeyString key_string) {
  Json j = Json::object();
  for (std::size_t x = 0; x < points.size(); ++x) j[points[x]] = components_to_json(comps.at(x), key_string);
  return j;
}

template <class Comp, class KeyParse>
std::vector<Comp> per_point_from_json(const Json& j, const std::vector<std::string>& points, KeyParse key_parse,
                                      const std::string& where) {
  if (!j.is_object()) throw ParseError(where, "expected an object keyed by point");
  for (auto it = j.begin(); it != j.end(); ++it) point_index(points, it.key(), child(where, it.key()));
  std::vector<Comp> out(points.size());
  for (std::size_t x = 0; x < points.size(); ++x) {
    auto it = j.find(points[x]);
    if (it != j.end()) out[x] = components_from_json<Comp>(*it, key_parse, child(where, points[x]));
  }
  return out;
}

std::string partition_key(const IntegerPartition& p) { return to_string(p); }
std::string set_partition_key(const OrderedPartition& rho) { return rho.to_string(); }
std::string subset_key(const Subset& s) { return s.to_string(); }

Subset parse_subset(const std::string& text) {
  OrderedPartition rho = parse_partition(text);
  if (rho.size() != 1) throw ParseError("", "expected a single subset, got \"" + text + "\"");
  return rho.blocks[0];
}

void check_kind(const Json& j, const std::string& expected, const std::string& where) {
  const std::string k = kind_of(j, where);
  if (k != expected) throw ParseError(where, "expected kind \"" + expected + "\", got \"" + k + "\"");
}

std::string pair_key(const ChartPair& p) { return p.first + "," + p.second; }

ChartPair parse_pair_key(const std::string& key, const std::string& where) {
  auto comma = key.find(',');
  if (comma == std::string::npos || key.find(',', comma + 1) != std::string::npos) {
    throw ParseError(where, "expected a key of the form \"alpha,beta\"");
  }
  return {key.substr(0, comma), key.substr(comma + 1)};
}

Json transitions_to_json(const Transitions& t) {
  Json j = Json::object();
  for (const auto& [pair, per_point] : t) {
    Json pts = Json::object();
    for (const auto& [x, comp] : per_point) pts[x] = components_to_json(comp, partition_key);
    j[pair_key(pair)] = std::move(pts);
  }
  return j;
}

Transitions transitions_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where, "expected an object keyed by \"alpha,beta\"");
  Transitions out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string w = child(where, it.key());
    ChartPair pair = parse_pair_key(it.key(), w);
    if (!it.value().is_object()) throw ParseError(w, "expected an object keyed by point");
    PointMorphisms& pm = out[pair];
    for (auto pt = it.value().begin(); pt != it.value().end(); ++pt) {
      pm[pt.key()] = components_from_json<ComponentMap>(pt.value(), parse_integer_partition, child(w, pt.key()));
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- tensors

Json to_json(const MultiTensor& t) {
  check_shape(t);
  Json j;
  j["degrees"] = t.degrees;
  j["dims"] = t.dims;
  j["out_dim"] = t.out_dim;
  std::size_t pos = 0;
  Json coeffs;
  write_nested(t, 0, pos, coeffs);
  j["coeffs"] = std::move(coeffs);
  return j;
}

MultiTensor tensor_from_json(const Json& j, const std::string& where) {
  MultiTensor t;
  t.degrees = int_list(field(j, "degrees", where), child(where, "degrees"));
  t.dims = int_list(field(j, "dims", where), child(where, "dims"));
  t.out_dim = to_int(field(j, "out_dim", where), child(where, "out_dim"));
  if (t.degrees.size() != t.dims.size()) throw ParseError(where, "degrees and dims differ in length");
  if (t.out_dim < 0 || std::any_of(t.dims.begin(), t.dims.end(), [](int d) { return d < 0; })) {
    throw ParseError(where, "negative dimension");
  }
  read_nested(field(j, "coeffs", where), t, 0, t.coeffs, child(where, "coeffs"));
  return t;
}

// ----------------------------------------------------------------- models

Json to_json(const SymModel& m) { return Json{{"n", m.n}, {"dims", m.dims}, {"points", m.points}}; }

SymModel sym_model_from_json(const Json& j, const std::string& where) {
  SymModel m;
  m.n = to_int(field(j, "n", where), child(where, "n"));
  m.dims = int_list(field(j, "dims", where), child(where, "dims"));
  m.points = string_list(field(j, "points", where), child(where, "points"));
  located(where, [&]() {
    validate(m);
    return 0;
  });
  return m;
}

Json to_json(const SplitModel& m) { return Json{{"n", m.n}, {"ranks", m.ranks}, {"points", m.points}}; }

SplitModel split_model_from_json(const Json& j, const std::string& where) {
  SplitModel m;
  m.n = to_int(field(j, "n", where), child(where, "n"));
  m.ranks = int_list(field(j, "ranks", where), child(where, "ranks"));
  m.points = string_list(field(j, "points", where), child(where, "points"));
  located(where, [&]() {
    validate(m);
    return 0;
  });
  return m;
}

// -------------------------------------------------------------- morphisms

Json to_json(const SymMorphism& tau) {
  return Json{{"kind", "sym"},
              {"source", to_json(tau.source)},
              {"target", to_json(tau.target)},
              {"base_map", base_map_to_json(tau.source.points, tau.target.points, tau.base_map)},
              {"components", per_point_to_json(tau.source.points, tau.components, partition_key)}};
}

Json to_json(const GradedMorphism& mu) {
  return Json{{"kind", "nman"},
              {"source", to_json(mu.source)},
              {"target", to_json(mu.target)},
              {"base_map", base_map_to_json(mu.source.points, mu.target.points, mu.base_map)},
              {"components", per_point_to_json(mu.source.points, mu.components, partition_key)}};
}

Json to_json(const GeneralDecMorphism& g) {
  return Json{{"kind", "general"},
              {"source", to_json(g.source)},
              {"target", to_json(g.target)},
              {"base_map", base_map_to_json(g.source.points, g.target.points, g.base_map)},
              {"components", per_point_to_json(g.source.points, g.components, set_partition_key)}};
}

SymMorphism sym_morphism_from_json(const Json& j, const std::string& where) {
  check_kind(j, "sym", where);
  SymMorphism tau;
  tau.source = sym_model_from_json(field(j, "source", where), child(where, "source"));
  tau.target = sym_model_from_json(field(j, "target", where), child(where, "target"));
  tau.base_map = base_map_from_json(field(j, "base_map", where), tau.source.points, tau.target.points,
                                    child(where, "base_map"));
  tau.components = per_point_from_json<ComponentMap>(field(j, "components", where), tau.source.points,
                                                     parse_integer_partition, child(where, "components"));
  located(where, [&]() {
    normalize(tau);
    return 0;
  });
  return tau;
}

GradedMorphism graded_morphism_from_json(const Json& j, const std::string& where) {
  check_kind(j, "nman", where);
  GradedMorphism mu;
  mu.source = split_model_from_json(field(j, "source", where), child(where, "source"));
  mu.target = split_model_from_json(field(j, "target", where), child(where, "target"));
  mu.base_map = base_map_from_json(field(j, "base_map", where), mu.source.points, mu.target.points,
                                   child(where, "base_map"));
  mu.components = per_point_from_json<ComponentMap>(field(j, "components", where), mu.source.points,
                                                    parse_integer_partition, child(where, "components"));
  located(where, [&]() {
    normalize(mu);
    return 0;
  });
  return mu;
}

GeneralDecMorphism general_morphism_from_json(const Json& j, const std::string& where) {
  check_kind(j, "general", where);
  GeneralDecMorphism g;
  g.source = sym_model_from_json(field(j, "source", where), child(where, "source"));
  g.target = sym_model_from_json(field(j, "target", where), child(where, "target"));
  g.base_map = base_map_from_json(field(j, "base_map", where), g.source.points, g.target.points,
                                  child(where, "base_map"));
  g.components = per_point_from_json<PartitionComponents>(field(j, "components", where), g.source.points,
                                                          parse_partition, child(where, "components"));
  located(where, [&]() {
    normalize(g);
    return 0;
  });
  return g;
}

// --------------------------------------------------------------- cocycles

Json to_json(const SnCocycle& c) {
  Json cover = Json::array();
  for (std::size_t a = 0; a < c.cover.charts.size(); ++a) {
    cover.push_back(Json{{"chart", c.cover.charts[a]}, {"points", c.cover.points[a]}});
  }
  return Json{{"kind", "cocycle"},
              {"n", c.n},
              {"dims", c.dims},
              {"cover", std::move(cover)},
              {"transitions", transitions_to_json(c.transitions)}};
}

SnCocycle cocycle_from_json(const Json& j, const std::string& where) {
  check_kind(j, "cocycle", where);
  SnCocycle c;
  c.n = to_int(field(j, "n", where), child(where, "n"));
  c.dims = int_list(field(j, "dims", where), child(where, "dims"));
  located(where, [&]() {
    validate(SymModel{c.n, c.dims, {}});
    return 0;
  });
  const Json& cover = field(j, "cover", where);
  const std::string cw = child(where, "cover");
  if (!cover.is_array()) throw ParseError(cw, "expected an array of charts");
  for (std::size_t a = 0; a < cover.size(); ++a) {
    const std::string w = child(cw, std::to_string(a));
    std::string label = to_str(field(cover[a], "chart", w), child(w, "chart"));
    if (label.find(',') != std::string::npos) throw ParseError(child(w, "chart"), "chart labels may not contain ','");
    c.cover.charts.push_back(std::move(label));
    c.cover.points.push_back(string_list(field(cover[a], "points", w), child(w, "points")));
  }
  located(cw, [&]() {
    validate(c.cover);
    return 0;
  });
  c.transitions = transitions_from_json(field(j, "transitions", where), child(where, "transitions"));
  for (const auto& [pair, per_point] : c.transitions) {
    const std::string w = child(child(where, "transitions"), pair_key(pair));
    located(w, [&]() {
      chart_index(c.cover, pair.first);
      chart_index(c.cover, pair.second);
      for (const auto& [x, comp] : per_point) point_morphism(c, pair.first, pair.second, x);
      return 0;
    });
  }
  return c;
}

Json to_json(const CocycleMorphismFile& f) {
  return Json{{"kind", "cocycle_morphism"},
              {"source", to_json(f.source)},
              {"target", to_json(f.target)},
              {"base_map", f.morphism.base_map},
              {"components", transitions_to_json(f.morphism.components)}};
}

CocycleMorphismFile cocycle_morphism_from_json(const Json& j, const std::string& where) {
  check_kind(j, "cocycle_morphism", where);
  CocycleMorphismFile f;
  f.source = cocycle_from_json(field(j, "source", where), child(where, "source"));
  f.target = cocycle_from_json(field(j, "target", where), child(where, "target"));
  const Json& base = field(j, "base_map", where);
  const std::string bw = child(where, "base_map");
  if (!base.is_object()) throw ParseError(bw, "expected an object keyed by point");
  for (auto it = base.begin(); it != base.end(); ++it) {
    f.morphism.base_map[it.key()] = to_str(it.value(), child(bw, it.key()));
  }
  f.morphism.components = transitions_from_json(field(j, "components", where), child(where, "components"));
  return f;
}

// ---------------------------------------------------------- decompositions

Json to_json(const DecomposeInput& d) {
  const SymModel& m = d.splitting.model;
  Json splitting = Json::object();
  for (std::size_t x = 0; x < m.points.size(); ++x) {
    splitting[m.points[x]] = components_to_json(d.splitting.components.at(x), subset_key);
  }
  Json cores = Json::object();
  for (const auto& [rho, dec] : d.cores) {
    cores[rho.to_string()] = per_point_to_json(m.points, dec.components, set_partition_key);
  }
  Json j{{"kind", "decompose"}, {"model", to_json(m)}, {"splitting", std::move(splitting)}, {"cores", std::move(cores)}};
  if (!d.orderings.empty()) {
    Json orderings = Json::array();
    for (const auto& ord : d.orderings) {
      Json o = Json::array();
      for (const auto& s : ord) o.push_back(s.to_string());
      orderings.push_back(std::move(o));
    }
    j["orderings"] = std::move(orderings);
  }
  return j;
}

DecomposeInput decompose_input_from_json(const Json& j, const std::string& where) {
  check_kind(j, "decompose", where);
  DecomposeInput d;
  const SymModel m = sym_model_from_json(field(j, "model", where), child(where, "model"));
  d.splitting.model = m;
  d.splitting.components = per_point_from_json<std::map<Subset, MultiTensor, CanonicalLess>>(
      field(j, "splitting", where), m.points, parse_subset, child(where, "splitting"));
  located(child(where, "splitting"), [&]() {
    normalize(d.splitting);
    return 0;
  });
  const Json& cores = field(j, "cores", where);
  const std::string cw = child(where, "cores");
  if (!cores.is_object()) throw ParseError(cw, "expected an object keyed by partition");
  for (auto it = cores.begin(); it != cores.end(); ++it) {
    const std::string w = child(cw, it.key());
    CoreDecomposition dec;
    dec.rho = located(w, [&]() { return parse_partition(it.key()); });
    dec.model = m;
    dec.components = per_point_from_json<PartitionComponents>(it.value(), m.points, parse_partition, w);
    located(w, [&]() {
      normalize(dec);
      return 0;
    });
    d.cores.emplace(dec.rho, std::move(dec));
  }
  auto ord = j.find("orderings");
  if (ord != j.end()) {
    const std::string ow = child(where, "orderings");
    if (!ord->is_array()) throw ParseError(ow, "expected an array of orderings");
    for (std::size_t i = 0; i < ord->size(); ++i) {
      const std::string w = child(ow, std::to_string(i));
      std::vector<Subset> o;
      for (const auto& s : string_list((*ord)[i], w)) o.push_back(located(w, [&]() { return parse_subset(s); }));
      d.orderings.push_back(std::move(o));
    }
  }
  return d;
}

// -------------------------------------------------------------- files

std::string kind_of(const Json& j, const std::string& where) {
  return to_str(field(j, "kind", where), child(where, "kind"));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + " at byte " + std::to_string(e.byte), e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << "\n";
  if (!out) throw Error("cannot write " + path);
}

}  // namespace gvb::io
