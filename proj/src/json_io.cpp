#include "ergolab/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace ergolab {

namespace {

std::string at(const std::string& path, const std::string& key) { return path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw JsonPathError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw JsonPathError(path, "missing field \"" + key + "\"");
  return *it;
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw JsonPathError(path, "expected an array");
  return j;
}

std::uint64_t unsigned_of(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw JsonPathError(path, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

long integer_of(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw JsonPathError(path, "expected an integer");
  return j.get<long>();
}

std::string string_of(const Json& j, const std::string& path) {
  if (!j.is_string()) throw JsonPathError(path, "expected a string");
  return j.get<std::string>();
}

// rethrow library validation errors with the location attached
template <class F>
auto located(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const JsonPathError&) {
    throw;
  } catch (const Error& e) {
    throw JsonPathError(path, e.what());
  }
}

Json mass_list(const std::map<std::string, Rational>& mass) {
  Json out = Json::array();
  for (auto& [cfg, m] : mass) out.push_back({{"config", cfg}, {"value", m.to_string()}});
  return out;
}

std::map<std::string, Rational> mass_from_list(const Json& j, const std::string& path) {
  std::map<std::string, Rational> out;
  const Json& arr = array(j, path);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = at(path, i);
    std::string cfg = string_of(field(arr[i], "config", p), at(p, "config"));
    Rational v = rational_from_json(field(arr[i], "value", p), at(p, "value"));
    if (!out.emplace(cfg, v).second) throw JsonPathError(p, "duplicate configuration \"" + cfg + "\"");
  }
  return out;
}

Mask mask_from_json(const Json& j, unsigned d, const std::string& path) {
  Mask m = 0;
  const Json& arr = array(j, path);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    auto c = unsigned_of(arr[i], at(path, i));
    if (c >= d) throw JsonPathError(at(path, i), "coordinate " + std::to_string(c) + " out of range");
    m |= Mask{1} << c;
  }
  return m;
}

Json mask_to_json(Mask m) {
  Json out = Json::array();
  for (unsigned i = 0; i < 32; ++i)
    if ((m >> i) & 1U) out.push_back(i);
  return out;
}

}  // namespace

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw JsonPathError("byte " + std::to_string(e.byte), "malformed JSON");
  }
}

Json load_json_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw InvalidInput("cannot read " + file);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_json_text(ss.str());
  } catch (const JsonPathError& e) {
    throw JsonPathError(file + " " + e.path(), e.message());
  }
}

std::string canonical(const Json& j) { return j.dump(); }

Json to_json(const Rational& r) { return r.to_string(); }

Json to_json(const ExactProbabilitySpace& s) {
  Json w = Json::array();
  for (auto& x : s.weights()) w.push_back(x.to_string());
  return {{"points", s.labels()}, {"weights", w}};
}

Json to_json(const Partition& p) { return p.blocks(); }

Json to_json(const Coupling& c) {
  Json mass = Json::array();
  for (auto& [t, m] : c.mass()) mass.push_back({{"tuple", t}, {"value", m.to_string()}});
  return {{"arity", c.arity()}, {"mass", mass}};
}

Json to_json(const FiniteZdSystem& sys) {
  Json gens = Json::array();
  for (auto& g : sys.generators()) gens.push_back(g.images());
  return {{"dim", sys.dim()}, {"space", to_json(sys.space())}, {"generators", gens}};
}

Json to_json(const SubgroupSpec& g) { return {{"vectors", g.vectors}}; }

Json to_json(const GroupRotationSystem& rot) { return {{"orders", rot.orders}, {"phi", rot.phi}}; }

Json to_json(const CombinatorialSubspace& s) {
  return {{"N", s.breakpoints}, {"I", s.wildcards}, {"w", s.templ}};
}

Json to_json(const VectorSequence& seq) {
  Json out = Json::array();
  for (auto& v : seq.entries) {
    Json row = Json::array();
    for (auto& x : v) row.push_back(x.to_string());
    out.push_back(row);
  }
  return {{"entries", out}};
}

Json to_json(const UpSet& u) {
  Json out = Json::array();
  for (Mask m : u.minimal_members()) out.push_back(mask_to_json(m));
  return out;
}

Json to_json(const RemovalInstance& inst) {
  Json psi = Json::array();
  for (auto& [e, p] : inst.psi) psi.push_back({{"e", mask_to_json(e)}, {"blocks", to_json(p)}});
  Json fams = Json::array();
  for (auto& row : inst.families) {
    Json r = Json::array();
    for (auto& m : row) r.push_back({{"upset", to_json(m.family)}, {"set", m.set}});
    fams.push_back(r);
  }
  return {{"space", to_json(inst.space)}, {"lambda", to_json(inst.lambda)}, {"psi", psi},
          {"families", fams}};
}

Json to_json(const StationaryLawTruncation& law) {
  return {{"k", law.k}, {"depth", law.depth}, {"values", law.values}, {"mass", mass_list(law.mass)}};
}

Json to_json(const CorrespondenceMeasure& mu) {
  return {{"k", mu.k}, {"L", mu.L}, {"mass", mass_list(mu.mass)}};
}

Json to_json(const RelIndWitness& w) {
  return {{"blocks", w.blocks}, {"lhs", w.lhs.to_string()}, {"rhs", w.rhs.to_string()}};
}

Json to_json(const JoiningCheck& c) {
  Json out = {{"holds", c.holds}};
  if (c.witness) out["witness"] = to_json(*c.witness);
  return out;
}

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw JsonPathError(path, "expected a rational string \"p/q\"");
  return located(path, [&] { return Rational::parse(j.get<std::string>()); });
}

ExactProbabilitySpace space_from_json(const Json& j, const std::string& path) {
  const Json& w = array(field(j, "weights", path), at(path, "weights"));
  std::vector<Rational> weights;
  for (std::size_t i = 0; i < w.size(); ++i) weights.push_back(rational_from_json(w[i], at(at(path, "weights"), i)));
  std::vector<std::string> labels;
  if (j.contains("points")) {
    const Json& p = array(j["points"], at(path, "points"));
    if (p.size() != w.size())
      throw JsonPathError(at(path, "points"), "has " + std::to_string(p.size()) + " entries but weights has " +
                                                  std::to_string(w.size()));
    for (auto& x : p) labels.push_back(x.is_string() ? x.get<std::string>() : x.dump());
  } else {
    for (std::size_t i = 0; i < w.size(); ++i) labels.push_back(std::to_string(i));
  }
  return located(path, [&] { return ExactProbabilitySpace(labels, weights); });
}

IndexSet index_set_from_json(const Json& j, std::size_t n, const std::string& path) {
  std::set<std::size_t> s;
  const Json& arr = array(j, path);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    auto x = unsigned_of(arr[i], at(path, i));
    if (x >= n) throw JsonPathError(at(path, i), "index " + std::to_string(x) + " out of range");
    s.insert(x);
  }
  return IndexSet(s.begin(), s.end());
}

Partition partition_from_json(const Json& j, std::size_t n, const std::string& path) {
  std::vector<IndexSet> blocks;
  const Json& arr = array(j, path);
  for (std::size_t b = 0; b < arr.size(); ++b) {
    IndexSet blk;
    const Json& row = array(arr[b], at(path, b));
    for (std::size_t i = 0; i < row.size(); ++i) blk.push_back(unsigned_of(row[i], at(at(path, b), i)));
    blocks.push_back(std::move(blk));
  }
  return located(path, [&] { return Partition(std::move(blocks), n); });
}

Coupling coupling_from_json(const Json& j, const ExactProbabilitySpace* base, const std::string& path) {
  const std::size_t d = unsigned_of(field(j, "arity", path), at(path, "arity"));
  const Json& arr = array(field(j, "mass", path), at(path, "mass"));
  std::map<Tuple, Rational> mass;
  std::size_t n = 0;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = at(at(path, "mass"), i);
    Tuple t;
    const Json& tj = array(field(arr[i], "tuple", p), at(p, "tuple"));
    for (std::size_t c = 0; c < tj.size(); ++c) t.push_back(unsigned_of(tj[c], at(at(p, "tuple"), c)));
    if (t.size() != d)
      throw JsonPathError(at(p, "tuple"), "has length " + std::to_string(t.size()) + ", arity is " + std::to_string(d));
    for (auto x : t) n = std::max(n, x + 1);
    Rational v = rational_from_json(field(arr[i], "value", p), at(p, "value"));
    if (v.sign() < 0) throw JsonPathError(at(p, "value"), "negative mass");
    if (v.is_zero()) continue;
    if (!mass.emplace(std::move(t), v).second) throw JsonPathError(p, "duplicate tuple");
  }
  std::vector<ExactProbabilitySpace> margs;
  if (j.contains("marginals")) {
    const Json& m = array(j["marginals"], at(path, "marginals"));
    if (m.size() != d) throw JsonPathError(at(path, "marginals"), "expected one space per coordinate");
    for (std::size_t i = 0; i < d; ++i) margs.push_back(space_from_json(m[i], at(at(path, "marginals"), i)));
  } else if (base) {
    margs.assign(d, *base);
  } else {
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<Rational> w(n, Rational(0));
      for (auto& [t, v] : mass) w[t[i]] += v;
      margs.push_back(ExactProbabilitySpace::from_weights(w));
    }
  }
  return located(path, [&] { return Coupling(std::move(margs), std::move(mass)); });
}

FiniteZdSystem system_from_json(const Json& j, const std::string& path) {
  ExactProbabilitySpace space = space_from_json(field(j, "space", path), at(path, "space"));
  const Json& g = array(field(j, "generators", path), at(path, "generators"));
  if (j.contains("dim") && unsigned_of(j["dim"], at(path, "dim")) != g.size())
    throw JsonPathError(at(path, "dim"), "does not match the number of generators");
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const std::string p = at(at(path, "generators"), i);
    std::vector<std::size_t> img;
    const Json& row = array(g[i], p);
    for (std::size_t x = 0; x < row.size(); ++x) img.push_back(unsigned_of(row[x], at(p, x)));
    if (img.size() != space.size())
      throw JsonPathError(p, "has " + std::to_string(img.size()) + " images for " +
                                 std::to_string(space.size()) + " points");
    gens.push_back(located(p, [&] { return Permutation(img); }));
  }
  return located(path, [&] { return FiniteZdSystem(space, gens); });
}

SubgroupSpec subgroup_from_json(const Json& j, const std::string& path) {
  const Json& v = array(j.is_array() ? j : field(j, "vectors", path), at(path, "vectors"));
  SubgroupSpec g;
  for (std::size_t i = 0; i < v.size(); ++i) {
    IntVector row;
    const Json& r = array(v[i], at(at(path, "vectors"), i));
    for (std::size_t c = 0; c < r.size(); ++c) row.push_back(integer_of(r[c], at(at(at(path, "vectors"), i), c)));
    g.vectors.push_back(row);
  }
  return g;
}

GroupRotationSystem rotation_from_json(const Json& j, const std::string& path) {
  GroupRotationSystem rot;
  const Json& o = array(field(j, "orders", path), at(path, "orders"));
  for (std::size_t i = 0; i < o.size(); ++i) rot.orders.push_back(integer_of(o[i], at(at(path, "orders"), i)));
  rot.phi = subgroup_from_json(field(j, "phi", path), at(path, "phi")).vectors;
  located(path, [&] { rot.validate(); return 0; });
  return rot;
}

CombinatorialSubspace subspace_from_json(const Json& j, unsigned k, const std::string& path) {
  CombinatorialSubspace s;
  const Json& n = array(field(j, "N", path), at(path, "N"));
  for (std::size_t i = 0; i < n.size(); ++i) s.breakpoints.push_back(unsigned_of(n[i], at(at(path, "N"), i)));
  const Json& I = array(field(j, "I", path), at(path, "I"));
  for (std::size_t i = 0; i < I.size(); ++i) {
    std::vector<std::size_t> row;
    const Json& r = array(I[i], at(at(path, "I"), i));
    for (std::size_t c = 0; c < r.size(); ++c) row.push_back(unsigned_of(r[c], at(at(at(path, "I"), i), c)));
    s.wildcards.push_back(row);
  }
  s.templ = string_of(field(j, "w", path), at(path, "w"));
  located(path, [&] { s.validate(k); return 0; });
  return s;
}

VectorSequence sequence_from_json(const Json& j, const std::string& path) {
  const Json& e = array(j.is_array() ? j : field(j, "entries", path), at(path, "entries"));
  VectorSequence seq;
  for (std::size_t i = 0; i < e.size(); ++i) {
    std::vector<Rational> row;
    const Json& r = array(e[i], at(at(path, "entries"), i));
    for (std::size_t c = 0; c < r.size(); ++c) row.push_back(rational_from_json(r[c], at(at(at(path, "entries"), i), c)));
    seq.entries.push_back(row);
  }
  located(path, [&] { seq.validate(); return 0; });
  return seq;
}

RemovalInstance removal_from_json(const Json& j, const std::string& path) {
  RemovalInstance inst;
  inst.space = space_from_json(field(j, "space", path), at(path, "space"));
  inst.lambda = coupling_from_json(field(j, "lambda", path), &inst.space, at(path, "lambda"));
  const unsigned d = inst.d();
  if (d < 2 || d > 6) throw JsonPathError(at(path, "lambda"), "arity must be between 2 and 6");
  const std::size_t n = inst.lambda.support_tuples().size();
  const Json& psi = array(field(j, "psi", path), at(path, "psi"));
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const std::string p = at(at(path, "psi"), i);
    Mask e = mask_from_json(field(psi[i], "e", p), d, at(p, "e"));
    Partition part = partition_from_json(field(psi[i], "blocks", p), n, at(p, "blocks"));
    if (!inst.psi.emplace(e, part).second) throw JsonPathError(p, "duplicate index set");
  }
  const Json& fams = array(field(j, "families", path), at(path, "families"));
  for (std::size_t i = 0; i < fams.size(); ++i) {
    std::vector<FamilyMember> row;
    const Json& r = array(fams[i], at(at(path, "families"), i));
    for (std::size_t m = 0; m < r.size(); ++m) {
      const std::string p = at(at(at(path, "families"), i), m);
      std::vector<Mask> gens;
      const Json& u = array(field(r[m], "upset", p), at(p, "upset"));
      for (std::size_t g = 0; g < u.size(); ++g) gens.push_back(mask_from_json(u[g], d, at(at(p, "upset"), g)));
      UpSet fam = located(at(p, "upset"), [&] { return UpSet::generate(d, gens); });
      row.push_back({fam, index_set_from_json(field(r[m], "set", p), inst.space.size(), at(p, "set"))});
    }
    inst.families.push_back(std::move(row));
  }
  located(path, [&] { inst.validate(); return 0; });
  return inst;
}

StationaryLawTruncation law_from_json(const Json& j, const std::string& path) {
  StationaryLawTruncation law;
  law.k = static_cast<unsigned>(unsigned_of(field(j, "k", path), at(path, "k")));
  law.depth = unsigned_of(field(j, "depth", path), at(path, "depth"));
  const Json& v = array(field(j, "values", path), at(path, "values"));
  for (auto& x : v) law.values.push_back(x.is_string() ? x.get<std::string>() : x.dump());
  law.mass = mass_from_list(field(j, "mass", path), at(path, "mass"));
  located(path, [&] { law.validate(); return 0; });
  return law;
}

CorrespondenceMeasure correspondence_from_json(const Json& j, const std::string& path) {
  CorrespondenceMeasure mu;
  mu.k = static_cast<unsigned>(unsigned_of(field(j, "k", path), at(path, "k")));
  mu.L = unsigned_of(field(j, "L", path), at(path, "L"));
  mu.mass = mass_from_list(field(j, "mass", path), at(path, "mass"));
  located(path, [&] {
    validate_alphabet(mu.k);
    const std::size_t len = ipow(mu.k, mu.L);
    Rational total;
    for (auto& [cfg, m] : mu.mass) {
      if (cfg.size() != len || cfg.find_first_not_of("01") != std::string::npos)
        throw InvalidInput("configuration \"" + cfg + "\" is not a 0/1 string of length " + std::to_string(len));
      if (m.sign() <= 0) throw InvalidInput("configuration \"" + cfg + "\" has non-positive mass");
      total += m;
    }
    if (total != Rational(1)) throw InvalidInput("mass sums to " + total.to_string() + ", not 1/1");
    return 0;
  });
  return mu;
}

std::string detect_schema(const Json& j) {
  if (j.is_array()) return "partition";
  if (!j.is_object()) throw JsonPathError("$", "expected an object or an array");
  if (j.contains("command") && j.contains("results")) return "report";
  if (j.contains("generators")) return "system";
  if (j.contains("orders")) return "rotation";
  if (j.contains("lambda")) return "removal";
  if (j.contains("depth")) return "law";
  if (j.contains("L") && j.contains("mass")) return "correspondence";
  if (j.contains("arity")) return "coupling";
  if (j.contains("weights")) return "space";
  if (j.contains("entries")) return "sequence";
  if (j.contains("vectors")) return "subgroup";
  if (j.contains("N") && j.contains("w")) return "subspace";
  throw JsonPathError("$", "cannot tell which schema this document follows");
}

void validate_document(const Json& j, const std::string& schema_in) {
  const std::string schema = schema_in == "auto" ? detect_schema(j) : schema_in;
  if (schema == "space") space_from_json(j);
  else if (schema == "partition") {
    std::size_t n = 0;
    for (auto& b : array(j, "$"))
      for (auto& x : array(b, "$"))
        if (x.is_number_unsigned()) n = std::max<std::size_t>(n, x.get<std::size_t>() + 1);
    partition_from_json(j, n);
  } else if (schema == "coupling") coupling_from_json(j);
  else if (schema == "system") system_from_json(j);
  else if (schema == "subgroup") subgroup_from_json(j);
  else if (schema == "rotation") rotation_from_json(j);
  else if (schema == "subspace") {
    unsigned k = 9;
    if (j.contains("k")) k = static_cast<unsigned>(unsigned_of(j["k"], "$.k"));
    subspace_from_json(j, k);
  } else if (schema == "sequence") sequence_from_json(j);
  else if (schema == "removal") removal_from_json(j);
  else if (schema == "law") law_from_json(j);
  else if (schema == "correspondence") correspondence_from_json(j);
  else if (schema == "report") {
    string_of(field(j, "command", "$"), "$.command");
    string_of(field(j, "inputs_digest", "$"), "$.inputs_digest");
    if (!field(j, "exhaustive", "$").is_boolean()) throw JsonPathError("$.exhaustive", "expected a boolean");
    if (!field(j, "results", "$").is_object()) throw JsonPathError("$.results", "expected an object");
    // embedded documents are validated against their own schemas
    const Json& r = j["results"];
    for (const char* key : {"coupling", "system", "instance", "law", "correspondence", "extension"})
      if (r.contains(key)) {
        try {
          validate_document(r[key], "auto");
        } catch (const JsonPathError& e) {
          throw JsonPathError("$.results." + std::string(key) + e.path().substr(1), e.message());
        }
      }
  } else {
    throw InvalidInput("unknown schema \"" + schema + "\"");
  }
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace ergolab
