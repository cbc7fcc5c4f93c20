#include "ergolab/cli.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>

#include <CLI11.hpp>

#include "ergolab/fberg.hpp"
#include "ergolab/json_io.hpp"
#include "ergolab/line_search.hpp"
#include "ergolab/removal.hpp"
#include "ergolab/stationary.hpp"
#include "ergolab/words.hpp"
#include "ergolab/zd_system.hpp"

namespace ergolab::cli {

namespace {

struct Outcome {
  Json results = Json::object();
  int code = kOk;
  bool exhaustive = true;
};

struct Context {
  Json inputs = Json::object();
  std::optional<std::uint64_t> seed;

  Json file(const std::string& key, const std::string& path) {
    Json j = load_json_file(path);
    inputs[key] = j;
    return j;
  }
  Json inline_json(const std::string& key, const std::string& text) {
    Json j;
    try {
      j = parse_json_text(text);
    } catch (const JsonPathError& e) {
      throw JsonPathError("--" + key + " " + e.path(), e.message());
    }
    inputs[key] = j;
    return j;
  }
};

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

Json words_json(const IndexSet& set, unsigned k, std::size_t N) {
  Json out = Json::array();
  for (auto i : set) out.push_back(word_from_index(i, k, N));
  return out;
}

IndexSet words_from_json(const Json& j, unsigned k, std::size_t N, const std::string& path) {
  if (!j.is_array()) throw JsonPathError(path, "expected an array of words");
  std::set<std::size_t> s;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_string()) throw JsonPathError(p, "expected a word");
    Word w = j[i].get<std::string>();
    if (w.size() != N) throw JsonPathError(p, "word \"" + w + "\" does not have length " + std::to_string(N));
    try {
      validate_word(w, k);
    } catch (const Error& e) {
      throw JsonPathError(p, e.what());
    }
    s.insert(word_index(w, k));
  }
  return IndexSet(s.begin(), s.end());
}

std::vector<std::size_t> coords_from_json(const Json& j, std::size_t dim, const std::string& path) {
  std::vector<std::size_t> c = index_set_from_json(j, dim, path);
  return c;
}

Json stationarity_json(const StationarityResult& r) {
  Json out = {{"holds", r.holds}, {"subspaces_checked", r.subspaces_checked}};
  if (r.witness)
    out["witness"] = {{"dim", r.witness->dim}, {"first", r.witness->first}, {"second", r.witness->second}};
  return out;
}

Json correspondence_report(const CorrespondenceMeasure& mu, const IndexSet& a, unsigned k, std::size_t N) {
  Json pts = Json::object();
  for (auto& w : all_words(k, mu.L)) pts[w] = mu.point_event(word_index(w, k)).to_string();
  Json lines = Json::array();
  for (auto& line : enumerate_lines(k, mu.L)) {
    Json ws = Json::array();
    for (auto p : line) ws.push_back(word_from_index(p, k, mu.L));
    lines.push_back({{"line", ws}, {"value", mu.line_event(line).to_string()}});
  }
  return {{"correspondence", to_json(mu)},
          {"point_events", pts},
          {"line_events", lines},
          {"identities", correspondence_identities(mu, a, N)},
          {"line_free", !contains_line(a, k, N)}};
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact finite checks for multiple recurrence, joinings and density Hales-Jewett", "ergolab"};
  app.require_subcommand(1);
  bool timing = false;
  app.add_flag("--timing", timing, "add wall_time to the report");

  Context ctx;
  std::function<Outcome()> run;
  std::string command;

  // shared option storage
  std::string system_file, set_text, sets_text, coords_text, seq_file, json_file, schema = "auto";
  std::string mode = "exhaustive", gens_text;
  std::uint64_t N = 0, H = 0, k = 2, L = 1, depth = 2, dim_cap = 1, budget = 50'000'000, seed = 0;
  std::uint64_t size = 2, d = 3, samples = 1000;
  bool structure = false;

  auto* avg = app.add_subcommand("avg", "nonconventional ergodic average of indicator functions");
  avg->add_option("--system", system_file, "system JSON file")->required();
  avg->add_option("--sets", sets_text, "one index set per generator, e.g. [[0],[1,2]]")->required();
  avg->add_option("-N", N, "number of terms")->required();
  avg->callback([&] {
    command = "avg";
    run = [&] {
      FiniteZdSystem sys = system_from_json(ctx.file("system", system_file), "$");
      Json sj = ctx.inline_json("sets", sets_text);
      if (!sj.is_array() || sj.size() != sys.dim())
        throw JsonPathError("--sets", "expected " + std::to_string(sys.dim()) + " index sets");
      std::vector<SimpleFunction> fs;
      for (std::size_t i = 0; i < sj.size(); ++i)
        fs.push_back(SimpleFunction::indicator(sys.size(), index_set_from_json(sj[i], sys.size(), "--sets[" + std::to_string(i) + "]")));
      ctx.inputs["N"] = N;
      SimpleFunction f = nonconventional_average(sys, fs, N);
      Outcome o;
      Json vals = Json::array();
      for (auto& v : f.values) vals.push_back(v.to_string());
      std::vector<IndexSet> sets;
      for (std::size_t i = 0; i < sj.size(); ++i) sets.push_back(index_set_from_json(sj[i], sys.size(), "--sets"));
      o.results = {{"average", vals}, {"integral", sys.space().integral(f).to_string()},
                   {"limit", cesaro_limit_scalar(sys, sets).to_string()}, {"period", period(sys)}};
      return o;
    };
  });

  auto* fjoin = app.add_subcommand("fjoin", "Furstenberg self-joining and its lemma checks");
  fjoin->add_option("--system", system_file, "system JSON file")->required();
  fjoin->add_option("--coords", coords_text, "0-based generator indices, e.g. [0,2]");
  fjoin->add_flag("--structure", structure, "also evaluate the up-set structure predicates");
  fjoin->callback([&] {
    command = "fjoin";
    run = [&] {
      FiniteZdSystem sys = system_from_json(ctx.file("system", system_file), "$");
      std::vector<std::size_t> coords;
      if (coords_text.empty()) {
        for (std::size_t i = 0; i < sys.dim(); ++i) coords.push_back(i);
      } else {
        coords = coords_from_json(ctx.inline_json("coords", coords_text), sys.dim(), "--coords");
      }
      if (coords.empty()) throw InvalidInput("--coords must name at least one generator");
      FurstenbergJoining fj = furstenberg_joining(sys, coords);
      bool project = true;
      for (std::uint32_t pick = 1; pick < (1U << coords.size()); ++pick) {
        std::vector<std::size_t> sub;
        for (std::size_t i = 0; i < coords.size(); ++i)
          if ((pick >> i) & 1U) sub.push_back(coords[i]);
        project = project && check_project_lemma(fj, sub);
      }
      Json lemmas = {{"offdiag_invariance", check_offdiag_invariance(fj)},
                     {"diagonal_invariance", check_diagonal_invariance(fj)},
                     {"project", project},
                     {"diag", check_diag_lemma(fj)}};
      Outcome o;
      o.results = {{"coupling", to_json(fj.coupling)}, {"period", fj.period}, {"coords", coords}, {"lemmas", lemmas}};
      bool ok = lemmas["offdiag_invariance"] && lemmas["diagonal_invariance"] && project && lemmas["diag"];
      if (structure) {
        ctx.inputs["structure"] = true;
        auto rep = fberg_structure_predicates(sys);
        Json s = {{"clause1", to_json(rep.clause1)}, {"clause2", to_json(rep.clause2)},
                  {"pairs_checked", rep.pairs_checked}};
        if (rep.clause2_pair) s["clause2_pair"] = {to_json(rep.clause2_pair->first), to_json(rep.clause2_pair->second)};
        o.results["structure"] = s;
        ok = ok && rep.clause1.holds && rep.clause2.holds;
      }
      o.code = ok ? kOk : kViolated;
      return o;
    };
  });

  auto* recur = app.add_subcommand("recur", "multiple recurrence limit and first return witness");
  recur->add_option("--system", system_file, "system JSON file")->required();
  recur->add_option("--set", set_text, "index set, e.g. [0]")->required();
  recur->callback([&] {
    command = "recur";
    run = [&] {
      FiniteZdSystem sys = system_from_json(ctx.file("system", system_file), "$");
      IndexSet a = index_set_from_json(ctx.inline_json("set", set_text), sys.size(), "--set");
      auto cert = recurrence_certificate(sys, a);
      Outcome o;
      o.results = {{"limit", cert.limit.to_string()}, {"measure", sys.space().measure(a).to_string()}};
      o.results["witness_n"] = cert.witness_n ? Json(*cert.witness_n) : Json(nullptr);
      if (sys.space().measure(a).sign() > 0 && (cert.limit.sign() <= 0 || !cert.witness_n)) o.code = kViolated;
      return o;
    };
  });

  auto* vdc = app.add_subcommand("vdc", "van der Corput inequality for a rational vector sequence");
  vdc->add_option("--seq", seq_file, "sequence JSON file")->required();
  vdc->add_option("-N", N, "averaging length")->required();
  vdc->add_option("-H", H, "number of shifts")->required();
  vdc->callback([&] {
    command = "vdc";
    run = [&] {
      VectorSequence seq = sequence_from_json(ctx.file("seq", seq_file), "$");
      ctx.inputs["N"] = N;
      ctx.inputs["H"] = H;
      auto r = vdc_inequality(seq, N, H);
      Outcome o;
      o.results = {{"lhs", r.lhs.to_string()}, {"rhs", r.rhs.to_string()}, {"holds", r.holds}};
      o.code = r.holds ? kOk : kViolated;
      return o;
    };
  });

  auto* joint = app.add_subcommand("joint", "joining predicates, or group-rotation extension");
  joint->add_option("--json", json_file, "joining or group-rotation JSON file")->required();
  joint->callback([&] {
    command = "joint";
    run = [&] {
      Json j = ctx.file("input", json_file);
      Outcome o;
      if (j.contains("orders")) {
        GroupRotationSystem rot = rotation_from_json(j, "$");
        bool input_member = class_membership_Z0join(rot);
        auto ext = direct_sum_extension(rot);
        bool ext_member = class_membership_Z0join(ext.system);
        o.results = {{"input_member", input_member}, {"extension", to_json(ext.system)},
                     {"extension_member", ext_member}, {"factor_map", ext.factor.map()}};
        o.code = ext_member ? kOk : kViolated;
        return o;
      }
      FiniteZdSystem joining = system_from_json(j.value("joining", Json()), "$.joining");
      if (!j.contains("factors") || !j["factors"].is_array()) throw JsonPathError("$", "missing array \"factors\"");
      std::vector<FactorMap> maps;
      for (std::size_t i = 0; i < j["factors"].size(); ++i) {
        const std::string p = "$.factors[" + std::to_string(i) + "]";
        const Json& f = j["factors"][i];
        FiniteZdSystem target = system_from_json(f.value("target", Json()), p + ".target");
        if (!f.contains("map") || !f["map"].is_array()) throw JsonPathError(p, "missing array \"map\"");
        PointMap m;
        for (std::size_t x = 0; x < f["map"].size(); ++x) {
          const Json& v = f["map"][x];
          if (!v.is_number_unsigned()) throw JsonPathError(p + ".map[" + std::to_string(x) + "]", "expected an index");
          m.push_back(v.get<std::size_t>());
        }
        try {
          maps.emplace_back(joining, target, m);
        } catch (const Error& e) {
          throw JsonPathError(p, e.what());
        }
      }
      std::vector<SubgroupSpec> gammas;
      if (!j.contains("gammas") || !j["gammas"].is_array()) throw JsonPathError("$", "missing array \"gammas\"");
      for (std::size_t i = 0; i < j["gammas"].size(); ++i)
        gammas.push_back(subgroup_from_json(j["gammas"][i], "$.gammas[" + std::to_string(i) + "]"));
      if (gammas.size() != maps.size()) throw JsonPathError("$.gammas", "expected one subgroup per factor");
      SubgroupSpec lambda = j.contains("lambda") ? subgroup_from_json(j["lambda"], "$.lambda") : SubgroupSpec{};
      if (maps.size() == 2 && !j.contains("lambda")) {
        auto r = two_fold_joining_check(joining, maps[0], maps[1], gammas[0], gammas[1]);
        o.results = {{"mode", "two_fold"}, {"check", to_json(r)}};
        o.code = r.holds ? kOk : kViolated;
      } else {
        auto r = joint_distribution_predicate(joining, maps, gammas, lambda);
        Json per = Json::array();
        for (auto& c : r.per_coordinate) per.push_back(to_json(c));
        o.results = {{"mode", "joint"}, {"holds", r.holds}, {"per_coordinate", per}};
        o.code = r.holds ? kOk : kViolated;
      }
      return o;
    };
  });

  auto* removal = app.add_subcommand("removal", "infinitary removal: instance checks and counterexample search");
  removal->require_subcommand(1);
  auto* rcheck = removal->add_subcommand("check", "check hypotheses and conclusion of one instance");
  rcheck->add_option("--json", json_file, "removal instance JSON file")->required();
  rcheck->callback([&] {
    command = "removal check";
    run = [&] {
      RemovalInstance inst = removal_from_json(ctx.file("instance", json_file), "$");
      auto h = check_hypotheses(inst);
      Outcome o;
      Json hyp = {{"i", h.i}, {"ii", h.ii}, {"iii", h.iii}};
      Json witness = Json::object();
      if (!h.witness_i.empty()) witness["i"] = h.witness_i;
      if (!h.witness_ii.empty()) witness["ii"] = h.witness_ii;
      if (!h.witness_iii.empty()) witness["iii"] = h.witness_iii;
      if (h.relind_witness) witness["relind"] = to_json(*h.relind_witness);
      Json concl;
      if (h.all()) {
        auto c = evaluate_conclusion(inst);
        concl = {{"holds", c.holds}, {"product_mass", c.product_mass.to_string()},
                 {"intersection_mass", c.intersection_mass.to_string()}};
        o.code = c.holds ? kOk : kViolated;
      } else {
        o.code = kViolated;
      }
      o.results = {{"hypotheses", hyp}, {"conclusion", concl}, {"witness", witness}};
      return o;
    };
  });
  auto* rsearch = removal->add_subcommand("search", "search for a counterexample");
  rsearch->add_option("--mode", mode, "exhaustive or random")->check(CLI::IsMember({"exhaustive", "random"}));
  rsearch->add_option("--size", size, "number of points");
  rsearch->add_option("-d", d, "arity");
  rsearch->add_option("--generators", gens_text, "JSON list drawn from diagonal, product, fiber, furstenberg");
  rsearch->add_option("--samples", samples, "valid instances wanted in random mode");
  rsearch->add_option("--seed", seed, "random seed");
  rsearch->add_option("--budget", budget, "candidate instance budget");
  rsearch->callback([&] {
    command = "removal search";
    run = [&] {
      SearchConfig cfg;
      cfg.mode = mode;
      cfg.space_size = size;
      cfg.d = static_cast<unsigned>(d);
      cfg.seed = seed;
      cfg.samples = samples;
      cfg.budget = budget;
      if (!gens_text.empty()) {
        Json g = ctx.inline_json("generators", gens_text);
        if (!g.is_array()) throw JsonPathError("--generators", "expected an array of names");
        cfg.generators.clear();
        for (auto& x : g) {
          if (!x.is_string()) throw JsonPathError("--generators", "expected generator names");
          cfg.generators.push_back(x.get<std::string>());
        }
      }
      ctx.inputs["config"] = {{"mode", mode}, {"size", size}, {"d", d}, {"samples", samples}, {"budget", budget},
                              {"generators", cfg.generators}};
      if (mode == "random") {
        ctx.seed = seed;
        ctx.inputs["seed"] = seed;
      }
      auto r = search_counterexample(cfg);
      Outcome o;
      o.results = {{"examined", r.examined}, {"excluded", r.excluded}, {"couplings", r.couplings}};
      o.results["counterexample"] = r.counterexample ? to_json(*r.counterexample) : Json(nullptr);
      o.exhaustive = r.exhaustive;
      o.code = r.counterexample ? kViolated : (r.exhaustive ? kOk : kNonExhaustive);
      return o;
    };
  });

  std::string words_text;
  auto add_correspond = [&](CLI::App* sub, const std::string& name) {
    sub->add_option("--json", json_file, "file with k, N, L and the word set A");
    sub->add_option("-k", k, "alphabet size");
    sub->add_option("-N", N, "word length");
    sub->add_option("-L", L, "length of the W part");
    sub->add_option("--set", words_text, "word set, e.g. [\"12\",\"21\"]");
    sub->callback([&, name] {
      command = name;
      run = [&] {
        Json a;
        if (!json_file.empty()) {
          Json j = ctx.file("input", json_file);
          for (const char* key : {"k", "N", "L", "A"})
            if (!j.contains(key)) throw JsonPathError("$", std::string("missing field \"") + key + "\"");
          for (const char* key : {"k", "N", "L"})
            if (!j[key].is_number_unsigned()) throw JsonPathError(std::string("$.") + key, "expected a non-negative integer");
          k = j["k"].get<std::uint64_t>();
          N = j["N"].get<std::uint64_t>();
          L = j["L"].get<std::uint64_t>();
          a = j["A"];
        } else {
          if (words_text.empty() || N == 0) throw InvalidInput("give --json, or -N and --set");
          a = ctx.inline_json("set", words_text);
          ctx.inputs["k"] = k;
          ctx.inputs["N"] = N;
          ctx.inputs["L"] = L;
        }
        validate_alphabet(static_cast<unsigned>(k));
        const unsigned kk = static_cast<unsigned>(k);
        IndexSet set = words_from_json(a, kk, N, json_file.empty() ? "--set" : "$.A");
        auto mu = build_correspondence(set, kk, N, L);
        Outcome o;
        o.results = correspondence_report(mu, set, kk, N);
        o.code = o.results["identities"].get<bool>() ? kOk : kViolated;
        return o;
      };
    });
  };

  std::string weights_text;
  auto add_stationarity = [&](CLI::App* sub, const std::string& name) {
    sub->add_option("--json", json_file, "law JSON file");
    sub->add_option("--iid", weights_text, "build the i.i.d. law from these weights, e.g. [\"1/2\",\"1/2\"]");
    sub->add_option("-k", k, "alphabet size for --iid");
    sub->add_option("--depth", depth, "truncation depth for --iid");
    sub->add_option("--dim-cap", dim_cap, "largest subspace dimension checked");
    sub->add_flag("--structure", structure, "also evaluate the line structure predicates");
    sub->callback([&, name] {
      command = name;
      run = [&] {
        StationaryLawTruncation law;
        if (!json_file.empty()) {
          law = law_from_json(ctx.file("law", json_file), "$");
        } else if (!weights_text.empty()) {
          Json w = ctx.inline_json("iid", weights_text);
          ctx.inputs["k"] = k;
          ctx.inputs["depth"] = depth;
          law = iid_law(static_cast<unsigned>(k), depth, space_from_json(Json{{"weights", w}}, "--iid"));
        } else {
          throw InvalidInput("give --json or --iid");
        }
        ctx.inputs["dim_cap"] = dim_cap;
        Outcome o;
        auto st = strong_stationarity_check(law, dim_cap);
        o.results = {{"stationarity", stationarity_json(st)}};
        o.code = st.holds ? kOk : kViolated;
        if (st.holds && law.depth >= 1) {
          auto m = marginals(law);
          o.results["point"] = to_json(m.point);
          o.results["line"] = to_json(m.line);
          o.results["lines_compared"] = m.lines_compared;
          if (structure) {
            ctx.inputs["structure"] = true;
            auto rep = line_structure_predicates(law);
            Json s = {{"line1", to_json(rep.line1)}, {"line2", to_json(rep.line2)},
                      {"infdhj2", rep.infdhj2}, {"tuples_checked", rep.tuples_checked}};
            if (rep.line2_pair) s["line2_pair"] = {to_json(rep.line2_pair->first), to_json(rep.line2_pair->second)};
            if (!rep.infdhj2) s["infdhj2_witness"] = rep.infdhj2_witness;
            o.results["structure"] = s;
            if (!(rep.line1.holds && rep.line2.holds && rep.infdhj2)) o.code = kViolated;
          }
        }
        return o;
      };
    });
  };

  auto* dhj = app.add_subcommand("dhj", "density Hales-Jewett combinatorics");
  dhj->require_subcommand(1);
  auto* lines = dhj->add_subcommand("lines", "enumerate combinatorial lines");
  lines->add_option("-k", k, "alphabet size")->required();
  lines->add_option("-N", N, "word length")->required();
  lines->callback([&] {
    command = "dhj lines";
    run = [&] {
      ctx.inputs["k"] = k;
      ctx.inputs["N"] = N;
      const unsigned kk = static_cast<unsigned>(k);
      validate_alphabet(kk);
      auto ls = enumerate_lines(kk, N);
      Json arr = Json::array();
      for (auto& l : ls) arr.push_back(words_json(IndexSet(l.begin(), l.end()), kk, N));
      Outcome o;
      const std::uint64_t expected = ipow(kk + 1, N) - ipow(kk, N);
      o.results = {{"count", ls.size()}, {"expected", expected}, {"lines", arr}};
      o.code = ls.size() == expected ? kOk : kViolated;
      return o;
    };
  });
  auto* maxfree = dhj->add_subcommand("maxfree", "largest line-free set");
  maxfree->add_option("-k", k, "alphabet size")->required();
  maxfree->add_option("-N", N, "word length")->required();
  maxfree->add_option("--budget", budget, "search node budget");
  maxfree->callback([&] {
    command = "dhj maxfree";
    run = [&] {
      ctx.inputs["k"] = k;
      ctx.inputs["N"] = N;
      ctx.inputs["budget"] = budget;
      const unsigned kk = static_cast<unsigned>(k);
      auto r = max_line_free(kk, N, budget);
      Outcome o;
      o.results = {{"size", r.size}, {"set", words_json(r.set, kk, N)}, {"exhaustive", r.exhaustive}, {"nodes", r.nodes}};
      o.exhaustive = r.exhaustive;
      o.code = r.exhaustive ? kOk : kNonExhaustive;
      return o;
    };
  });
  auto* force = dhj->add_subcommand("force", "dense sets contain L-dimensional subspaces");
  force->add_option("-k", k, "alphabet size")->required();
  force->add_option("-L", L, "subspace dimension")->required();
  force->add_option("-N", N, "word length")->required();
  force->add_option("--budget", budget, "set budget");
  force->callback([&] {
    command = "dhj force";
    run = [&] {
      ctx.inputs["k"] = k;
      ctx.inputs["L"] = L;
      ctx.inputs["N"] = N;
      ctx.inputs["budget"] = budget;
      const unsigned kk = static_cast<unsigned>(k);
      auto r = subspace_forcing_check(kk, L, N, budget);
      Outcome o;
      o.results = {{"holds", r.holds}, {"special_family_holds", r.special_family_holds},
                   {"general_holds", r.general_holds}, {"sets_checked", r.sets_checked},
                   {"threshold", (Rational(1) - Rational(1, static_cast<long>(ipow(kk, 2 * L)))).to_string()}};
      o.results["counterexample"] = r.counterexample ? words_json(*r.counterexample, kk, N) : Json(nullptr);
      o.code = r.holds ? kOk : kViolated;
      return o;
    };
  });
  add_correspond(dhj->add_subcommand("correspond", "correspondence measure of a word set"), "dhj correspond");
  add_stationarity(dhj->add_subcommand("stationarity", "strong stationarity of a law"), "dhj stationarity");
  add_correspond(app.add_subcommand("correspond", "correspondence measure of a word set"), "correspond");
  add_stationarity(app.add_subcommand("stationarity", "strong stationarity of a law"), "stationarity");

  auto* validate = app.add_subcommand("validate", "validate a JSON document");
  validate->add_option("--json", json_file, "document to validate")->required();
  validate->add_option("--schema", schema, "schema name, or auto");
  validate->callback([&] {
    command = "validate";
    run = [&] {
      Json j = ctx.file("document", json_file);
      const std::string s = schema == "auto" ? detect_schema(j) : schema;
      validate_document(j, s);
      Outcome o;
      o.results = {{"ok", true}, {"schema", s}};
      return o;
    };
  });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  const auto start = std::chrono::steady_clock::now();
  Json report = {{"command", command}};
  int code = kOk;
  try {
    Outcome o = run();
    report["results"] = o.results;
    report["exhaustive"] = o.exhaustive;
    code = o.code;
  } catch (const JsonPathError& e) {
    report["error"] = {{"path", e.path()}, {"message", e.message()}};
    err << "input error at " << e.path() << ": " << e.message() << "\n";
    code = kInputError;
  } catch (const InvalidInput& e) {
    report["error"] = {{"message", e.what()}};
    err << "input error: " << e.what() << "\n";
    code = kInputError;
  } catch (const DimensionMismatch& e) {
    report["error"] = {{"message", e.what()}};
    err << "input error: " << e.what() << "\n";
    code = kInputError;
  } catch (const PreconditionError& e) {
    report["error"] = {{"message", e.what()}};
    err << "precondition failed: " << e.what() << "\n";
    code = kInputError;
  } catch (const BudgetExceeded& e) {
    report["error"] = {{"message", e.what()}};
    report["exhaustive"] = false;
    err << "budget exceeded: " << e.what() << "\n";
    code = kNonExhaustive;
  }
  report["inputs_digest"] = hex(fnv1a(canonical(ctx.inputs)));
  report["seed"] = ctx.seed ? Json(*ctx.seed) : Json(nullptr);
  if (timing)
    report["wall_time"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out << canonical(report) << "\n";
  return code;
}

}  // namespace ergolab::cli
