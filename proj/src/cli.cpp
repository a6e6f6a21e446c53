#include "worldset/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "worldset/decide.hpp"
#include "worldset/factorize.hpp"
#include "worldset/format.hpp"
#include "worldset/query.hpp"
#include "worldset/translate.hpp"

namespace ws {

namespace {

std::string count_line(std::size_t n, const std::string& one, const std::string& many) {
  return "# " + std::to_string(n) + " " + (n == 1 ? one : many) + "\n";
}

using nlohmann::json;

// Raised for user errors the CLI reports without a stack of context.
struct UsageError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------- input

struct Source {
  std::string name;
  std::string text;
};

// A path if one exists, otherwise the argument itself is the document text.
Source load(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    std::stringstream ss;
    ss << in.rdbuf();
    return {arg, ss.str()};
  }
  return {"<arg>", arg};
}

template <class F>
auto with_source(const Source& s, F&& f) {
  try {
    return f(s.text);
  } catch (const ParseError& e) {
    throw UsageError(s.name + ":" + e.what());
  }
}

Document load_document(const std::string& arg) {
  Source s = load(arg);
  return with_source(s, [](std::string_view t) { return parse_document(t); });
}

std::string kind_of(const Document& d) {
  static const char* names[] = {"relation", "ctable", "xtable", "gtable", "gtabset",
                                "gtst",     "gwsd",   "world",  "worlds"};
  return names[d.index()];
}

CMultitable as_ctable(const Document& d) {
  if (auto* c = std::get_if<CMultitable>(&d)) return *c;
  if (auto* x = std::get_if<XMultitable>(&d)) return x->table;
  if (auto* g = std::get_if<GMultitable>(&d)) return to_c(*g);
  throw UsageError("expected a ctable, xtable or gtable document, got " + kind_of(d));
}

World world_of(const NamedRelation& r) { return World({{r.name, r.relation}}); }

DbSchema schema_of_world(const World& w) {
  DbSchema s;
  for (const auto& [name, r] : w.relations()) {
    RelSchema rs{name, {}};
    for (const auto& a : r.schema()) rs.attrs.push_back(a.str());
    s.push_back(rs);
  }
  return s;
}

GWSD to_gwsd(const Document& d) {
  struct V {
    GWSD operator()(const GWSD& w) const { return w; }
    GWSD operator()(const CMultitable& c) const { return gtabset_to_gwsd(c_to_gtabset(c)); }
    GWSD operator()(const XMultitable& x) const { return (*this)(x.table); }
    GWSD operator()(const GMultitable& g) const { return gtabset_to_gwsd(GTabset{schema_of(to_c(g)), {g}}); }
    GWSD operator()(const GTabset& t) const { return gtabset_to_gwsd(t); }
    GWSD operator()(const GTST& g) const { return one_gwsd(normalize_global(g)); }
    GWSD operator()(const World& w) const { return worlds_to_1wsd(schema_of_world(w), {w}); }
    GWSD operator()(const WorldSet& ws) const {
      if (ws.empty()) throw UsageError("cannot infer a schema from an empty world list");
      return worlds_to_1wsd(schema_of_world(*ws.begin()), ws);
    }
    GWSD operator()(const NamedRelation& r) const { return (*this)(world_of(r)); }
  };
  return std::visit(V{}, d);
}

World to_world(const Document& d) {
  if (auto* w = std::get_if<World>(&d)) return *w;
  if (auto* r = std::get_if<NamedRelation>(&d)) return world_of(*r);
  throw UsageError("expected a world or relation document, got " + kind_of(d));
}

// ---------------------------------------------------------------- enumeration

EnumBudget budget_for(const std::set<Value>& adom, std::size_t nvars, const std::set<Value>& extra, int fresh) {
  return EnumBudget::make(adom, extra, fresh >= 0 ? static_cast<std::size_t>(fresh) : nvars);
}

WorldSet enumerate(const Document& d, const std::set<Value>& extra, int fresh) {
  struct V {
    const std::set<Value>& extra;
    int fresh;
    WorldSet operator()(const World& w) const { return {w}; }
    WorldSet operator()(const WorldSet& ws) const { return ws; }
    WorldSet operator()(const NamedRelation& r) const { return {world_of(r)}; }
    WorldSet operator()(const CMultitable& c) const {
      return rep_enumerate(c, budget_for(active_domain(c), variables(c).size(), extra, fresh));
    }
    WorldSet operator()(const XMultitable& x) const {
      auto vars = variables(x.table);
      std::size_t n = 0;
      for (const auto& v : vars) n += !x.mutex.contains(v);
      return rep_enumerate(x, budget_for(active_domain(x.table), n, extra, fresh));
    }
    WorldSet operator()(const GMultitable& g) const { return (*this)(to_c(g)); }
    WorldSet operator()(const GTabset& t) const {
      EnumBudget b = default_budget(t, extra);
      if (fresh >= 0) {
        std::set<Value> adom;
        for (const auto& m : t.members) {
          auto a = active_domain(to_c(m));
          adom.insert(a.begin(), a.end());
        }
        b = EnumBudget::make(adom, extra, static_cast<std::size_t>(fresh));
      }
      return rep_enumerate(t, b);
    }
    WorldSet operator()(const GTST& g) const { return (*this)(one_gwsd(normalize_global(g))); }
    WorldSet operator()(const GWSD& w) const {
      return rep_enumerate_wsd(w, budget_for(active_domain(w), variables(w).size(), extra, fresh));
    }
  };
  return std::visit(V{extra, fresh}, d);
}

// ---------------------------------------------------------------- json


json tuple_json(const Tuple& t) {
  json a = json::array();
  for (const auto& v : t) a.push_back(format_value(v));
  return a;
}

json schema_json(const Schema& s) {
  json a = json::array();
  for (const auto& x : s) a.push_back(x.str());
  return a;
}

json relation_json(const Relation& r) {
  json rows = json::array();
  for (const auto& t : r.tuples()) rows.push_back(tuple_json(t));
  return {{"attrs", schema_json(r.schema())}, {"tuples", rows}};
}

json db_schema_json(const DbSchema& s) {
  json a = json::array();
  for (const auto& r : s) a.push_back({{"name", r.name}, {"attrs", r.attrs}});
  return a;
}

json world_json(const World& w) {
  json o = json::object();
  for (const auto& [name, r] : w.relations()) o[name] = relation_json(r);
  return o;
}

json worlds_json(const WorldSet& ws) {
  json a = json::array();
  for (const auto& w : ws) a.push_back(world_json(w));
  return a;
}

json ctable_json(const CMultitable& m) {
  json tables = json::array();
  for (const auto& t : m.tables) {
    json rows = json::array();
    for (const auto& r : t.rows) {
      json row = {{"values", tuple_json(r.values)}, {"where", format_condition(r.local)}};
      if (!r.id.empty()) row["id"] = r.id;
      rows.push_back(row);
    }
    tables.push_back({{"name", t.schema.name}, {"attrs", t.schema.attrs}, {"rows", rows}});
  }
  return {{"tables", tables}, {"where", format_condition(m.global)}};
}

json gtable_json(const GMultitable& m) {
  json tables = json::array();
  for (const auto& t : m.tables) {
    json rows = json::array();
    for (const auto& r : t.rows) rows.push_back(tuple_json(r));
    json o = {{"name", t.schema.name}, {"attrs", t.schema.attrs}, {"rows", rows}};
    if (!t.ids.empty()) o["ids"] = t.ids;
    tables.push_back(o);
  }
  return {{"tables", tables}, {"where", format_conjunction(m.global)}};
}

json gwsd_json(const GWSD& input) {
  GWSD w = canonicalize(input);
  json comps = json::array();
  for (const auto& c : w.components) comps.push_back({{"columns", schema_json(c.schema())}, {"rows", relation_json(c)["tuples"]}});
  return {{"schema", db_schema_json(w.schema)}, {"components", comps}, {"where", format_conjunction(w.global)}};
}

json document_json(const Document& d) {
  struct V {
    json operator()(const NamedRelation& r) const {
      json o = relation_json(r.relation);
      o["name"] = r.name;
      return o;
    }
    json operator()(const CMultitable& c) const { return ctable_json(c); }
    json operator()(const XMultitable& x) const {
      json o = ctable_json(x.table);
      json m = json::array();
      for (const auto& v : x.mutex.vars()) m.push_back({{"var", Value::variable(v.name).str()}, {"range", v.mu}});
      o["mutex"] = m;
      return o;
    }
    json operator()(const GMultitable& g) const { return gtable_json(g); }
    json operator()(const GTabset& t) const {
      json members = json::array();
      for (const auto& m : t.members) members.push_back(gtable_json(m));
      return {{"schema", db_schema_json(t.schema)}, {"members", members}};
    }
    json operator()(const GTST& g) const {
      json rows = json::array();
      for (const auto& r : g.rows) rows.push_back({{"values", tuple_json(r.values)}, {"where", format_conjunction(r.lambda)}});
      return {{"schema", db_schema_json(g.schema)}, {"columns", schema_json(g.columns)}, {"rows", rows}};
    }
    json operator()(const GWSD& w) const { return gwsd_json(w); }
    json operator()(const World& w) const { return world_json(w); }
    json operator()(const WorldSet& ws) const { return worlds_json(ws); }
  };
  json o = std::visit(V{}, d);
  o["kind"] = kind_of(d);
  return o;
}

json normal_gtst_json(const NormalGTST& g) {
  return {{"kind", "gtst"},
          {"schema", db_schema_json(g.schema)},
          {"columns", schema_json(g.table.schema())},
          {"rows", relation_json(g.table)["tuples"]},
          {"where", format_conjunction(g.phi)}};
}

// ---------------------------------------------------------------- decisions

std::string verdict_word(const std::string& problem, bool v) {
  bool certain = problem.find("certain") != std::string::npos;
  std::string w = certain ? "certain" : "possible";
  return v ? w : "not " + w;
}

std::string decision_text(const std::string& problem, const Decision& d) {
  std::string out = verdict_word(problem, d.verdict) + " (" + method_str(d.method) + ")\n";
  if (d.witness) {
    if (!d.witness->choice.empty()) {
      out += "# witness rows:";
      for (auto c : d.witness->choice) out += " " + std::to_string(c + 1);
      out += "\n";
    }
    if (!d.witness->valuation.empty()) {
      out += "# witness valuation:";
      for (const auto& [v, c] : d.witness->valuation) out += " " + Value::variable(v).str() + "=" + format_value(c);
      out += "\n";
    }
    if (d.witness->world) {
      std::istringstream lines(print(*d.witness->world));
      for (std::string line; std::getline(lines, line);) out += "# " + line + "\n";
    }
  }
  if (!d.note.empty()) out += "# " + d.note + "\n";
  return out;
}

json decision_json(const std::string& problem, const Decision& d) {
  json o = {{"command", "decide"},
            {"problem", problem},
            {"verdict", d.verdict},
            {"answer", verdict_word(problem, d.verdict)},
            {"method", method_str(d.method)}};
  if (d.witness) {
    json w = json::object();
    json choice = json::array();
    for (auto c : d.witness->choice) choice.push_back(c + 1);
    w["rows"] = choice;
    json val = json::object();
    for (const auto& [v, c] : d.witness->valuation) val[Value::variable(v).str()] = format_value(c);
    w["valuation"] = val;
    if (d.witness->world) w["world"] = world_json(*d.witness->world);
    o["witness"] = w;
  }
  if (!d.note.empty()) o["note"] = d.note;
  return o;
}

// ---------------------------------------------------------------- encodings

// "1 5 9; 2 5 8" -> {{1,5,9},{2,5,8}}
std::vector<std::vector<int>> parse_groups(const std::string& text) {
  std::vector<std::vector<int>> out;
  std::stringstream groups(text);
  for (std::string g; std::getline(groups, g, ';');) {
    std::stringstream nums(g);
    std::vector<int> cur;
    for (std::string tok; nums >> tok;) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw UsageError("not an integer: '" + tok + "'");
      cur.push_back(v);
    }
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

std::string comment_block(const std::string& text) {
  std::string out;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) out += "# " + line + "\n";
  return out;
}

struct Options {
  std::string format = "text";
  int fresh = -1;
};

void emit(std::ostream& out, const Options& o, const std::string& text, const json& j) {
  if (o.format == "json")
    out << j.dump(2) << "\n";
  else
    out << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Incomplete-information databases: conditional tables, world-set decompositions, factorization",
               "worldset"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--budget-fresh", opt.fresh, "Fresh constants in the enumeration pool (default: one per variable)")
      ->check(CLI::NonNegativeNumber);

  std::function<void()> action;

  // worlds
  auto* worlds = app.add_subcommand("worlds", "List the represented worlds");
  std::string worlds_file;
  bool as_1wsd = false;
  worlds->add_option("file", worlds_file, "Input document")->required();
  worlds->add_flag("--as-1wsd", as_1wsd, "Print the world-set as a 1-WSD instead");
  worlds->callback([&] {
    action = [&] {
      Document d = load_document(worlds_file);
      if (as_1wsd) {
        GWSD w;
        if (std::holds_alternative<CMultitable>(d)) {
          const auto& c = std::get<CMultitable>(d);
          w = tabulate_worlds(c, budget_for(active_domain(c), variables(c).size(), {}, opt.fresh));
        } else {
          WorldSet ws = enumerate(d, {}, opt.fresh);
          if (ws.empty()) throw UsageError("the input represents no worlds");
          w = worlds_to_1wsd(schema_of_world(*ws.begin()), ws);
        }
        emit(out, opt, count_line(w.components.front().size(), "world", "worlds") + print(w), gwsd_json(w));
        return;
      }
      WorldSet ws = enumerate(d, {}, opt.fresh);
      json j = {{"command", "worlds"}, {"count", ws.size()}, {"worlds", worlds_json(ws)}};
      emit(out, opt, count_line(ws.size(), "world", "worlds") + print(ws), j);
    };
  });

  // compose
  auto* compose_cmd = app.add_subcommand("compose", "Compose a gWSD into a single wide table");
  std::string compose_file;
  compose_cmd->add_option("file", compose_file, "Input gWSD")->required();
  compose_cmd->callback([&] {
    action = [&] {
      NormalGTST g = compose(to_gwsd(load_document(compose_file)));
      emit(out, opt, count_line(g.table.size(), "row", "rows") + print(g), normal_gtst_json(g));
    };
  });

  // translate
  auto* translate = app.add_subcommand("translate", "Translate between representations");
  translate->require_subcommand(1);
  auto* g2x = translate->add_subcommand("gwsd-to-x", "gWSD to x-multitable");
  std::string g2x_file;
  g2x->add_option("file", g2x_file, "Input gWSD")->required();
  g2x->callback([&] {
    action = [&] {
      XMultitable x = gwsd_to_x(to_gwsd(load_document(g2x_file)));
      emit(out, opt, print(x), document_json(x));
    };
  });
  auto* c2g = translate->add_subcommand("c-to-gwsd", "c-multitable to 1-gWSD");
  std::string c2g_file;
  bool simplify = false, show_tabset = false;
  c2g->add_option("file", c2g_file, "Input c-multitable")->required();
  c2g->add_flag("--simplify", simplify, "Merge and deduplicate rows");
  c2g->add_flag("--show-tabset", show_tabset, "Also print the intermediate g-tabset as comments");
  c2g->callback([&] {
    action = [&] {
      GTabset ts = c_to_gtabset(as_ctable(load_document(c2g_file)));
      GWSD w = gtabset_to_gwsd(ts);
      if (simplify) w = simplify_gwsd(w);
      std::string text = count_line(ts.members.size(), "consistent theta", "consistent theta");
      if (show_tabset) text += comment_block(print(ts));
      json j = {{"command", "translate"}, {"thetas", ts.members.size()}, {"gwsd", gwsd_json(w)}};
      if (show_tabset) j["gtabset"] = document_json(ts);
      emit(out, opt, text + print(w), j);
    };
  });

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate a relational algebra query");
  std::string eval_query, eval_file;
  bool per_world = false;
  eval->add_option("query", eval_query, "Query text")->required();
  eval->add_option("file", eval_file, "Input document")->required();
  eval->add_flag("--per-world", per_world, "Evaluate on every represented world");
  eval->callback([&] {
    action = [&] {
      QueryPtr q = with_source({"<query>", eval_query}, [](std::string_view t) { return parse_query(t); });
      Document d = load_document(eval_file);
      if (std::holds_alternative<World>(d) || std::holds_alternative<NamedRelation>(d)) {
        NamedRelation r{kAnswerName, eval_on_world(q, to_world(d))};
        emit(out, opt, print(r), document_json(r));
        return;
      }
      bool listed = std::holds_alternative<WorldSet>(d);
      if (!per_world && !listed && is_positive(q)) {
        XMultitable x;
        if (auto* xp = std::get_if<XMultitable>(&d)) {
          x = *xp;
        } else if (auto* cp = std::get_if<CMultitable>(&d)) {
          x.table = *cp;
        } else {
          x = gwsd_to_x(to_gwsd(d));
        }
        XMultitable a = eval_positive_on_x(q, x);
        emit(out, opt, print(a), document_json(a));
        return;
      }
      WorldSet answers;
      for (const auto& w : enumerate(d, query_constants(q), opt.fresh))
        answers.insert(World({{kAnswerName, eval_on_world(q, w)}}));
      json j = {{"command", "eval"}, {"count", answers.size()}, {"answers", worlds_json(answers)}};
      emit(out, opt, count_line(answers.size(), "distinct answer", "distinct answers") + print(answers), j);
    };
  });

  // decide
  auto* decide = app.add_subcommand("decide", "Possibility and certainty problems");
  decide->require_subcommand(1);
  std::string d_file, d_rel, d_tuple, d_instance, d_query;
  auto report = [&](const std::string& problem, const Decision& dec) {
    emit(out, opt, decision_text(problem, dec), decision_json(problem, dec));
  };
  auto tuple_arg = [&] {
    return with_source({"<tuple>", d_tuple}, [](std::string_view t) { return parse_tuple(t); });
  };
  for (std::string p : {"tuple-possible", "tuple-certain"}) {
    auto* s = decide->add_subcommand(
        p, p == "tuple-possible" ? "Is the tuple in some world" : "Is the tuple in every world");
    s->add_option("file", d_file, "Input gWSD")->required();
    s->add_option("relation", d_rel, "Relation name")->required();
    s->add_option("tuple", d_tuple, "Tuple, e.g. \"(1, 2)\"")->required();
    s->callback([&, p] {
      action = [&, p] {
        GWSD w = to_gwsd(load_document(d_file));
        Tuple t = tuple_arg();
        report(p, p == "tuple-possible" ? tuple_possible(w, d_rel, t) : tuple_certain(w, d_rel, t));
      };
    });
  }
  for (std::string p : {"instance-possible", "instance-certain"}) {
    auto* s = decide->add_subcommand(
        p, p == "instance-possible" ? "Is the instance one of the worlds" : "Is the instance the only world");
    s->add_option("file", d_file, "Input gWSD")->required();
    s->add_option("instance", d_instance, "World or relation document (path or text)")->required();
    s->callback([&, p] {
      action = [&, p] {
        GWSD w = to_gwsd(load_document(d_file));
        World inst = to_world(load_document(d_instance));
        report(p, p == "instance-possible" ? instance_possible(w, inst) : instance_certain(w, inst));
      };
    });
  }
  const std::vector<std::pair<std::string, QProblem>> qproblems = {
      {"tuple-q-possible", QProblem::kTuplePossible},
      {"tuple-q-certain", QProblem::kTupleCertain},
      {"instance-q-possible", QProblem::kInstancePossible},
      {"instance-q-certain", QProblem::kInstanceCertain}};
  for (const auto& [p, kind] : qproblems) {
    bool tuple = kind == QProblem::kTuplePossible || kind == QProblem::kTupleCertain;
    auto* s = decide->add_subcommand(p, std::string("As ") + p.substr(0, p.find("-q-")) +
                                           (kind == QProblem::kTuplePossible || kind == QProblem::kInstancePossible
                                                ? "-possible"
                                                : "-certain") +
                                           ", on the query answer");
    s->add_option("file", d_file, "Input gWSD")->required();
    s->add_option("query", d_query, "Query text")->required();
    if (tuple)
      s->add_option("tuple", d_tuple, "Answer tuple; () for the nullary tuple")->required();
    else
      s->add_option("instance", d_instance, "Answer relation document (path or text)")->required();
    s->callback([&, p = p, kind = kind, tuple] {
      action = [&, p, kind, tuple] {
        GWSD w = to_gwsd(load_document(d_file));
        QueryPtr q = with_source({"<query>", d_query}, [](std::string_view t) { return parse_query(t); });
        QTarget target;
        if (tuple) {
          target = tuple_arg();
        } else {
          Document d = load_document(d_instance);
          auto* r = std::get_if<NamedRelation>(&d);
          if (!r) throw UsageError("expected a relation document as the answer instance");
          target = r->relation;
        }
        report(p, q_decide(kind, w, q, target));
      };
    });
  }
  auto* empty = decide->add_subcommand("empty-world", "Is the empty world represented");
  empty->add_option("file", d_file, "Input gWSD")->required();
  empty->callback([&] {
    action = [&] { report("empty-world-possible", empty_world_possible(to_gwsd(load_document(d_file)))); };
  });

  // factorize
  auto* factorize = app.add_subcommand("factorize", "Prime factorization of a relation or maximal decomposition of a WSD");
  std::string f_file, f_level = "attribute";
  bool use_oracle = false, use_lowmem = false;
  factorize->add_option("file", f_file, "Relation or gWSD")->required();
  factorize->add_option("--level", f_level, "Decomposition granularity for gWSDs")
      ->check(CLI::IsMember({"attribute", "tuple"}));
  auto* oracle_flag = factorize->add_flag("--oracle", use_oracle, "Exhaustive subset search (relations only)");
  factorize->add_flag("--lowmem", use_lowmem, "Low-memory variant (relations only)")->excludes(oracle_flag);
  factorize->callback([&] {
    action = [&] {
      Document d = load_document(f_file);
      if (auto* r = std::get_if<NamedRelation>(&d)) {
        Factorization f = use_oracle   ? powerset_oracle(r->relation)
                          : use_lowmem ? factorize_lowmem(r->relation)
                                       : factorize_prime(r->relation);
        std::string text = count_line(f.factors.size(), "prime factor", "prime factors");
        json factors = json::array();
        for (std::size_t i = 0; i < f.factors.size(); ++i) {
          NamedRelation nr{r->name + "_" + std::to_string(i + 1), f.factors[i]};
          text += print(nr);
          factors.push_back(relation_json(f.factors[i]));
        }
        emit(out, opt, text, json{{"command", "factorize"}, {"factors", factors}});
        return;
      }
      if (use_oracle || use_lowmem) throw UsageError("--oracle and --lowmem apply to relation inputs only");
      Decomposed dec = decompose_wsd_maximal(to_gwsd(d), f_level == "tuple" ? Granularity::kTuple : Granularity::kAttribute);
      std::string text = count_line(dec.wsd.components.size(), "component", "components");
      if (dec.maybe_non_maximal) text += "# variables were treated as constants; the result may not be maximal\n";
      json j = {{"command", "factorize"},
                {"components", dec.wsd.components.size()},
                {"maybe_non_maximal", dec.maybe_non_maximal},
                {"gwsd", gwsd_json(dec.wsd)}};
      emit(out, opt, text + print(dec.wsd), j);
    };
  });

  // encode
  auto* encode = app.add_subcommand("encode", "Hardness reductions as gWSD instances");
  encode->require_subcommand(1);
  std::string e_input, e_mode = "empty-world", e_instance_out;
  int e_universe = 0;
  auto emit_encoding = [&](const Encoding& e) {
    std::string text = print(e.wsd);
    json j = {{"command", "encode"}, {"gwsd", gwsd_json(e.wsd)}};
    if (e.query) {
      text += "# query: " + query_str(e.query) + "\n";
      j["query"] = query_str(e.query);
    }
    if (e.target) {
      text += "# tuple: " + format_tuple(*e.target) + "\n";
      j["tuple"] = format_tuple(*e.target);
    }
    if (e.instance) {
      if (!e_instance_out.empty()) {
        std::ofstream f(e_instance_out);
        if (!f) throw UsageError("cannot write " + e_instance_out);
        f << print(*e.instance);
      }
      text += comment_block("instance:\n" + print(*e.instance));
      j["instance"] = world_json(*e.instance);
    }
    emit(out, opt, text, j);
  };
  auto* x3c = encode->add_subcommand("x3c", "Exact cover by 3-sets, e.g. \"1 5 9; 2 5 8; 3 4 6\"");
  x3c->add_option("triples", e_input, "Triples separated by ';'")->required();
  x3c->add_option("--universe", e_universe, "Universe size (default: largest element)");
  x3c->add_option("--mode", e_mode, "Target problem")->check(CLI::IsMember({"empty-world", "instance"}));
  x3c->add_option("--instance-out", e_instance_out, "Write the instance (instance mode) to this file");
  x3c->callback([&] {
    action = [&] {
      auto triples = parse_groups(e_input);
      int n = e_universe;
      for (const auto& t : triples)
        for (int v : t) n = std::max(n, v);
      std::vector<int> universe;
      for (int i = 1; i <= n; ++i) universe.push_back(i);
      emit_encoding(encode_x3c(universe, triples, e_mode == "instance" ? X3CMode::kInstance : X3CMode::kEmptyWorld));
    };
  });
  auto* cnf = encode->add_subcommand("3cnf", "3CNF satisfiability, e.g. \"1 2 3; 1 -2 4\"");
  cnf->add_option("clauses", e_input, "Clauses separated by ';'")->required();
  cnf->callback([&] { action = [&] { emit_encoding(encode_cnf3(parse_groups(e_input))); }; });
  auto* dnf = encode->add_subcommand("3dnf", "3DNF tautology, e.g. \"1 2 3; 1 -2 4\"");
  dnf->add_option("clauses", e_input, "Clauses separated by ';'")->required();
  dnf->callback([&] { action = [&] { emit_encoding(encode_dnf3(parse_groups(e_input))); }; });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  try {
    if (action) action();
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace ws
