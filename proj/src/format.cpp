#include "worldset/format.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "lexer.hpp"

namespace ws {

namespace {

using detail::Tok;
using detail::Token;
using detail::TokenStream;

class Parser {
 public:
  explicit Parser(std::string_view text) : ts_(detail::tokenize(text)) {}

  Document document() {
    if (ts_.peek().kind != Tok::kIdent) ts_.fail("expected a document keyword but found " + detail::describe(ts_.peek()));
    const std::string kw = ts_.peek().text;
    Document d;
    if (kw == "relation") {
      d = named_relation();
    } else if (kw == "ctable") {
      d = ctable();
    } else if (kw == "xtable") {
      d = xtable();
    } else if (kw == "gtable") {
      d = gtable();
    } else if (kw == "gtabset") {
      d = gtabset();
    } else if (kw == "gtst") {
      d = gtst();
    } else if (kw == "gwsd") {
      d = gwsd();
    } else if (kw == "world") {
      d = world();
    } else if (kw == "worlds") {
      d = worlds();
    } else {
      ts_.fail("unknown document kind '" + kw + "'");
    }
    finish();
    return d;
  }

  void finish() {
    if (!ts_.at_end()) ts_.fail("unexpected " + detail::describe(ts_.peek()) + " after document");
  }

  Condition condition() { return disjunction(); }

  Tuple tuple() {
    ts_.expect("(");
    Tuple t;
    if (!ts_.is_punct(")")) {
      do t.push_back(value());
      while (ts_.accept(","));
    }
    ts_.expect(")");
    return t;
  }

 private:
  // Runs item() until the closing brace; reports an unclosed brace at its opening.
  template <class F>
  void block(F&& item) {
    const Token open = ts_.expect("{");
    while (!ts_.is_punct("}")) {
      if (ts_.at_end()) TokenStream::fail_at(open, "unclosed '{'");
      item();
    }
    ts_.next();
  }

  Value value() {
    const Token& t = ts_.peek();
    switch (t.kind) {
      case Tok::kNumber:
      case Tok::kIdent:
      case Tok::kString:
        return Value::constant(ts_.next().text);
      case Tok::kVar:
        return Value::variable(ts_.next().text);
      case Tok::kBottom:
        ts_.next();
        return Value::bottom();
      default:
        ts_.fail("expected a value but found " + detail::describe(t));
    }
  }

  std::vector<std::string> names() {
    ts_.expect("(");
    std::vector<std::string> out;
    if (!ts_.is_punct(")")) {
      do out.push_back(ts_.expect_ident("an attribute name"));
      while (ts_.accept(","));
    }
    ts_.expect(")");
    return out;
  }

  // ---------------------------------------------------------------- conditions

  Condition disjunction() {
    std::vector<Condition> parts{conjunction()};
    while (ts_.accept("|")) parts.push_back(conjunction());
    return Condition::any(std::move(parts));
  }

  Condition conjunction() {
    std::vector<Condition> parts{unary()};
    while (ts_.accept("&")) parts.push_back(unary());
    return Condition::all(std::move(parts));
  }

  Condition unary() {
    if (ts_.accept("!")) return Condition::negate(unary());
    if (ts_.accept("(")) {
      Condition c = disjunction();
      ts_.expect(")");
      return c;
    }
    bool op_follows = ts_.is_punct("=", 1) || ts_.is_punct("!=", 1);
    if (!op_follows && ts_.is_word("true")) {
      ts_.next();
      return Condition::truth();
    }
    if (!op_follows && ts_.is_word("false")) {
      ts_.next();
      return Condition::falsity();
    }
    const Token at = ts_.peek();
    Value lhs = term();
    bool equal;
    if (ts_.accept("="))
      equal = true;
    else if (ts_.accept("!="))
      equal = false;
    else
      ts_.fail("expected '=' or '!=' but found " + detail::describe(ts_.peek()));
    Value rhs = term();
    (void)at;
    return Condition::atom(Atom::make(lhs, equal, rhs));
  }

  Value term() {
    const Token& t = ts_.peek();
    if (t.kind == Tok::kBottom) ts_.fail("conditions cannot mention _|_");
    if (t.kind == Tok::kPunct || t.kind == Tok::kEnd) ts_.fail("expected a term but found " + detail::describe(t));
    return value();
  }

  Condition where_block() {
    ts_.expect_word("where");
    const Token open = ts_.expect("{");
    if (ts_.is_punct("}")) {
      ts_.next();
      return Condition::truth();
    }
    if (ts_.at_end()) TokenStream::fail_at(open, "unclosed '{'");
    Condition c = condition();
    if (ts_.at_end()) TokenStream::fail_at(open, "unclosed '{'");
    ts_.expect("}");
    return c;
  }

  Conjunction where_conjunction() {
    const Token at = ts_.peek();
    Condition c = where_block();
    auto conj = c.as_conjunction();
    if (!conj) TokenStream::fail_at(at, "expected a conjunction of atoms");
    return *conj;
  }

  // ---------------------------------------------------------------- documents

  NamedRelation named_relation() {
    ts_.expect_word("relation");
    std::string name = ts_.expect_ident("a relation name");
    const Token at = ts_.peek();
    auto attrs = names();
    std::vector<Tuple> rows;
    block([&] {
      const Token t = ts_.peek();
      rows.push_back(tuple());
      if (rows.back().size() != attrs.size()) TokenStream::fail_at(t, "tuple arity does not match schema");
    });
    try {
      return {name, Relation(Schema(attrs.begin(), attrs.end()), std::move(rows))};
    } catch (const SchemaError& e) {
      TokenStream::fail_at(at, e.what());
    }
  }

  CTable crel(bool row_conditions) {
    ts_.expect_word("relation");
    CTable t{{ts_.expect_ident("a relation name"), names()}, {}};
    block([&] {
      CRow row;
      if (ts_.peek().kind == Tok::kIdent && ts_.is_punct(":", 1)) {
        row.id = ts_.next().text;
        ts_.next();
      }
      const Token at = ts_.peek();
      row.values = tuple();
      if (row.values.size() != t.schema.attrs.size()) TokenStream::fail_at(at, "tuple arity does not match schema");
      for (const auto& v : row.values)
        if (v.is_bottom()) TokenStream::fail_at(at, "_|_ is not allowed here");
      if (row_conditions && ts_.is_word("where")) row.local = where_block();
      t.rows.push_back(std::move(row));
    });
    return t;
  }

  CMultitable ctable() {
    ts_.expect_word("ctable");
    CMultitable m;
    block([&] {
      if (ts_.is_word("relation"))
        m.tables.push_back(crel(true));
      else if (ts_.is_word("where"))
        m.global = where_block();
      else
        ts_.fail("expected 'relation' or 'where' but found " + detail::describe(ts_.peek()));
    });
    return m;
  }

  XMultitable xtable() {
    ts_.expect_word("xtable");
    XMultitable x;
    block([&] {
      if (ts_.is_word("mutex")) {
        ts_.next();
        std::vector<MutexVar> vars;
        ts_.expect("{");
        while (!ts_.is_punct("}")) {
          if (ts_.peek().kind != Tok::kVar) ts_.fail("expected a mutex variable but found " + detail::describe(ts_.peek()));
          std::string name = ts_.next().text;
          ts_.expect(":");
          if (ts_.peek().kind != Tok::kNumber) ts_.fail("expected a range but found " + detail::describe(ts_.peek()));
          vars.push_back({name, std::stoi(ts_.next().text)});
          ts_.accept(",");
        }
        ts_.next();
        x.mutex = MutexSet(std::move(vars));
      } else if (ts_.is_word("relation")) {
        x.table.tables.push_back(crel(true));
      } else if (ts_.is_word("where")) {
        x.table.global = where_block();
      } else {
        ts_.fail("expected 'mutex', 'relation' or 'where' but found " + detail::describe(ts_.peek()));
      }
    });
    return x;
  }

  GMultitable gtable() {
    ts_.expect_word("gtable");
    GMultitable m;
    block([&] {
      if (ts_.is_word("relation")) {
        CTable t = crel(false);
        GTable g{t.schema, {}, {}};
        bool ids = std::any_of(t.rows.begin(), t.rows.end(), [](const CRow& r) { return !r.id.empty(); });
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
          g.rows.push_back(t.rows[i].values);
          if (ids) g.ids.push_back(t.rows[i].id.empty() ? "d" + std::to_string(i + 1) : t.rows[i].id);
        }
        m.tables.push_back(std::move(g));
      } else if (ts_.is_word("where")) {
        m.global = where_conjunction();
      } else {
        ts_.fail("expected 'relation' or 'where' but found " + detail::describe(ts_.peek()));
      }
    });
    return m;
  }

  static bool is_keyword(const std::string& w) {
    return w == "component" || w == "columns" || w == "gtable" || w == "where" || w == "schema";
  }

  DbSchema schema_line() {
    ts_.expect_word("schema");
    DbSchema s;
    while (ts_.peek().kind == Tok::kIdent && ts_.is_punct("(", 1) && !is_keyword(ts_.peek().text)) {
      std::string name = ts_.next().text;
      s.push_back({name, names()});
    }
    if (s.empty()) ts_.fail("expected a relation signature but found " + detail::describe(ts_.peek()));
    return s;
  }

  static void merge_schema(DbSchema& s, const RelSchema& r) {
    for (const auto& x : s)
      if (x.name == r.name) return;
    s.push_back(r);
  }

  GTabset gtabset() {
    ts_.expect_word("gtabset");
    GTabset ts;
    bool declared = false;
    block([&] {
      if (ts_.is_word("schema")) {
        ts.schema = schema_line();
        declared = true;
      } else if (ts_.is_word("gtable")) {
        ts.members.push_back(gtable());
      } else {
        ts_.fail("expected 'schema' or 'gtable' but found " + detail::describe(ts_.peek()));
      }
    });
    if (!declared)
      for (const auto& m : ts.members)
        for (const auto& t : m.tables) merge_schema(ts.schema, t.schema);
    return ts;
  }

  // Schema from column names Rel.slot.Attr, in order of first appearance.
  static DbSchema infer_schema(const Schema& cols) {
    DbSchema s;
    for (const auto& c : cols) {
      auto parts = c.parts();
      if (parts.size() != 3) continue;
      auto it = std::find_if(s.begin(), s.end(), [&](const RelSchema& r) { return r.name == parts[0]; });
      if (it == s.end()) {
        s.push_back({parts[0], {}});
        it = s.end() - 1;
      }
      if (std::find(it->attrs.begin(), it->attrs.end(), parts[2]) == it->attrs.end()) it->attrs.push_back(parts[2]);
    }
    return s;
  }

  GTST gtst() {
    ts_.expect_word("gtst");
    GTST g;
    bool declared = false;
    Conjunction global;
    block([&] {
      if (ts_.is_word("schema")) {
        g.schema = schema_line();
        declared = true;
      } else if (ts_.is_word("columns")) {
        ts_.next();
        auto cols = names();
        g.columns.assign(cols.begin(), cols.end());
        block([&] {
          const Token at = ts_.peek();
          GTSTRow row{tuple(), {}};
          if (row.values.size() != g.columns.size()) TokenStream::fail_at(at, "row arity does not match columns");
          if (ts_.is_word("where")) row.lambda = where_conjunction();
          g.rows.push_back(std::move(row));
        });
      } else if (ts_.is_word("where")) {
        global = where_conjunction();
      } else {
        ts_.fail("expected 'schema', 'columns' or 'where' but found " + detail::describe(ts_.peek()));
      }
    });
    for (auto& r : g.rows) r.lambda = r.lambda & global;
    if (!declared) g.schema = infer_schema(g.columns);
    return g;
  }

  GWSD gwsd() {
    const Token start = ts_.peek();
    ts_.expect_word("gwsd");
    GWSD w;
    bool declared = false;
    block([&] {
      if (ts_.is_word("schema")) {
        w.schema = schema_line();
        declared = true;
      } else if (ts_.is_word("component")) {
        ts_.next();
        const Token at = ts_.peek();
        auto cols = names();
        std::vector<Tuple> rows;
        block([&] {
          const Token t = ts_.peek();
          rows.push_back(tuple());
          if (rows.back().size() != cols.size()) TokenStream::fail_at(t, "row arity does not match component columns");
        });
        try {
          w.components.emplace_back(Schema(cols.begin(), cols.end()), std::move(rows));
        } catch (const SchemaError& e) {
          TokenStream::fail_at(at, e.what());
        }
      } else if (ts_.is_word("where")) {
        w.global = where_conjunction();
      } else {
        ts_.fail("expected 'schema', 'component' or 'where' but found " + detail::describe(ts_.peek()));
      }
    });
    if (!declared) {
      Schema all;
      for (const auto& c : w.components) all.insert(all.end(), c.schema().begin(), c.schema().end());
      w.schema = infer_schema(all);
    }
    auto rep = validate(w);
    if (!rep.valid) TokenStream::fail_at(start, "invalid decomposition: " + rep.problems.front());
    return w;
  }

  World world() {
    ts_.expect_word("world");
    std::vector<std::pair<std::string, Relation>> rels;
    block([&] {
      const Token at = ts_.peek();
      NamedRelation r = named_relation();
      if (r.relation.has_variables()) TokenStream::fail_at(at, "worlds hold constants only");
      for (const auto& t : r.relation.tuples())
        for (const auto& v : t)
          if (v.is_bottom()) TokenStream::fail_at(at, "worlds hold constants only");
      rels.emplace_back(r.name, std::move(r.relation));
    });
    try {
      return World(std::move(rels));
    } catch (const SchemaError& e) {
      ts_.fail(e.what());
    }
  }

  WorldSet worlds() {
    ts_.expect_word("worlds");
    WorldSet out;
    block([&] { out.insert(world()); });
    return out;
  }

  TokenStream ts_;
};

bool bare_ok(const std::string& s) {
  if (s.empty() || s == "_|_") return false;
  if (!std::isalnum(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'';
  });
}

std::string indent(int n) { return std::string(static_cast<std::size_t>(n) * 2, ' '); }

std::string names_str(const std::vector<std::string>& names) {
  std::string out = "(";
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + names[i];
  return out + ")";
}

std::string schema_line(const DbSchema& s) {
  std::string out = "schema";
  for (const auto& r : s) out += " " + r.name + names_str(r.attrs);
  return out;
}

std::string relation_block(const std::string& name, const Relation& r, int depth) {
  std::vector<std::string> attrs;
  for (const auto& a : r.schema()) attrs.push_back(a.str());
  std::string out = indent(depth) + "relation " + name + " " + names_str(attrs) + " {";
  if (r.empty()) return out + "}\n";
  out += "\n";
  for (const auto& t : r.tuples()) out += indent(depth + 1) + format_tuple(t) + "\n";
  return out + indent(depth) + "}\n";
}

std::string crel_block(const CTable& t, int depth) {
  std::string out = indent(depth) + "relation " + t.schema.name + " " + names_str(t.schema.attrs) + " {";
  if (t.rows.empty()) return out + "}\n";
  out += "\n";
  for (const auto& r : t.rows) {
    out += indent(depth + 1);
    if (!r.id.empty()) out += r.id + ": ";
    out += format_tuple(r.values);
    if (!r.local.is_true()) out += " where { " + format_condition(r.local) + " }";
    out += "\n";
  }
  return out + indent(depth) + "}\n";
}

std::string gtable_body(const GMultitable& m, int depth) {
  std::string out;
  for (const auto& t : m.tables) {
    CTable ct{t.schema, {}};
    for (std::size_t i = 0; i < t.rows.size(); ++i)
      ct.rows.push_back({t.rows[i], Condition(), t.ids.empty() ? std::string() : t.ids[i]});
    out += crel_block(ct, depth);
  }
  if (!m.global.empty()) out += indent(depth) + "where { " + format_conjunction(m.global) + " }\n";
  return out;
}

}  // namespace

Document parse_document(std::string_view text) { return Parser(text).document(); }

Condition parse_condition(std::string_view text) {
  Parser p(text);
  Condition c = p.condition();
  p.finish();
  return c;
}

Tuple parse_tuple(std::string_view text) {
  Parser p(text);
  Tuple t = p.tuple();
  p.finish();
  return t;
}

std::string format_value(const Value& v) {
  if (!v.is_constant()) return v.str();
  if (bare_ok(v.text())) return v.text();
  std::string out = "\"";
  for (char c : v.text()) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string format_tuple(const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) out += (i ? ", " : "") + format_value(t[i]);
  return out + ")";
}

namespace {

std::string format_atom(const Atom& a) {
  return format_value(a.lhs) + (a.equal ? " = " : " != ") + format_value(a.rhs);
}

}  // namespace

std::string format_conjunction(const Conjunction& c) {
  if (c.empty()) return "true";
  std::string out;
  for (std::size_t i = 0; i < c.atoms().size(); ++i) out += (i ? " & " : "") + format_atom(c.atoms()[i]);
  return out;
}

std::string format_condition(const Condition& c) {
  if (auto conj = c.as_conjunction()) return format_conjunction(*conj);
  switch (c.kind()) {
    case Condition::Kind::kNot: {
      const Condition& ch = c.children().front();
      if (ch.is_true()) return "false";
      return "!(" + format_condition(ch) + ")";
    }
    case Condition::Kind::kAnd:
    case Condition::Kind::kOr: {
      const char* sep = c.kind() == Condition::Kind::kAnd ? " & " : " | ";
      std::string out;
      for (std::size_t i = 0; i < c.children().size(); ++i) {
        const auto& ch = c.children()[i];
        bool wrap = ch.kind() == Condition::Kind::kAnd || ch.kind() == Condition::Kind::kOr;
        out += (i ? sep : "") + (wrap ? "(" + format_condition(ch) + ")" : format_condition(ch));
      }
      return out;
    }
    default:
      return c.str();
  }
}

std::string print(const NamedRelation& r) { return relation_block(r.name, r.relation, 0); }

std::string print(const CMultitable& m) {
  std::string out = "ctable {\n";
  for (const auto& t : m.tables) out += crel_block(t, 1);
  if (!m.global.is_true()) out += indent(1) + "where { " + format_condition(m.global) + " }\n";
  return out + "}\n";
}

std::string print(const XMultitable& x) {
  std::string out = "xtable {\n";
  out += indent(1) + "mutex {";
  for (std::size_t i = 0; i < x.mutex.vars().size(); ++i) {
    const auto& v = x.mutex.vars()[i];
    out += (i ? ", " : " ") + Value::variable(v.name).str() + ": " + std::to_string(v.mu);
  }
  out += x.mutex.vars().empty() ? "}\n" : " }\n";
  for (const auto& t : x.table.tables) out += crel_block(t, 1);
  if (!x.table.global.is_true()) out += indent(1) + "where { " + format_condition(x.table.global) + " }\n";
  return out + "}\n";
}

std::string print(const GMultitable& m) { return "gtable {\n" + gtable_body(m, 1) + "}\n"; }

std::string print(const GTabset& ts) {
  std::string out = "gtabset {\n" + indent(1) + schema_line(ts.schema) + "\n";
  for (const auto& m : ts.members) out += indent(1) + "gtable {\n" + gtable_body(m, 2) + indent(1) + "}\n";
  return out + "}\n";
}

std::string print(const GTST& g) {
  std::vector<std::string> cols;
  for (const auto& c : g.columns) cols.push_back(c.str());
  std::string out = "gtst {\n" + indent(1) + schema_line(g.schema) + "\n";
  out += indent(1) + "columns " + names_str(cols) + " {\n";
  for (const auto& r : g.rows) {
    out += indent(2) + format_tuple(r.values);
    if (!r.lambda.empty()) out += " where { " + format_conjunction(r.lambda) + " }";
    out += "\n";
  }
  return out + indent(1) + "}\n}\n";
}

std::string print(const NormalGTST& g) {
  std::vector<std::string> cols;
  for (const auto& c : g.table.schema()) cols.push_back(c.str());
  std::string out = "gtst {\n" + indent(1) + schema_line(g.schema) + "\n";
  out += indent(1) + "columns " + names_str(cols) + " {\n";
  for (const auto& t : g.table.tuples()) out += indent(2) + format_tuple(t) + "\n";
  out += indent(1) + "}\n";
  if (!g.phi.empty()) out += indent(1) + "where { " + format_conjunction(g.phi) + " }\n";
  return out + "}\n";
}

std::string print(const GWSD& input) {
  GWSD w = canonicalize(input);
  std::string out = "gwsd {\n" + indent(1) + schema_line(w.schema) + "\n";
  for (const auto& c : w.components) {
    std::vector<std::string> cols;
    for (const auto& a : c.schema()) cols.push_back(a.str());
    out += indent(1) + "component " + names_str(cols) + " {";
    if (c.empty()) {
      out += "}\n";
      continue;
    }
    out += "\n";
    for (const auto& t : c.tuples()) out += indent(2) + format_tuple(t) + "\n";
    out += indent(1) + "}\n";
  }
  if (!w.global.empty()) out += indent(1) + "where { " + format_conjunction(w.global) + " }\n";
  return out + "}\n";
}

std::string print(const World& w) {
  std::string out = "world {\n";
  for (const auto& [name, r] : w.relations()) out += relation_block(name, r, 1);
  return out + "}\n";
}

std::string print(const WorldSet& ws) {
  std::string out = "worlds {\n";
  for (const auto& w : ws) {
    out += indent(1) + "world {\n";
    for (const auto& [name, r] : w.relations()) out += relation_block(name, r, 2);
    out += indent(1) + "}\n";
  }
  return out + "}\n";
}

std::string print(const Document& d) {
  return std::visit([](const auto& x) { return print(x); }, d);
}

}  // namespace ws
