#include "worldset/query.hpp"

#include <algorithm>

#include "lexer.hpp"

namespace ws {

namespace {

QueryPtr make(Query q) { return std::make_shared<const Query>(std::move(q)); }

}  // namespace

QueryPtr Query::base(std::string name) {
  Query q;
  q.op = Op::kBase;
  q.name = std::move(name);
  return make(std::move(q));
}
QueryPtr Query::unit() {
  Query q;
  q.op = Op::kUnit;
  return make(std::move(q));
}
QueryPtr Query::select(std::vector<SelectPred> preds, QueryPtr in) {
  Query q;
  q.op = Op::kSelect;
  q.preds = std::move(preds);
  q.left = std::move(in);
  return make(std::move(q));
}
QueryPtr Query::project(Schema attrs, QueryPtr in) {
  Query q;
  q.op = Op::kProject;
  q.attrs = std::move(attrs);
  q.left = std::move(in);
  return make(std::move(q));
}
QueryPtr Query::product(QueryPtr a, QueryPtr b) {
  Query q;
  q.op = Op::kProduct;
  q.left = std::move(a);
  q.right = std::move(b);
  return make(std::move(q));
}
QueryPtr Query::union_of(QueryPtr a, QueryPtr b) {
  Query q;
  q.op = Op::kUnion;
  q.left = std::move(a);
  q.right = std::move(b);
  return make(std::move(q));
}
QueryPtr Query::difference(QueryPtr a, QueryPtr b) {
  Query q;
  q.op = Op::kDifference;
  q.left = std::move(a);
  q.right = std::move(b);
  return make(std::move(q));
}
QueryPtr Query::rename(std::map<AttrName, AttrName> renames, QueryPtr in) {
  Query q;
  q.op = Op::kRename;
  q.renames = std::move(renames);
  q.left = std::move(in);
  return make(std::move(q));
}

// ---------------------------------------------------------------- parsing

namespace {

using detail::Tok;
using detail::TokenStream;

class QueryParser {
 public:
  explicit QueryParser(std::string_view text) : ts_(detail::tokenize(text)) {}

  QueryPtr parse() {
    QueryPtr q = sum();
    if (!ts_.at_end()) ts_.fail("unexpected " + detail::describe(ts_.peek()) + " after query");
    return q;
  }

 private:
  QueryPtr sum() {
    QueryPtr q = prod();
    for (;;) {
      if (ts_.accept("+"))
        q = Query::union_of(q, prod());
      else if (ts_.accept("-"))
        q = Query::difference(q, prod());
      else
        return q;
    }
  }

  QueryPtr prod() {
    QueryPtr q = primary();
    while (ts_.accept("*")) q = Query::product(q, primary());
    return q;
  }

  QueryPtr operand() {
    ts_.expect("(");
    QueryPtr q = sum();
    ts_.expect(")");
    return q;
  }

  AttrName attr() { return AttrName(ts_.expect_ident("an attribute")); }

  QueryPtr primary() {
    if (ts_.accept("(")) {
      QueryPtr q = sum();
      ts_.expect(")");
      return q;
    }
    if (ts_.peek().kind != Tok::kIdent) ts_.fail("expected a query but found " + detail::describe(ts_.peek()));
    std::string word = ts_.peek().text;
    if (word == "true") {
      ts_.next();
      return Query::unit();
    }
    if ((word == "select" || word == "project" || word == "rename") && ts_.is_punct("[", 1)) {
      ts_.next();
      ts_.expect("[");
      if (word == "select") {
        std::vector<SelectPred> preds;
        do {
          SelectPred p;
          p.lhs = attr();
          if (ts_.accept("="))
            p.equal = true;
          else if (ts_.accept("!="))
            p.equal = false;
          else
            ts_.fail("expected '=' or '!=' but found " + detail::describe(ts_.peek()));
          const auto& t = ts_.peek();
          if (t.kind == Tok::kIdent)
            p.rhs = attr();
          else if (t.kind == Tok::kNumber || t.kind == Tok::kString)
            p.rhs = Value::constant(ts_.next().text);
          else
            ts_.fail("expected an attribute or constant but found " + detail::describe(t));
          preds.push_back(std::move(p));
        } while (ts_.accept("&") || ts_.accept(","));
        ts_.expect("]");
        return Query::select(std::move(preds), operand());
      }
      if (word == "project") {
        Schema attrs;
        if (!ts_.is_punct("]")) {
          do attrs.push_back(attr());
          while (ts_.accept(","));
        }
        ts_.expect("]");
        return Query::project(std::move(attrs), operand());
      }
      std::map<AttrName, AttrName> renames;
      do {
        AttrName from = attr();
        ts_.expect("->");
        renames[from] = attr();
      } while (ts_.accept(","));
      ts_.expect("]");
      return Query::rename(std::move(renames), operand());
    }
    ts_.next();
    return Query::base(word);
  }

  TokenStream ts_;
};

std::string constant_str(const Value& v) {
  bool digits = !v.text().empty() && std::all_of(v.text().begin(), v.text().end(), ::isdigit);
  if (digits) return v.text();
  std::string out = "\"";
  for (char c : v.text()) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

QueryPtr parse_query(std::string_view text) { return QueryParser(text).parse(); }

std::string query_str(const QueryPtr& q) {
  auto wrap = [](const QueryPtr& s) {
    bool binary = s->op == Query::Op::kProduct || s->op == Query::Op::kUnion || s->op == Query::Op::kDifference;
    return binary ? "(" + query_str(s) + ")" : query_str(s);
  };
  switch (q->op) {
    case Query::Op::kBase:
      return q->name;
    case Query::Op::kUnit:
      return "true";
    case Query::Op::kSelect: {
      std::string out = "select[";
      for (std::size_t i = 0; i < q->preds.size(); ++i) {
        const auto& p = q->preds[i];
        if (i) out += " & ";
        out += p.lhs.str() + (p.equal ? "=" : "!=");
        if (const auto* a = std::get_if<AttrName>(&p.rhs))
          out += a->str();
        else
          out += constant_str(std::get<Value>(p.rhs));
      }
      return out + "](" + query_str(q->left) + ")";
    }
    case Query::Op::kProject: {
      std::string out = "project[";
      for (std::size_t i = 0; i < q->attrs.size(); ++i) out += (i ? "," : "") + q->attrs[i].str();
      return out + "](" + query_str(q->left) + ")";
    }
    case Query::Op::kRename: {
      std::string out = "rename[";
      bool first = true;
      for (const auto& [from, to] : q->renames) {
        out += (first ? "" : ",") + from.str() + "->" + to.str();
        first = false;
      }
      return out + "](" + query_str(q->left) + ")";
    }
    case Query::Op::kProduct:
      return wrap(q->left) + " * " + wrap(q->right);
    case Query::Op::kUnion:
      return wrap(q->left) + " + " + wrap(q->right);
    case Query::Op::kDifference:
      return wrap(q->left) + " - " + wrap(q->right);
  }
  return "";
}

// ---------------------------------------------------------------- analysis

bool is_positive(const QueryPtr& q) {
  switch (q->op) {
    case Query::Op::kBase:
    case Query::Op::kUnit:
      return true;
    case Query::Op::kDifference:
      return false;
    case Query::Op::kSelect:
      for (const auto& p : q->preds)
        if (!p.equal) return false;
      return is_positive(q->left);
    case Query::Op::kProject:
    case Query::Op::kRename:
      return is_positive(q->left);
    case Query::Op::kProduct:
    case Query::Op::kUnion:
      return is_positive(q->left) && is_positive(q->right);
  }
  return false;
}

std::set<Value> query_constants(const QueryPtr& q) {
  std::set<Value> out;
  if (q->op == Query::Op::kUnit) out.insert(kTrueValue);
  if (q->op == Query::Op::kProject && q->attrs.empty()) out.insert(kTrueValue);
  for (const auto& p : q->preds)
    if (const auto* v = std::get_if<Value>(&p.rhs)) out.insert(*v);
  for (const auto& sub : {q->left, q->right})
    if (sub) {
      auto s = query_constants(sub);
      out.insert(s.begin(), s.end());
    }
  return out;
}

Schema output_schema(const QueryPtr& q, const DbSchema& schema) {
  auto require = [&](const Schema& s, const AttrName& a) {
    if (std::find(s.begin(), s.end(), a) == s.end())
      throw AttrError("attribute " + a.str() + " not in " + schema_str(s) + " in " + query_str(q));
  };
  switch (q->op) {
    case Query::Op::kBase:
      return attr_schema(find_relation(schema, q->name));
    case Query::Op::kUnit:
      return {kNullaryAttr};
    case Query::Op::kSelect: {
      Schema s = output_schema(q->left, schema);
      for (const auto& p : q->preds) {
        require(s, p.lhs);
        if (const auto* a = std::get_if<AttrName>(&p.rhs)) require(s, *a);
      }
      return s;
    }
    case Query::Op::kProject: {
      Schema s = output_schema(q->left, schema);
      for (const auto& a : q->attrs) require(s, a);
      return q->attrs.empty() ? Schema{kNullaryAttr} : q->attrs;
    }
    case Query::Op::kRename: {
      Schema s = output_schema(q->left, schema);
      for (const auto& [from, to] : q->renames) require(s, from);
      for (auto& a : s)
        if (auto it = q->renames.find(a); it != q->renames.end()) a = it->second;
      return s;
    }
    case Query::Op::kProduct: {
      Schema s = output_schema(q->left, schema);
      Schema r = output_schema(q->right, schema);
      for (const auto& a : r)
        if (std::find(s.begin(), s.end(), a) != s.end())
          throw SchemaError("product operands share attribute " + a.str() + " in " + query_str(q));
      s.insert(s.end(), r.begin(), r.end());
      return s;
    }
    case Query::Op::kUnion:
    case Query::Op::kDifference: {
      Schema s = output_schema(q->left, schema);
      Schema r = output_schema(q->right, schema);
      if (std::set<AttrName>(s.begin(), s.end()) != std::set<AttrName>(r.begin(), r.end()))
        throw SchemaError("operands of " + query_str(q) + " have schemas " + schema_str(s) + " and " + schema_str(r));
      return s;
    }
  }
  return {};
}

// ---------------------------------------------------------------- evaluation on worlds

Relation eval_on_world(const QueryPtr& q, const World& w) {
  switch (q->op) {
    case Query::Op::kBase:
      return w.at(q->name);
    case Query::Op::kUnit:
      return Relation({kNullaryAttr}, {{kTrueValue}});
    case Query::Op::kSelect:
      return select(eval_on_world(q->left, w), q->preds);
    case Query::Op::kProject: {
      Relation in = eval_on_world(q->left, w);
      if (q->attrs.empty()) {
        std::vector<Tuple> t;
        if (!in.empty()) t.push_back({kTrueValue});
        return Relation({kNullaryAttr}, std::move(t));
      }
      return project(in, q->attrs);
    }
    case Query::Op::kRename:
      return rename(eval_on_world(q->left, w), q->renames);
    case Query::Op::kProduct:
      return product(eval_on_world(q->left, w), eval_on_world(q->right, w));
    case Query::Op::kUnion:
      return union_of(eval_on_world(q->left, w), eval_on_world(q->right, w));
    case Query::Op::kDifference:
      return difference(eval_on_world(q->left, w), eval_on_world(q->right, w));
  }
  throw SchemaError("unknown query operator");
}

// ---------------------------------------------------------------- positive evaluation on x-tables

namespace {

struct XRel {
  Schema schema;
  std::vector<std::pair<Tuple, Conjunction>> rows;

  std::size_t index_of(const AttrName& a) const {
    for (std::size_t i = 0; i < schema.size(); ++i)
      if (schema[i] == a) return i;
    throw AttrError("unknown attribute " + a.str() + " in " + schema_str(schema));
  }

  void dedupe() {
    std::vector<std::pair<Tuple, Conjunction>> out;
    std::set<std::pair<Tuple, Conjunction>> seen;
    for (auto& r : rows)
      if (seen.insert(r).second) out.push_back(std::move(r));
    rows = std::move(out);
  }
};

XRel eval_x(const QueryPtr& q, const XMultitable& x) {
  switch (q->op) {
    case Query::Op::kBase: {
      for (const auto& t : x.table.tables) {
        if (t.schema.name != q->name) continue;
        XRel r{attr_schema(t.schema), {}};
        for (const auto& row : t.rows) {
          auto local = row.local.as_conjunction();
          if (!local) throw FragmentError("local condition is not a conjunction");
          r.rows.emplace_back(row.values, *local);
        }
        return r;
      }
      throw SchemaError("unknown relation " + q->name);
    }
    case Query::Op::kUnit:
      return XRel{{kNullaryAttr}, {{{kTrueValue}, {}}}};
    case Query::Op::kSelect: {
      XRel in = eval_x(q->left, x);
      XRel out{in.schema, {}};
      for (auto& [t, c] : in.rows) {
        Conjunction cond = c;
        bool keep = true;
        for (const auto& p : q->preds) {
          if (!p.equal) throw FragmentError("inequality selection is outside the positive fragment");
          const Value& a = t[in.index_of(p.lhs)];
          const Value b = std::holds_alternative<AttrName>(p.rhs) ? t[in.index_of(std::get<AttrName>(p.rhs))]
                                                                  : std::get<Value>(p.rhs);
          if (a == b) continue;
          if (a.is_constant() && b.is_constant()) {
            keep = false;
            break;
          }
          cond.add(Atom::eq(a, b));
        }
        if (keep) out.rows.emplace_back(t, std::move(cond));
      }
      out.dedupe();
      return out;
    }
    case Query::Op::kProject: {
      XRel in = eval_x(q->left, x);
      if (q->attrs.empty()) {
        XRel out{{kNullaryAttr}, {}};
        for (auto& [t, c] : in.rows) out.rows.emplace_back(Tuple{kTrueValue}, c);
        out.dedupe();
        return out;
      }
      std::vector<std::size_t> pos;
      for (const auto& a : q->attrs) pos.push_back(in.index_of(a));
      XRel out{q->attrs, {}};
      for (auto& [t, c] : in.rows) {
        Tuple p;
        for (auto i : pos) p.push_back(t[i]);
        out.rows.emplace_back(std::move(p), c);
      }
      out.dedupe();
      return out;
    }
    case Query::Op::kRename: {
      XRel in = eval_x(q->left, x);
      for (const auto& [from, to] : q->renames) in.schema[in.index_of(from)] = to;
      (void)Relation(in.schema);  // schema validity check
      return in;
    }
    case Query::Op::kProduct: {
      XRel a = eval_x(q->left, x), b = eval_x(q->right, x);
      XRel out{a.schema, {}};
      out.schema.insert(out.schema.end(), b.schema.begin(), b.schema.end());
      (void)Relation(out.schema);  // rejects overlapping schemata
      for (const auto& [ta, ca] : a.rows)
        for (const auto& [tb, cb] : b.rows) {
          Tuple t = ta;
          t.insert(t.end(), tb.begin(), tb.end());
          out.rows.emplace_back(std::move(t), ca & cb);
        }
      out.dedupe();
      return out;
    }
    case Query::Op::kUnion: {
      XRel a = eval_x(q->left, x), b = eval_x(q->right, x);
      if (a.schema.size() != b.schema.size()) throw SchemaError("union of different schemata");
      std::vector<std::size_t> pos;
      for (const auto& at : a.schema) pos.push_back(b.index_of(at));
      for (auto& [t, c] : b.rows) {
        Tuple p;
        for (auto i : pos) p.push_back(t[i]);
        a.rows.emplace_back(std::move(p), c);
      }
      a.dedupe();
      return a;
    }
    case Query::Op::kDifference:
      throw FragmentError("difference is outside the positive fragment");
  }
  throw SchemaError("unknown query operator");
}

}  // namespace

XMultitable eval_positive_on_x(const QueryPtr& q, const XMultitable& x) {
  if (!is_positive(q)) throw FragmentError("query " + query_str(q) + " is not positive");
  XRel r = eval_x(q, x);
  CTable t{RelSchema{kAnswerName, {}}, {}};
  for (const auto& a : r.schema) t.schema.attrs.push_back(a.str());
  for (auto& [v, c] : r.rows)
    if (satisfiable(c).satisfiable) t.rows.push_back({std::move(v), Condition::from(c), ""});
  XMultitable out;
  out.mutex = x.mutex;
  out.table.global = x.table.global;
  out.table.tables.push_back(std::move(t));
  return out;
}

}  // namespace ws
