#pragma once

// Shared fixtures for the test suites and the acceptance runner: file loading,
// random instance generators, and brute-force oracles that do not reuse the
// library's own enumeration code.

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "worldset/decide.hpp"
#include "worldset/factorize.hpp"
#include "worldset/format.hpp"
#include "worldset/query.hpp"
#include "worldset/translate.hpp"

#ifndef WS_DATA_DIR
#define WS_DATA_DIR "data"
#endif

namespace wst {

using namespace ws;
using Rng = std::mt19937;

inline std::string read_file(const std::string& name) {
  std::ifstream in(std::string(WS_DATA_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing data file " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class T>
T parse_as(const std::string& text) {
  return std::get<T>(parse_document(text));
}

template <class T>
T load_as(const std::string& name) {
  return parse_as<T>(read_file(name));
}

inline Value C(long long n) { return Value::constant(n); }
inline Value C(const char* s) { return Value::constant(s); }
inline Value C(const std::string& s) { return Value::constant(s); }
inline Value V(const char* s) { return Value::variable(s); }
inline Value B() { return Value::bottom(); }

inline Relation rel(std::vector<std::string> attrs, std::vector<Tuple> rows) {
  return Relation(Schema(attrs.begin(), attrs.end()), std::move(rows));
}

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

// ---------------------------------------------------------------- pools

// Active domain, extras, then `fresh` constants named "@k" (never produced by
// the generators below).
inline std::vector<Value> oracle_pool(const std::set<Value>& adom, const std::set<Value>& extra, std::size_t fresh) {
  std::set<Value> known = adom;
  known.insert(extra.begin(), extra.end());
  std::vector<Value> pool(known.begin(), known.end());
  for (std::size_t i = 1; i <= fresh; ++i) pool.push_back(Value::constant("@" + std::to_string(i)));
  return pool;
}

inline EnumBudget as_budget(const std::vector<Value>& pool, std::size_t min_fresh) {
  EnumBudget b;
  b.pool = pool;
  b.min_fresh = min_fresh;
  return b;
}

// All assignments of vars into pool (odometer order).
inline void each_assignment(const std::vector<std::string>& vars, const std::vector<Value>& pool,
                            const std::function<void(const std::map<std::string, Value>&)>& f) {
  std::map<std::string, Value> nu;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == vars.size()) {
      f(nu);
      return;
    }
    for (const auto& v : pool) {
      nu[vars[i]] = v;
      rec(i + 1);
    }
  };
  rec(0);
}

inline Value bind_value(const Value& v, const std::map<std::string, Value>& nu) {
  if (!v.is_variable()) return v;
  auto it = nu.find(v.text());
  if (it == nu.end()) throw std::runtime_error("oracle: unbound variable " + v.text());
  return it->second;
}

// Direct recursive evaluation of a condition tree.
inline bool holds(const Condition& c, const std::map<std::string, Value>& nu) {
  switch (c.kind()) {
    case Condition::Kind::kTrue:
      return true;
    case Condition::Kind::kAtom: {
      const Atom& a = c.as_atom();
      return (bind_value(a.lhs, nu) == bind_value(a.rhs, nu)) == a.equal;
    }
    case Condition::Kind::kAnd:
      for (const auto& ch : c.children())
        if (!holds(ch, nu)) return false;
      return true;
    case Condition::Kind::kOr:
      for (const auto& ch : c.children())
        if (holds(ch, nu)) return true;
      return false;
    case Condition::Kind::kNot:
      return !holds(c.children().front(), nu);
  }
  return false;
}

inline bool holds(const Conjunction& c, const std::map<std::string, Value>& nu) {
  for (const auto& a : c.atoms())
    if ((bind_value(a.lhs, nu) == bind_value(a.rhs, nu)) != a.equal) return false;
  return true;
}

inline void vars_of(const Condition& c, std::set<std::string>& out) { collect_vars(c, out); }

// ---------------------------------------------------------------- world oracles

// rep of a c-multitable: every assignment of its variables into the pool.
inline WorldSet oracle_worlds(const CMultitable& m, const std::vector<Value>& pool) {
  std::set<std::string> vs;
  collect_vars(m.global, vs);
  for (const auto& t : m.tables)
    for (const auto& r : t.rows) {
      collect_vars(r.local, vs);
      for (const auto& v : r.values)
        if (v.is_variable()) vs.insert(v.text());
    }
  WorldSet out;
  each_assignment({vs.begin(), vs.end()}, pool, [&](const std::map<std::string, Value>& nu) {
    if (!holds(m.global, nu)) return;
    std::vector<std::pair<std::string, Relation>> rels;
    for (const auto& t : m.tables) {
      std::vector<Tuple> rows;
      for (const auto& r : t.rows) {
        if (!holds(r.local, nu)) continue;
        Tuple x;
        for (const auto& v : r.values) x.push_back(bind_value(v, nu));
        rows.push_back(x);
      }
      rels.emplace_back(t.schema.name, Relation(Schema(t.schema.attrs.begin(), t.schema.attrs.end()), rows));
    }
    out.insert(World(rels));
  });
  return out;
}

// rep of a gWSD: every choice of one row per component and every assignment;
// slots are read straight off the "Rel.slot.Attr" column names.
inline WorldSet oracle_worlds(const GWSD& w, const std::vector<Value>& pool) {
  WorldSet out;
  for (const auto& c : w.components)
    if (c.empty()) return out;
  std::set<std::string> vs;
  for (const auto& c : w.components)
    for (const auto& t : c.tuples())
      for (const auto& v : t)
        if (v.is_variable()) vs.insert(v.text());
  collect_vars(w.global, vs);
  std::vector<std::size_t> pick(w.components.size(), 0);
  for (;;) {
    // cell[rel][slot][attr]
    std::map<std::string, std::map<std::string, std::map<std::string, Value>>> cells;
    for (std::size_t j = 0; j < w.components.size(); ++j) {
      const auto& c = w.components[j];
      const Tuple& row = c.tuples()[pick[j]];
      for (std::size_t p = 0; p < c.arity(); ++p) {
        auto parts = c.schema()[p].parts();
        cells[parts[0]][parts[1]][parts[2]] = row[p];
      }
    }
    each_assignment({vs.begin(), vs.end()}, pool, [&](const std::map<std::string, Value>& nu) {
      if (!holds(w.global, nu)) return;
      std::vector<std::pair<std::string, Relation>> rels;
      for (const auto& rs : w.schema) {
        std::vector<Tuple> rows;
        for (const auto& [slot, attrs] : cells[rs.name]) {
          Tuple t;
          bool bottom = false;
          for (const auto& a : rs.attrs) {
            auto it = attrs.find(a);
            if (it == attrs.end() || it->second.is_bottom()) {
              bottom = true;
              break;
            }
            t.push_back(bind_value(it->second, nu));
          }
          if (!bottom) rows.push_back(t);
        }
        rels.emplace_back(rs.name, Relation(Schema(rs.attrs.begin(), rs.attrs.end()), rows));
      }
      out.insert(World(rels));
    });
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == w.components[k].size()) pick[k++] = 0;
    if (k == pick.size()) break;
  }
  return out;
}

inline std::set<Value> constants_of(const GWSD& w) {
  std::set<Value> out;
  for (const auto& c : w.components)
    for (const auto& t : c.tuples())
      for (const auto& v : t)
        if (v.is_constant()) out.insert(v);
  collect_constants(w.global, out);
  return out;
}

inline std::size_t variable_count(const GWSD& w) {
  std::set<std::string> vs;
  for (const auto& c : w.components)
    for (const auto& t : c.tuples())
      for (const auto& v : t)
        if (v.is_variable()) vs.insert(v.text());
  collect_vars(w.global, vs);
  return vs.size();
}

inline std::set<Value> constants_of(const CMultitable& m) {
  std::set<Value> out;
  collect_constants(m.global, out);
  for (const auto& t : m.tables)
    for (const auto& r : t.rows) {
      collect_constants(r.local, out);
      for (const auto& v : r.values)
        if (v.is_constant()) out.insert(v);
    }
  return out;
}

inline std::size_t variable_count(const CMultitable& m) {
  std::set<std::string> vs;
  collect_vars(m.global, vs);
  for (const auto& t : m.tables)
    for (const auto& r : t.rows) {
      collect_vars(r.local, vs);
      for (const auto& v : r.values)
        if (v.is_variable()) vs.insert(v.text());
    }
  return vs.size();
}

// ---------------------------------------------------------------- world-set queries

inline bool world_has(const World& w, const std::string& rel, const Tuple& t) {
  const Relation* r = w.find(rel);
  return r && r->contains(t);
}

inline bool oracle_tuple_possible(const WorldSet& ws, const std::string& rel, const Tuple& t) {
  return std::any_of(ws.begin(), ws.end(), [&](const World& w) { return world_has(w, rel, t); });
}

inline bool oracle_tuple_certain(const WorldSet& ws, const std::string& rel, const Tuple& t) {
  return std::all_of(ws.begin(), ws.end(), [&](const World& w) { return world_has(w, rel, t); });
}

inline bool oracle_instance_possible(const WorldSet& ws, const World& i) { return ws.count(i) > 0; }

inline bool oracle_instance_certain(const WorldSet& ws, const World& i) {
  return std::all_of(ws.begin(), ws.end(), [&](const World& w) { return w == i; });
}

// ---------------------------------------------------------------- generators

// Random relation over attributes A1..An with values drawn from v1..vk.
inline Relation random_relation(Rng& rng, int arity, int rows, int pool) {
  Schema s;
  for (int i = 1; i <= arity; ++i) s.push_back("A" + std::to_string(i));
  std::vector<Tuple> t;
  for (int r = 0; r < rows; ++r) {
    Tuple x;
    for (int i = 0; i < arity; ++i) x.push_back(Value::constant("v" + std::to_string(uniform(rng, 1, pool))));
    t.push_back(x);
  }
  return Relation(s, t);
}

// Random relation that is a product of random blocks, so it has non-trivial factors.
inline Relation random_product_relation(Rng& rng, int arity, int max_rows, int pool) {
  std::vector<int> attrs(arity);
  for (int i = 0; i < arity; ++i) attrs[i] = i + 1;
  std::shuffle(attrs.begin(), attrs.end(), rng);
  Relation acc;
  bool first = true;
  int budget = max_rows;
  for (std::size_t i = 0; i < attrs.size();) {
    std::size_t width = static_cast<std::size_t>(uniform(rng, 1, 3));
    width = std::min(width, attrs.size() - i);
    Schema s;
    for (std::size_t k = 0; k < width; ++k) s.push_back("A" + std::to_string(attrs[i + k]));
    int rows = std::max(1, uniform(rng, 1, std::max(1, std::min(4, budget))));
    std::vector<Tuple> t;
    for (int r = 0; r < rows; ++r) {
      Tuple x;
      for (std::size_t k = 0; k < width; ++k) x.push_back(Value::constant("v" + std::to_string(uniform(rng, 1, pool))));
      t.push_back(x);
    }
    Relation block(s, t);
    acc = first ? block : product(acc, block);
    first = false;
    budget = std::max(1, max_rows / static_cast<int>(std::max<std::size_t>(1, acc.size())));
    i += width;
  }
  Schema order;
  for (int i = 1; i <= arity; ++i) order.push_back("A" + std::to_string(i));
  return reorder(acc, order);
}

struct GwsdShape {
  int max_components = 3;
  int max_rows = 3;
  int max_vars = 2;
  int domain = 4;
  int max_slots = 4;
  double bottom_rate = 0.25;
  double var_rate = 0.2;
  int max_global = 2;
};

// Random tuple-level gWSD over R(A) and S(B, C): every slot is kept whole in
// one component.
inline GWSD random_gwsd(Rng& rng, const GwsdShape& shape = {}) {
  DbSchema schema{{"R", {"A"}}, {"S", {"B", "C"}}};
  struct Slot {
    std::string rel;
    std::string id;
    std::vector<std::string> attrs;
  };
  std::vector<Slot> slots;
  int nslots = uniform(rng, 1, shape.max_slots);
  int r_count = 0, s_count = 0;
  for (int i = 0; i < nslots; ++i) {
    if (coin(rng)) {
      slots.push_back({"R", "d" + std::to_string(++r_count), {"A"}});
    } else {
      slots.push_back({"S", "d" + std::to_string(++s_count), {"B", "C"}});
    }
  }
  int ncomp = uniform(rng, 1, std::min<int>(shape.max_components, nslots));
  std::vector<std::vector<std::size_t>> groups(ncomp);
  for (std::size_t i = 0; i < slots.size(); ++i) groups[i < static_cast<std::size_t>(ncomp) ? i : uniform(rng, 0, ncomp - 1)].push_back(i);
  std::vector<std::string> vars;
  int nvars = uniform(rng, 0, shape.max_vars);
  for (int i = 0; i < nvars; ++i) vars.push_back(std::string(1, static_cast<char>('x' + i)));
  auto value = [&]() -> Value {
    if (!vars.empty() && coin(rng, shape.var_rate)) return Value::variable(vars[uniform(rng, 0, nvars - 1)]);
    return Value::constant(uniform(rng, 1, shape.domain));
  };
  GWSD w;
  w.schema = schema;
  for (const auto& g : groups) {
    Schema cols;
    for (auto i : g)
      for (const auto& a : slots[i].attrs) cols.push_back(slots[i].rel + "." + slots[i].id + "." + a);
    std::vector<Tuple> rows;
    int nrows = uniform(rng, 1, shape.max_rows);
    for (int r = 0; r < nrows; ++r) {
      Tuple t;
      for (auto i : g) {
        bool bottom = coin(rng, shape.bottom_rate);
        for (std::size_t a = 0; a < slots[i].attrs.size(); ++a) t.push_back(bottom ? Value::bottom() : value());
      }
      rows.push_back(t);
    }
    w.components.emplace_back(cols, rows);
  }
  // Only variables that actually occur may be constrained.
  std::set<std::string> used;
  for (const auto& c : w.components)
    for (const auto& t : c.tuples())
      for (const auto& v : t)
        if (v.is_variable()) used.insert(v.text());
  std::vector<std::string> uv(used.begin(), used.end());
  if (!uv.empty()) {
    int n = uniform(rng, 0, shape.max_global);
    for (int i = 0; i < n; ++i) {
      Value a = Value::variable(uv[uniform(rng, 0, static_cast<int>(uv.size()) - 1)]);
      Value b = coin(rng) ? Value::variable(uv[uniform(rng, 0, static_cast<int>(uv.size()) - 1)])
                          : Value::constant(uniform(rng, 1, shape.domain));
      if (a == b) continue;
      w.global.add(Atom::ne(a, b));
    }
  }
  return w;
}

// Random c-multitable over R(A, B) with conjunctive or disjunctive conditions.
inline CMultitable random_ctable(Rng& rng, int max_vars = 3, int max_rows = 3, int domain = 3) {
  std::vector<Value> vars;
  int nvars = uniform(rng, 1, max_vars);
  for (int i = 0; i < nvars; ++i) vars.push_back(Value::variable(std::string(1, static_cast<char>('x' + i))));
  auto term = [&]() { return coin(rng, 0.6) ? vars[uniform(rng, 0, nvars - 1)] : Value::constant(uniform(rng, 1, domain)); };
  auto atom = [&]() {
    Value a = vars[uniform(rng, 0, nvars - 1)];
    Value b = term();
    return Condition::atom(Atom::make(a, coin(rng, 0.4), b));
  };
  auto cond = [&](double p_true) -> Condition {
    if (coin(rng, p_true)) return Condition::truth();
    int n = uniform(rng, 1, 2);
    std::vector<Condition> parts;
    for (int i = 0; i < n; ++i) parts.push_back(atom());
    return coin(rng, 0.7) ? Condition::all(parts) : Condition::any(parts);
  };
  CMultitable m;
  CTable t{{"R", {"A", "B"}}, {}};
  int nrows = uniform(rng, 1, max_rows);
  for (int r = 0; r < nrows; ++r) t.rows.push_back({{term(), term()}, cond(0.4), ""});
  m.tables.push_back(t);
  m.global = cond(0.3);
  return m;
}

// Random x-multitable over R(A, B) and S(C): mutex variables _m1, _m2 select
// row alternatives, plain variables x, y fill cells, locals may add x = c.
inline XMultitable random_xtable(Rng& rng, int domain = 3) {
  int nm = uniform(rng, 0, 2);
  std::vector<int> mus;
  for (int i = 0; i < nm; ++i) mus.push_back(uniform(rng, 1, 2));
  XMultitable x;
  x.mutex = mus.empty() ? MutexSet() : mutex_build(mus, "_m");
  std::vector<Value> vars{V("x"), V("y")};
  auto term = [&]() { return coin(rng, 0.3) ? vars[uniform(rng, 0, 1)] : C(uniform(rng, 1, domain)); };
  auto local = [&]() {
    Conjunction c;
    for (std::size_t j = 0; j < x.mutex.vars().size(); ++j)
      if (coin(rng, 0.6)) c = c & x.mutex.cond(j, uniform(rng, 1, x.mutex.vars()[j].mu + 1));
    if (coin(rng, 0.2)) c.add(Atom::eq(vars[uniform(rng, 0, 1)], C(uniform(rng, 1, domain))));
    return Condition::from(c);
  };
  CTable r{{"R", {"A", "B"}}, {}}, s{{"S", {"C"}}, {}};
  for (int i = uniform(rng, 1, 3); i > 0; --i) r.rows.push_back({{term(), term()}, local(), ""});
  for (int i = uniform(rng, 0, 2); i > 0; --i) s.rows.push_back({{term()}, local(), ""});
  x.table.tables = {r, s};
  Conjunction g;
  if (coin(rng, 0.4)) g.add(Atom::ne(vars[0], coin(rng) ? vars[1] : C(uniform(rng, 1, domain))));
  x.table.global = Condition::from(g);
  return x;
}

// Random positive query over R(A, B), S(C) of depth at most `depth`.
inline QueryPtr random_positive_query(Rng& rng, int depth, int domain, Schema* out_schema = nullptr) {
  static int counter = 0;
  std::function<std::pair<QueryPtr, Schema>(int)> gen = [&](int d) -> std::pair<QueryPtr, Schema> {
    if (d == 0 || coin(rng, 0.25)) {
      if (coin(rng)) return {Query::base("R"), Schema{"A", "B"}};
      return {Query::base("S"), Schema{"C"}};
    }
    int op = uniform(rng, 0, 4);
    auto [q, s] = gen(d - 1);
    switch (op) {
      case 0: {  // select
        SelectPred p;
        p.lhs = s[uniform(rng, 0, static_cast<int>(s.size()) - 1)];
        p.equal = true;
        if (s.size() > 1 && coin(rng))
          p.rhs = s[uniform(rng, 0, static_cast<int>(s.size()) - 1)];
        else
          p.rhs = Value::constant(uniform(rng, 1, domain));
        return {Query::select({p}, q), s};
      }
      case 1: {  // project
        Schema keep;
        for (const auto& a : s)
          if (coin(rng, 0.6)) keep.push_back(a);
        if (keep.empty() && coin(rng, 0.5)) keep.push_back(s.front());
        return {Query::project(keep, q), keep.empty() ? Schema{kNullaryAttr} : keep};
      }
      case 2: {  // product with renamed right side
        auto [r, rs] = gen(d - 1);
        std::map<AttrName, AttrName> ren;
        Schema out = s;
        for (const auto& a : rs) {
          AttrName n = a.str() + "_" + std::to_string(++counter);
          ren[a] = n;
          out.push_back(n);
        }
        return {Query::product(q, Query::rename(ren, r)), out};
      }
      case 3: {  // union with a filtered copy
        SelectPred p{s.front(), true, Value::constant(uniform(rng, 1, domain))};
        auto [q2, s2] = gen(0);
        if (s2 == s) return {Query::union_of(q, q2), s};
        return {Query::union_of(q, Query::select({p}, q)), s};
      }
      default: {  // rename one attribute
        std::map<AttrName, AttrName> ren;
        AttrName a = s[uniform(rng, 0, static_cast<int>(s.size()) - 1)];
        if (a == kNullaryAttr) return {q, s};
        AttrName n = a.str() + "r" + std::to_string(++counter);
        ren[a] = n;
        Schema out = s;
        for (auto& x : out)
          if (x == a) x = n;
        return {Query::rename(ren, q), out};
      }
    }
  };
  auto [q, s] = gen(depth);
  if (out_schema) *out_schema = s;
  return q;
}

// ---------------------------------------------------------------- factorization oracle

// Finest attribute partition whose block projections multiply back to r;
// enumerates all set partitions, so only for small arity.
inline std::vector<Schema> oracle_prime_blocks(const Relation& r) {
  const Schema& s = r.schema();
  std::vector<int> block(s.size(), 0);
  std::vector<Schema> best;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
    if (i == s.size()) {
      if (used <= static_cast<int>(best.size())) return;
      std::vector<Schema> blocks(used);
      for (std::size_t k = 0; k < s.size(); ++k) blocks[block[k]].push_back(s[k]);
      std::size_t prod = 1;
      for (const auto& b : blocks) prod *= project(r, b).size();
      if (prod == r.size()) best = blocks;
      return;
    }
    for (int b = 0; b <= used; ++b) {
      block[i] = b;
      rec(i + 1, std::max(used, b + 1));
    }
  };
  rec(0, 0);
  return best;
}

inline std::set<std::set<std::string>> schema_sets(const std::vector<Schema>& blocks) {
  std::set<std::set<std::string>> out;
  for (const auto& b : blocks) {
    std::set<std::string> x;
    for (const auto& a : b) x.insert(a.str());
    out.insert(x);
  }
  return out;
}

inline std::vector<Schema> factor_schemas(const Factorization& f) {
  std::vector<Schema> out;
  for (const auto& r : f.factors) out.push_back(r.schema());
  return out;
}

// ---------------------------------------------------------------- reductions

inline bool oracle_exact_cover(int n, const std::vector<std::vector<int>>& triples) {
  int q = n / 3;
  std::function<bool(std::size_t, std::vector<bool>&, int)> rec = [&](std::size_t i, std::vector<bool>& used, int picked) {
    if (picked == q) return std::all_of(used.begin() + 1, used.end(), [](bool b) { return b; });
    if (i == triples.size()) return false;
    bool ok = true;
    for (int v : triples[i]) ok = ok && !used[v];
    if (ok) {
      for (int v : triples[i]) used[v] = true;
      if (rec(i + 1, used, picked + 1)) return true;
      for (int v : triples[i]) used[v] = false;
    }
    return rec(i + 1, used, picked);
  };
  std::vector<bool> used(n + 1, false);
  return rec(0, used, 0);
}

inline int max_var(const std::vector<Clause>& cs) {
  int n = 0;
  for (const auto& c : cs)
    for (int l : c) n = std::max(n, std::abs(l));
  return n;
}

inline bool lit_true(int lit, unsigned mask) {
  bool v = (mask >> (std::abs(lit) - 1)) & 1u;
  return lit > 0 ? v : !v;
}

inline bool oracle_cnf_sat(const std::vector<Clause>& cs) {
  int n = max_var(cs);
  for (unsigned m = 0; m < (1u << n); ++m)
    if (std::all_of(cs.begin(), cs.end(), [&](const Clause& c) {
          return std::any_of(c.begin(), c.end(), [&](int l) { return lit_true(l, m); });
        }))
      return true;
  return false;
}

inline bool oracle_dnf_tautology(const std::vector<Clause>& cs) {
  int n = max_var(cs);
  for (unsigned m = 0; m < (1u << n); ++m)
    if (!std::any_of(cs.begin(), cs.end(), [&](const Clause& c) {
          return std::all_of(c.begin(), c.end(), [&](int l) { return lit_true(l, m); });
        }))
      return false;
  return true;
}

// Random 3-literal clauses over variables 1..nvars (distinct variables per clause).
inline std::vector<Clause> random_clauses(Rng& rng, int nvars, int nclauses) {
  std::vector<Clause> out;
  for (int i = 0; i < nclauses; ++i) {
    std::vector<int> vs;
    for (int v = 1; v <= nvars; ++v) vs.push_back(v);
    std::shuffle(vs.begin(), vs.end(), rng);
    Clause c;
    for (int k = 0; k < 3; ++k) c.push_back(coin(rng) ? vs[k] : -vs[k]);
    out.push_back(c);
  }
  return out;
}

}  // namespace wst
