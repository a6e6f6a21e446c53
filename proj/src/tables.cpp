#include "worldset/tables.hpp"

#include <algorithm>
#include <map>

#include "union_find.hpp"

namespace ws {

const RelSchema& find_relation(const DbSchema& s, const std::string& name) {
  for (const auto& r : s)
    if (r.name == name) return r;
  throw SchemaError("unknown relation " + name);
}

Schema attr_schema(const RelSchema& r) { return Schema(r.attrs.begin(), r.attrs.end()); }

World::World(std::vector<std::pair<std::string, Relation>> relations) : relations_(std::move(relations)) {
  std::sort(relations_.begin(), relations_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < relations_.size(); ++i)
    if (relations_[i].first == relations_[i - 1].first)
      throw SchemaError("relation " + relations_[i].first + " given twice");
}

const Relation* World::find(const std::string& name) const {
  for (const auto& [n, r] : relations_)
    if (n == name) return &r;
  return nullptr;
}

const Relation& World::at(const std::string& name) const {
  if (const Relation* r = find(name)) return *r;
  throw SchemaError("world has no relation " + name);
}

// ---------------------------------------------------------------- x validation

ValidationReport validate_x(const XMultitable& x) {
  ValidationReport rep;
  auto fail = [&](std::string msg) {
    rep.ok = false;
    rep.problems.push_back(std::move(msg));
  };
  auto is_mutex = [&](const Value& v) { return v.is_variable() && x.mutex.contains(v.text()); };

  auto global = x.table.global.as_conjunction();
  if (!global) {
    fail("global condition is not a conjunction");
  } else {
    for (const auto& a : global->atoms()) {
      if (a.equal) fail("global contains equality " + a.str());
      if (is_mutex(a.lhs) || is_mutex(a.rhs)) fail("global mentions mutex variable in " + a.str());
    }
  }

  for (const auto& t : x.table.tables) {
    for (const auto& row : t.rows) {
      for (const auto& v : row.values)
        if (is_mutex(v)) fail("mutex variable " + v.str() + " occurs in relation " + t.schema.name);
      auto local = row.local.as_conjunction();
      if (!local) {
        fail("local condition of " + tuple_str(row.values) + " is not a conjunction");
        continue;
      }
      std::map<std::string, std::set<int>> excluded;
      for (const auto& a : local->atoms()) {
        const Value* y = is_mutex(a.lhs) ? &a.lhs : is_mutex(a.rhs) ? &a.rhs : nullptr;
        if (!y) {
          if (!a.equal) fail("local inequality " + a.str() + " is not part of a mutex formula");
          continue;
        }
        const Value& other = y == &a.lhs ? a.rhs : a.lhs;
        int mu = *x.mutex.range_of(y->text());
        int i = 0;
        try {
          i = other.is_constant() ? std::stoi(other.text()) : 0;
        } catch (const std::exception&) {
          i = 0;
        }
        if (!other.is_constant() || std::to_string(i) != other.text() || i < 1 || i > mu) {
          fail("atom " + a.str() + " does not compare a mutex variable with 1.." + std::to_string(mu));
          continue;
        }
        if (!a.equal) excluded[y->text()].insert(i);
      }
      for (const auto& [name, vals] : excluded)
        if (static_cast<int>(vals.size()) != *x.mutex.range_of(name))
          fail("incomplete mutex formula for ?" + name + " in local of " + tuple_str(row.values));
    }
  }
  return rep;
}

// ---------------------------------------------------------------- normalization

GMultitable normalize_g(const GMultitable& m) {
  detail::TermClasses classes;
  bool consistent = true;
  for (const auto& a : m.global.atoms()) {
    classes.id(a.lhs);
    classes.id(a.rhs);
    if (a.equal && !classes.merge(a.lhs, a.rhs)) consistent = false;
  }
  GMultitable out;
  if (consistent) {
    // Representative: the class constant, else the least variable.
    std::map<std::size_t, Value> rep;
    for (const auto& t : classes.terms()) {
      auto r = classes.find(t);
      if (const Value* k = classes.constant_of(r)) {
        rep[r] = *k;
      } else {
        auto it = rep.find(r);
        if (it == rep.end() || t < it->second) rep[r] = t;
      }
    }
    Valuation subst;
    for (const auto& t : classes.terms())
      if (t.is_variable()) {
        const Value& r = rep[classes.find(t)];
        if (!(r == t)) subst[t.text()] = r;
      }
    for (const auto& a : m.global.atoms()) {
      if (a.equal) continue;
      Atom s = substitute(a, subst);
      auto tv = s.trivial();
      if (tv && !*tv) {
        consistent = false;
        break;
      }
      if (!tv) out.global.add(s);
    }
    for (const auto& t : m.tables) {
      GTable g{t.schema, {}, {}};
      for (std::size_t i = 0; i < t.rows.size(); ++i) {
        g.rows.push_back(substitute(t.rows[i], subst));
        if (!t.ids.empty()) g.ids.push_back(t.ids[i]);
      }
      out.tables.push_back(std::move(g));
    }
  }
  if (!consistent) {
    out.tables = m.tables;
    out.global = Conjunction::contradiction();
  }
  return out;
}

CMultitable to_c(const GMultitable& m) {
  CMultitable c;
  c.global = Condition::from(m.global);
  for (const auto& t : m.tables) {
    CTable ct{t.schema, {}};
    for (std::size_t i = 0; i < t.rows.size(); ++i)
      ct.rows.push_back({t.rows[i], Condition(), t.ids.empty() ? std::string() : t.ids[i]});
    c.tables.push_back(std::move(ct));
  }
  return c;
}

DbSchema schema_of(const CMultitable& m) {
  DbSchema s;
  for (const auto& t : m.tables) s.push_back(t.schema);
  return s;
}

// ---------------------------------------------------------------- enumeration

EnumBudget EnumBudget::make(const std::set<Value>& active_domain, const std::set<Value>& extra,
                            std::size_t fresh) {
  std::set<Value> known = active_domain;
  known.insert(extra.begin(), extra.end());
  EnumBudget b;
  b.pool.assign(known.begin(), known.end());
  for (auto& f : fresh_constants(fresh, known)) b.pool.push_back(std::move(f));
  b.min_fresh = fresh;
  return b;
}

std::set<Value> active_domain(const CMultitable& m) {
  std::set<Value> out;
  collect_constants(m.global, out);
  for (const auto& t : m.tables)
    for (const auto& row : t.rows) {
      for (const auto& v : row.values)
        if (v.is_constant()) out.insert(v);
      collect_constants(row.local, out);
    }
  return out;
}

std::set<std::string> variables(const CMultitable& m) {
  std::set<std::string> out;
  collect_vars(m.global, out);
  for (const auto& t : m.tables)
    for (const auto& row : t.rows) {
      for (const auto& v : row.values)
        if (v.is_variable()) out.insert(v.text());
      collect_vars(row.local, out);
    }
  return out;
}

EnumBudget default_budget(const CMultitable& m, const std::set<Value>& extra) {
  return EnumBudget::make(active_domain(m), extra, variables(m).size());
}

void for_each_valuation(const std::vector<std::string>& vars, const std::vector<Value>& pool,
                        const std::function<void(const Valuation&)>& f) {
  Valuation nu;
  if (vars.empty()) {
    f(nu);
    return;
  }
  if (pool.empty()) return;
  std::vector<std::size_t> idx(vars.size(), 0);
  for (const auto& v : vars) nu[v] = pool[0];
  for (;;) {
    f(nu);
    std::size_t k = 0;
    while (k < vars.size()) {
      if (++idx[k] < pool.size()) {
        nu[vars[k]] = pool[idx[k]];
        break;
      }
      idx[k] = 0;
      nu[vars[k]] = pool[0];
      ++k;
    }
    if (k == vars.size()) return;
  }
}

World instantiate(const CMultitable& m, const Valuation& nu) {
  std::vector<std::pair<std::string, Relation>> rels;
  for (const auto& t : m.tables) {
    std::vector<Tuple> tuples;
    for (const auto& row : t.rows)
      if (eval_condition(row.local, nu)) tuples.push_back(substitute(row.values, nu));
    rels.emplace_back(t.schema.name, Relation(attr_schema(t.schema), std::move(tuples)));
  }
  return World(std::move(rels));
}

WorldSet rep_enumerate(const CMultitable& m, const EnumBudget& b) {
  auto domain = active_domain(m);
  std::size_t outside = 0;
  for (const auto& v : b.pool)
    if (!domain.count(v)) ++outside;
  if (outside < b.min_fresh)
    throw BudgetError("pool has " + std::to_string(outside) + " constants outside the active domain, " +
                      std::to_string(b.min_fresh) + " required");
  auto vars = variables(m);
  WorldSet out;
  for_each_valuation(std::vector<std::string>(vars.begin(), vars.end()), b.pool, [&](const Valuation& nu) {
    if (eval_condition(m.global, nu)) out.insert(instantiate(m, nu));
  });
  return out;
}

WorldSet rep_enumerate(const GMultitable& m, const EnumBudget& b) { return rep_enumerate(to_c(m), b); }

WorldSet rep_enumerate(const XMultitable& x, const EnumBudget& b) { return rep_enumerate(x.table, b); }

}  // namespace ws
