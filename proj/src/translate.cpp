#include "worldset/translate.hpp"

#include <algorithm>
#include <map>

namespace ws {

// ---------------------------------------------------------------- gWSD -> x

XMultitable gwsd_to_x(const GWSD& input) {
  GWSD w = canonicalize(input);
  std::vector<MutexVar> mvars;
  std::vector<int> comp_var(w.components.size(), -1);
  Conjunction global = w.global;
  for (std::size_t j = 0; j < w.components.size(); ++j) {
    std::size_t n = w.components[j].size();
    if (n == 0) global = Conjunction::contradiction();
    if (n >= 2) {
      comp_var[j] = static_cast<int>(mvars.size());
      mvars.push_back({"_x" + std::to_string(j + 1), static_cast<int>(n - 1)});
    }
  }
  MutexSet mutex(mvars);
  auto row_cond = [&](std::size_t j, std::size_t i) {
    return comp_var[j] < 0 ? Conjunction() : mutex.cond(comp_var[j], static_cast<int>(i + 1));
  };

  // Locate every column: (component, position).
  std::map<std::string, std::pair<std::size_t, std::size_t>> where;
  for (std::size_t j = 0; j < w.components.size(); ++j)
    for (std::size_t p = 0; p < w.components[j].arity(); ++p) where[w.components[j].schema()[p].str()] = {j, p};
  WideLayout layout = layout_from_columns(w.schema, canonical_columns(w));

  struct Entry {
    std::vector<std::size_t> key;  // first component, row choice, slot rank
    std::size_t rel;
    CRow row;
  };
  std::vector<Entry> entries;
  std::size_t slot_rank = 0;
  for (std::size_t r = 0; r < layout.size(); ++r) {
    const auto& sl = layout[r];
    for (const auto& s : sl.slots) {
      ++slot_rank;
      std::vector<std::pair<std::size_t, std::size_t>> cells;
      std::vector<std::size_t> comps;
      for (const auto& a : sl.relation.attrs) {
        auto loc = where.at(slot_attr(sl.relation.name, s, a));
        cells.push_back(loc);
        if (std::find(comps.begin(), comps.end(), loc.first) == comps.end()) comps.push_back(loc.first);
      }
      std::sort(comps.begin(), comps.end());
      if (std::any_of(comps.begin(), comps.end(), [&](std::size_t c) { return w.components[c].empty(); })) continue;
      // Every combination of rows of the components the slot spans.
      std::vector<std::size_t> choice(comps.size(), 0);
      for (;;) {
        Tuple values;
        bool bottom = false;
        for (const auto& [c, p] : cells) {
          std::size_t k = std::find(comps.begin(), comps.end(), c) - comps.begin();
          const Value& v = w.components[c].tuples()[choice[k]][p];
          bottom = bottom || v.is_bottom();
          values.push_back(v);
        }
        if (!bottom) {
          Conjunction local;
          for (std::size_t k = 0; k < comps.size(); ++k) local = local & row_cond(comps[k], choice[k]);
          std::vector<std::size_t> key{comps.front()};
          key.insert(key.end(), choice.begin(), choice.end());
          key.push_back(slot_rank);
          entries.push_back({std::move(key), r, CRow{std::move(values), Condition::from(local), ""}});
        }
        std::size_t k = 0;
        while (k < comps.size() && ++choice[k] == w.components[comps[k]].size()) choice[k++] = 0;
        if (k == comps.size()) break;
      }
    }
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.key < b.key; });

  XMultitable x;
  x.mutex = mutex;
  x.table.global = Condition::from(global);
  for (const auto& r : w.schema) x.table.tables.push_back({r, {}});
  for (auto& e : entries) x.table.tables[e.rel].rows.push_back(std::move(e.row));
  return x;
}

// ---------------------------------------------------------------- c -> g-tabset

namespace {

struct Block {
  std::optional<Value> constant;
  std::vector<Value> vars;  // sorted
  Value rep() const { return constant ? *constant : vars.front(); }
};

void partitions(const std::vector<Value>& vars, std::size_t k, std::vector<Block>& blocks,
                const std::function<void(const std::vector<Block>&)>& f) {
  if (k == vars.size()) {
    f(blocks);
    return;
  }
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    blocks[b].vars.push_back(vars[k]);
    partitions(vars, k + 1, blocks, f);
    blocks[b].vars.pop_back();
  }
  blocks.push_back(Block{std::nullopt, {vars[k]}});
  partitions(vars, k + 1, blocks, f);
  blocks.pop_back();
}

}  // namespace

GTabset c_to_gtabset(const CMultitable& m, const AtlasOptions& opts) {
  auto var_names = variables(m);
  if (var_names.size() > opts.max_variables)
    throw CapError("c-table has " + std::to_string(var_names.size()) + " variables, limit is " +
                   std::to_string(opts.max_variables));
  std::vector<Value> vars;
  for (const auto& v : var_names) vars.push_back(Value::variable(v));
  auto constants = active_domain(m);

  // Row ids become slots; tables with missing or repeated ids fall back to d1, d2, ...
  std::vector<std::vector<std::string>> ids;
  for (const auto& t : m.tables) {
    std::vector<std::string> given;
    std::set<std::string> seen;
    for (const auto& r : t.rows)
      if (!r.id.empty() && seen.insert(r.id).second) given.push_back(r.id);
    ids.emplace_back();
    for (std::size_t i = 0; i < t.rows.size(); ++i)
      ids.back().push_back(given.size() == t.rows.size() ? given[i] : "d" + std::to_string(i + 1));
  }

  GTabset out{schema_of(m), {}};
  std::vector<Block> blocks;
  for (const auto& c : constants) blocks.push_back(Block{c, {}});

  partitions(vars, 0, blocks, [&](const std::vector<Block>& bs) {
    // Theta: equalities inside blocks, inequalities between them.
    Conjunction theta;
    Valuation subst;
    for (const auto& b : bs) {
      Value r = b.rep();
      for (const auto& v : b.vars)
        if (!(v == r)) {
          theta.add(Atom::eq(v, r));
          subst[v.text()] = r;
        }
    }
    Conjunction inequalities;
    for (std::size_t i = 0; i < bs.size(); ++i)
      for (std::size_t j = i + 1; j < bs.size(); ++j) {
        if (bs[i].constant && bs[j].constant) continue;
        Atom a = Atom::ne(bs[i].rep(), bs[j].rep());
        theta.add(a);
        inequalities.add(a);
      }
    if (!entails(theta, m.global)) return;

    GMultitable g;
    g.global = inequalities;
    for (const auto& t : m.tables) {
      GTable gt{t.schema, {}, {}};
      for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (!entails(theta, t.rows[i].local)) continue;
        gt.rows.push_back(substitute(t.rows[i].values, subst));
        gt.ids.push_back(ids[&t - m.tables.data()][i]);
      }
      g.tables.push_back(std::move(gt));
    }
    out.members.push_back(std::move(g));
  });
  return out;
}

GWSD gtabset_to_gwsd(const GTabset& ts) { return one_gwsd(normalize_global(tabset_to_gtst(ts))); }

// ---------------------------------------------------------------- simplification

namespace {

struct SRow {
  Tuple values;
  Conjunction cond;
};

std::set<std::string> row_vars(const Tuple& t) {
  std::set<std::string> out;
  for (const auto& v : t)
    if (v.is_variable()) out.insert(v.text());
  return out;
}

Conjunction restrict_to(const Conjunction& c, const std::set<std::string>& vars) {
  Conjunction out;
  for (const auto& a : c.atoms()) {
    bool inside = (!a.lhs.is_variable() || vars.count(a.lhs.text())) &&
                  (!a.rhs.is_variable() || vars.count(a.rhs.text()));
    if (inside) out.add(a);
  }
  return out;
}

// Rows equal up to a renaming of variables share a key.
std::pair<Tuple, Conjunction> row_key(const SRow& r) {
  Valuation ren;
  for (const auto& v : r.values)
    if (v.is_variable() && !ren.count(v.text())) ren[v.text()] = Value::variable("#" + std::to_string(ren.size()));
  return {substitute(r.values, ren), substitute(r.cond, ren)};
}

// Drops tautologies; nullopt if some atom became false.
std::optional<Conjunction> simplify_atoms(const Conjunction& c) {
  Conjunction out;
  for (const auto& a : c.atoms()) {
    auto t = a.trivial();
    if (t && !*t) return std::nullopt;
    if (!t) out.add(a);
  }
  return out;
}

Conjunction without(const Conjunction& c, const Atom& a) {
  std::vector<Atom> rest;
  for (const auto& b : c.atoms())
    if (!(b == a)) rest.push_back(b);
  return Conjunction(std::move(rest));
}

bool merge_once(std::vector<SRow>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& a : rows[i].cond.atoms()) {
      if (a.equal || !a.lhs.is_variable()) continue;
      Valuation subst;
      if (a.rhs.is_variable())
        subst[a.rhs.text()] = a.lhs;
      else
        subst[a.lhs.text()] = a.rhs;
      auto cond = simplify_atoms(substitute(without(rows[i].cond, a), subst));
      if (!cond) continue;
      SRow inst{substitute(rows[i].values, subst), *cond};
      auto key = row_key(inst);
      for (std::size_t j = 0; j < rows.size(); ++j) {
        if (j == i || row_key(rows[j]) != key) continue;
        rows[i].cond = without(rows[i].cond, a);
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(j));
        return true;
      }
    }
  }
  return false;
}

}  // namespace

GWSD simplify_gwsd(const GWSD& input) {
  GWSD w = canonicalize(input);
  bool sat = satisfiable(w.global).satisfiable;
  if (!sat || !w.global.only_inequalities()) return w;

  if (w.components.size() != 1) {
    w.global = restrict_to(w.global, variables(GWSD{w.schema, w.components, {}}));
    return w;
  }
  const Relation& table = w.components.front();

  // Each row only depends on the atoms over its own variables.
  std::vector<SRow> rows;
  for (const auto& t : table.tuples()) {
    SRow r{t, restrict_to(w.global, row_vars(t))};
    auto key = row_key(r);
    if (std::none_of(rows.begin(), rows.end(), [&](const SRow& o) { return row_key(o) == key; }))
      rows.push_back(std::move(r));
  }
  while (merge_once(rows)) {
  }

  // Rebuild one global, reusing base variable names where that keeps every
  // row's restriction of the global equal to its own condition.
  Conjunction phi;
  std::vector<SRow> placed;
  std::set<std::string> taken;
  auto consistent = [&](const Conjunction& candidate) {
    for (const auto& p : placed)
      if (restrict_to(candidate, row_vars(p.values)) != p.cond) return false;
    return true;
  };
  for (const auto& r : rows) {
    auto vars = row_vars(r.values);
    Valuation ren;
    std::set<std::string> bases;
    for (const auto& v : vars) {
      std::string b = base_var_name(v);
      if (!bases.insert(b).second) b = v;
      ren[v] = Value::variable(b);
    }
    SRow cand{substitute(r.values, ren), substitute(r.cond, ren)};
    Conjunction next = phi & cand.cond;
    placed.push_back(cand);
    bool ok = restrict_to(next, row_vars(cand.values)) == cand.cond && consistent(next);
    placed.pop_back();
    if (!ok) {
      ren.clear();
      for (const auto& v : vars) {
        std::string b = base_var_name(v), name;
        for (std::size_t n = 2;; ++n) {
          name = b + "'" + std::to_string(n);
          if (!taken.count(name)) break;
        }
        taken.insert(name);
        ren[v] = Value::variable(name);
      }
      cand = SRow{substitute(r.values, ren), substitute(r.cond, ren)};
      next = phi & cand.cond;
    }
    for (const auto& v : row_vars(cand.values)) taken.insert(v);
    phi = next;
    placed.push_back(std::move(cand));
  }
  std::vector<Tuple> out;
  for (auto& p : placed) out.push_back(std::move(p.values));
  return {w.schema, {Relation(table.schema(), std::move(out))}, phi};
}

}  // namespace ws
