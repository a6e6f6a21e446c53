#include "worldset/gwsd.hpp"

#include <algorithm>
#include <map>

namespace ws {

namespace {

Schema all_columns(const GWSD& w) {
  Schema cols;
  for (const auto& c : w.components) cols.insert(cols.end(), c.schema().begin(), c.schema().end());
  return cols;
}

void check_budget(const std::set<Value>& domain, const EnumBudget& b) {
  std::size_t outside = 0;
  for (const auto& v : b.pool)
    if (!domain.count(v)) ++outside;
  if (outside < b.min_fresh)
    throw BudgetError("pool has " + std::to_string(outside) + " constants outside the active domain, " +
                      std::to_string(b.min_fresh) + " required");
}

World to_world(const std::vector<GTable>& tables, const Valuation& nu) {
  std::vector<std::pair<std::string, Relation>> rels;
  for (const auto& t : tables) {
    std::vector<Tuple> tuples;
    for (const auto& r : t.rows) tuples.push_back(substitute(r, nu));
    rels.emplace_back(t.schema.name, Relation(attr_schema(t.schema), std::move(tuples)));
  }
  return World(std::move(rels));
}

}  // namespace

std::string WsdReport::kind() const {
  if (!global_true) return "gWSD";
  if (has_variables) return "vWSD";
  return "WSD";
}

WsdReport validate(const GWSD& w) {
  WsdReport rep;
  auto fail = [&](std::string msg) {
    rep.valid = false;
    rep.problems.push_back(std::move(msg));
  };
  Schema cols = all_columns(w);
  try {
    WideLayout layout = layout_from_columns(w.schema, cols);
    std::map<std::string, std::size_t> owner;
    for (std::size_t i = 0; i < w.components.size(); ++i)
      for (const auto& a : w.components[i].schema()) owner[a.str()] = i;
    bool tuple_level = true;
    for (const auto& sl : layout)
      for (const auto& s : sl.slots) {
        std::set<std::size_t> comps;
        for (const auto& a : sl.relation.attrs) comps.insert(owner[slot_attr(sl.relation.name, s, a)]);
        if (comps.size() > 1) tuple_level = false;
      }
    rep.level = tuple_level ? Level::kTuple : Level::kAttribute;
  } catch (const SchemaError& e) {
    fail(e.what());
  }
  if (w.components.empty()) fail("no components");
  for (const auto& a : w.global.atoms())
    if (a.equal) fail("global contains equality " + a.str());
  for (const auto& c : w.components)
    if (c.has_variables()) rep.has_variables = true;
  rep.global_true = w.global.empty();
  if (!rep.valid) rep.level = Level::kInvalid;
  return rep;
}

Level level_of(const GWSD& w) { return validate(w).level; }

Schema canonical_columns(const GWSD& w) { return wide_schema(layout_from_columns(w.schema, all_columns(w))); }

GWSD canonicalize(const GWSD& w) {
  Schema order = canonical_columns(w);
  std::map<std::string, std::size_t> rank;
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i].str()] = i;
  WideLayout layout = layout_from_columns(w.schema, order);

  GWSD out{w.schema, {}, w.global};
  for (const auto& c : w.components) {
    Schema attrs = c.schema();
    std::sort(attrs.begin(), attrs.end(),
              [&](const AttrName& a, const AttrName& b) { return rank.at(a.str()) < rank.at(b.str()); });
    Relation r = reorder(c, attrs);
    // Slots wholly inside this component: any bottom makes the slot all-bottom.
    std::vector<std::vector<std::size_t>> whole;
    for (const auto& sl : layout)
      for (const auto& s : sl.slots) {
        std::vector<std::size_t> pos;
        for (const auto& a : sl.relation.attrs)
          if (auto p = r.find(AttrName(slot_attr(sl.relation.name, s, a)))) pos.push_back(*p);
        if (pos.size() == sl.relation.attrs.size()) whole.push_back(std::move(pos));
      }
    std::vector<Tuple> rows;
    for (Tuple t : r.tuples()) {
      for (const auto& pos : whole)
        if (std::any_of(pos.begin(), pos.end(), [&](std::size_t p) { return t[p].is_bottom(); }))
          for (auto p : pos) t[p] = Value::bottom();
      rows.push_back(std::move(t));
    }
    out.components.emplace_back(attrs, std::move(rows));
  }
  std::sort(out.components.begin(), out.components.end(), [&](const Relation& a, const Relation& b) {
    return rank.at(a.schema().front().str()) < rank.at(b.schema().front().str());
  });
  return out;
}

NormalGTST compose(const GWSD& w) {
  if (w.components.empty()) throw SchemaError("cannot compose a decomposition without components");
  Relation acc = w.components.front();
  for (std::size_t i = 1; i < w.components.size(); ++i) acc = product(acc, w.components[i]);
  return {w.schema, reorder(acc, canonical_columns(w)), w.global};
}

GWSD one_gwsd(const NormalGTST& g) { return {g.schema, {g.table}, g.phi}; }

std::set<Value> active_domain(const GWSD& w) {
  std::set<Value> out;
  collect_constants(w.global, out);
  for (const auto& c : w.components)
    for (const auto& t : c.tuples())
      for (const auto& v : t)
        if (v.is_constant()) out.insert(v);
  return out;
}

std::set<std::string> variables(const GWSD& w) {
  std::set<std::string> out;
  collect_vars(w.global, out);
  for (const auto& c : w.components)
    for (const auto& t : c.tuples())
      for (const auto& v : t)
        if (v.is_variable()) out.insert(v.text());
  return out;
}

EnumBudget default_budget(const GWSD& w, const std::set<Value>& extra) {
  return EnumBudget::make(active_domain(w), extra, variables(w).size());
}

WorldSet rep_enumerate_wsd(const GWSD& w, const EnumBudget& b) {
  check_budget(active_domain(w), b);
  WorldSet out;
  if (!satisfiable(w.global).satisfiable) return out;
  NormalGTST g = compose(w);
  WideIndex index(g.schema, g.table.schema());
  bool only_ne = w.global.only_inequalities();
  std::set<std::string> global_vars;
  collect_vars(w.global, global_vars);

  for (const auto& row : g.table.tuples()) {
    std::set<std::string> vars;
    for (const auto& v : row)
      if (v.is_variable()) vars.insert(v.text());
    // With an inequality-only satisfiable global, atoms touching a variable
    // outside the row can always be met by fresh values.
    Conjunction local;
    if (only_ne) {
      for (const auto& a : w.global.atoms()) {
        bool inside = (!a.lhs.is_variable() || vars.count(a.lhs.text())) &&
                      (!a.rhs.is_variable() || vars.count(a.rhs.text()));
        if (inside) local.add(a);
      }
    } else {
      local = w.global;
      vars.insert(global_vars.begin(), global_vars.end());
    }
    auto tables = inline_inverse(row, index);
    for_each_valuation(std::vector<std::string>(vars.begin(), vars.end()), b.pool, [&](const Valuation& nu) {
      if (eval_conjunction(local, nu)) out.insert(to_world(tables, nu));
    });
  }
  return out;
}

GWSD tabulate_worlds(const CMultitable& m, const EnumBudget& b) {
  check_budget(active_domain(m), b);
  WideLayout layout;
  for (const auto& t : m.tables) {
    SlotLayout sl{t.schema, {}};
    for (std::size_t i = 0; i < t.rows.size(); ++i)
      sl.slots.push_back(t.rows[i].id.empty() ? "d" + std::to_string(i + 1) : t.rows[i].id);
    layout.push_back(std::move(sl));
  }
  Schema cols = wide_schema(layout);
  auto vars = variables(m);
  std::vector<Tuple> rows;
  for_each_valuation(std::vector<std::string>(vars.begin(), vars.end()), b.pool, [&](const Valuation& nu) {
    if (!eval_condition(m.global, nu)) return;
    Tuple wide;
    for (const auto& t : m.tables)
      for (const auto& row : t.rows) {
        if (eval_condition(row.local, nu)) {
          auto v = substitute(row.values, nu);
          wide.insert(wide.end(), v.begin(), v.end());
        } else {
          wide.insert(wide.end(), row.values.size(), Value::bottom());
        }
      }
    rows.push_back(std::move(wide));
  });
  return {schema_of(m), {Relation(cols, std::move(rows))}, {}};
}

GWSD worlds_to_1wsd(const DbSchema& schema, const WorldSet& worlds) {
  std::map<std::string, std::size_t> maxima;
  for (const auto& wd : worlds)
    for (const auto& [name, rel] : wd.relations()) maxima[name] = std::max(maxima[name], rel.size());
  WideLayout layout = layout_with_maxima(schema, maxima);
  std::vector<Tuple> rows;
  for (const auto& wd : worlds) {
    GMultitable m;
    for (const auto& r : schema) {
      GTable t{r, {}, {}};
      if (const Relation* rel = wd.find(r.name)) t.rows = rel->tuples();
      m.tables.push_back(std::move(t));
    }
    rows.push_back(inline_multitable(m, layout));
  }
  return {schema, {Relation(wide_schema(layout), std::move(rows))}, {}};
}

}  // namespace ws
