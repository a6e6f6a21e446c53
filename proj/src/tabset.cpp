#include "worldset/tabset.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace ws {

namespace {

const GTable* table_named(const GMultitable& m, const std::string& name) {
  for (const auto& t : m.tables)
    if (t.schema.name == name) return &t;
  return nullptr;
}

void add_unique(std::vector<std::string>& v, const std::string& s) {
  if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}

void natural_sort(std::vector<std::string>& v) {
  std::sort(v.begin(), v.end(), [](const std::string& a, const std::string& b) {
    int c = natural_compare(a, b);
    return c != 0 ? c < 0 : a < b;
  });
}

std::string positional_slot(std::size_t i) { return "d" + std::to_string(i + 1); }

}  // namespace

std::string slot_attr(const std::string& rel, const std::string& slot, const std::string& attr) {
  return rel + "." + slot + "." + attr;
}

Schema wide_schema(const WideLayout& layout) {
  Schema out;
  for (const auto& sl : layout)
    for (const auto& s : sl.slots)
      for (const auto& a : sl.relation.attrs) out.emplace_back(slot_attr(sl.relation.name, s, a));
  return out;
}

WideLayout layout_with_maxima(const DbSchema& schema, const std::map<std::string, std::size_t>& maxima) {
  WideLayout out;
  for (const auto& r : schema) {
    SlotLayout sl{r, {}};
    auto it = maxima.find(r.name);
    std::size_t n = it == maxima.end() ? 0 : it->second;
    for (std::size_t i = 0; i < n; ++i) sl.slots.push_back(positional_slot(i));
    out.push_back(std::move(sl));
  }
  return out;
}

WideLayout layout_for(const GTabset& ts) {
  WideLayout out;
  for (const auto& r : ts.schema) {
    SlotLayout sl{r, {}};
    for (const auto& m : ts.members) {
      const GTable* t = table_named(m, r.name);
      if (!t) continue;
      for (std::size_t i = 0; i < t->rows.size(); ++i)
        add_unique(sl.slots, t->ids.empty() ? positional_slot(i) : t->ids[i]);
    }
    natural_sort(sl.slots);
    out.push_back(std::move(sl));
  }
  // Every member empty: keep one all-bottom slot so the wide schema is not nullary.
  bool any = std::any_of(out.begin(), out.end(), [](const SlotLayout& s) { return !s.slots.empty(); });
  if (!any && !out.empty()) out.front().slots.push_back(positional_slot(0));
  return out;
}

WideLayout layout_from_columns(const DbSchema& schema, const Schema& columns) {
  WideLayout out;
  for (const auto& r : schema) out.push_back({r, {}});
  std::set<std::string> seen;
  for (const auto& c : columns) {
    auto parts = c.parts();
    if (parts.size() != 3) throw SchemaError("column " + c.str() + " is not of the form Rel.slot.Attr");
    auto it = std::find_if(out.begin(), out.end(), [&](const SlotLayout& s) { return s.relation.name == parts[0]; });
    if (it == out.end()) throw SchemaError("column " + c.str() + " names unknown relation " + parts[0]);
    const auto& attrs = it->relation.attrs;
    if (std::find(attrs.begin(), attrs.end(), parts[2]) == attrs.end())
      throw SchemaError("column " + c.str() + " names unknown attribute " + parts[2]);
    if (!seen.insert(c.str()).second) throw SchemaError("column " + c.str() + " given twice");
    add_unique(it->slots, parts[1]);
  }
  for (auto& sl : out) {
    natural_sort(sl.slots);
    for (const auto& s : sl.slots)
      for (const auto& a : sl.relation.attrs)
        if (!seen.count(slot_attr(sl.relation.name, s, a)))
          throw SchemaError("slot " + sl.relation.name + "." + s + " lacks attribute " + a);
  }
  return out;
}

WideIndex::WideIndex(const DbSchema& schema, const Schema& columns) : schema_(schema), columns_(columns) {
  WideLayout layout = layout_from_columns(schema, columns);
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < columns.size(); ++i) pos[columns[i].str()] = i;
  for (const auto& sl : layout) {
    std::vector<std::vector<std::size_t>> rel;
    for (const auto& s : sl.slots) {
      std::vector<std::size_t> p;
      for (const auto& a : sl.relation.attrs) p.push_back(pos.at(slot_attr(sl.relation.name, s, a)));
      rel.push_back(std::move(p));
    }
    slots_.push_back(std::move(rel));
    slot_ids_.push_back(sl.slots);
  }
}

Tuple inline_multitable(const GMultitable& m, const WideLayout& layout) {
  Tuple out;
  for (const auto& sl : layout) {
    std::size_t arity = sl.relation.attrs.size();
    std::vector<Tuple> cells(sl.slots.size(), Tuple(arity, Value::bottom()));
    if (const GTable* t = table_named(m, sl.relation.name)) {
      if (t->rows.size() > sl.slots.size() && t->ids.empty())
        throw CapacityError("relation " + sl.relation.name + " has " + std::to_string(t->rows.size()) +
                            " tuples but only " + std::to_string(sl.slots.size()) + " slots");
      for (std::size_t i = 0; i < t->rows.size(); ++i) {
        std::size_t slot = i;
        if (!t->ids.empty()) {
          auto it = std::find(sl.slots.begin(), sl.slots.end(), t->ids[i]);
          if (it == sl.slots.end())
            throw CapacityError("no slot " + t->ids[i] + " for relation " + sl.relation.name);
          slot = it - sl.slots.begin();
        }
        if (t->rows[i].size() != arity) throw SchemaError("arity mismatch in relation " + sl.relation.name);
        cells[slot] = t->rows[i];
      }
    }
    for (auto& c : cells) out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

std::vector<GTable> inline_inverse(const Tuple& wide, const WideIndex& index) {
  std::vector<GTable> out;
  for (std::size_t r = 0; r < index.schema().size(); ++r) {
    GTable t{index.schema()[r], {}, {}};
    const auto& slots = index.slots()[r];
    for (std::size_t s = 0; s < slots.size(); ++s) {
      Tuple v;
      bool bottom = false;
      for (auto p : slots[s]) {
        if (wide[p].is_bottom()) bottom = true;
        v.push_back(wide[p]);
      }
      if (bottom) continue;
      t.rows.push_back(std::move(v));
      t.ids.push_back(index.slot_ids()[r][s]);
    }
    out.push_back(std::move(t));
  }
  return out;
}

GTST tabset_to_gtst(const GTabset& ts) {
  WideLayout layout = layout_for(ts);
  GTST g{ts.schema, wide_schema(layout), {}};
  for (const auto& m : ts.members) {
    GMultitable n = normalize_g(m);
    g.rows.push_back({inline_multitable(n, layout), n.global});
  }
  return g;
}

GTabset gtst_to_tabset(const GTST& g) {
  WideIndex index(g.schema, g.columns);
  GTabset ts{g.schema, {}};
  for (const auto& row : g.rows) ts.members.push_back({inline_inverse(row.values, index), row.lambda});
  return ts;
}

std::string base_var_name(const std::string& name) {
  auto q = name.rfind('\'');
  if (q == std::string::npos || q == 0 || q + 1 == name.size()) return name;
  for (std::size_t i = q + 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return name;
  return name.substr(0, q);
}

NormalGTST normalize_global(const GTST& g) {
  std::set<std::string> used;
  std::vector<Tuple> rows;
  Conjunction phi;
  for (std::size_t k = 0; k < g.rows.size(); ++k) {
    const auto& row = g.rows[k];
    if (!satisfiable(row.lambda).satisfiable) continue;
    std::set<std::string> vars;
    for (const auto& v : row.values)
      if (v.is_variable()) vars.insert(v.text());
    collect_vars(row.lambda, vars);
    Valuation renaming;
    for (const auto& v : vars) {
      if (!used.count(v)) {
        used.insert(v);
        continue;
      }
      std::string base = base_var_name(v);
      std::string fresh;
      for (std::size_t n = k + 1;; ++n) {
        fresh = base + "'" + std::to_string(n);
        if (!used.count(fresh) && !vars.count(fresh)) break;
      }
      used.insert(fresh);
      renaming[v] = Value::variable(fresh);
    }
    rows.push_back(substitute(row.values, renaming));
    phi = phi & substitute(row.lambda, renaming);
  }
  return {g.schema, Relation(g.columns, std::move(rows)), phi};
}

WorldSet rep_enumerate(const GTabset& ts, const EnumBudget& b) {
  WorldSet out;
  for (const auto& m : ts.members) {
    // Relations missing from a member are empty in its worlds.
    GMultitable full = m;
    for (const auto& r : ts.schema)
      if (!table_named(full, r.name)) full.tables.push_back({r, {}, {}});
    auto worlds = rep_enumerate(to_c(full), b);
    out.insert(worlds.begin(), worlds.end());
  }
  return out;
}

EnumBudget default_budget(const GTabset& ts, const std::set<Value>& extra) {
  std::set<Value> domain;
  std::size_t k = 0;
  for (const auto& m : ts.members) {
    CMultitable c = to_c(m);
    auto d = active_domain(c);
    domain.insert(d.begin(), d.end());
    k = std::max(k, variables(c).size());
  }
  return EnumBudget::make(domain, extra, k);
}

}  // namespace ws
