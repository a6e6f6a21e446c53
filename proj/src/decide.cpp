#include "worldset/decide.hpp"

#include <algorithm>
#include <map>

#include "worldset/translate.hpp"

namespace ws {

std::string method_str(Method m) { return m == Method::kPtime ? "ptime" : "brute-force"; }

namespace {

struct SlotRef {
  std::size_t rel;
  std::vector<std::pair<std::size_t, std::size_t>> cells;  // (component, position) per attribute
};

std::vector<SlotRef> slot_map(const GWSD& w) {
  std::map<std::string, std::pair<std::size_t, std::size_t>> where;
  for (std::size_t j = 0; j < w.components.size(); ++j)
    for (std::size_t p = 0; p < w.components[j].arity(); ++p) where[w.components[j].schema()[p].str()] = {j, p};
  std::vector<SlotRef> out;
  WideLayout layout = layout_from_columns(w.schema, canonical_columns(w));
  for (std::size_t r = 0; r < layout.size(); ++r)
    for (const auto& s : layout[r].slots) {
      SlotRef ref{r, {}};
      for (const auto& a : layout[r].relation.attrs)
        ref.cells.push_back(where.at(slot_attr(layout[r].relation.name, s, a)));
      out.push_back(std::move(ref));
    }
  return out;
}

std::optional<std::size_t> relation_index(const DbSchema& s, const std::string& name) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i].name == name) return i;
  return std::nullopt;
}

// Rows of component j chosen by the mutex variables of a valuation.
std::vector<std::size_t> choice_from(const GWSD& c, const XMultitable& x, const Valuation& nu) {
  std::vector<std::size_t> choice;
  std::size_t m = 0;
  for (const auto& comp : c.components) {
    if (comp.size() < 2) {
      choice.push_back(0);
      continue;
    }
    const MutexVar& v = x.mutex.vars()[m++];
    std::size_t pick = 0;
    if (auto it = nu.find(v.name); it != nu.end()) {
      pick = static_cast<std::size_t>(v.mu);
      for (int i = 1; i <= v.mu; ++i)
        if (it->second == Value::constant(i)) pick = static_cast<std::size_t>(i - 1);
    }
    choice.push_back(pick);
  }
  return choice;
}

// A valuation satisfying global, local and row = t for some row of `rel`.
std::optional<Valuation> x_tuple_possible(const XMultitable& x, const std::string& rel, const Tuple& t) {
  auto global = x.table.global.as_conjunction();
  if (!global) throw FragmentError("x-table global is not a conjunction");
  for (const auto& table : x.table.tables) {
    if (table.schema.name != rel) continue;
    if (table.schema.attrs.size() != t.size()) throw SchemaError("tuple arity does not match relation " + rel);
    for (const auto& row : table.rows) {
      auto local = row.local.as_conjunction();
      if (!local) throw FragmentError("x-table local is not a conjunction");
      Conjunction c = *global & *local;
      bool clash = false;
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (row.values[i].is_constant()) {
          if (!(row.values[i] == t[i])) clash = true;
        } else {
          c.add(Atom::eq(row.values[i], t[i]));
        }
      }
      if (clash) continue;
      auto sat = satisfiable(c);
      if (sat.satisfiable) return sat.witness;
    }
    return std::nullopt;
  }
  throw SchemaError("unknown relation " + rel);
}

bool world_contains(const World& w, const std::string& rel, const Tuple& t) {
  const Relation* r = w.find(rel);
  return r && r->contains(t);
}

void require_tuple_level(const GWSD& w) {
  auto rep = validate(w);
  if (!rep.valid) throw SchemaError("invalid decomposition: " + rep.problems.front());
  if (rep.level != Level::kTuple) throw LevelError("decision requires a tuple-level decomposition");
}

// Full instance over the schema; SchemaError for foreign relations.
World complete_instance(const DbSchema& schema, const World& inst) {
  for (const auto& [name, r] : inst.relations()) {
    const RelSchema& rs = find_relation(schema, name);
    if (r.schema() != attr_schema(rs)) throw SchemaError("instance relation " + name + " has the wrong schema");
  }
  std::vector<std::pair<std::string, Relation>> rels;
  for (const auto& rs : schema) {
    const Relation* r = inst.find(rs.name);
    rels.emplace_back(rs.name, r ? *r : Relation(attr_schema(rs)));
  }
  return World(std::move(rels));
}

template <class F>
void for_each_choice(const GWSD& c, F&& f) {
  std::vector<std::size_t> choice(c.components.size(), 0);
  for (const auto& comp : c.components)
    if (comp.empty()) return;
  for (;;) {
    if (!f(choice)) return;
    std::size_t k = 0;
    while (k < choice.size() && ++choice[k] == c.components[k].size()) choice[k++] = 0;
    if (k == choice.size()) return;
  }
}

// Matches the g-tuples of one row choice onto the instance exactly.
class InstanceMatcher {
 public:
  InstanceMatcher(const std::vector<GTable>& tables, const World& inst, const Conjunction& global)
      : global_(global) {
    for (std::size_t r = 0; r < tables.size(); ++r) {
      for (const auto& row : tables[r].rows) items_.push_back({r, row});
      targets_.push_back(inst.at(tables[r].schema.name).tuples());
    }
    for (const auto& t : targets_) covered_.emplace_back(t.size(), 0);
    for (const auto& t : targets_) uncovered_ += t.size();
  }

  std::optional<Valuation> run() {
    if (search(0)) return result_;
    return std::nullopt;
  }

 private:
  struct Item {
    std::size_t rel;
    Tuple values;
  };

  bool search(std::size_t k) {
    if (uncovered_ > items_.size() - k) return false;
    if (k == items_.size()) {
      if (uncovered_ != 0) return false;
      Conjunction c = global_;
      for (const auto& [v, val] : nu_) c.add(Atom::eq(Value::variable(v), val));
      auto sat = satisfiable(c);
      if (!sat.satisfiable) return false;
      result_ = nu_;
      for (const auto& [v, val] : sat.witness) result_[v] = val;
      return true;
    }
    const Item& it = items_[k];
    const auto& targets = targets_[it.rel];
    for (std::size_t i = 0; i < targets.size(); ++i) {
      std::vector<std::string> bound;
      bool ok = true;
      for (std::size_t p = 0; p < it.values.size() && ok; ++p) {
        const Value& v = it.values[p];
        if (v.is_constant()) {
          ok = v == targets[i][p];
        } else if (auto b = nu_.find(v.text()); b != nu_.end()) {
          ok = b->second == targets[i][p];
        } else {
          nu_[v.text()] = targets[i][p];
          bound.push_back(v.text());
        }
      }
      if (ok) {
        if (covered_[it.rel][i]++ == 0) --uncovered_;
        bool found = search(k + 1);
        if (--covered_[it.rel][i] == 0) ++uncovered_;
        if (found) return true;
      }
      for (const auto& b : bound) nu_.erase(b);
    }
    return false;
  }

  Conjunction global_;
  std::vector<Item> items_;
  std::vector<std::vector<Tuple>> targets_;
  std::vector<std::vector<std::size_t>> covered_;
  std::size_t uncovered_ = 0;
  Valuation nu_;
  Valuation result_;
};

std::vector<GTable> tables_for_choice(const GWSD& c, const std::vector<std::size_t>& choice) {
  Schema cols;
  Tuple wide;
  for (std::size_t j = 0; j < c.components.size(); ++j) {
    cols.insert(cols.end(), c.components[j].schema().begin(), c.components[j].schema().end());
    const Tuple& row = c.components[j].tuples().at(choice[j]);
    wide.insert(wide.end(), row.begin(), row.end());
  }
  return inline_inverse(wide, WideIndex(c.schema, cols));
}

}  // namespace

std::optional<World> realize(const GWSD& w, const Witness& wit) {
  if (wit.world) return wit.world;
  GWSD c = canonicalize(w);
  if (wit.choice.size() != c.components.size()) throw InstanceError("witness does not choose a row per component");
  auto tables = tables_for_choice(c, wit.choice);
  Valuation nu = wit.valuation;
  std::set<Value> avoid = active_domain(c);
  for (const auto& [k, v] : nu) avoid.insert(v);
  std::set<std::string> vars;
  collect_vars(c.global, vars);
  for (const auto& t : tables)
    for (const auto& row : t.rows)
      for (const auto& v : row)
        if (v.is_variable()) vars.insert(v.text());
  std::vector<std::string> unbound;
  for (const auto& v : vars)
    if (!nu.count(v)) unbound.push_back(v);
  auto fresh = fresh_constants(unbound.size(), avoid);
  for (std::size_t i = 0; i < unbound.size(); ++i) nu[unbound[i]] = fresh[i];
  if (!eval_conjunction(c.global, nu)) return std::nullopt;
  std::vector<std::pair<std::string, Relation>> rels;
  for (const auto& t : tables) {
    std::vector<Tuple> rows;
    for (const auto& row : t.rows) rows.push_back(substitute(row, nu));
    rels.emplace_back(t.schema.name, Relation(attr_schema(t.schema), std::move(rows)));
  }
  return World(std::move(rels));
}

Decision tuple_possible(const GWSD& w, const std::string& rel, const Tuple& t) {
  GWSD c = canonicalize(w);
  XMultitable x = gwsd_to_x(c);
  Decision d;
  d.method = Method::kPtime;
  auto nu = x_tuple_possible(x, rel, t);
  if (!nu) return d;
  Witness wit{choice_from(c, x, *nu), *nu, std::nullopt};
  for (const auto& mv : x.mutex.vars()) wit.valuation.erase(mv.name);
  auto world = realize(c, wit);
  if (!world || !world_contains(*world, rel, t)) throw Error("internal: tuple-possible witness failed to verify");
  d.verdict = true;
  d.witness = std::move(wit);
  return d;
}

Decision tuple_certain(const GWSD& w, const std::string& rel, const Tuple& t) {
  require_tuple_level(w);
  GWSD c = canonicalize(w);
  auto ri = relation_index(c.schema, rel);
  if (!ri) throw SchemaError("unknown relation " + rel);
  if (c.schema[*ri].attrs.size() != t.size()) throw SchemaError("tuple arity does not match relation " + rel);
  Decision d;
  d.method = Method::kPtime;
  if (!satisfiable(c.global).satisfiable) {
    d.verdict = true;
    d.note = "empty world-set";
    return d;
  }
  auto slots = slot_map(c);
  for (std::size_t j = 0; j < c.components.size(); ++j) {
    std::vector<const SlotRef*> mine;
    for (const auto& s : slots)
      if (s.rel == *ri && s.cells.front().first == j) mine.push_back(&s);
    bool every_row = true;
    for (const auto& row : c.components[j].tuples()) {
      bool has = std::any_of(mine.begin(), mine.end(), [&](const SlotRef* s) {
        for (std::size_t a = 0; a < t.size(); ++a)
          if (!(row[s->cells[a].second] == t[a])) return false;
        return true;
      });
      if (!has) {
        every_row = false;
        break;
      }
    }
    if (every_row) {
      d.verdict = true;
      d.note = "every row of component " + std::to_string(j + 1) + " holds the tuple";
      return d;
    }
  }
  return d;
}

Decision instance_possible(const GWSD& w, const World& instance) {
  GWSD c = canonicalize(w);
  World inst = complete_instance(c.schema, instance);
  Decision d;
  d.method = Method::kBruteForce;
  if (!satisfiable(c.global).satisfiable) return d;
  for_each_choice(c, [&](const std::vector<std::size_t>& choice) {
    auto tables = tables_for_choice(c, choice);
    auto nu = InstanceMatcher(tables, inst, c.global).run();
    if (!nu) return true;
    Witness wit{choice, *nu, std::nullopt};
    auto world = realize(c, wit);
    if (!world || !(*world == inst)) throw Error("internal: instance-possible witness failed to verify");
    d.verdict = true;
    d.witness = std::move(wit);
    return false;
  });
  return d;
}

Decision instance_certain(const GWSD& w, const World& instance) {
  require_tuple_level(w);
  GWSD c = canonicalize(w);
  World inst = complete_instance(c.schema, instance);
  Decision d;
  d.method = Method::kPtime;
  bool empty_set = !satisfiable(c.global).satisfiable ||
                   std::any_of(c.components.begin(), c.components.end(), [](const Relation& r) { return r.empty(); });
  if (empty_set) {
    d.verdict = true;
    d.note = "empty world-set";
    return d;
  }
  auto slots = slot_map(c);
  for (const auto& s : slots) {
    const Relation& comp = c.components[s.cells.front().first];
    for (const auto& row : comp.tuples()) {
      Tuple t;
      for (const auto& [j, p] : s.cells) t.push_back(row[p]);
      if (std::any_of(t.begin(), t.end(), [](const Value& v) { return v.is_bottom(); })) continue;
      if (std::any_of(t.begin(), t.end(), [](const Value& v) { return v.is_variable(); })) {
        d.note = "a variable can take a value outside the instance";
        return d;
      }
      if (!inst.at(c.schema[s.rel].name).contains(t)) {
        d.note = "possible tuple " + tuple_str(t) + " lies outside the instance";
        return d;
      }
    }
  }
  for (const auto& [name, rel] : inst.relations())
    for (const auto& t : rel.tuples())
      if (!tuple_certain(c, name, t).verdict) {
        d.note = "tuple " + tuple_str(t) + " of " + name + " is not certain";
        return d;
      }
  d.verdict = true;
  return d;
}

Decision empty_world_possible(const GWSD& w) {
  GWSD c = canonicalize(w);
  Decision d;
  d.method = Method::kBruteForce;
  if (!satisfiable(c.global).satisfiable) return d;
  auto slots = slot_map(c);
  // For each component, the slots it can blank and the last component each slot touches.
  std::vector<std::size_t> last(slots.size(), 0);
  for (std::size_t s = 0; s < slots.size(); ++s)
    for (const auto& [j, p] : slots[s].cells) last[s] = std::max(last[s], j);
  std::vector<std::size_t> choice(c.components.size(), 0);
  std::vector<int> blank(slots.size(), 0);

  std::function<bool(std::size_t)> search = [&](std::size_t j) -> bool {
    if (j == c.components.size()) return true;
    const auto& rows = c.components[j].tuples();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::vector<std::size_t> touched;
      for (std::size_t s = 0; s < slots.size(); ++s)
        for (const auto& [cj, p] : slots[s].cells)
          if (cj == j && rows[i][p].is_bottom()) {
            touched.push_back(s);
            break;
          }
      for (auto s : touched) ++blank[s];
      bool ok = true;
      for (std::size_t s = 0; s < slots.size() && ok; ++s)
        if (last[s] == j && blank[s] == 0) ok = false;
      choice[j] = i;
      if (ok && search(j + 1)) return true;
      for (auto s : touched) --blank[s];
    }
    return false;
  };
  if (!search(0)) return d;
  Witness wit{choice, {}, std::nullopt};
  auto world = realize(c, wit);
  if (!world) throw Error("internal: empty-world witness failed to verify");
  for (const auto& [name, r] : world->relations())
    if (!r.empty()) throw Error("internal: empty-world witness failed to verify");
  d.verdict = true;
  d.witness = std::move(wit);
  return d;
}

// ---------------------------------------------------------------- query problems

Decision q_decide(QProblem p, const GWSD& w, const QueryPtr& q, const QTarget& target_in) {
  bool tuple_problem = p == QProblem::kTuplePossible || p == QProblem::kTupleCertain;
  if (tuple_problem != std::holds_alternative<Tuple>(target_in))
    throw InstanceError(tuple_problem ? "tuple problem needs a tuple target" : "instance problem needs a relation target");
  GWSD c = canonicalize(w);
  Decision d;
  // () names the nullary answer tuple.
  QTarget target = target_in;
  if (auto* t = std::get_if<Tuple>(&target); t && t->empty() && output_schema(q, c.schema) == Schema{kNullaryAttr})
    *t = Tuple{kTrueValue};

  if (p == QProblem::kTuplePossible && is_positive(q)) {
    d.method = Method::kPtime;
    XMultitable x = gwsd_to_x(c);
    XMultitable ans = eval_positive_on_x(q, x);
    const Tuple& t = std::get<Tuple>(target);
    auto nu = x_tuple_possible(ans, kAnswerName, t);
    if (!nu) return d;
    Witness wit{choice_from(c, x, *nu), *nu, std::nullopt};
    for (const auto& mv : x.mutex.vars()) wit.valuation.erase(mv.name);
    auto world = realize(c, wit);
    if (!world || !eval_on_world(q, *world).contains(t)) throw Error("internal: query witness failed to verify");
    d.verdict = true;
    d.witness = std::move(wit);
    return d;
  }

  d.method = Method::kBruteForce;
  std::set<Value> extra = query_constants(q);
  if (const auto* t = std::get_if<Tuple>(&target)) {
    for (const auto& v : *t) extra.insert(v);
  } else {
    for (const auto& t : std::get<Relation>(target).tuples()) extra.insert(t.begin(), t.end());
  }
  WorldSet worlds = rep_enumerate_wsd(c, default_budget(c, extra));
  auto holds = [&](const World& wd) {
    Relation ans = eval_on_world(q, wd);
    if (const auto* t = std::get_if<Tuple>(&target)) return ans.contains(*t);
    const Relation& r = std::get<Relation>(target);
    return ans.schema() == r.schema() ? ans == r : ans == reorder(r, ans.schema());
  };
  bool existential = p == QProblem::kTuplePossible || p == QProblem::kInstancePossible;
  d.verdict = !existential;
  for (const auto& wd : worlds) {
    if (holds(wd) == existential) {
      d.verdict = existential;
      d.witness = Witness{{}, {}, wd};
      if (!existential) d.note = "counterexample world";
      break;
    }
  }
  return d;
}

// ---------------------------------------------------------------- reductions

namespace {

void check_clauses(const std::vector<Clause>& clauses) {
  if (clauses.empty()) throw InstanceError("no clauses");
  for (const auto& c : clauses) {
    if (c.size() != 3) throw InstanceError("every clause needs exactly three literals");
    for (int l : c)
      if (l == 0) throw InstanceError("literal 0 is not a variable");
  }
}

std::vector<int> clause_vars(const std::vector<Clause>& clauses) {
  std::set<int> vars;
  for (const auto& c : clauses)
    for (int l : c) vars.insert(std::abs(l));
  return {vars.begin(), vars.end()};
}

std::string lit_slot(std::size_t i, std::size_t k) { return "d" + std::to_string(i + 1) + "_" + std::to_string(k + 1); }

}  // namespace

Encoding encode_x3c(const std::vector<int>& universe, const std::vector<std::vector<int>>& triples, X3CMode mode) {
  std::set<int> x(universe.begin(), universe.end());
  if (x.size() != universe.size()) throw InstanceError("universe has repeated elements");
  if (x.empty() || x.size() % 3 != 0) throw InstanceError("universe size must be a positive multiple of 3");
  if (triples.empty()) throw InstanceError("no candidate sets");
  for (const auto& t : triples) {
    std::set<int> s(t.begin(), t.end());
    if (t.size() != 3 || s.size() != 3) throw InstanceError("candidate sets must have three distinct elements");
    for (int e : t)
      if (!x.count(e)) throw InstanceError("element " + std::to_string(e) + " is not in the universe");
  }
  std::size_t q = x.size() / 3;
  Encoding enc;
  if (mode == X3CMode::kEmptyWorld) {
    RelSchema r{"R", {}};
    for (std::size_t i = 1; i <= q; ++i) r.attrs.push_back("A" + std::to_string(i));
    enc.wsd.schema = {r};
    for (std::size_t i = 1; i <= q; ++i) {
      Schema cols;
      for (int j : x) cols.emplace_back(slot_attr("R", "d" + std::to_string(j), "A" + std::to_string(i)));
      std::vector<Tuple> rows;
      for (const auto& t : triples) {
        Tuple row;
        for (int j : x)
          row.push_back(std::find(t.begin(), t.end(), j) != t.end() ? Value::bottom() : Value::constant(1));
        rows.push_back(std::move(row));
      }
      enc.wsd.components.emplace_back(cols, std::move(rows));
    }
    return enc;
  }
  enc.wsd.schema = {RelSchema{"R", {"A"}}};
  for (std::size_t i = 0; i < q; ++i) {
    Schema cols;
    for (std::size_t k = 1; k <= 3; ++k) cols.emplace_back(slot_attr("R", "t" + std::to_string(3 * i + k), "A"));
    std::vector<Tuple> rows;
    for (auto t : triples) {
      std::sort(t.begin(), t.end());
      rows.push_back({Value::constant(t[0]), Value::constant(t[1]), Value::constant(t[2])});
    }
    enc.wsd.components.emplace_back(cols, std::move(rows));
  }
  std::vector<Tuple> all;
  for (int e : x) all.push_back({Value::constant(e)});
  enc.instance = World({{"R", Relation({"A"}, std::move(all))}});
  return enc;
}

Encoding encode_cnf3(const std::vector<Clause>& clauses) {
  check_clauses(clauses);
  Encoding enc;
  enc.wsd.schema = {RelSchema{"R", {"C"}}, RelSchema{"S", {"C"}}};
  for (int v : clause_vars(clauses)) {
    Schema cols;
    Tuple pos, neg;
    for (std::size_t i = 0; i < clauses.size(); ++i)
      for (std::size_t k = 0; k < 3; ++k) {
        int l = clauses[i][k];
        if (std::abs(l) != v) continue;
        cols.emplace_back(slot_attr("R", lit_slot(i, k), "C"));
        Value clause = Value::constant(static_cast<long long>(i + 1));
        pos.push_back(l > 0 ? clause : Value::bottom());
        neg.push_back(l < 0 ? clause : Value::bottom());
      }
    enc.wsd.components.emplace_back(cols, std::vector<Tuple>{pos, neg});
  }
  Schema scols;
  Tuple srow;
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    scols.emplace_back(slot_attr("S", "d" + std::to_string(i + 1), "C"));
    srow.push_back(Value::constant(static_cast<long long>(i + 1)));
  }
  enc.wsd.components.emplace_back(scols, std::vector<Tuple>{srow});
  enc.query = parse_query("true - project[](S - R)");
  enc.target = Tuple{kTrueValue};
  return enc;
}

Encoding encode_dnf3(const std::vector<Clause>& clauses) {
  check_clauses(clauses);
  Encoding enc;
  enc.wsd.schema = {RelSchema{"R", {"C", "P"}}};
  for (int v : clause_vars(clauses)) {
    Schema cols;
    Tuple pos, neg;
    for (std::size_t i = 0; i < clauses.size(); ++i)
      for (std::size_t k = 0; k < 3; ++k) {
        int l = clauses[i][k];
        if (std::abs(l) != v) continue;
        cols.emplace_back(slot_attr("R", lit_slot(i, k), "C"));
        cols.emplace_back(slot_attr("R", lit_slot(i, k), "P"));
        Value ci = Value::constant(static_cast<long long>(i + 1));
        Value pk = Value::constant(static_cast<long long>(k + 1));
        for (Tuple* row : {&pos, &neg}) {
          bool hit = (row == &pos) == (l > 0);
          row->push_back(hit ? ci : Value::bottom());
          row->push_back(hit ? pk : Value::bottom());
        }
      }
    enc.wsd.components.emplace_back(cols, std::vector<Tuple>{pos, neg});
  }
  enc.query = parse_query(
      "project[](select[C1=C2 & C1=C3 & P1=1 & P2=2 & P3=3]("
      "rename[C->C1, P->P1](R) * rename[C->C2, P->P2](R) * rename[C->C3, P->P3](R)))");
  enc.target = Tuple{kTrueValue};
  return enc;
}

}  // namespace ws
