#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "worldset/condition.hpp"
#include "worldset/relation.hpp"

namespace ws {

struct RelSchema {
  std::string name;
  std::vector<std::string> attrs;
  friend bool operator==(const RelSchema&, const RelSchema&) = default;
  friend auto operator<=>(const RelSchema&, const RelSchema&) = default;
};

using DbSchema = std::vector<RelSchema>;

const RelSchema& find_relation(const DbSchema& s, const std::string& name);
Schema attr_schema(const RelSchema& r);

// A complete database: one constant relation per schema relation, sorted by name.
class World {
 public:
  World() = default;
  explicit World(std::vector<std::pair<std::string, Relation>> relations);

  const std::vector<std::pair<std::string, Relation>>& relations() const { return relations_; }
  const Relation& at(const std::string& name) const;
  const Relation* find(const std::string& name) const;

  friend bool operator==(const World&, const World&) = default;
  friend auto operator<=>(const World&, const World&) = default;

 private:
  std::vector<std::pair<std::string, Relation>> relations_;
};

using WorldSet = std::set<World>;

// ---------------------------------------------------------------- c-multitables

struct CRow {
  Tuple values;
  Condition local;
  std::string id;  // optional tuple identifier, used as the inlining slot
};

struct CTable {
  RelSchema schema;
  std::vector<CRow> rows;
};

struct CMultitable {
  std::vector<CTable> tables;
  Condition global;
};

// ---------------------------------------------------------------- g-multitables

struct GTable {
  RelSchema schema;
  std::vector<Tuple> rows;
  std::vector<std::string> ids;  // empty or parallel to rows
};

struct GMultitable {
  std::vector<GTable> tables;
  Conjunction global;
};

// ---------------------------------------------------------------- x-multitables

// A c-multitable with mutex variables; locals are conjunctions of equalities
// and mutex formulas, the global holds inequalities only.
struct XMultitable {
  CMultitable table;
  MutexSet mutex;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> problems;
};

ValidationReport validate_x(const XMultitable& x);

// Substitutes equalities of the global into the relations; the result has an
// inequality-only global, or the contradiction marker if inconsistent.
GMultitable normalize_g(const GMultitable& m);

CMultitable to_c(const GMultitable& m);
DbSchema schema_of(const CMultitable& m);

// ---------------------------------------------------------------- enumeration

// Finite pool of constants that variables range over during enumeration.
struct EnumBudget {
  std::vector<Value> pool;
  std::size_t min_fresh = 0;  // pool values required outside the active domain

  // Active domain + extra constants + `fresh` new constants.
  static EnumBudget make(const std::set<Value>& active_domain, const std::set<Value>& extra,
                         std::size_t fresh);
};

std::set<Value> active_domain(const CMultitable& m);
std::set<std::string> variables(const CMultitable& m);

// Standard budget: active domain, the extra constants, one fresh constant per variable.
EnumBudget default_budget(const CMultitable& m, const std::set<Value>& extra = {});

WorldSet rep_enumerate(const CMultitable& m, const EnumBudget& b);
WorldSet rep_enumerate(const GMultitable& m, const EnumBudget& b);
WorldSet rep_enumerate(const XMultitable& x, const EnumBudget& b);

// Calls f for every assignment of vars to pool values.
void for_each_valuation(const std::vector<std::string>& vars, const std::vector<Value>& pool,
                        const std::function<void(const Valuation&)>& f);

// The world for nu, ignoring the global: rows whose local holds, substituted.
World instantiate(const CMultitable& m, const Valuation& nu);

}  // namespace ws
