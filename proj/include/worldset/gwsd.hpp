#pragma once

#include <string>
#include <vector>

#include "worldset/tabset.hpp"

namespace ws {

// Components over a disjoint partition of the wide schema plus an
// inequality-only global condition.
struct GWSD {
  DbSchema schema;
  std::vector<Relation> components;
  Conjunction global;
};

enum class Level { kInvalid, kAttribute, kTuple };

struct WsdReport {
  bool valid = true;
  Level level = Level::kInvalid;
  bool has_variables = false;
  bool global_true = true;
  std::vector<std::string> problems;

  // "WSD", "vWSD" or "gWSD" for the smallest class the input belongs to.
  std::string kind() const;
};

WsdReport validate(const GWSD& w);
Level level_of(const GWSD& w);

// Wide columns in canonical order: relation, natural slot order, attribute.
Schema canonical_columns(const GWSD& w);

// Sorts attributes inside components and components by their first attribute;
// partially-bottom slots become all-bottom where a component holds the whole slot.
GWSD canonicalize(const GWSD& w);

NormalGTST compose(const GWSD& w);
GWSD one_gwsd(const NormalGTST& g);

std::set<Value> active_domain(const GWSD& w);
std::set<std::string> variables(const GWSD& w);
EnumBudget default_budget(const GWSD& w, const std::set<Value>& extra = {});

WorldSet rep_enumerate_wsd(const GWSD& w, const EnumBudget& b);

// One row per satisfying valuation with slots taken from row ids (or d1, d2,
// ...); excluded tuples become all-bottom slots.
GWSD tabulate_worlds(const CMultitable& m, const EnumBudget& b);

// Any finite world-set as a 1-WSD, tuples placed in sorted order.
GWSD worlds_to_1wsd(const DbSchema& schema, const WorldSet& worlds);

}  // namespace ws
