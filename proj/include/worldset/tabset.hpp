#pragma once

#include <map>
#include <string>
#include <vector>

#include "worldset/tables.hpp"

namespace ws {

// Finite set of g-multitables over one schema.
struct GTabset {
  DbSchema schema;
  std::vector<GMultitable> members;
};

// Slot ids per relation; the wide schema has one column "Rel.slot.Attr" per
// (relation, slot, attribute).
struct SlotLayout {
  RelSchema relation;
  std::vector<std::string> slots;
};
using WideLayout = std::vector<SlotLayout>;

std::string slot_attr(const std::string& rel, const std::string& slot, const std::string& attr);
Schema wide_schema(const WideLayout& layout);

// Slots d1..dk per relation with k the largest relation size over the members
// (or the union of row ids where members carry them).
WideLayout layout_for(const GTabset& ts);
WideLayout layout_with_maxima(const DbSchema& schema, const std::map<std::string, std::size_t>& maxima);

// Derives the layout from the column names of a wide schema; every slot must
// carry every attribute of its relation (SchemaError otherwise).
WideLayout layout_from_columns(const DbSchema& schema, const Schema& columns);

// Positions of each slot's attributes inside a wide tuple.
class WideIndex {
 public:
  WideIndex(const DbSchema& schema, const Schema& columns);
  const DbSchema& schema() const { return schema_; }
  const Schema& columns() const { return columns_; }
  // slots[r][s] = column positions of slot s of relation r.
  const std::vector<std::vector<std::vector<std::size_t>>>& slots() const { return slots_; }
  const std::vector<std::vector<std::string>>& slot_ids() const { return slot_ids_; }

 private:
  DbSchema schema_;
  Schema columns_;
  std::vector<std::vector<std::vector<std::size_t>>> slots_;
  std::vector<std::vector<std::string>> slot_ids_;
};

// Pads with bottom slots; CapacityError when a relation exceeds its slots.
Tuple inline_multitable(const GMultitable& m, const WideLayout& layout);
// Drops every slot holding a bottom.
std::vector<GTable> inline_inverse(const Tuple& wide, const WideIndex& index);

struct GTSTRow {
  Tuple values;
  Conjunction lambda;
};

// Wide table with one global condition per row.
struct GTST {
  DbSchema schema;
  Schema columns;
  std::vector<GTSTRow> rows;
};

// Wide table with a single global condition.
struct NormalGTST {
  DbSchema schema;
  Relation table;
  Conjunction phi;
};

GTST tabset_to_gtst(const GTabset& ts);
GTabset gtst_to_tabset(const GTST& g);

// Conjoins the member globals after renaming variables apart; unsatisfiable
// members are dropped.
NormalGTST normalize_global(const GTST& g);

// Strips the renaming suffix added by normalize_global ("x'3" -> "x").
std::string base_var_name(const std::string& name);

WorldSet rep_enumerate(const GTabset& ts, const EnumBudget& b);
EnumBudget default_budget(const GTabset& ts, const std::set<Value>& extra = {});

}  // namespace ws
