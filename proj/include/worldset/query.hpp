#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "worldset/tables.hpp"

namespace ws {

// Attribute name used for the result of an empty projection: such results are
// unary relations holding the constant "true" or nothing.
inline const AttrName kNullaryAttr = "bool";
inline const Value kTrueValue = Value::constant("true");

struct Query;
using QueryPtr = std::shared_ptr<const Query>;

struct Query {
  enum class Op { kBase, kUnit, kSelect, kProject, kProduct, kUnion, kDifference, kRename };

  Op op = Op::kBase;
  std::string name;                      // kBase
  std::vector<SelectPred> preds;         // kSelect
  Schema attrs;                          // kProject; empty means nullary
  std::map<AttrName, AttrName> renames;  // kRename
  QueryPtr left, right;

  static QueryPtr base(std::string name);
  static QueryPtr unit();
  static QueryPtr select(std::vector<SelectPred> preds, QueryPtr q);
  static QueryPtr project(Schema attrs, QueryPtr q);
  static QueryPtr product(QueryPtr a, QueryPtr b);
  static QueryPtr union_of(QueryPtr a, QueryPtr b);
  static QueryPtr difference(QueryPtr a, QueryPtr b);
  static QueryPtr rename(std::map<AttrName, AttrName> renames, QueryPtr q);
};

// Grammar: select[A=1 & B!=C](q), project[A,B](q), project[](q), rename[A->B](q),
// q * q, q + q, q - q, true, R, (q). Bare identifiers in predicates are
// attributes; constants are numbers or quoted strings.
QueryPtr parse_query(std::string_view text);
std::string query_str(const QueryPtr& q);

// Select with equalities, project, product, union and rename only.
bool is_positive(const QueryPtr& q);
std::set<Value> query_constants(const QueryPtr& q);
Schema output_schema(const QueryPtr& q, const DbSchema& schema);

Relation eval_on_world(const QueryPtr& q, const World& w);

// Name of the answer relation produced by eval_positive_on_x.
inline const std::string kAnswerName = "Q";

// Evaluates a positive query directly on an x-multitable; FragmentError otherwise.
XMultitable eval_positive_on_x(const QueryPtr& q, const XMultitable& x);

}  // namespace ws
