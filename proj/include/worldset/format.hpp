#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "worldset/gwsd.hpp"
#include "worldset/tabset.hpp"

namespace ws {

// Text format, one document per input:
//
//   relation R (A, B) { (1, 2) (3, ?x) }
//   ctable { relation R (A) { t1: (?x) where { ?x != 1 } } where { ?x = 2 | ?x = 3 } }
//   xtable { mutex { ?_x1: 1 } relation R (A) { (1) where { ?_x1 = 1 } } }
//   gtable { relation R (A) { (?x) } where { ?x != 1 } }
//   gtabset { schema R(A) gtable { ... } gtable { ... } }
//   gtst { schema R(A) columns (R.d1.A) { (1) where { true } } where { ... } }
//   gwsd { schema R(A) component (R.d1.A) { (1) (_|_) } where { ?x != 1 } }
//   world { relation R (A) { (1) } }
//   worlds { world { ... } world { ... } }
//
// Variables are written ?name, bottom as _|_, constants as numbers, bare
// identifiers or quoted strings. '#' starts a comment.

struct NamedRelation {
  std::string name;
  Relation relation;
};

using Document =
    std::variant<NamedRelation, CMultitable, XMultitable, GMultitable, GTabset, GTST, GWSD, World, WorldSet>;

Document parse_document(std::string_view text);
Condition parse_condition(std::string_view text);
Tuple parse_tuple(std::string_view text);

std::string format_value(const Value& v);
std::string format_tuple(const Tuple& t);
std::string format_condition(const Condition& c);
std::string format_conjunction(const Conjunction& c);

std::string print(const NamedRelation& r);
std::string print(const CMultitable& m);
std::string print(const XMultitable& x);
std::string print(const GMultitable& m);
std::string print(const GTabset& ts);
std::string print(const GTST& g);
std::string print(const NormalGTST& g);
std::string print(const GWSD& w);  // canonical form
std::string print(const World& w);
std::string print(const WorldSet& ws);
std::string print(const Document& d);

}  // namespace ws
