#pragma once

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "worldset/error.hpp"
#include "worldset/value.hpp"

namespace ws {

// A finite set of tuples over an ordered, duplicate-free, non-empty schema.
// Tuples are kept sorted and unique, so equality is structural.
class Relation {
 public:
  Relation() = default;
  explicit Relation(Schema schema, std::vector<Tuple> tuples = {});

  const Schema& schema() const { return schema_; }
  const std::vector<Tuple>& tuples() const { return tuples_; }
  std::size_t size() const { return tuples_.size(); }
  std::size_t arity() const { return schema_.size(); }
  bool empty() const { return tuples_.empty(); }
  bool contains(const Tuple& t) const;

  // Position of an attribute; throws AttrError if absent.
  std::size_t index_of(const AttrName& a) const;
  std::optional<std::size_t> find(const AttrName& a) const;

  bool has_variables() const;

  friend bool operator==(const Relation&, const Relation&) = default;
  friend auto operator<=>(const Relation&, const Relation&) = default;

 private:
  Schema schema_;
  std::vector<Tuple> tuples_;
};

// One selection predicate: attribute compared with another attribute or a constant.
struct SelectPred {
  AttrName lhs;
  bool equal = true;
  std::variant<AttrName, Value> rhs;
};

Relation select(const Relation& r, const std::vector<SelectPred>& preds);
Relation project(const Relation& r, const Schema& attrs);
Relation product(const Relation& r, const Relation& s);
Relation union_of(const Relation& r, const Relation& s);
Relation difference(const Relation& r, const Relation& s);
Relation rename(const Relation& r, const std::map<AttrName, AttrName>& mapping);
// Largest Q over sch(r) minus sch(f) with Q x f contained in r.
Relation divide(const Relation& r, const Relation& f);

// Same tuples, attributes permuted into the given order.
Relation reorder(const Relation& r, const Schema& order);

inline Relation operator*(const Relation& r, const Relation& s) { return product(r, s); }

// Attributes of r that are not in attrs, in r's order.
Schema schema_minus(const Schema& r, const Schema& attrs);

}  // namespace ws
