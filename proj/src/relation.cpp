#include "worldset/relation.hpp"

#include <algorithm>
#include <set>

namespace ws {

namespace {

void check_schema(const Schema& s) {
  if (s.empty()) throw SchemaError("schema must not be empty");
  std::set<AttrName> seen;
  for (const auto& a : s)
    if (!seen.insert(a).second) throw SchemaError("duplicate attribute " + a.str());
}

void sort_unique(std::vector<Tuple>& ts) {
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
}

std::vector<std::size_t> positions(const Relation& r, const Schema& attrs) {
  std::vector<std::size_t> pos;
  pos.reserve(attrs.size());
  for (const auto& a : attrs) pos.push_back(r.index_of(a));
  return pos;
}

Tuple pick(const Tuple& t, const std::vector<std::size_t>& pos) {
  Tuple out;
  out.reserve(pos.size());
  for (auto p : pos) out.push_back(t[p]);
  return out;
}

bool same_attr_set(const Schema& a, const Schema& b) {
  if (a.size() != b.size()) return false;
  std::set<AttrName> sa(a.begin(), a.end());
  for (const auto& x : b)
    if (!sa.count(x)) return false;
  return true;
}

}  // namespace

Relation::Relation(Schema schema, std::vector<Tuple> tuples)
    : schema_(std::move(schema)), tuples_(std::move(tuples)) {
  check_schema(schema_);
  for (const auto& t : tuples_)
    if (t.size() != schema_.size())
      throw SchemaError("tuple " + tuple_str(t) + " does not match schema " + schema_str(schema_));
  sort_unique(tuples_);
}

bool Relation::contains(const Tuple& t) const {
  return std::binary_search(tuples_.begin(), tuples_.end(), t);
}

std::optional<std::size_t> Relation::find(const AttrName& a) const {
  for (std::size_t i = 0; i < schema_.size(); ++i)
    if (schema_[i] == a) return i;
  return std::nullopt;
}

std::size_t Relation::index_of(const AttrName& a) const {
  auto i = find(a);
  if (!i) throw AttrError("unknown attribute " + a.str() + " in " + schema_str(schema_));
  return *i;
}

bool Relation::has_variables() const {
  for (const auto& t : tuples_)
    for (const auto& v : t)
      if (v.is_variable()) return true;
  return false;
}

Schema schema_minus(const Schema& r, const Schema& attrs) {
  std::set<AttrName> drop(attrs.begin(), attrs.end());
  Schema out;
  for (const auto& a : r)
    if (!drop.count(a)) out.push_back(a);
  return out;
}

Relation select(const Relation& r, const std::vector<SelectPred>& preds) {
  struct Bound {
    std::size_t lhs;
    bool equal;
    std::optional<std::size_t> rhs_attr;
    Value rhs_value;
  };
  std::vector<Bound> bound;
  for (const auto& p : preds) {
    Bound b{r.index_of(p.lhs), p.equal, std::nullopt, Value()};
    if (const auto* a = std::get_if<AttrName>(&p.rhs))
      b.rhs_attr = r.index_of(*a);
    else
      b.rhs_value = std::get<Value>(p.rhs);
    bound.push_back(std::move(b));
  }
  std::vector<Tuple> out;
  for (const auto& t : r.tuples()) {
    bool keep = true;
    for (const auto& b : bound) {
      const Value& rhs = b.rhs_attr ? t[*b.rhs_attr] : b.rhs_value;
      if ((t[b.lhs] == rhs) != b.equal) {
        keep = false;
        break;
      }
    }
    if (keep) out.push_back(t);
  }
  return Relation(r.schema(), std::move(out));
}

Relation project(const Relation& r, const Schema& attrs) {
  if (attrs.empty()) throw SchemaError("projection onto an empty attribute list");
  auto pos = positions(r, attrs);
  std::vector<Tuple> out;
  out.reserve(r.size());
  for (const auto& t : r.tuples()) out.push_back(pick(t, pos));
  return Relation(attrs, std::move(out));
}

Relation product(const Relation& r, const Relation& s) {
  for (const auto& a : s.schema())
    if (r.find(a)) throw SchemaError("product of overlapping schemata on " + a.str());
  Schema schema = r.schema();
  schema.insert(schema.end(), s.schema().begin(), s.schema().end());
  std::vector<Tuple> out;
  out.reserve(r.size() * s.size());
  for (const auto& a : r.tuples())
    for (const auto& b : s.tuples()) {
      Tuple t = a;
      t.insert(t.end(), b.begin(), b.end());
      out.push_back(std::move(t));
    }
  return Relation(std::move(schema), std::move(out));
}

Relation reorder(const Relation& r, const Schema& order) {
  if (!same_attr_set(r.schema(), order))
    throw SchemaError("cannot reorder " + schema_str(r.schema()) + " as " + schema_str(order));
  if (r.schema() == order) return r;
  return project(r, order);
}

Relation union_of(const Relation& r, const Relation& s) {
  if (!same_attr_set(r.schema(), s.schema()))
    throw SchemaError("union of " + schema_str(r.schema()) + " and " + schema_str(s.schema()));
  Relation s2 = reorder(s, r.schema());
  std::vector<Tuple> out = r.tuples();
  out.insert(out.end(), s2.tuples().begin(), s2.tuples().end());
  return Relation(r.schema(), std::move(out));
}

Relation difference(const Relation& r, const Relation& s) {
  if (!same_attr_set(r.schema(), s.schema()))
    throw SchemaError("difference of " + schema_str(r.schema()) + " and " + schema_str(s.schema()));
  Relation s2 = reorder(s, r.schema());
  std::vector<Tuple> out;
  std::set_difference(r.tuples().begin(), r.tuples().end(), s2.tuples().begin(), s2.tuples().end(),
                      std::back_inserter(out));
  return Relation(r.schema(), std::move(out));
}

Relation rename(const Relation& r, const std::map<AttrName, AttrName>& mapping) {
  for (const auto& [from, to] : mapping) r.index_of(from);
  Schema schema;
  for (const auto& a : r.schema()) {
    auto it = mapping.find(a);
    schema.push_back(it == mapping.end() ? a : it->second);
  }
  return Relation(std::move(schema), r.tuples());
}

Relation divide(const Relation& r, const Relation& f) {
  auto fpos = positions(r, f.schema());
  Schema rest = schema_minus(r.schema(), f.schema());
  if (rest.empty()) throw SchemaError("divisor schema must be a proper subset of the dividend schema");
  auto rpos = positions(r, rest);
  // Count, per quotient candidate, how many distinct divisor tuples it pairs with.
  std::map<Tuple, std::size_t> hits;
  for (const auto& t : r.tuples())
    if (f.contains(pick(t, fpos))) ++hits[pick(t, rpos)];
  std::vector<Tuple> out;
  for (auto& [q, n] : hits)
    if (n == f.size()) out.push_back(q);
  return Relation(std::move(rest), std::move(out));
}

}  // namespace ws
