#include "worldset/factorize.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ws {

namespace {

void order_factors(std::vector<Relation>& fs, const Schema& schema) {
  std::map<AttrName, std::size_t> rank;
  for (std::size_t i = 0; i < schema.size(); ++i) rank[schema[i]] = i;
  for (auto& f : fs) {
    Schema attrs = f.schema();
    std::sort(attrs.begin(), attrs.end(), [&](const AttrName& a, const AttrName& b) { return rank[a] < rank[b]; });
    f = reorder(f, attrs);
  }
  std::sort(fs.begin(), fs.end(), [&](const Relation& a, const Relation& b) {
    return rank[a.schema().front()] < rank[b.schema().front()];
  });
}

bool single_valued(const Relation& r, std::size_t col) {
  const auto& ts = r.tuples();
  for (std::size_t i = 1; i < ts.size(); ++i)
    if (!(ts[i][col] == ts[0][col])) return false;
  return true;
}

std::vector<Relation> prime(const Relation& s, const PivotPolicy& policy) {
  if (s.empty()) return {s};
  std::vector<Relation> out;
  Schema rest;
  for (std::size_t i = 0; i < s.arity(); ++i) {
    if (single_valued(s, i))
      out.push_back(project(s, {s.schema()[i]}));
    else
      rest.push_back(s.schema()[i]);
  }
  if (rest.empty()) return out;
  // Dividing out single-valued columns is a projection.
  Relation cur = out.empty() ? s : project(s, rest);
  if (rest.size() == 1) {
    out.push_back(std::move(cur));
    return out;
  }

  std::vector<PivotCandidate> cands;
  const std::size_t n = cur.size();
  for (std::size_t a = 0; a < cur.arity(); ++a) {
    std::map<Value, std::size_t> freq;
    for (const auto& t : cur.tuples()) ++freq[t[a]];
    for (const auto& [v, cnt] : freq)
      if (2 * cnt <= n) cands.push_back({a, v});
  }
  std::size_t pick = policy ? policy(cands) : 0;
  const PivotCandidate& pc = cands.at(pick);

  std::vector<Tuple> q_rows, r_rows;
  for (const auto& t : cur.tuples()) (t[pc.attr] == pc.value ? q_rows : r_rows).push_back(t);
  Relation q(cur.schema(), std::move(q_rows)), r(cur.schema(), std::move(r_rows));

  Schema used;
  for (auto& f : prime(q, policy)) {
    if (!divides(f, r)) continue;
    used.insert(used.end(), f.schema().begin(), f.schema().end());
    out.push_back(std::move(f));
  }
  // The rest of cur once the common factors are divided out.
  out.push_back(project(cur, schema_minus(cur.schema(), used)));
  return out;
}

}  // namespace

Relation product_of(const Factorization& f, const Schema& order) {
  if (f.factors.empty()) throw SchemaError("empty factorization");
  Relation acc = f.factors.front();
  for (std::size_t i = 1; i < f.factors.size(); ++i) acc = product(acc, f.factors[i]);
  return reorder(acc, order);
}

bool divides(const Relation& f, const Relation& r) {
  if (f.empty() || r.empty()) return false;
  if (f.arity() >= r.arity()) return false;
  for (const auto& a : f.schema())
    if (!r.find(a)) return false;
  if (project(r, f.schema()) != f) return false;
  Relation rest = project(r, schema_minus(r.schema(), f.schema()));
  return f.size() * rest.size() == r.size();
}

Factorization factorize_prime(const Relation& s, const PivotPolicy& policy) {
  auto fs = prime(s, policy);
  order_factors(fs, s.schema());
  return {std::move(fs)};
}

// ---------------------------------------------------------------- power-set oracle

namespace {

std::vector<Relation> oracle_rec(const Relation& r) {
  if (r.empty() || r.arity() == 1) return {r};
  const std::size_t k = r.arity();
  // Subsets containing the first attribute, smallest first.
  std::vector<unsigned> masks;
  for (unsigned m = 1; m < (1u << k) - 1; m += 2) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(),
                   [](unsigned a, unsigned b) { return __builtin_popcount(a) < __builtin_popcount(b); });
  for (unsigned m : masks) {
    Schema left, right;
    for (std::size_t i = 0; i < k; ++i) (m >> i & 1u ? left : right).push_back(r.schema()[i]);
    Relation a = project(r, left), b = project(r, right);
    if (a.size() * b.size() != r.size()) continue;
    auto out = oracle_rec(a);
    auto more = oracle_rec(b);
    out.insert(out.end(), more.begin(), more.end());
    return out;
  }
  return {r};
}

}  // namespace

Factorization powerset_oracle(const Relation& s) {
  if (s.arity() > 8) throw CapError("power-set oracle is limited to eight attributes");
  auto fs = oracle_rec(s);
  order_factors(fs, s.schema());
  return {std::move(fs)};
}

// ---------------------------------------------------------------- low-memory variant

namespace {

struct Pred {
  std::size_t col;
  Value value;
  bool equal;
};

struct View {
  std::vector<std::size_t> cols;
  std::vector<Pred> preds;
};

bool matches(const Tuple& t, const std::vector<Pred>& preds) {
  for (const auto& p : preds)
    if ((t[p.col] == p.value) != p.equal) return false;
  return true;
}

Tuple pick(const Tuple& t, const std::vector<std::size_t>& cols) {
  Tuple out;
  out.reserve(cols.size());
  for (auto c : cols) out.push_back(t[c]);
  return out;
}

Relation materialize(const Relation& s, const View& v) {
  Schema schema;
  for (auto c : v.cols) schema.push_back(s.schema()[c]);
  std::vector<Tuple> rows;
  for (const auto& t : s.tuples())
    if (matches(t, v.preds)) rows.push_back(pick(t, v.cols));
  return Relation(std::move(schema), std::move(rows));
}

// Divisibility of the view f by the view r, streaming over s.
bool view_divides(const Relation& s, const View& f, const View& r) {
  Relation fm = materialize(s, f);
  std::vector<std::size_t> rest;
  for (auto c : r.cols)
    if (std::find(f.cols.begin(), f.cols.end(), c) == f.cols.end()) rest.push_back(c);
  if (fm.empty() || rest.empty()) return false;
  std::set<Tuple> fpart, rpart;
  std::size_t n = 0;
  for (const auto& t : s.tuples()) {
    if (!matches(t, r.preds)) continue;
    ++n;
    Tuple ft = pick(t, f.cols);
    if (!fm.contains(ft)) return false;
    fpart.insert(std::move(ft));
    rpart.insert(pick(t, rest));
  }
  // Rows of s within a view are distinct on the view's columns.
  return n > 0 && fpart.size() == fm.size() && fm.size() * rpart.size() == n;
}

std::vector<View> lowmem_rec(const Relation& s, const View& v) {
  std::size_t n = 0;
  std::vector<std::optional<Value>> first(v.cols.size());
  std::vector<bool> single(v.cols.size(), true);
  for (const auto& t : s.tuples()) {
    if (!matches(t, v.preds)) continue;
    ++n;
    for (std::size_t i = 0; i < v.cols.size(); ++i) {
      const Value& x = t[v.cols[i]];
      if (!first[i])
        first[i] = x;
      else if (!(*first[i] == x))
        single[i] = false;
    }
  }
  if (n == 0) return {v};
  std::vector<View> out;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < v.cols.size(); ++i) {
    if (single[i])
      out.push_back(View{{v.cols[i]}, v.preds});
    else
      rest.push_back(v.cols[i]);
  }
  if (rest.empty()) return out;
  if (rest.size() == 1) {
    out.push_back(View{rest, v.preds});
    return out;
  }
  std::optional<Pred> pivot;
  for (auto c : rest) {
    std::map<Value, std::size_t> freq;
    for (const auto& t : s.tuples())
      if (matches(t, v.preds)) ++freq[t[c]];
    for (const auto& [val, cnt] : freq)
      if (2 * cnt <= n) {
        pivot = Pred{c, val, true};
        break;
      }
    if (pivot) break;
  }
  View q{rest, v.preds}, r{rest, v.preds};
  q.preds.push_back(*pivot);
  r.preds.push_back(Pred{pivot->col, pivot->value, false});

  std::vector<std::size_t> used;
  for (auto& f : lowmem_rec(s, q)) {
    if (!view_divides(s, f, r)) continue;
    used.insert(used.end(), f.cols.begin(), f.cols.end());
    out.push_back(std::move(f));
  }
  View remainder{{}, v.preds};
  for (auto c : rest)
    if (std::find(used.begin(), used.end(), c) == used.end()) remainder.cols.push_back(c);
  out.push_back(std::move(remainder));
  return out;
}

}  // namespace

Factorization factorize_lowmem(const Relation& s) {
  View all{{}, {}};
  for (std::size_t i = 0; i < s.arity(); ++i) all.cols.push_back(i);
  std::vector<Relation> fs;
  for (const auto& v : lowmem_rec(s, all)) fs.push_back(materialize(s, v));
  order_factors(fs, s.schema());
  return {std::move(fs)};
}

// ---------------------------------------------------------------- decompositions

namespace {

// Columns of a component grouped into units: whole slots, or single columns of
// slots that span several components.
std::vector<std::vector<std::size_t>> pack_units(const GWSD& w, const Relation& comp) {
  WideLayout layout = layout_from_columns(w.schema, canonical_columns(w));
  std::vector<std::vector<std::size_t>> units;
  std::vector<bool> taken(comp.arity(), false);
  for (const auto& sl : layout)
    for (const auto& s : sl.slots) {
      std::vector<std::size_t> pos;
      for (const auto& a : sl.relation.attrs)
        if (auto p = comp.find(AttrName(slot_attr(sl.relation.name, s, a)))) pos.push_back(*p);
      if (pos.size() == sl.relation.attrs.size()) {
        for (auto p : pos) taken[p] = true;
        units.push_back(std::move(pos));
      }
    }
  for (std::size_t p = 0; p < comp.arity(); ++p)
    if (!taken[p]) units.push_back({p});
  return units;
}

std::vector<Relation> decompose_tuple_level(const GWSD& w, const Relation& comp) {
  auto units = pack_units(w, comp);
  std::vector<std::map<Tuple, Value>> intern(units.size());
  std::vector<std::vector<Tuple>> unpack(units.size());
  Schema packed_schema;
  for (std::size_t u = 0; u < units.size(); ++u) packed_schema.emplace_back("u" + std::to_string(u));
  std::vector<Tuple> rows;
  for (const auto& t : comp.tuples()) {
    Tuple row;
    for (std::size_t u = 0; u < units.size(); ++u) {
      Tuple part = pick(t, units[u]);
      auto [it, inserted] = intern[u].try_emplace(part, Value::constant(static_cast<long long>(unpack[u].size())));
      if (inserted) unpack[u].push_back(part);
      row.push_back(it->second);
    }
    rows.push_back(std::move(row));
  }
  Relation packed(packed_schema, std::move(rows));
  std::vector<Relation> out;
  for (const auto& f : factorize_prime(packed).factors) {
    std::vector<std::size_t> us;
    Schema schema;
    for (const auto& a : f.schema()) {
      std::size_t u = std::stoul(a.str().substr(1));
      us.push_back(u);
      for (auto p : units[u]) schema.push_back(comp.schema()[p]);
    }
    std::vector<Tuple> frows;
    for (const auto& t : f.tuples()) {
      Tuple row;
      for (std::size_t i = 0; i < us.size(); ++i) {
        const Tuple& part = unpack[us[i]][std::stoul(t[i].text())];
        row.insert(row.end(), part.begin(), part.end());
      }
      frows.push_back(std::move(row));
    }
    out.emplace_back(std::move(schema), std::move(frows));
  }
  return out;
}

}  // namespace

Decomposed decompose_wsd_maximal(const GWSD& input, Granularity g) {
  GWSD w = canonicalize(input);
  Decomposed out;
  out.wsd.schema = w.schema;
  out.wsd.global = w.global;
  for (const auto& comp : w.components) {
    if (comp.has_variables()) out.maybe_non_maximal = true;
    auto parts = g == Granularity::kAttribute ? factorize_prime(comp).factors : decompose_tuple_level(w, comp);
    out.wsd.components.insert(out.wsd.components.end(), parts.begin(), parts.end());
  }
  out.wsd = canonicalize(out.wsd);
  return out;
}

}  // namespace ws
