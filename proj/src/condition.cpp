#include "worldset/condition.hpp"

#include <algorithm>

#include "union_find.hpp"

namespace ws {

// ---------------------------------------------------------------- Atom

Atom Atom::make(Value a, bool equal, Value b) {
  if (a.is_bottom() || b.is_bottom()) throw ValuationError("conditions cannot mention _|_");
  if (b < a) std::swap(a, b);
  return Atom{std::move(a), equal, std::move(b)};
}

std::optional<bool> Atom::trivial() const {
  if (lhs == rhs) return equal;
  if (lhs.is_constant() && rhs.is_constant()) return !equal;
  return std::nullopt;
}

std::string Atom::str() const { return lhs.str() + (equal ? " = " : " != ") + rhs.str(); }

// ---------------------------------------------------------------- Conjunction

Conjunction::Conjunction(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  std::sort(atoms_.begin(), atoms_.end());
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
}

void Conjunction::add(const Atom& a) {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
  if (it == atoms_.end() || !(*it == a)) atoms_.insert(it, a);
}

Conjunction Conjunction::operator&(const Conjunction& o) const {
  std::vector<Atom> all = atoms_;
  all.insert(all.end(), o.atoms_.begin(), o.atoms_.end());
  return Conjunction(std::move(all));
}

Conjunction Conjunction::contradiction() {
  return Conjunction({Atom::ne(Value::variable("_false"), Value::variable("_false"))});
}

bool Conjunction::only_inequalities() const {
  return std::none_of(atoms_.begin(), atoms_.end(), [](const Atom& a) { return a.equal; });
}

std::string Conjunction::str() const {
  if (atoms_.empty()) return "true";
  std::string out;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (i) out += " & ";
    out += atoms_[i].str();
  }
  return out;
}

// ---------------------------------------------------------------- Condition

struct Condition::Node {
  Kind kind = Kind::kTrue;
  Atom atom;
  std::vector<Condition> children;
};

Condition::Condition() {
  static const auto kTrueNode = std::make_shared<const Node>();
  node_ = kTrueNode;
}

Condition Condition::falsity() { return negate(Condition()); }

Condition Condition::atom(Atom a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kAtom;
  n->atom = std::move(a);
  Condition c;
  c.node_ = std::move(n);
  return c;
}

Condition Condition::all(std::vector<Condition> parts) {
  std::vector<Condition> kept;
  for (auto& p : parts) {
    if (p.is_true()) continue;
    if (p.kind() == Kind::kAnd)
      kept.insert(kept.end(), p.children().begin(), p.children().end());
    else
      kept.push_back(std::move(p));
  }
  if (kept.empty()) return Condition();
  if (kept.size() == 1) return kept.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::kAnd;
  n->children = std::move(kept);
  Condition c;
  c.node_ = std::move(n);
  return c;
}

Condition Condition::any(std::vector<Condition> parts) {
  if (parts.empty()) return falsity();
  if (parts.size() == 1) return parts.front();
  std::vector<Condition> kept;
  for (auto& p : parts) {
    if (p.is_true()) return Condition();
    if (p.kind() == Kind::kOr)
      kept.insert(kept.end(), p.children().begin(), p.children().end());
    else
      kept.push_back(std::move(p));
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::kOr;
  n->children = std::move(kept);
  Condition c;
  c.node_ = std::move(n);
  return c;
}

Condition Condition::negate(Condition inner) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kNot;
  n->children.push_back(std::move(inner));
  Condition c;
  c.node_ = std::move(n);
  return c;
}

Condition Condition::from(const Conjunction& c) {
  std::vector<Condition> parts;
  for (const auto& a : c.atoms()) parts.push_back(atom(a));
  return all(std::move(parts));
}

Condition::Kind Condition::kind() const { return node_->kind; }
const Atom& Condition::as_atom() const { return node_->atom; }
const std::vector<Condition>& Condition::children() const { return node_->children; }

std::optional<Conjunction> Condition::as_conjunction() const {
  switch (kind()) {
    case Kind::kTrue:
      return Conjunction();
    case Kind::kAtom:
      return Conjunction({as_atom()});
    case Kind::kAnd: {
      Conjunction out;
      for (const auto& ch : children()) {
        auto sub = ch.as_conjunction();
        if (!sub) return std::nullopt;
        out = out & *sub;
      }
      return out;
    }
    default:
      return std::nullopt;
  }
}

std::string Condition::str() const {
  switch (kind()) {
    case Kind::kTrue:
      return "true";
    case Kind::kAtom:
      return as_atom().str();
    case Kind::kNot: {
      const Condition& ch = children().front();
      if (ch.is_true()) return "false";
      return "!(" + ch.str() + ")";
    }
    case Kind::kAnd:
    case Kind::kOr: {
      const char* sep = kind() == Kind::kAnd ? " & " : " | ";
      std::string out;
      for (std::size_t i = 0; i < children().size(); ++i) {
        if (i) out += sep;
        const auto& ch = children()[i];
        bool wrap = ch.kind() == Kind::kAnd || ch.kind() == Kind::kOr;
        out += wrap ? "(" + ch.str() + ")" : ch.str();
      }
      return out;
    }
  }
  return "true";
}

bool operator==(const Condition& a, const Condition& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.kind() == Condition::Kind::kAtom) return a.as_atom() == b.as_atom();
  return a.children() == b.children();
}

// ---------------------------------------------------------------- traversal

namespace {

template <class F>
void for_each_atom(const Condition& c, F&& f) {
  if (c.kind() == Condition::Kind::kAtom) {
    f(c.as_atom());
    return;
  }
  for (const auto& ch : c.children()) for_each_atom(ch, f);
}

void add_terms(const Atom& a, std::set<std::string>* vars, std::set<Value>* consts) {
  for (const Value* v : {&a.lhs, &a.rhs}) {
    if (vars && v->is_variable()) vars->insert(v->text());
    if (consts && v->is_constant()) consts->insert(*v);
  }
}

}  // namespace

void collect_vars(const Condition& c, std::set<std::string>& out) {
  for_each_atom(c, [&](const Atom& a) { add_terms(a, &out, nullptr); });
}
void collect_vars(const Conjunction& c, std::set<std::string>& out) {
  for (const auto& a : c.atoms()) add_terms(a, &out, nullptr);
}
void collect_constants(const Condition& c, std::set<Value>& out) {
  for_each_atom(c, [&](const Atom& a) { add_terms(a, nullptr, &out); });
}
void collect_constants(const Conjunction& c, std::set<Value>& out) {
  for (const auto& a : c.atoms()) add_terms(a, nullptr, &out);
}

// ---------------------------------------------------------------- substitution

Value substitute(const Value& v, const Valuation& nu) {
  if (!v.is_variable()) return v;
  auto it = nu.find(v.text());
  return it == nu.end() ? v : it->second;
}

Tuple substitute(const Tuple& t, const Valuation& nu) {
  Tuple out;
  out.reserve(t.size());
  for (const auto& v : t) out.push_back(substitute(v, nu));
  return out;
}

Atom substitute(const Atom& a, const std::map<std::string, Value>& terms) {
  return Atom::make(substitute(a.lhs, terms), a.equal, substitute(a.rhs, terms));
}

Conjunction substitute(const Conjunction& c, const std::map<std::string, Value>& terms) {
  std::vector<Atom> out;
  for (const auto& a : c.atoms()) out.push_back(substitute(a, terms));
  return Conjunction(std::move(out));
}

Condition substitute(const Condition& c, const std::map<std::string, Value>& terms) {
  switch (c.kind()) {
    case Condition::Kind::kTrue:
      return c;
    case Condition::Kind::kAtom:
      return Condition::atom(substitute(c.as_atom(), terms));
    case Condition::Kind::kNot:
      return Condition::negate(substitute(c.children().front(), terms));
    case Condition::Kind::kAnd:
    case Condition::Kind::kOr: {
      std::vector<Condition> parts;
      for (const auto& ch : c.children()) parts.push_back(substitute(ch, terms));
      return c.kind() == Condition::Kind::kAnd ? Condition::all(std::move(parts))
                                               : Condition::any(std::move(parts));
    }
  }
  return c;
}

// ---------------------------------------------------------------- evaluation

namespace {

const Value& resolve(const Value& v, const Valuation& nu) {
  if (!v.is_variable()) return v;
  auto it = nu.find(v.text());
  if (it == nu.end()) throw ValuationError("unbound variable " + v.str());
  return it->second;
}

bool eval_atom(const Atom& a, const Valuation& nu) {
  return (resolve(a.lhs, nu) == resolve(a.rhs, nu)) == a.equal;
}

}  // namespace

bool eval_condition(const Condition& c, const Valuation& nu) {
  switch (c.kind()) {
    case Condition::Kind::kTrue:
      return true;
    case Condition::Kind::kAtom:
      return eval_atom(c.as_atom(), nu);
    case Condition::Kind::kNot:
      return !eval_condition(c.children().front(), nu);
    case Condition::Kind::kAnd:
      for (const auto& ch : c.children())
        if (!eval_condition(ch, nu)) return false;
      return true;
    case Condition::Kind::kOr:
      for (const auto& ch : c.children())
        if (eval_condition(ch, nu)) return true;
      return false;
  }
  return false;
}

bool eval_conjunction(const Conjunction& c, const Valuation& nu) {
  for (const auto& a : c.atoms())
    if (!eval_atom(a, nu)) return false;
  return true;
}

// ---------------------------------------------------------------- satisfiability

std::vector<Value> fresh_constants(std::size_t n, const std::set<Value>& avoid) {
  std::vector<Value> out;
  for (std::size_t k = 1; out.size() < n; ++k) {
    Value v = Value::constant("_f" + std::to_string(k));
    if (!avoid.count(v)) out.push_back(std::move(v));
  }
  return out;
}

SatResult satisfiable(const Conjunction& c) {
  detail::TermClasses classes;
  for (const auto& a : c.atoms()) {
    classes.id(a.lhs);
    classes.id(a.rhs);
  }
  for (const auto& a : c.atoms())
    if (a.equal && !classes.merge(a.lhs, a.rhs)) return {};
  for (const auto& a : c.atoms())
    if (!a.equal && classes.find(a.lhs) == classes.find(a.rhs)) return {};

  std::set<Value> constants;
  collect_constants(c, constants);
  std::map<std::size_t, Value> class_value;
  std::size_t free_classes = 0;
  std::vector<std::size_t> roots;
  for (const auto& t : classes.terms()) {
    std::size_t r = classes.find(t);
    if (class_value.count(r)) continue;
    if (const Value* k = classes.constant_of(r)) {
      class_value[r] = *k;
    } else {
      class_value[r] = Value();
      roots.push_back(r);
      ++free_classes;
    }
  }
  auto fresh = fresh_constants(free_classes, constants);
  for (std::size_t i = 0; i < roots.size(); ++i) class_value[roots[i]] = fresh[i];

  SatResult out;
  out.satisfiable = true;
  for (const auto& t : classes.terms())
    if (t.is_variable()) out.witness[t.text()] = class_value[classes.find(t)];
  return out;
}

bool entails(const Conjunction& theta, const Condition& psi) {
  auto sat = satisfiable(theta);
  if (!sat.satisfiable) return true;

  detail::TermClasses classes;
  for (const auto& a : theta.atoms()) {
    classes.id(a.lhs);
    classes.id(a.rhs);
    if (a.equal) classes.merge(a.lhs, a.rhs);
  }
  std::set<Value> terms;
  for_each_atom(psi, [&](const Atom& a) {
    terms.insert(a.lhs);
    terms.insert(a.rhs);
  });
  std::set<std::pair<std::size_t, std::size_t>> apart;
  for (const auto& a : theta.atoms())
    if (!a.equal) {
      auto x = classes.find(a.lhs), y = classes.find(a.rhs);
      apart.insert({std::min(x, y), std::max(x, y)});
    }
  std::vector<Value> tv(terms.begin(), terms.end());
  for (const auto& t : tv) classes.id(t);
  for (std::size_t i = 0; i < tv.size(); ++i)
    for (std::size_t j = i + 1; j < tv.size(); ++j) {
      auto x = classes.find(tv[i]), y = classes.find(tv[j]);
      if (x == y) continue;
      if (classes.constant_of(x) && classes.constant_of(y)) continue;
      if (apart.count({std::min(x, y), std::max(x, y)})) continue;
      throw CompletenessError("condition does not decide " + tv[i].str() + " vs " + tv[j].str());
    }

  // Canonical model: every class maps to its constant or a private fresh constant.
  std::set<Value> avoid;
  collect_constants(theta, avoid);
  collect_constants(psi, avoid);
  std::vector<std::size_t> free_roots;
  for (const auto& t : classes.terms()) {
    auto r = classes.find(t);
    if (!classes.constant_of(r) &&
        std::find(free_roots.begin(), free_roots.end(), r) == free_roots.end())
      free_roots.push_back(r);
  }
  auto fresh = fresh_constants(free_roots.size(), avoid);
  Valuation model;
  for (const auto& t : classes.terms()) {
    if (!t.is_variable()) continue;
    auto r = classes.find(t);
    if (const Value* k = classes.constant_of(r)) {
      model[t.text()] = *k;
    } else {
      auto pos = std::find(free_roots.begin(), free_roots.end(), r) - free_roots.begin();
      model[t.text()] = fresh[pos];
    }
  }
  return eval_condition(psi, model);
}

// ---------------------------------------------------------------- mutex sets

MutexSet::MutexSet(std::vector<MutexVar> vars) : vars_(std::move(vars)) {
  for (const auto& v : vars_)
    if (v.mu < 0) throw RangeError("mutex range of " + v.name + " is negative");
}

bool MutexSet::contains(const std::string& name) const { return range_of(name).has_value(); }

std::optional<int> MutexSet::range_of(const std::string& name) const {
  for (const auto& v : vars_)
    if (v.name == name) return v.mu;
  return std::nullopt;
}

Conjunction MutexSet::cond(std::size_t j, int i) const {
  if (j >= vars_.size()) throw RangeError("no mutex variable at index " + std::to_string(j));
  const MutexVar& v = vars_[j];
  if (v.mu == 0) return {};
  if (i < 1 || i > v.mu + 1) throw RangeError("alternative " + std::to_string(i) + " out of range for " + v.name);
  Value x = Value::variable(v.name);
  if (i <= v.mu) return Conjunction({Atom::eq(x, Value::constant(i))});
  std::vector<Atom> atoms;
  for (int l = 1; l <= v.mu; ++l) atoms.push_back(Atom::ne(x, Value::constant(l)));
  return Conjunction(std::move(atoms));
}

std::vector<Conjunction> MutexSet::formulas(std::size_t j) const {
  std::vector<Conjunction> out;
  int n = vars_.at(j).mu == 0 ? 1 : vars_[j].mu + 1;
  for (int i = 1; i <= n; ++i) out.push_back(cond(j, i));
  return out;
}

MutexSet mutex_build(const std::vector<int>& sizes, const std::string& prefix) {
  std::vector<MutexVar> vars;
  for (std::size_t j = 0; j < sizes.size(); ++j) {
    if (sizes[j] <= 0) throw RangeError("mutex size must be positive");
    vars.push_back({prefix + std::to_string(j + 1), sizes[j]});
  }
  return MutexSet(std::move(vars));
}

}  // namespace ws
