#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "worldset/error.hpp"
#include "worldset/value.hpp"

namespace ws {

// Maps variable names to constants.
using Valuation = std::map<std::string, Value>;

// tau = tau' or tau != tau' over variables and constants. Stored oriented:
// variables before constants, smaller term first.
struct Atom {
  Value lhs;
  bool equal = true;
  Value rhs;

  static Atom eq(Value a, Value b) { return make(std::move(a), true, std::move(b)); }
  static Atom ne(Value a, Value b) { return make(std::move(a), false, std::move(b)); }
  static Atom make(Value a, bool equal, Value b);

  // True when the outcome does not depend on any valuation.
  std::optional<bool> trivial() const;
  std::string str() const;

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom& a, const Atom& b) {
    if (auto c = a.lhs <=> b.lhs; c != 0) return c;
    if (auto c = a.rhs <=> b.rhs; c != 0) return c;
    return a.equal <=> b.equal;
  }
};

// A set of atoms read conjunctively; the empty set is true.
class Conjunction {
 public:
  Conjunction() = default;
  Conjunction(std::vector<Atom> atoms);  // NOLINT
  Conjunction(std::initializer_list<Atom> atoms) : Conjunction(std::vector<Atom>(atoms)) {}

  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  std::size_t size() const { return atoms_.size(); }
  void add(const Atom& a);
  Conjunction operator&(const Conjunction& o) const;

  // The marker used for an inconsistent global condition.
  static Conjunction contradiction();

  bool only_inequalities() const;
  std::string str() const;

  friend bool operator==(const Conjunction&, const Conjunction&) = default;
  friend auto operator<=>(const Conjunction&, const Conjunction&) = default;

 private:
  std::vector<Atom> atoms_;
};

// Boolean combination of atoms. Immutable and cheap to copy.
class Condition {
 public:
  enum class Kind { kTrue, kAtom, kAnd, kOr, kNot };

  Condition();  // true
  static Condition truth() { return Condition(); }
  static Condition falsity();
  static Condition atom(Atom a);
  static Condition all(std::vector<Condition> parts);
  static Condition any(std::vector<Condition> parts);
  static Condition negate(Condition c);
  static Condition from(const Conjunction& c);

  Kind kind() const;
  const Atom& as_atom() const;
  const std::vector<Condition>& children() const;

  bool is_true() const { return kind() == Kind::kTrue; }
  // Atoms only joined by "and" (or true): returns the conjunction.
  std::optional<Conjunction> as_conjunction() const;

  std::string str() const;

  friend bool operator==(const Condition& a, const Condition& b);

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

inline Condition operator&&(const Condition& a, const Condition& b) { return Condition::all({a, b}); }

void collect_vars(const Condition& c, std::set<std::string>& out);
void collect_vars(const Conjunction& c, std::set<std::string>& out);
void collect_constants(const Condition& c, std::set<Value>& out);
void collect_constants(const Conjunction& c, std::set<Value>& out);

Value substitute(const Value& v, const Valuation& nu);
Tuple substitute(const Tuple& t, const Valuation& nu);
Atom substitute(const Atom& a, const std::map<std::string, Value>& terms);
Conjunction substitute(const Conjunction& c, const std::map<std::string, Value>& terms);
Condition substitute(const Condition& c, const std::map<std::string, Value>& terms);

// Throws ValuationError if a variable of c is unbound.
bool eval_condition(const Condition& c, const Valuation& nu);
bool eval_conjunction(const Conjunction& c, const Valuation& nu);

struct SatResult {
  bool satisfiable = false;
  Valuation witness;  // covers every variable of the input when satisfiable
};

// Satisfiability over an infinite domain. Unconstrained classes receive fresh
// constants that avoid every constant of the input.
SatResult satisfiable(const Conjunction& c);

// theta must fix = or != for every pair of terms of psi (CompletenessError
// otherwise); an unsatisfiable theta entails everything.
bool entails(const Conjunction& theta, const Condition& psi);

// Produces n constants "_f1", "_f2", ... skipping any in avoid.
std::vector<Value> fresh_constants(std::size_t n, const std::set<Value>& avoid);

// Variables with positive ranges; cond(j, i) selects alternative i of variable j.
struct MutexVar {
  std::string name;
  int mu = 0;
  friend bool operator==(const MutexVar&, const MutexVar&) = default;
};

class MutexSet {
 public:
  MutexSet() = default;
  explicit MutexSet(std::vector<MutexVar> vars);

  const std::vector<MutexVar>& vars() const { return vars_; }
  bool contains(const std::string& name) const;
  std::optional<int> range_of(const std::string& name) const;

  // i in 1..mu+1; mu == 0 gives true for any i.
  Conjunction cond(std::size_t j, int i) const;
  // All alternatives of variable j, in order.
  std::vector<Conjunction> formulas(std::size_t j) const;

  friend bool operator==(const MutexSet&, const MutexSet&) = default;

 private:
  std::vector<MutexVar> vars_;
};

// Variables prefix1..prefixN with the given ranges; RangeError on a non-positive size.
MutexSet mutex_build(const std::vector<int>& sizes, const std::string& prefix = "_x");

}  // namespace ws
