#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "worldset/gwsd.hpp"
#include "worldset/query.hpp"

namespace ws {

enum class Method { kPtime, kBruteForce };
std::string method_str(Method m);

// Row choice per component (indices into canonicalize(w).components, rows in
// sorted order) plus a valuation; brute-force answers carry the world itself.
struct Witness {
  std::vector<std::size_t> choice;
  Valuation valuation;
  std::optional<World> world;
};

struct Decision {
  bool verdict = false;
  Method method = Method::kPtime;
  std::optional<Witness> witness;
  std::string note;
};

// The world selected by a choice/valuation witness; unbound variables receive
// fresh constants. nullopt if the global condition fails.
std::optional<World> realize(const GWSD& w, const Witness& wit);

Decision tuple_possible(const GWSD& w, const std::string& rel, const Tuple& t);
// Tuple-level decompositions only (LevelError otherwise).
Decision tuple_certain(const GWSD& w, const std::string& rel, const Tuple& t);
Decision instance_possible(const GWSD& w, const World& instance);
// Tuple-level decompositions only (LevelError otherwise).
Decision instance_certain(const GWSD& w, const World& instance);
Decision empty_world_possible(const GWSD& w);

enum class QProblem { kTuplePossible, kTupleCertain, kInstancePossible, kInstanceCertain };

// Target: a tuple for the tuple problems, a relation for the instance problems;
// () stands for the nullary answer tuple.
using QTarget = std::variant<Tuple, Relation>;

// Positive tuple possibility runs on the x-table translation; everything else
// enumerates worlds with the default budget extended by query and target constants.
Decision q_decide(QProblem p, const GWSD& w, const QueryPtr& q, const QTarget& target);

// ---------------------------------------------------------------- reductions

struct Encoding {
  GWSD wsd;
  QueryPtr query;                // for the query problems
  std::optional<Tuple> target;   // tuple for the query problems
  std::optional<World> instance; // for instance possibility
};

enum class X3CMode { kEmptyWorld, kInstance };

// Exact cover by 3-sets over `universe`; rows of the encoding follow `triples`.
Encoding encode_x3c(const std::vector<int>& universe, const std::vector<std::vector<int>>& triples,
                    X3CMode mode = X3CMode::kEmptyWorld);

// Clauses of exactly three literals; literal +j / -j is variable j / its negation.
using Clause = std::vector<int>;
Encoding encode_cnf3(const std::vector<Clause>& clauses);
Encoding encode_dnf3(const std::vector<Clause>& clauses);

}  // namespace ws
