#pragma once

#include <functional>
#include <vector>

#include "worldset/gwsd.hpp"

namespace ws {

// Factors with pairwise disjoint schemata whose product is the input; ordered
// by the position of their first attribute in the input schema.
struct Factorization {
  std::vector<Relation> factors;
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

Relation product_of(const Factorization& f, const Schema& order);

// True iff f is a factor of r: sch(f) is a proper subset of sch(r) and r is
// the product of f and the projection of r onto the remaining attributes.
bool divides(const Relation& f, const Relation& r);

// Chooses the split (attribute, value) among admissible candidates, i.e. those
// with |select A=v| <= |select A!=v|. Candidates are listed in (attribute,
// value) order; the default takes the first.
struct PivotCandidate {
  std::size_t attr;
  Value value;
};
using PivotPolicy = std::function<std::size_t(const std::vector<PivotCandidate>&)>;

Factorization factorize_prime(const Relation& s, const PivotPolicy& policy = {});

// Same result, keeping intermediate relations as (attributes, pivot
// predicates) over the input and recomputing them on demand.
Factorization factorize_lowmem(const Relation& s);

// Exhaustive search over attribute subsets; CapError above eight attributes.
Factorization powerset_oracle(const Relation& s);

enum class Granularity { kAttribute, kTuple };

struct Decomposed {
  GWSD wsd;
  // Variables are treated as opaque values, which can miss splits.
  bool maybe_non_maximal = false;
};

// Factorizes every component. Tuple granularity packs each slot into one value
// first (partially-bottom slots become all-bottom), so slots never split.
Decomposed decompose_wsd_maximal(const GWSD& w, Granularity g);

}  // namespace ws
