#pragma once

#include "worldset/gwsd.hpp"

namespace ws {

// One mutex variable _x<j> per component j with at least two rows; each
// non-bottom slot of row i carries cond(_x<j>, i) as its local condition.
XMultitable gwsd_to_x(const GWSD& w);

struct AtlasOptions {
  // Enumeration over set partitions grows like Bell(#variables).
  std::size_t max_variables = 8;
};

// One g-multitable per complete consistent Theta over the terms of m that
// entails the global; rows keep their ids so inlining is positional.
GTabset c_to_gtabset(const CMultitable& m, const AtlasOptions& opts = {});

GWSD gtabset_to_gwsd(const GTabset& ts);

// Best-effort shrinking of a 1-gWSD: merges rows that differ only by one
// inequality's instantiation and drops unconstraining global atoms.
GWSD simplify_gwsd(const GWSD& w);

}  // namespace ws
