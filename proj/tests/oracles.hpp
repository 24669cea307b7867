#pragma once

// Brute-force reference implementations used only by tests. Each deliberately
// avoids the library's computation path for the quantity it checks.

#include <map>
#include <tuple>
#include <vector>

#include "rsz/quiver.hpp"
#include "rsz/rep.hpp"

namespace rsz::oracle {

// virtual degrees of all closed walks (inverses allowed) up to max_len steps
std::vector<long long> closed_walk_degrees(const GradedQuiver& q, int max_len);

// directed path counts keyed by (src, tgt, sum of arrow degrees)
std::map<std::tuple<int, int, long long>, unsigned long long>
paths_by_arrow_degree(const GradedQuiver& q, int max_len);

// dim Ext^1 over F_2 by enumerating extension cocycles and coboundaries
int ext1_f2_brute(const Representation& m, const Representation& n);

// decomposability over F_2 by enumerating pairs of invariant subspaces
// (per-vertex dimensions up to 3)
bool decomposable_f2_exhaustive(const Representation& m);

// all representations over F_2 with the given dimension vector
std::vector<Representation> all_f2_reps(std::shared_ptr<const RepQuiver> q,
                                        const DimensionVector& dims);

// iso test via decomposition matching (test-side convenience)
bool rep_iso(const Representation& a, const Representation& b);

} // namespace rsz::oracle
