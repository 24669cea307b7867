#pragma once

#include <string>
#include <vector>

#include "rsz/quiver.hpp"

namespace rsz {

enum class CycleSign { no_cycle, all_positive, all_negative, zero_or_mixed };

const char* to_string(CycleSign s);

// Strongly connected component together with the signs of virtual degrees of
// the directed cycles it contains.
struct SccSignature {
    int id = 0;
    std::vector<int> members; // vertex indices, ascending
    CycleSign cycle_sign = CycleSign::no_cycle;
};

struct AnalysisReport {
    long long grading_period = 0;
    bool admissible = false;
    bool has_oriented_cycles = false;
    bool is_graded_oriented_cycle = false;
    bool is_type_A_tilde = false;
    bool has_ar_triangles = false;
    bool connected = false;

    std::string to_json() const;
};

// Nonnegative generator of the subgroup of Z spanned by virtual degrees of
// closed walks. Requires a connected quiver.
long long grading_period(const GradedQuiver& q);

// Spanning-tree potential per vertex: the virtual degree of some walk from
// the component root. Defined for any quiver; used by grading_period and the
// covering module.
std::vector<long long> tree_potentials(const GradedQuiver& q, int root = 0);

std::vector<SccSignature> scc_sign_analysis(const GradedQuiver& q);

// True iff Q has only finitely many paths of each virtual degree: every SCC
// is sign-pure and no positive SCC reaches a negative one or vice versa.
bool is_admissible(const GradedQuiver& q);

// Exact count of directed paths of virtual degree p (trivial paths at p=0).
// Requires is_admissible(q).
unsigned long long count_paths_by_virtual_degree(const GradedQuiver& q, long long p);

AnalysisReport classify_shape(const GradedQuiver& q);

} // namespace rsz
