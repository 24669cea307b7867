#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rsz/covering.hpp"
#include "rsz/rep.hpp"

namespace rsz {

// Stable translation quiver fragment: nodes are (slice, point) with point a
// vertex of a fixed slice quiver, tau shifts slices down, and knitting
// attaches K0-class labels over the window quiver.
struct TranslationQuiver {
    struct Node {
        int slice = 0;
        int point = 0; // index into point_ids
        std::vector<long long> label;
        bool contaminated = false;
    };
    std::vector<std::string> point_ids;
    std::vector<Node> nodes;                     // sorted by (slice, point)
    std::vector<std::pair<int, int>> arrows;     // node index pairs, sorted
    std::vector<int> tau;                        // per node, -1 when undefined

    int find(int slice, int point) const;
    int find(int slice, const std::string& point_id) const;
    // in/out arrow counts, for mesh checks
    std::vector<int> out_arrows(int node) const;
    std::vector<int> in_arrows(int node) const;

    std::string to_dot() const;
};

// Standard ZQ' for a finite acyclic quiver: nodes (n,v), arrows
// (n,a):(n,s)->(n,t) and (n,a)*:(n,t)->(n+1,s), tau(n,v)=(n-1,v).
TranslationQuiver build_zq(const RepQuiver& q, int nmin, int nmax);

std::shared_ptr<const RepQuiver> opposite_quiver(const RepQuiver& q);

// Dimension-vector knitting of the connecting component over a Qtilde (or P)
// window: slice 0 carries the window projectives, later slices are produced
// by mesh additivity. Nodes whose value depends on a cropped projective are
// flagged contaminated rather than reported wrong.
TranslationQuiver knit_connecting(const CoveringQuiver& qt, int steps);

// vertices with a lifted out-arrow leaving the window (their projectives are
// truncated by the crop)
std::vector<bool> cropped_vertices(const CoveringQuiver& c);

// Quotient by the slice shift n -> n+g; representatives have slice in [0,g).
TranslationQuiver orbit_quotient(const TranslationQuiver& tq, int g);

enum class Shape {
    ZQtildeOp,
    ZAinf,
    QtildeOp,
    RightmostSectionSubquiver,
    NAinf,
    NminusAinf,
    FiniteWing,
    ZQop,
};

const char* to_string(Shape s);

struct CensusEntry {
    Shape shape;
    enum class Count { exact, infinite, present } kind = Count::exact;
    unsigned long long n = 0;
    std::string caveat;
};

struct ComponentCensus {
    std::vector<CensusEntry> entries;
    std::string to_json() const;
    const CensusEntry* find(Shape s) const;
};

ComponentCensus predict_census(const GradedQuiver& q);

bool has_ar_triangles(const GradedQuiver& q);

// underlying undirected graph is a simply laced Dynkin diagram (A/D/E)
bool is_dynkin_ADE(const GradedQuiver& q);

} // namespace rsz
