#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rsz/quiver.hpp"

namespace rsz {

// Finite window of one of the infinite covering quivers: P has vertex set
// Q0 x Z with arrows raising the level by d(alpha); Qtilde is the connected
// component of P through (base_vertex, 0). Windows are closed level
// intervals [jmin, jmax]; arrows are present iff both endpoints are.
class CoveringQuiver {
public:
    enum class Kind { P, Qtilde };

    struct CVertex {
        int base_vertex;
        long long level;
    };
    struct CArrow {
        int base_arrow;
        long long level; // level of the source
    };

    Kind kind() const { return kind_; }
    const GradedQuiver& base() const { return *base_; }
    std::shared_ptr<const GradedQuiver> base_ptr() const { return base_; }
    long long jmin() const { return jmin_; }
    long long jmax() const { return jmax_; }
    long long deck_step() const { return deck_step_; }
    int base_vertex() const { return base_vertex_; } // Qtilde only, else -1
    long long slack() const { return slack_; }

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int arrow_count() const { return static_cast<int>(arrows_.size()); }
    const std::vector<CVertex>& vertices() const { return vertices_; }
    const std::vector<CArrow>& arrows() const { return arrows_; }
    const CVertex& vertex(int i) const { return vertices_.at(i); }
    const CArrow& arrow(int i) const { return arrows_.at(i); }

    int find_vertex(int base_vertex, long long level) const; // -1 if absent
    int find_arrow(int base_arrow, long long level) const;
    int arrow_source(int a) const;
    int arrow_target(int a) const;
    long long arrow_target_level(int a) const;

    // covering morphism to the base quiver
    int project_vertex(int i) const { return vertices_.at(i).base_vertex; }
    int project_arrow(int a) const { return arrows_.at(a).base_arrow; }

    std::string vertex_name(int i) const;
    std::string arrow_name(int a) const;

    bool acyclic() const;

    // Same base, kind and construction parameters but a different window.
    CoveringQuiver rewindow(long long jmin, long long jmax) const;

    friend CoveringQuiver build_p_window(const GradedQuiver& q, long long jmin, long long jmax);
    friend CoveringQuiver build_q_tilde(const GradedQuiver& q, const std::string& base_vertex,
                                        long long jmin, long long jmax,
                                        std::optional<long long> slack);

private:
    std::shared_ptr<const GradedQuiver> base_;
    Kind kind_ = Kind::P;
    long long jmin_ = 0, jmax_ = 0;
    long long deck_step_ = 1;
    int base_vertex_ = -1;
    long long slack_ = 0;
    std::vector<CVertex> vertices_; // sorted by (level, base vertex index)
    std::vector<CArrow> arrows_;    // sorted by (level, base arrow index)
    std::map<std::pair<int, long long>, int> vertex_pos_;
    std::map<std::pair<int, long long>, int> arrow_pos_;

    void index();
    void insert_arrows_between_vertices();
};

// Default BFS slack: one traversal of the base quiver cannot move the level
// further than this.
long long default_slack(const GradedQuiver& q);

CoveringQuiver build_p_window(const GradedQuiver& q, long long jmin, long long jmax);

// Window of the component of (base_vertex, 0): vertices (i, j) reachable by a
// walk from base_vertex of virtual degree j, found by BFS in the window
// enlarged by `slack` on each side, then cropped.
CoveringQuiver build_q_tilde(const GradedQuiver& q, const std::string& base_vertex, long long jmin,
                             long long jmax, std::optional<long long> slack = std::nullopt);

// Level shift (i,j) -> (i,j+k); errors with the offending item on window exit.
class DeckAction {
public:
    DeckAction(const CoveringQuiver& c, long long k) : c_(&c), k_(k) {}
    long long shift() const { return k_; }
    int apply_vertex(int i) const;
    int apply_arrow(int a) const;
    std::vector<int> apply_vertex_set(const std::vector<int>& vs) const;

private:
    const CoveringQuiver* c_;
    long long k_;
};

inline DeckAction deck(const CoveringQuiver& c, long long k) { return DeckAction(c, k); }

struct ComponentSplit {
    std::vector<std::vector<int>> components; // vertex indices, each sorted
    std::vector<int> component_of;
    long long middle_lo = 0, middle_hi = 0;
    std::vector<int> interior; // ids of components meeting the middle third
    bool conclusive = false;
    std::string note;
    // r >= 1: deck(1) permutes the interior components in one cycle of length r
    bool deck_transitive = false;
    // r = 0: every interior component projects isomorphically onto the base
    bool copies_of_base = false;
};

ComponentSplit split_components(const CoveringQuiver& c);

struct WalkBijectionReport {
    bool conclusive = false;
    bool ok = false;
    long long required_slack = 0;
    long long pairs_checked = 0;
    std::string note;
};

// Path counts (i,j)->(i',j') in the window vs degree-filtered path counts in
// the base, for all starts whose length-bounded lifts stay inside the window.
WalkBijectionReport verify_walk_bijection(const GradedQuiver& q, const CoveringQuiver& c,
                                          int max_len);

std::string covering_to_dot(const CoveringQuiver& c);

} // namespace rsz
