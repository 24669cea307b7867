#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "rsz/errors.hpp"

namespace rsz {

// Finite quiver with an integer degree on each arrow. Vertices and arrows
// keep their declaration order; all iteration is by that order.
class GradedQuiver {
public:
    struct Arrow {
        std::string id;
        int src = -1;
        int tgt = -1;
        long long degree = 0;
    };

    GradedQuiver() = default;
    GradedQuiver(std::string name, std::vector<std::string> vertices,
                 std::vector<std::tuple<std::string, std::string, std::string, long long>> arrows);

    const std::string& name() const { return name_; }
    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int arrow_count() const { return static_cast<int>(arrows_.size()); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const std::string& vertex_id(int v) const { return vertices_.at(v); }
    const Arrow& arrow(int a) const { return arrows_.at(a); }

    int vertex_index(const std::string& id) const; // -1 if unknown
    int arrow_index(const std::string& id) const;

    // d(alpha) = 1 - |alpha|, the level step of the arrow in the covering.
    long long virtual_degree_of_arrow(int a) const { return 1 - arrows_.at(a).degree; }
    long long max_abs_step() const; // max |d(alpha)|, 0 when there are no arrows

    bool connected() const; // in the underlying undirected multigraph
    std::vector<int> undirected_components() const; // component id per vertex

    bool structurally_equal(const GradedQuiver& other) const;

private:
    std::string name_;
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    std::map<std::string, int> vertex_by_id_;
    std::map<std::string, int> arrow_by_id_;
};

// One step of a walk: an arrow traversed forward or against its direction.
struct WalkStep {
    int arrow = -1;
    bool inverse = false;
};

// Composable sequence of arrows and formal inverses. Steps are stored in
// application order (steps[0] is traversed first). Trivial walks carry only
// their base vertex.
class Walk {
public:
    static Walk trivial(const GradedQuiver& q, int vertex);
    Walk(const GradedQuiver& q, int source, std::vector<WalkStep> steps);

    const GradedQuiver& quiver() const { return *q_; }
    const std::vector<WalkStep>& steps() const { return steps_; }
    int source() const { return source_; }
    int target() const { return target_; }
    bool closed() const { return source_ == target_; }

    Walk inversed() const;
    Walk then(const Walk& next) const; // this first, next second

private:
    const GradedQuiver* q_ = nullptr;
    int source_ = -1;
    int target_ = -1;
    std::vector<WalkStep> steps_;
};

// d(w): forward arrows contribute 1-|alpha|, inverses |alpha|-1, trivial 0.
long long virtual_degree(const Walk& w);

// Directed path counts keyed by (source, target, virtual degree), truncated
// at max_len. Trivial paths are counted at degree 0.
struct PathMultiset {
    int max_len = 0;
    std::map<std::tuple<int, int, long long>, unsigned long long> counts;

    unsigned long long count(int src, int tgt, long long vdeg) const;
    unsigned long long total_at_degree(long long vdeg) const;
};

PathMultiset enumerate_paths(const GradedQuiver& q, int max_len);

// Arrows reversed, ids suffixed "_op", degree of alpha_op is 1 - |alpha|.
GradedQuiver graded_opposite(const GradedQuiver& q);

GradedQuiver parse_quiver(const std::string& text);
std::string serialize_quiver_text(const GradedQuiver& q);
std::string serialize_quiver_json(const GradedQuiver& q);
GradedQuiver quiver_from_json_text(const std::string& text);

} // namespace rsz
