#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rsz/covering.hpp"
#include "rsz/matrix.hpp"
#include "rsz/quiver.hpp"

namespace rsz {

// The finite quiver a representation lives on: either a covering window
// (with level coordinates, supporting pull-backs) or a plain finite quiver.
class RepQuiver {
public:
    static std::shared_ptr<const RepQuiver> from_graded(const GradedQuiver& q);
    static std::shared_ptr<const RepQuiver> from_covering(const CoveringQuiver& c);

    const std::string& name() const { return name_; }
    int vertex_count() const { return static_cast<int>(vertex_ids_.size()); }
    int arrow_count() const { return static_cast<int>(arrows_.size()); }
    const std::string& vertex_id(int v) const { return vertex_ids_.at(v); }
    struct Arrow {
        std::string id;
        int src, tgt;
    };
    const Arrow& arrow(int a) const { return arrows_.at(a); }
    int find_vertex(const std::string& id) const;
    int find_arrow(const std::string& id) const;

    bool leveled() const { return cover_ != nullptr; }
    const CoveringQuiver& cover() const;
    long long level(int v) const;  // leveled only
    int base_vertex(int v) const;  // leveled only

    bool acyclic() const;
    std::vector<int> topological_order() const; // acyclic only

    bool structurally_equal(const RepQuiver& o) const;

private:
    std::string name_;
    std::vector<std::string> vertex_ids_;
    std::vector<Arrow> arrows_;
    std::map<std::string, int> vertex_by_id_;
    std::map<std::string, int> arrow_by_id_;
    std::shared_ptr<const CoveringQuiver> cover_;
};

using DimensionVector = std::vector<int>;

// Finite-dimensional representation: a matrix per arrow, acting as
// matrix * column-vector from the source fibre to the target fibre.
class Representation {
public:
    Representation(std::shared_ptr<const RepQuiver> quiver, FieldSpec field, DimensionVector dims,
                   std::map<int, Mat> maps);

    const RepQuiver& quiver() const { return *quiver_; }
    std::shared_ptr<const RepQuiver> quiver_ptr() const { return quiver_; }
    const FieldSpec& field() const { return field_; }
    const DimensionVector& dims() const { return dims_; }
    int dim(int v) const { return dims_.at(v); }
    const Mat& map(int a) const { return maps_.at(a); }
    long long total_dim() const;
    bool is_zero() const { return total_dim() == 0; }

private:
    std::shared_ptr<const RepQuiver> quiver_;
    FieldSpec field_;
    DimensionVector dims_;
    std::vector<Mat> maps_; // per arrow, dims[tgt] x dims[src]
};

Representation zero_rep(std::shared_ptr<const RepQuiver> q, FieldSpec f);
Representation simple_rep(std::shared_ptr<const RepQuiver> q, int vertex, FieldSpec f);
// dimension 1 on the given vertices, identity on arrows inside the support
Representation thin_rep(std::shared_ptr<const RepQuiver> q, const std::vector<int>& support,
                        FieldSpec f);
// paths-from-v basis; requires an acyclic quiver
Representation projective_rep(std::shared_ptr<const RepQuiver> q, int vertex, FieldSpec f);
Representation direct_sum(const Representation& a, const Representation& b);
// extension of M by N classified by xi: per arrow a map M_src -> N_tgt
Representation extension_rep(const Representation& n, const Representation& m,
                             const std::map<int, Mat>& xi);

// Morphisms M -> N as per-vertex blocks solving the intertwining equations.
struct HomBasis {
    int dim = 0;
    std::vector<std::vector<Mat>> elements; // elements[k][v] : M_v -> N_v
};

HomBasis hom_basis(const Representation& m, const Representation& n);
int hom_dim(const Representation& m, const Representation& n);

long long euler_form(const RepQuiver& q, const DimensionVector& d, const DimensionVector& e);

int ext1_dim(const Representation& m, const Representation& n);

// (pull_back(M,k))_{(i,j)} = M_{(i,j+k)}. The window is kept; exits raise
// window_error with the window that would suffice.
Representation pull_back(const Representation& m, long long k);

// same base and kind, wider window
Representation rewindow(const Representation& m, const CoveringQuiver& wider);

enum class IndecStatus { indecomposable, probably_indecomposable, decomposable };

const char* to_string(IndecStatus s);

// seed for the randomized stage of the Fitting search: RSZ_SEED when set,
// 0xD5EED otherwise
unsigned long long decomposition_seed();

IndecStatus indecomposability(const Representation& m,
                              unsigned long long seed = decomposition_seed());
bool is_indecomposable(const Representation& m, unsigned long long seed = decomposition_seed());

struct Decomposition {
    std::vector<Representation> summands; // sorted by dimension vector
    bool certified = true;                // false if a leaf is only probably indecomposable
};

Decomposition decompose(const Representation& m, unsigned long long seed = decomposition_seed());

// restriction of m to per-vertex column bases of an invariant subspace
Representation subrepresentation(const Representation& m, const std::vector<Mat>& vertex_bases);

// two representations already known to be indecomposable are isomorphic iff
// some hom-basis element is invertible
bool indec_iso(const Representation& a, const Representation& b);

// Graded-module presentation: dims per (vertex, internal degree) and the
// right action of each arrow, as maps V_{(s(a),j)} -> V_{(t(a),j+d(a))}.
struct GradedModuleData {
    const GradedQuiver* q = nullptr;
    std::map<std::pair<int, long long>, int> dims;
    std::map<std::pair<int, long long>, Mat> actions;
};

Representation graded_module_to_rep(const GradedModuleData& data, FieldSpec field);

std::string rep_to_json(const Representation& m, std::optional<long long> shift = std::nullopt);
// shift_out receives the "shift" field when present (else 0)
Representation rep_from_json(const std::string& text, const GradedQuiver& base,
                             long long* shift_out = nullptr);

} // namespace rsz
