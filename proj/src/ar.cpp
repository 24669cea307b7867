#include "rsz/ar.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rsz/grading.hpp"

namespace rsz {

int TranslationQuiver::find(int slice, int point) const {
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
        if (nodes[i].slice == slice && nodes[i].point == point)
            return i;
    return -1;
}

int TranslationQuiver::find(int slice, const std::string& point_id) const {
    auto it = std::find(point_ids.begin(), point_ids.end(), point_id);
    if (it == point_ids.end())
        return -1;
    return find(slice, static_cast<int>(it - point_ids.begin()));
}

std::vector<int> TranslationQuiver::out_arrows(int node) const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(arrows.size()); ++i)
        if (arrows[i].first == node)
            out.push_back(i);
    return out;
}

std::vector<int> TranslationQuiver::in_arrows(int node) const {
    std::vector<int> in;
    for (int i = 0; i < static_cast<int>(arrows.size()); ++i)
        if (arrows[i].second == node)
            in.push_back(i);
    return in;
}

namespace {

std::string label_string(const std::vector<long long>& label) {
    std::ostringstream s;
    s << "(";
    bool first = true;
    for (long long x : label) {
        if (!first)
            s << ",";
        s << x;
        first = false;
    }
    s << ")";
    return s.str();
}

void sort_translation_quiver(TranslationQuiver& tq) {
    std::vector<int> perm(tq.nodes.size());
    for (size_t i = 0; i < perm.size(); ++i)
        perm[i] = static_cast<int>(i);
    std::sort(perm.begin(), perm.end(), [&](int a, int b) {
        return std::tie(tq.nodes[a].slice, tq.nodes[a].point) <
               std::tie(tq.nodes[b].slice, tq.nodes[b].point);
    });
    std::vector<int> where(perm.size());
    for (size_t i = 0; i < perm.size(); ++i)
        where[perm[i]] = static_cast<int>(i);
    TranslationQuiver out;
    out.point_ids = tq.point_ids;
    for (int i : perm)
        out.nodes.push_back(tq.nodes[i]);
    for (auto [a, b] : tq.arrows)
        out.arrows.emplace_back(where[a], where[b]);
    // parallel arrows are kept: mesh sums count multiplicities
    std::sort(out.arrows.begin(), out.arrows.end());
    out.tau.assign(out.nodes.size(), -1);
    for (size_t i = 0; i < tq.tau.size(); ++i)
        if (tq.tau[i] >= 0)
            out.tau[where[i]] = where[tq.tau[i]];
    tq = std::move(out);
}

} // namespace

std::string TranslationQuiver::to_dot() const {
    std::ostringstream out;
    out << "digraph translation_quiver {\n  rankdir=LR;\n";
    for (size_t i = 0; i < nodes.size(); ++i) {
        out << "  \"" << nodes[i].slice << ":" << point_ids[nodes[i].point] << "\"";
        if (!nodes[i].label.empty()) {
            out << " [label=\"" << nodes[i].slice << ":" << point_ids[nodes[i].point] << " "
                << label_string(nodes[i].label);
            if (nodes[i].contaminated)
                out << " ?";
            out << "\"]";
        }
        out << ";\n";
    }
    for (auto [a, b] : arrows)
        out << "  \"" << nodes[a].slice << ":" << point_ids[nodes[a].point] << "\" -> \""
            << nodes[b].slice << ":" << point_ids[nodes[b].point] << "\";\n";
    for (size_t i = 0; i < tau.size(); ++i)
        if (tau[i] >= 0)
            out << "  \"" << nodes[i].slice << ":" << point_ids[nodes[i].point] << "\" -> \""
                << nodes[tau[i]].slice << ":" << point_ids[nodes[tau[i]].point]
                << "\" [style=dashed, constraint=false];\n";
    out << "}\n";
    return out.str();
}

TranslationQuiver build_zq(const RepQuiver& q, int nmin, int nmax) {
    if (!q.acyclic())
        throw precondition_error("build_zq requires an acyclic quiver");
    if (nmin > nmax)
        throw precondition_error("build_zq: empty slice window");
    TranslationQuiver tq;
    for (int v = 0; v < q.vertex_count(); ++v)
        tq.point_ids.push_back(q.vertex_id(v));
    for (int n = nmin; n <= nmax; ++n)
        for (int v = 0; v < q.vertex_count(); ++v)
            tq.nodes.push_back({n, v, {}, false});
    auto at = [&](int n, int v) { return (n - nmin) * q.vertex_count() + v; };
    for (int n = nmin; n <= nmax; ++n)
        for (int a = 0; a < q.arrow_count(); ++a) {
            tq.arrows.emplace_back(at(n, q.arrow(a).src), at(n, q.arrow(a).tgt));
            if (n + 1 <= nmax)
                tq.arrows.emplace_back(at(n, q.arrow(a).tgt), at(n + 1, q.arrow(a).src));
        }
    tq.tau.assign(tq.nodes.size(), -1);
    for (int n = nmin + 1; n <= nmax; ++n)
        for (int v = 0; v < q.vertex_count(); ++v)
            tq.tau[at(n, v)] = at(n - 1, v);
    sort_translation_quiver(tq);
    return tq;
}

std::shared_ptr<const RepQuiver> opposite_quiver(const RepQuiver& q) {
    std::vector<std::tuple<std::string, std::string, std::string, long long>> arrows;
    std::vector<std::string> vertices;
    for (int v = 0; v < q.vertex_count(); ++v)
        vertices.push_back(q.vertex_id(v));
    for (int a = 0; a < q.arrow_count(); ++a)
        arrows.emplace_back(q.arrow(a).id, q.vertex_id(q.arrow(a).tgt),
                            q.vertex_id(q.arrow(a).src), 0);
    GradedQuiver g("op", std::move(vertices), std::move(arrows));
    return RepQuiver::from_graded(g);
}

std::vector<bool> cropped_vertices(const CoveringQuiver& c) {
    std::vector<bool> cropped(c.vertex_count(), false);
    for (int v = 0; v < c.vertex_count(); ++v) {
        int i = c.vertex(v).base_vertex;
        long long j = c.vertex(v).level;
        for (int a = 0; a < c.base().arrow_count(); ++a) {
            if (c.base().arrow(a).src != i)
                continue;
            long long jt = checked_add(j, c.base().virtual_degree_of_arrow(a));
            if (jt < c.jmin() || jt > c.jmax() ||
                c.find_vertex(c.base().arrow(a).tgt, jt) < 0)
                cropped[v] = true;
        }
    }
    return cropped;
}

TranslationQuiver knit_connecting(const CoveringQuiver& qt, int steps) {
    if (steps < 0)
        throw precondition_error("knit_connecting: steps must be nonnegative");
    auto rq = RepQuiver::from_covering(qt);
    if (!rq->acyclic())
        throw precondition_error("knit_connecting requires an acyclic window");
    int nv = rq->vertex_count();

    // contaminated projectives: their support reaches a cropped vertex
    auto cropped = cropped_vertices(qt);
    std::vector<std::vector<int>> succ(nv);
    for (int a = 0; a < rq->arrow_count(); ++a)
        succ[rq->arrow(a).src].push_back(rq->arrow(a).tgt);
    std::vector<bool> dirty(nv, false);
    for (int v = 0; v < nv; ++v) {
        std::vector<int> stack{v};
        std::set<int> seen{v};
        while (!stack.empty()) {
            int w = stack.back();
            stack.pop_back();
            if (cropped[w]) {
                dirty[v] = true;
                break;
            }
            for (int u : succ[w])
                if (seen.insert(u).second)
                    stack.push_back(u);
        }
    }

    TranslationQuiver tq;
    for (int v = 0; v < nv; ++v)
        tq.point_ids.push_back(rq->vertex_id(v));

    // slice 0: projective labels (path counts inside the window)
    std::vector<std::vector<long long>> prev(nv);
    std::vector<bool> prev_dirty(nv);
    FieldSpec f2 = FieldSpec::prime(2);
    for (int v = 0; v < nv; ++v) {
        Representation p = projective_rep(rq, v, f2);
        std::vector<long long> label(nv, 0);
        for (int w = 0; w < nv; ++w)
            label[w] = p.dim(w);
        prev[v] = std::move(label);
        prev_dirty[v] = dirty[v];
        tq.nodes.push_back({0, v, prev[v], prev_dirty[v]});
    }

    auto add_vec = [&](std::vector<long long>& acc, const std::vector<long long>& x, long long s) {
        for (int i = 0; i < nv; ++i)
            acc[i] = checked_add(acc[i], checked_mul(s, x[i]));
    };

    // reverse topological order of the window quiver: inside slice n+1 the
    // mesh at x needs the labels of the W-successors of x first
    auto topo = rq->topological_order();
    std::reverse(topo.begin(), topo.end());

    for (int n = 1; n <= steps; ++n) {
        std::vector<std::vector<long long>> cur(nv);
        std::vector<bool> cur_dirty(nv, false);
        for (int x : topo) {
            std::vector<long long> label(nv, 0);
            bool d = prev_dirty[x];
            for (int a = 0; a < rq->arrow_count(); ++a) {
                if (rq->arrow(a).tgt == x) { // predecessor in W, old slice
                    add_vec(label, prev[rq->arrow(a).src], 1);
                    d = d || prev_dirty[rq->arrow(a).src];
                }
                if (rq->arrow(a).src == x) { // successor in W, new slice
                    add_vec(label, cur[rq->arrow(a).tgt], 1);
                    d = d || cur_dirty[rq->arrow(a).tgt];
                }
            }
            add_vec(label, prev[x], -1);
            cur[x] = std::move(label);
            cur_dirty[x] = d;
            tq.nodes.push_back({n, x, cur[x], cur_dirty[x]});
        }
        prev = std::move(cur);
        prev_dirty = cur_dirty;
    }

    // arrows and tau of the fragment of Z(W^op)
    sort_translation_quiver(tq);
    for (int n = 0; n <= steps; ++n)
        for (int a = 0; a < rq->arrow_count(); ++a) {
            int y = rq->arrow(a).src, x = rq->arrow(a).tgt;
            // W-arrow y->x gives in-slice (n,x)->(n,y) and cross (n,y)->(n+1,x)
            tq.arrows.emplace_back(tq.find(n, x), tq.find(n, y));
            if (n + 1 <= steps)
                tq.arrows.emplace_back(tq.find(n, y), tq.find(n + 1, x));
        }
    std::sort(tq.arrows.begin(), tq.arrows.end());
    tq.tau.assign(tq.nodes.size(), -1);
    for (int n = 1; n <= steps; ++n)
        for (int v = 0; v < nv; ++v)
            tq.tau[tq.find(n, v)] = tq.find(n - 1, v);
    return tq;
}

TranslationQuiver orbit_quotient(const TranslationQuiver& tq, int g) {
    if (g < 1)
        throw precondition_error("orbit_quotient: shift must be >= 1");
    if (tq.nodes.empty())
        throw precondition_error("orbit_quotient: empty translation quiver");
    int smin = tq.nodes.front().slice, smax = tq.nodes.front().slice;
    for (const auto& n : tq.nodes) {
        smin = std::min(smin, n.slice);
        smax = std::max(smax, n.slice);
    }
    if (smax - smin + 1 < 2 * g)
        throw window_error("orbit_quotient: window must cover at least 2g slices", 0, 2 * g);

    // representatives live in slices [smin, smin+g), reported as [0, g)
    auto rep_slice = [&](int n) { return ((n - smin) % g + g) % g; };

    TranslationQuiver out;
    out.point_ids = tq.point_ids;
    std::set<std::pair<int, int>> seen;
    for (const auto& n : tq.nodes)
        if (seen.emplace(rep_slice(n.slice), n.point).second)
            out.nodes.push_back({rep_slice(n.slice), n.point, n.label, n.contaminated});
    std::sort(out.nodes.begin(), out.nodes.end(), [](const auto& a, const auto& b) {
        return std::tie(a.slice, a.point) < std::tie(b.slice, b.point);
    });
    // arrows with multiplicity: those leaving a representative-slice node,
    // targets folded onto their representatives
    for (auto [a, b] : tq.arrows) {
        int sa = tq.nodes[a].slice;
        if (sa < smin || sa >= smin + g)
            continue;
        int na = out.find(rep_slice(sa), tq.nodes[a].point);
        int nb = out.find(rep_slice(tq.nodes[b].slice), tq.nodes[b].point);
        if (na >= 0 && nb >= 0)
            out.arrows.emplace_back(na, nb);
    }
    std::sort(out.arrows.begin(), out.arrows.end());
    out.tau.assign(out.nodes.size(), -1);
    for (size_t i = 0; i < out.nodes.size(); ++i) {
        // some preimage above slice smin carries tau; the window is wide
        // enough to contain one
        int n_pre = out.nodes[i].slice + smin;
        if (n_pre == smin)
            n_pre += g;
        int pre = tq.find(n_pre, out.nodes[i].point);
        if (pre >= 0 && tq.tau[pre] >= 0)
            out.tau[i] = out.find(rep_slice(n_pre - 1), out.nodes[i].point);
    }
    return out;
}

const char* to_string(Shape s) {
    switch (s) {
    case Shape::ZQtildeOp: return "ZQtildeOp";
    case Shape::ZAinf: return "ZAinf";
    case Shape::QtildeOp: return "QtildeOp";
    case Shape::RightmostSectionSubquiver: return "RightmostSectionSubquiver";
    case Shape::NAinf: return "NAinf";
    case Shape::NminusAinf: return "NminusAinf";
    case Shape::FiniteWing: return "FiniteWing";
    case Shape::ZQop: return "ZQop";
    }
    return "?";
}

std::string ComponentCensus::to_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& e : entries) {
        nlohmann::ordered_json je;
        je["shape"] = to_string(e.shape);
        switch (e.kind) {
        case CensusEntry::Count::exact: je["count"] = e.n; break;
        case CensusEntry::Count::infinite: je["count"] = "infinite"; break;
        case CensusEntry::Count::present: je["count"] = "present"; break;
        }
        if (!e.caveat.empty())
            je["caveat"] = e.caveat;
        arr.push_back(std::move(je));
    }
    return arr.dump(2) + "\n";
}

const CensusEntry* ComponentCensus::find(Shape s) const {
    for (const auto& e : entries)
        if (e.shape == s)
            return &e;
    return nullptr;
}

bool is_dynkin_ADE(const GradedQuiver& q) {
    int n = q.vertex_count(), m = q.arrow_count();
    if (!q.connected() || m != n - 1)
        return false; // not a tree
    std::vector<int> deg(n, 0);
    std::set<std::pair<int, int>> edges;
    for (const auto& a : q.arrows()) {
        if (a.src == a.tgt)
            return false;
        auto e = std::minmax(a.src, a.tgt);
        if (!edges.emplace(e.first, e.second).second)
            return false; // parallel edges
        ++deg[a.src];
        ++deg[a.tgt];
    }
    int branches = 0, branch = -1;
    for (int v = 0; v < n; ++v) {
        if (deg[v] > 3)
            return false;
        if (deg[v] == 3) {
            ++branches;
            branch = v;
        }
    }
    if (branches == 0)
        return true; // type A
    if (branches > 1)
        return false;
    // arm lengths from the branch vertex
    std::vector<std::vector<int>> nbrs(n);
    for (const auto& [u, v] : edges) {
        nbrs[u].push_back(v);
        nbrs[v].push_back(u);
    }
    std::vector<int> arms;
    for (int start : nbrs[branch]) {
        int len = 1, prev = branch, cur = start;
        while (true) {
            int next = -1;
            for (int w : nbrs[cur])
                if (w != prev)
                    next = w;
            if (next < 0)
                break;
            prev = cur;
            cur = next;
            ++len;
        }
        arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] != 1)
        return false;
    if (arms[1] == 1)
        return true; // type D
    if (arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4)
        return true; // E6, E7, E8
    return false;
}

namespace {

std::string rightmost_section_candidate(const GradedQuiver& q) {
    long long k = 2 * default_slack(q);
    CoveringQuiver qt = build_q_tilde(q, q.vertex_id(0), -k, k);
    TranslationQuiver knit = knit_connecting(qt, 1);
    // clean slice-0 nodes with no clean successors: the right-most clean layer
    std::vector<std::string> names;
    for (size_t i = 0; i < knit.nodes.size(); ++i) {
        const auto& node = knit.nodes[i];
        if (node.slice != 0 || node.contaminated)
            continue;
        bool rightmost = true;
        for (int a : knit.out_arrows(static_cast<int>(i)))
            if (!knit.nodes[knit.arrows[a].second].contaminated)
                rightmost = false;
        if (rightmost)
            names.push_back(knit.point_ids[node.point]);
    }
    std::ostringstream s;
    s << "right-most section candidate (knitted sinks):";
    for (const auto& nm : names)
        s << " " << nm;
    return s.str();
}

} // namespace

ComponentCensus predict_census(const GradedQuiver& q) {
    if (!q.connected())
        throw precondition_error("predict_census requires a connected quiver");
    if (!is_admissible(q))
        throw precondition_error("predict_census requires an admissible quiver");
    AnalysisReport rep = classify_shape(q);
    unsigned long long r = static_cast<unsigned long long>(rep.grading_period);
    ComponentCensus out;
    if (r == 0) {
        out.entries.push_back({Shape::ZQop, CensusEntry::Count::exact, 1, ""});
        if (!is_dynkin_ADE(q))
            out.entries.push_back({Shape::ZAinf, CensusEntry::Count::infinite, 0,
                                   "regular components per hereditary type"});
        return out;
    }
    if (!rep.has_oriented_cycles) {
        out.entries.push_back({Shape::ZQtildeOp, CensusEntry::Count::exact, r, ""});
        if (rep.is_type_A_tilde)
            out.entries.push_back({Shape::ZAinf, CensusEntry::Count::exact, 2 * r, ""});
        else
            out.entries.push_back({Shape::ZAinf, CensusEntry::Count::infinite, 0, ""});
        return out;
    }
    if (rep.is_graded_oriented_cycle) {
        out.entries.push_back({Shape::QtildeOp, CensusEntry::Count::exact, r, ""});
        out.entries.push_back({Shape::ZAinf, CensusEntry::Count::exact, r, ""});
        return out;
    }
    out.entries.push_back({Shape::RightmostSectionSubquiver, CensusEntry::Count::exact, r,
                           rightmost_section_candidate(q)});
    out.entries.push_back({Shape::ZAinf, CensusEntry::Count::present, 0, ""});
    out.entries.push_back({Shape::NAinf, CensusEntry::Count::present, 0, ""});
    out.entries.push_back({Shape::NminusAinf, CensusEntry::Count::present, 0, ""});
    out.entries.push_back({Shape::FiniteWing, CensusEntry::Count::infinite, 0, ""});
    return out;
}

bool has_ar_triangles(const GradedQuiver& q) {
    return !classify_shape(q).has_oriented_cycles;
}

} // namespace rsz
