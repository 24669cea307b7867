#include "rsz/covering.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "rsz/grading.hpp"

namespace rsz {

long long default_slack(const GradedQuiver& q) {
    return checked_mul(q.vertex_count() + 1, q.max_abs_step() + 1);
}

void CoveringQuiver::index() {
    std::sort(vertices_.begin(), vertices_.end(), [](const CVertex& a, const CVertex& b) {
        return std::tie(a.level, a.base_vertex) < std::tie(b.level, b.base_vertex);
    });
    vertex_pos_.clear();
    for (int i = 0; i < vertex_count(); ++i)
        vertex_pos_[{vertices_[i].base_vertex, vertices_[i].level}] = i;
}

void CoveringQuiver::insert_arrows_between_vertices() {
    arrows_.clear();
    arrow_pos_.clear();
    for (const auto& [key, idx] : vertex_pos_) {
        (void)idx;
        auto [i, j] = key;
        for (int a = 0; a < base_->arrow_count(); ++a) {
            if (base_->arrow(a).src != i)
                continue;
            long long jt = checked_add(j, base_->virtual_degree_of_arrow(a));
            if (vertex_pos_.count({base_->arrow(a).tgt, jt}))
                arrows_.push_back({a, j});
        }
    }
    std::sort(arrows_.begin(), arrows_.end(), [](const CArrow& a, const CArrow& b) {
        return std::tie(a.level, a.base_arrow) < std::tie(b.level, b.base_arrow);
    });
    for (int i = 0; i < arrow_count(); ++i)
        arrow_pos_[{arrows_[i].base_arrow, arrows_[i].level}] = i;
}

int CoveringQuiver::find_vertex(int base_vertex, long long level) const {
    auto it = vertex_pos_.find({base_vertex, level});
    return it == vertex_pos_.end() ? -1 : it->second;
}

int CoveringQuiver::find_arrow(int base_arrow, long long level) const {
    auto it = arrow_pos_.find({base_arrow, level});
    return it == arrow_pos_.end() ? -1 : it->second;
}

int CoveringQuiver::arrow_source(int a) const {
    const auto& ca = arrows_.at(a);
    return find_vertex(base_->arrow(ca.base_arrow).src, ca.level);
}

long long CoveringQuiver::arrow_target_level(int a) const {
    const auto& ca = arrows_.at(a);
    return checked_add(ca.level, base_->virtual_degree_of_arrow(ca.base_arrow));
}

int CoveringQuiver::arrow_target(int a) const {
    const auto& ca = arrows_.at(a);
    return find_vertex(base_->arrow(ca.base_arrow).tgt, arrow_target_level(a));
}

std::string CoveringQuiver::vertex_name(int i) const {
    const auto& v = vertices_.at(i);
    return base_->vertex_id(v.base_vertex) + "@" + std::to_string(v.level);
}

std::string CoveringQuiver::arrow_name(int a) const {
    const auto& ca = arrows_.at(a);
    return base_->arrow(ca.base_arrow).id + "@" + std::to_string(ca.level);
}

bool CoveringQuiver::acyclic() const {
    std::vector<int> indeg(vertex_count(), 0);
    for (int a = 0; a < arrow_count(); ++a)
        ++indeg[arrow_target(a)];
    std::vector<int> queue;
    for (int v = 0; v < vertex_count(); ++v)
        if (indeg[v] == 0)
            queue.push_back(v);
    size_t done = 0;
    while (done < queue.size()) {
        int v = queue[done++];
        for (int a = 0; a < arrow_count(); ++a) {
            if (arrow_source(a) != v)
                continue;
            if (--indeg[arrow_target(a)] == 0)
                queue.push_back(arrow_target(a));
        }
    }
    return done == static_cast<size_t>(vertex_count());
}

CoveringQuiver CoveringQuiver::rewindow(long long jmin, long long jmax) const {
    if (kind_ == Kind::P)
        return build_p_window(*base_, jmin, jmax);
    return build_q_tilde(*base_, base_->vertex_id(base_vertex_), jmin, jmax, slack_);
}

CoveringQuiver build_p_window(const GradedQuiver& q, long long jmin, long long jmax) {
    if (jmin > jmax)
        throw precondition_error("build_p_window: jmin must be <= jmax");
    CoveringQuiver c;
    c.base_ = std::make_shared<GradedQuiver>(q);
    c.kind_ = CoveringQuiver::Kind::P;
    c.jmin_ = jmin;
    c.jmax_ = jmax;
    c.deck_step_ = 1;
    for (long long j = jmin; j <= jmax; ++j)
        for (int i = 0; i < q.vertex_count(); ++i)
            c.vertices_.push_back({i, j});
    c.index();
    c.insert_arrows_between_vertices();
    return c;
}

CoveringQuiver build_q_tilde(const GradedQuiver& q, const std::string& base_vertex, long long jmin,
                             long long jmax, std::optional<long long> slack_opt) {
    if (jmin > jmax)
        throw precondition_error("build_q_tilde: jmin must be <= jmax");
    if (!q.connected())
        throw precondition_error("build_q_tilde requires a connected quiver");
    int b = q.vertex_index(base_vertex);
    if (b < 0)
        throw input_error("build_q_tilde: unknown base vertex '" + base_vertex + "'");
    long long slack = slack_opt.value_or(default_slack(q));

    // walk-BFS from (b, 0) inside the enlarged window
    long long lo = std::min(jmin, 0LL) - slack;
    long long hi = std::max(jmax, 0LL) + slack;
    std::set<std::pair<int, long long>> seen{{b, 0}};
    std::vector<std::pair<int, long long>> queue{{b, 0}};
    for (size_t k = 0; k < queue.size(); ++k) {
        auto [i, j] = queue[k];
        for (int a = 0; a < q.arrow_count(); ++a) {
            long long d = q.virtual_degree_of_arrow(a);
            if (q.arrow(a).src == i) {
                long long jt = checked_add(j, d);
                if (jt >= lo && jt <= hi && seen.emplace(q.arrow(a).tgt, jt).second)
                    queue.emplace_back(q.arrow(a).tgt, jt);
            }
            if (q.arrow(a).tgt == i) {
                long long js = checked_add(j, -d);
                if (js >= lo && js <= hi && seen.emplace(q.arrow(a).src, js).second)
                    queue.emplace_back(q.arrow(a).src, js);
            }
        }
    }

    CoveringQuiver c;
    c.base_ = std::make_shared<GradedQuiver>(q);
    c.kind_ = CoveringQuiver::Kind::Qtilde;
    c.jmin_ = jmin;
    c.jmax_ = jmax;
    c.base_vertex_ = b;
    c.slack_ = slack;
    c.deck_step_ = grading_period(q);
    for (const auto& [i, j] : seen)
        if (j >= jmin && j <= jmax)
            c.vertices_.push_back({i, j});
    c.index();
    c.insert_arrows_between_vertices();
    return c;
}

int DeckAction::apply_vertex(int i) const {
    const auto& v = c_->vertex(i);
    int t = c_->find_vertex(v.base_vertex, checked_add(v.level, k_));
    if (t < 0)
        throw window_error("deck(" + std::to_string(k_) + ") moves vertex " + c_->vertex_name(i) +
                               " outside the window",
                           std::min(c_->jmin(), c_->jmin() + k_),
                           std::max(c_->jmax(), c_->jmax() + k_));
    return t;
}

int DeckAction::apply_arrow(int a) const {
    const auto& ca = c_->arrow(a);
    int t = c_->find_arrow(ca.base_arrow, checked_add(ca.level, k_));
    if (t < 0)
        throw window_error("deck(" + std::to_string(k_) + ") moves arrow " + c_->arrow_name(a) +
                               " outside the window",
                           std::min(c_->jmin(), c_->jmin() + k_),
                           std::max(c_->jmax(), c_->jmax() + k_));
    return t;
}

std::vector<int> DeckAction::apply_vertex_set(const std::vector<int>& vs) const {
    std::vector<int> out;
    out.reserve(vs.size());
    for (int v : vs)
        out.push_back(apply_vertex(v));
    std::sort(out.begin(), out.end());
    return out;
}

ComponentSplit split_components(const CoveringQuiver& c) {
    const GradedQuiver& q = c.base();
    if (!q.connected())
        throw precondition_error("split_components requires a connected base quiver");
    if (!is_admissible(q))
        throw precondition_error("split_components requires an admissible base quiver");

    ComponentSplit out;
    out.component_of.assign(c.vertex_count(), -1);
    std::vector<std::vector<int>> nbrs(c.vertex_count());
    for (int a = 0; a < c.arrow_count(); ++a) {
        int s = c.arrow_source(a), t = c.arrow_target(a);
        nbrs[s].push_back(t);
        nbrs[t].push_back(s);
    }
    for (int start = 0; start < c.vertex_count(); ++start) {
        if (out.component_of[start] >= 0)
            continue;
        int id = static_cast<int>(out.components.size());
        out.components.emplace_back();
        std::vector<int> stack{start};
        out.component_of[start] = id;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            out.components[id].push_back(v);
            for (int w : nbrs[v])
                if (out.component_of[w] < 0) {
                    out.component_of[w] = id;
                    stack.push_back(w);
                }
        }
        std::sort(out.components[id].begin(), out.components[id].end());
    }

    long long width = c.jmax() - c.jmin() + 1;
    out.middle_lo = c.jmin() + width / 3;
    out.middle_hi = c.jmax() - width / 3;
    std::set<int> interior;
    for (int v = 0; v < c.vertex_count(); ++v)
        if (c.vertex(v).level >= out.middle_lo && c.vertex(v).level <= out.middle_hi)
            interior.insert(out.component_of[v]);
    out.interior.assign(interior.begin(), interior.end());

    long long r = grading_period(q);
    if (out.interior.empty()) {
        out.note = "window has no interior-meeting components";
        return out;
    }

    if (r == 0) {
        // interior components should be full copies of the base quiver
        out.copies_of_base = true;
        for (int id : out.interior) {
            std::vector<int> hits(q.vertex_count(), 0);
            for (int v : out.components[id])
                ++hits[c.vertex(v).base_vertex];
            bool full = std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
            int arrows_inside = 0;
            for (int a = 0; a < c.arrow_count(); ++a)
                if (out.component_of[c.arrow_source(a)] == id)
                    ++arrows_inside;
            if (!full || arrows_inside != q.arrow_count()) {
                out.copies_of_base = false;
                out.note = "component " + std::to_string(id) + " is cropped";
            }
        }
        out.conclusive = out.copies_of_base;
        return out;
    }

    // r >= 1: deck(1) must permute the interior components in one r-cycle.
    // Checked on middle-third slices, where the shift stays in the window.
    std::map<int, int> comp_map;
    bool well_defined = true;
    for (int id : out.interior) {
        std::set<int> images;
        for (int v : out.components[id]) {
            long long j = c.vertex(v).level;
            if (j < out.middle_lo || j + 1 > out.middle_hi)
                continue;
            int w = c.find_vertex(c.vertex(v).base_vertex, j + 1);
            if (w >= 0)
                images.insert(out.component_of[w]);
        }
        if (images.size() != 1) {
            well_defined = false;
            out.note = "deck(1) image of component " + std::to_string(id) +
                       " is not a single component (window too narrow)";
            break;
        }
        comp_map[id] = *images.begin();
    }
    if (well_defined) {
        // the image components must again be interior and form one cycle
        std::set<int> interior_set(out.interior.begin(), out.interior.end());
        bool closed = true;
        for (auto [from, to] : comp_map)
            if (!interior_set.count(to))
                closed = false;
        if (closed) {
            int start = out.interior.front();
            std::set<int> orbit;
            int cur = start;
            for (size_t step = 0; step <= comp_map.size(); ++step) {
                orbit.insert(cur);
                cur = comp_map[cur];
                if (cur == start)
                    break;
            }
            out.deck_transitive = (cur == start) &&
                                  orbit.size() == interior_set.size() &&
                                  static_cast<long long>(orbit.size()) == r;
            out.conclusive = out.deck_transitive;
            if (!out.deck_transitive)
                out.note = "interior components are not a single deck(1)-orbit of length r";
        } else {
            out.note = "deck(1) maps an interior component to a boundary component";
        }
    }
    return out;
}

WalkBijectionReport verify_walk_bijection(const GradedQuiver& q, const CoveringQuiver& c,
                                          int max_len) {
    WalkBijectionReport rep;
    long long dm = q.max_abs_step();
    long long margin = checked_mul(static_cast<long long>(max_len), dm);
    long long safe_lo = checked_add(c.jmin(), margin);
    long long safe_hi = checked_add(c.jmax(), -margin);
    rep.required_slack = margin;
    if (safe_lo > safe_hi) {
        rep.note = "window too narrow: needs slack " + std::to_string(margin) +
                   " on both sides for max_len " + std::to_string(max_len);
        return rep;
    }
    rep.conclusive = true;
    rep.ok = true;
    auto base_counts = enumerate_paths(q, max_len);

    for (int v0 = 0; v0 < c.vertex_count(); ++v0) {
        long long j0 = c.vertex(v0).level;
        if (j0 < safe_lo || j0 > safe_hi)
            continue;
        // window path counts from v0, lengths <= max_len
        std::map<int, unsigned long long> reach{{v0, 1}};
        std::map<int, unsigned long long> totals{{v0, 1}};
        for (int len = 1; len <= max_len; ++len) {
            std::map<int, unsigned long long> next;
            for (const auto& [v, n] : reach)
                for (int a = 0; a < c.arrow_count(); ++a) {
                    if (c.arrow_source(a) != v)
                        continue;
                    auto& slot = next[c.arrow_target(a)];
                    slot = checked_add_u(slot, n);
                }
            for (const auto& [v, n] : next) {
                auto& slot = totals[v];
                slot = checked_add_u(slot, n);
            }
            reach = std::move(next);
        }
        for (int v1 = 0; v1 < c.vertex_count(); ++v1) {
            auto it = totals.find(v1);
            unsigned long long in_window = it == totals.end() ? 0 : it->second;
            unsigned long long in_base =
                base_counts.count(c.vertex(v0).base_vertex, c.vertex(v1).base_vertex,
                                  c.vertex(v1).level - j0);
            ++rep.pairs_checked;
            if (in_window != in_base) {
                rep.ok = false;
                rep.note = "count mismatch " + c.vertex_name(v0) + " -> " + c.vertex_name(v1) +
                           ": window " + std::to_string(in_window) + ", base " +
                           std::to_string(in_base);
                return rep;
            }
        }
    }
    return rep;
}

std::string covering_to_dot(const CoveringQuiver& c) {
    std::ostringstream out;
    out << "digraph \"" << c.base().name() << (c.kind() == CoveringQuiver::Kind::P ? "_P" : "_Qtilde")
        << "\" {\n";
    out << "  rankdir=LR;\n";
    for (int v = 0; v < c.vertex_count(); ++v)
        out << "  \"" << c.vertex_name(v) << "\";\n";
    for (int a = 0; a < c.arrow_count(); ++a)
        out << "  \"" << c.vertex_name(c.arrow_source(a)) << "\" -> \""
            << c.vertex_name(c.arrow_target(a)) << "\" [label=\"" << c.arrow_name(a) << "\"];\n";
    out << "}\n";
    return out.str();
}

} // namespace rsz
