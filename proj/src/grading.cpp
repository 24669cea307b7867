#include "rsz/grading.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

namespace rsz {

const char* to_string(CycleSign s) {
    switch (s) {
    case CycleSign::no_cycle: return "no_cycle";
    case CycleSign::all_positive: return "all_positive";
    case CycleSign::all_negative: return "all_negative";
    case CycleSign::zero_or_mixed: return "zero_or_mixed";
    }
    return "?";
}

std::vector<long long> tree_potentials(const GradedQuiver& q, int root) {
    std::vector<long long> pot(q.vertex_count(), 0);
    std::vector<bool> seen(q.vertex_count(), false);
    struct Edge {
        int to;
        long long step;
    };
    std::vector<std::vector<Edge>> nbrs(q.vertex_count());
    for (int a = 0; a < q.arrow_count(); ++a) {
        long long d = q.virtual_degree_of_arrow(a);
        nbrs[q.arrow(a).src].push_back({q.arrow(a).tgt, d});
        nbrs[q.arrow(a).tgt].push_back({q.arrow(a).src, -d});
    }
    // BFS forest rooted at `root`; extra components get their own roots at 0
    for (int s = -1; s < q.vertex_count(); ++s) {
        int start = (s < 0) ? root : s;
        if (start < 0 || start >= q.vertex_count() || seen[start])
            continue;
        seen[start] = true;
        std::vector<int> queue{start};
        for (size_t i = 0; i < queue.size(); ++i) {
            int v = queue[i];
            for (const auto& e : nbrs[v]) {
                if (seen[e.to])
                    continue;
                seen[e.to] = true;
                pot[e.to] = checked_add(pot[v], e.step);
                queue.push_back(e.to);
            }
        }
    }
    return pot;
}

namespace {

long long period_of_component(const GradedQuiver& q, const std::vector<int>& comp, int which,
                              int root) {
    auto pot = tree_potentials(q, root);
    long long g = 0;
    for (int a = 0; a < q.arrow_count(); ++a) {
        if (comp[q.arrow(a).src] != which)
            continue;
        long long defect =
            checked_add(checked_add(pot[q.arrow(a).src], q.virtual_degree_of_arrow(a)),
                        -pot[q.arrow(a).tgt]);
        g = std::gcd(g, defect);
    }
    return g < 0 ? -g : g;
}

} // namespace

long long grading_period(const GradedQuiver& q) {
    auto comp = q.undirected_components();
    int ncomp = *std::max_element(comp.begin(), comp.end()) + 1;
    if (ncomp > 1) {
        std::ostringstream msg;
        msg << "grading_period requires a connected quiver; per-component periods:";
        for (int c = 0; c < ncomp; ++c) {
            int root = static_cast<int>(std::find(comp.begin(), comp.end(), c) - comp.begin());
            msg << " [" << c << "] " << period_of_component(q, comp, c, root);
        }
        throw precondition_error(msg.str());
    }
    return period_of_component(q, comp, 0, 0);
}

namespace {

struct SccFinder {
    const GradedQuiver& q;
    std::vector<int> index, low, scc_of;
    std::vector<bool> on_stack;
    std::vector<int> stack;
    int next_index = 0, next_scc = 0;

    explicit SccFinder(const GradedQuiver& quiver)
        : q(quiver), index(quiver.vertex_count(), -1), low(quiver.vertex_count(), 0),
          scc_of(quiver.vertex_count(), -1), on_stack(quiver.vertex_count(), false) {}

    void dfs(int v) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
        for (int a = 0; a < q.arrow_count(); ++a) {
            if (q.arrow(a).src != v)
                continue;
            int w = q.arrow(a).tgt;
            if (index[w] < 0) {
                dfs(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            while (true) {
                int w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                scc_of[w] = next_scc;
                if (w == v)
                    break;
            }
            ++next_scc;
        }
    }

    std::vector<int> run() {
        for (int v = 0; v < q.vertex_count(); ++v)
            if (index[v] < 0)
                dfs(v);
        return scc_of;
    }
};

// True iff the arrow set contains a directed cycle of negative total weight.
bool has_negative_cycle(int nverts, const std::vector<std::tuple<int, int, long long>>& edges) {
    if (edges.empty())
        return false;
    // all-zero initialization plays the role of a super source
    std::vector<long long> dist(nverts, 0);
    for (int pass = 0; pass < nverts; ++pass) {
        bool relaxed = false;
        for (const auto& [u, v, w] : edges) {
            long long cand = checked_add(dist[u], w);
            if (cand < dist[v]) {
                dist[v] = cand;
                relaxed = true;
            }
        }
        if (!relaxed)
            return false;
    }
    return true;
}

} // namespace

std::vector<SccSignature> scc_sign_analysis(const GradedQuiver& q) {
    SccFinder finder(q);
    auto scc_of = finder.run();
    int nscc = finder.next_scc;
    std::vector<SccSignature> out(nscc);
    for (int s = 0; s < nscc; ++s)
        out[s].id = s;
    for (int v = 0; v < q.vertex_count(); ++v)
        out[scc_of[v]].members.push_back(v);

    for (int s = 0; s < nscc; ++s) {
        auto& sig = out[s];
        std::sort(sig.members.begin(), sig.members.end());
        std::vector<int> local(q.vertex_count(), -1);
        for (size_t i = 0; i < sig.members.size(); ++i)
            local[sig.members[i]] = static_cast<int>(i);
        long long n = static_cast<long long>(sig.members.size());
        std::vector<std::tuple<int, int, long long>> lo_edges, hi_edges;
        for (int a = 0; a < q.arrow_count(); ++a) {
            int u = q.arrow(a).src, v = q.arrow(a).tgt;
            if (scc_of[u] != s || scc_of[v] != s)
                continue;
            long long d = q.virtual_degree_of_arrow(a);
            // (n+1)*d - 1 turns "cycle of virtual degree <= 0" into a strict
            // negative cycle; negating d gives the >= 0 test.
            lo_edges.emplace_back(local[u], local[v], checked_add(checked_mul(n + 1, d), -1));
            hi_edges.emplace_back(local[u], local[v], checked_add(checked_mul(n + 1, -d), -1));
        }
        if (lo_edges.empty()) {
            sig.cycle_sign = CycleSign::no_cycle;
            continue;
        }
        bool cycle_le_zero = has_negative_cycle(static_cast<int>(n), lo_edges);
        bool cycle_ge_zero = has_negative_cycle(static_cast<int>(n), hi_edges);
        if (!cycle_le_zero && !cycle_ge_zero) {
            // a nontrivial SCC always has a cycle, so this cannot happen
            throw std::logic_error("scc_sign_analysis: cycle sign tests contradict");
        }
        if (!cycle_le_zero)
            sig.cycle_sign = CycleSign::all_positive;
        else if (!cycle_ge_zero)
            sig.cycle_sign = CycleSign::all_negative;
        else
            sig.cycle_sign = CycleSign::zero_or_mixed;
    }
    return out;
}

bool is_admissible(const GradedQuiver& q) {
    auto sigs = scc_sign_analysis(q);
    int nscc = static_cast<int>(sigs.size());
    std::vector<int> scc_of(q.vertex_count());
    for (const auto& sig : sigs)
        for (int v : sig.members)
            scc_of[v] = sig.id;
    for (const auto& sig : sigs)
        if (sig.cycle_sign == CycleSign::zero_or_mixed)
            return false;

    // condensation reachability: no positive SCC may reach a negative one,
    // and no negative SCC may reach a positive one
    std::vector<std::vector<int>> succ(nscc);
    for (int a = 0; a < q.arrow_count(); ++a) {
        int u = scc_of[q.arrow(a).src], v = scc_of[q.arrow(a).tgt];
        if (u != v)
            succ[u].push_back(v);
    }
    std::vector<char> reaches_negative(nscc, 0), reaches_positive(nscc, 0);
    // Tarjan emits SCCs in reverse topological order, so successors of s
    // have smaller ids and are already final when s is processed.
    for (int s = 0; s < nscc; ++s) {
        if (sigs[s].cycle_sign == CycleSign::all_negative)
            reaches_negative[s] = 1;
        if (sigs[s].cycle_sign == CycleSign::all_positive)
            reaches_positive[s] = 1;
        for (int t : succ[s]) {
            reaches_negative[s] |= reaches_negative[t];
            reaches_positive[s] |= reaches_positive[t];
        }
        if (sigs[s].cycle_sign == CycleSign::all_positive && reaches_negative[s])
            return false;
        if (sigs[s].cycle_sign == CycleSign::all_negative && reaches_positive[s])
            return false;
    }
    return true;
}

unsigned long long count_paths_by_virtual_degree(const GradedQuiver& q, long long p) {
    if (!is_admissible(q))
        throw precondition_error("count_paths_by_virtual_degree requires an admissible quiver");
    long long n = q.vertex_count();
    long long dmax = q.max_abs_step();
    long long bound = checked_mul(checked_add(p < 0 ? -p : p, checked_mul(n + 1, dmax + 1)), n + 1);
    long long confirm = bound + n + 1;

    long long min_step = 0, max_step = 0;
    for (int a = 0; a < q.arrow_count(); ++a) {
        min_step = std::min(min_step, q.virtual_degree_of_arrow(a));
        max_step = std::max(max_step, q.virtual_degree_of_arrow(a));
    }
    // a state (v, deg) is useful if some continuation of <= m steps can still
    // land on degree p
    auto useful = [&](long long deg, long long remaining) {
        for (long long m = 0; m <= remaining; ++m) {
            long long lo = checked_mul(m, min_step), hi = checked_mul(m, max_step);
            if (lo <= p - deg && p - deg <= hi)
                return true;
        }
        return false;
    };

    unsigned long long total = 0, total_at_bound = 0;
    std::map<std::pair<int, long long>, unsigned long long> frontier;
    for (int v = 0; v < q.vertex_count(); ++v)
        frontier[{v, 0}] = 1;
    if (p == 0)
        total = static_cast<unsigned long long>(q.vertex_count());
    for (long long len = 1; len <= confirm && !frontier.empty(); ++len) {
        std::map<std::pair<int, long long>, unsigned long long> next;
        for (const auto& [state, cnt] : frontier) {
            auto [v, deg] = state;
            for (int a = 0; a < q.arrow_count(); ++a) {
                if (q.arrow(a).src != v)
                    continue;
                long long nd = checked_add(deg, q.virtual_degree_of_arrow(a));
                if (!useful(nd, confirm - len))
                    continue;
                auto& slot = next[{q.arrow(a).tgt, nd}];
                slot = checked_add_u(slot, cnt);
            }
        }
        for (const auto& [state, cnt] : next)
            if (state.second == p)
                total = checked_add_u(total, cnt);
        if (len == bound)
            total_at_bound = total;
        frontier = std::move(next);
    }
    if (!frontier.empty() && total != total_at_bound)
        throw std::logic_error("count_paths_by_virtual_degree: counts did not stabilize "
                               "within the certified length bound");
    return total;
}

AnalysisReport classify_shape(const GradedQuiver& q) {
    AnalysisReport r;
    r.connected = q.connected();
    if (!r.connected)
        throw precondition_error("classify_shape requires a connected quiver");
    r.grading_period = grading_period(q);
    r.admissible = is_admissible(q);

    auto sigs = scc_sign_analysis(q);
    r.has_oriented_cycles =
        std::any_of(sigs.begin(), sigs.end(),
                    [](const SccSignature& s) { return s.cycle_sign != CycleSign::no_cycle; });
    r.has_ar_triangles = !r.has_oriented_cycles;

    std::vector<int> outdeg(q.vertex_count(), 0), indeg(q.vertex_count(), 0);
    std::vector<int> und_deg(q.vertex_count(), 0);
    for (const auto& a : q.arrows()) {
        ++outdeg[a.src];
        ++indeg[a.tgt];
        und_deg[a.src] += 1;
        und_deg[a.tgt] += 1; // a loop contributes 2 to its vertex
    }
    r.is_graded_oriented_cycle =
        q.arrow_count() == q.vertex_count() &&
        std::all_of(outdeg.begin(), outdeg.end(), [](int d) { return d == 1; }) &&
        std::all_of(indeg.begin(), indeg.end(), [](int d) { return d == 1; }) &&
        sigs.size() == 1;
    r.is_type_A_tilde =
        q.arrow_count() == q.vertex_count() &&
        std::all_of(und_deg.begin(), und_deg.end(), [](int d) { return d == 2; });
    return r;
}

std::string AnalysisReport::to_json() const {
    nlohmann::ordered_json j;
    j["grading_period"] = grading_period;
    j["admissible"] = admissible;
    j["has_oriented_cycles"] = has_oriented_cycles;
    j["is_graded_oriented_cycle"] = is_graded_oriented_cycle;
    j["is_type_A_tilde"] = is_type_A_tilde;
    j["has_ar_triangles"] = has_ar_triangles;
    j["connected"] = connected;
    return j.dump(2) + "\n";
}

} // namespace rsz
