#include "rsz/orbit.hpp"

#include <algorithm>
#include <sstream>

#include "rsz/grading.hpp"

namespace rsz {

namespace {

Representation embed(const Representation& m, const CoveringQuiver& target,
                     std::shared_ptr<const RepQuiver> target_rq) {
    const CoveringQuiver& c = m.quiver().cover();
    DimensionVector dims(target_rq->vertex_count(), 0);
    for (int v = 0; v < m.quiver().vertex_count(); ++v) {
        if (m.dim(v) == 0)
            continue;
        int w = target.find_vertex(c.vertex(v).base_vertex, c.vertex(v).level);
        if (w < 0)
            throw window_error("embedding leaves the target window", c.vertex(v).level,
                               c.vertex(v).level);
        dims[w] = m.dim(v);
    }
    std::map<int, Mat> maps;
    for (int a = 0; a < m.quiver().arrow_count(); ++a) {
        if (m.map(a).rows() == 0 || m.map(a).cols() == 0)
            continue;
        int na = target.find_arrow(c.arrow(a).base_arrow, c.arrow(a).level);
        if (na < 0)
            throw std::logic_error("embed: supported arrow missing in target window");
        maps[na] = m.map(a);
    }
    return Representation(std::move(target_rq), m.field(), std::move(dims), std::move(maps));
}

// extension by zero along the inclusion of the Qtilde component into P; the
// canonical home of orbit objects is the P picture
Representation to_p_picture(const Representation& m) {
    const CoveringQuiver& c = m.quiver().cover();
    if (c.kind() == CoveringQuiver::Kind::P)
        return m;
    CoveringQuiver pw = build_p_window(c.base(), c.jmin(), c.jmax());
    return embed(m, pw, RepQuiver::from_covering(pw));
}

Representation pull_back_widening(const Representation& m, long long k) {
    if (k == 0)
        return m;
    try {
        return pull_back(m, k);
    } catch (const window_error& e) {
        const CoveringQuiver& c = m.quiver().cover();
        long long lo = std::min(c.jmin(), e.needed_jmin);
        long long hi = std::max(c.jmax(), e.needed_jmax);
        if (hi - lo + 1 > kWindowCap)
            throw;
        return pull_back(rewindow(m, c.rewindow(lo, hi)), k);
    }
}

// both representations over one covering window, with `headroom` extra
// levels so that small pull-backs stay inside
std::pair<Representation, Representation> align(const Representation& a, const Representation& b,
                                                long long headroom) {
    if (!a.quiver().leveled() || !b.quiver().leveled()) {
        if (a.quiver().leveled() != b.quiver().leveled())
            throw precondition_error("cannot mix window and plain-quiver representations");
        if (!a.quiver().structurally_equal(b.quiver()))
            throw precondition_error("representations live on different quivers");
        return {a, b};
    }
    const CoveringQuiver& ca = a.quiver().cover();
    const CoveringQuiver& cb = b.quiver().cover();
    if (ca.kind() != cb.kind() || !ca.base().structurally_equal(cb.base()))
        throw precondition_error("representations live on different coverings");
    long long lo = std::min(ca.jmin(), cb.jmin()) - headroom;
    long long hi = std::max(ca.jmax(), cb.jmax()) + headroom;
    if (hi - lo + 1 > kWindowCap)
        throw window_error("aligned window would exceed the cap", lo, hi);
    CoveringQuiver window = ca.rewindow(lo, hi);
    return {rewindow(a, window), rewindow(b, window)};
}

} // namespace

OrbitObject canonicalize(const OrbitObject& x) {
    if (!x.rep.quiver().leveled())
        throw precondition_error("orbit objects require a covering-window representation");
    return {pull_back_widening(to_p_picture(x.rep), x.shift), 0};
}

long long orbit_hom_dim(const OrbitObject& x, const OrbitObject& y) {
    OrbitObject cx = canonicalize(x), cy = canonicalize(y);
    long long headroom = 1;
    if (cx.rep.quiver().leveled())
        headroom += cx.rep.quiver().cover().base().max_abs_step();
    auto [m, n] = align(cx.rep, cy.rep, headroom);
    long long h = hom_dim(m, n);
    long long e = ext1_dim(m, pull_back(n, -1));
    return h + e;
}

namespace {

struct Resolution {
    Representation kernel;  // the syzygy, projective since the window is hereditary
    Representation cover;
    std::vector<Mat> incl;  // kernel_v -> cover_v
};

// apply the arrow maps of m along a path (list of arrow indices)
Mat apply_path(const Representation& m, const std::vector<int>& path, const Mat& vec) {
    Field f(m.field());
    Mat cur = vec;
    for (int a : path)
        cur = mat_mul(m.map(a), cur, f);
    return cur;
}

std::vector<std::vector<int>> enumerate_paths_from(const RepQuiver& q, int v) {
    std::vector<std::vector<int>> all{{}};
    std::vector<std::pair<int, std::vector<int>>> frontier{{v, {}}};
    while (!frontier.empty()) {
        std::vector<std::pair<int, std::vector<int>>> next;
        for (const auto& [w, path] : frontier)
            for (int a = 0; a < q.arrow_count(); ++a) {
                if (q.arrow(a).src != w)
                    continue;
                auto ext = path;
                ext.push_back(a);
                next.emplace_back(q.arrow(a).tgt, ext);
            }
        for (const auto& e : next)
            all.push_back(e.second);
        if (all.size() > 500000)
            throw precondition_error("path explosion in projective resolution");
        frontier = std::move(next);
    }
    return all;
}

int path_end(const RepQuiver& q, int v, const std::vector<int>& path) {
    for (int a : path)
        v = q.arrow(a).tgt;
    return v;
}

Resolution resolve(const Representation& m) {
    const RepQuiver& q = m.quiver();
    Field f(m.field());
    auto topo = q.topological_order();

    // top generators: standard vectors completing the sum of incoming images
    struct Gen {
        int vertex;
        Mat vec; // dim m_v x 1
    };
    std::vector<Gen> gens;
    for (int v : topo) {
        if (m.dim(v) == 0)
            continue;
        int incoming_cols = 0;
        for (int a = 0; a < q.arrow_count(); ++a)
            if (q.arrow(a).tgt == v)
                incoming_cols += m.dim(q.arrow(a).src);
        Mat stacked(m.dim(v), incoming_cols);
        int off = 0;
        for (int a = 0; a < q.arrow_count(); ++a) {
            if (q.arrow(a).tgt != v)
                continue;
            for (int i = 0; i < m.dim(v); ++i)
                for (int j = 0; j < m.dim(q.arrow(a).src); ++j)
                    stacked.at(i, off + j) = m.map(a).at(i, j);
            off += m.dim(q.arrow(a).src);
        }
        int base_rank = rank(stacked, f);
        Mat probe = stacked;
        for (int e = 0; e < m.dim(v) && base_rank < m.dim(v); ++e) {
            Mat trial(m.dim(v), probe.cols() + 1);
            for (int i = 0; i < m.dim(v); ++i)
                for (int j = 0; j < probe.cols(); ++j)
                    trial.at(i, j) = probe.at(i, j);
            trial.at(e, probe.cols()) = 1;
            if (rank(trial, f) > base_rank) {
                ++base_rank;
                probe = trial;
                Mat g(m.dim(v), 1);
                g.at(e, 0) = 1;
                gens.push_back({v, std::move(g)});
            }
        }
    }

    // cover: one projective per generator, fibre basis = paths from its vertex
    std::vector<std::vector<std::vector<int>>> paths; // per generator
    paths.reserve(gens.size());
    for (const auto& g : gens)
        paths.push_back(enumerate_paths_from(q, g.vertex));

    // fibre entries at w: (generator index, path index), ordered
    std::vector<std::vector<std::pair<int, int>>> fibre(q.vertex_count());
    for (size_t gi = 0; gi < gens.size(); ++gi)
        for (size_t pk = 0; pk < paths[gi].size(); ++pk)
            fibre[path_end(q, gens[gi].vertex, paths[gi][pk])].emplace_back(static_cast<int>(gi),
                                                                            static_cast<int>(pk));
    DimensionVector p0dims(q.vertex_count(), 0);
    for (int w = 0; w < q.vertex_count(); ++w)
        p0dims[w] = static_cast<int>(fibre[w].size());
    std::map<std::pair<int, std::vector<int>>, int> slot; // (gen, path) -> fibre position
    for (int w = 0; w < q.vertex_count(); ++w)
        for (size_t i = 0; i < fibre[w].size(); ++i) {
            auto [gi, pk] = fibre[w][i];
            slot[{gi, paths[gi][pk]}] = static_cast<int>(i);
        }

    std::map<int, Mat> p0maps;
    for (int a = 0; a < q.arrow_count(); ++a) {
        int s = q.arrow(a).src, t = q.arrow(a).tgt;
        if (p0dims[s] == 0 || p0dims[t] == 0)
            continue;
        Mat mat(p0dims[t], p0dims[s]);
        for (size_t i = 0; i < fibre[s].size(); ++i) {
            auto [gi, pk] = fibre[s][i];
            auto ext = paths[gi][pk];
            ext.push_back(a);
            mat.at(slot[{gi, ext}], static_cast<int>(i)) = 1;
        }
        p0maps[a] = std::move(mat);
    }
    Representation p0(m.quiver_ptr(), m.field(), p0dims, std::move(p0maps));

    // the counit P0 -> M evaluates each path on its generator
    std::vector<Mat> proj(q.vertex_count());
    for (int w = 0; w < q.vertex_count(); ++w) {
        Mat pw(m.dim(w), p0dims[w]);
        for (size_t i = 0; i < fibre[w].size(); ++i) {
            auto [gi, pk] = fibre[w][i];
            Mat val = apply_path(m, paths[gi][pk], gens[gi].vec);
            for (int r = 0; r < m.dim(w); ++r)
                pw.at(r, static_cast<int>(i)) = val.at(r, 0);
        }
        if (rank(pw, f) != m.dim(w))
            throw std::logic_error("projective cover is not surjective");
        proj[w] = std::move(pw);
    }

    std::vector<Mat> incl(q.vertex_count());
    for (int w = 0; w < q.vertex_count(); ++w)
        incl[w] = nullspace(proj[w], f);
    Representation ker = subrepresentation(p0, incl);
    if (ker.total_dim() != p0.total_dim() - m.total_dim())
        throw std::logic_error("projective resolution is not exact");
    return {std::move(ker), std::move(p0), std::move(incl)};
}

Mat hom_space_matrix(const HomBasis& h) {
    int ambient = 0;
    if (!h.elements.empty())
        for (const auto& blk : h.elements.front())
            ambient += blk.rows() * blk.cols();
    Mat mat(ambient, h.dim);
    for (int k = 0; k < h.dim; ++k) {
        int off = 0;
        for (const auto& blk : h.elements[k])
            for (int i = 0; i < blk.rows(); ++i)
                for (int j = 0; j < blk.cols(); ++j)
                    mat.at(off++, k) = blk.at(i, j);
    }
    return mat;
}

Mat flatten(const std::vector<Mat>& blocks) {
    int ambient = 0;
    for (const auto& blk : blocks)
        ambient += blk.rows() * blk.cols();
    Mat v(ambient, 1);
    int off = 0;
    for (const auto& blk : blocks)
        for (int i = 0; i < blk.rows(); ++i)
            for (int j = 0; j < blk.cols(); ++j)
                v.at(off++, 0) = blk.at(i, j);
    return v;
}

Mat coords_in(const Mat& basis_mat, const std::vector<Mat>& element, const Field& f) {
    if (basis_mat.cols() == 0) {
        if (!flatten(element).is_zero())
            throw std::logic_error("morphism outside the computed hom space");
        return Mat(0, 1);
    }
    auto x = solve(basis_mat, flatten(element), f);
    if (!x)
        throw std::logic_error("morphism outside the computed hom space");
    return *x;
}

std::vector<Mat> compose_blocks(const std::vector<Mat>& second, const std::vector<Mat>& first,
                                const Field& f) {
    std::vector<Mat> out;
    out.reserve(first.size());
    for (size_t v = 0; v < first.size(); ++v)
        out.push_back(mat_mul(second[v], first[v], f));
    return out;
}

} // namespace

long long derived_hom_dim(const Representation& m, const Representation& n, int p) {
    // the Hom complex of two-term complexes is concentrated in degrees -1..1
    if (p < -1 || p > 1)
        return 0;
    Field f(m.field());
    Resolution rm = resolve(m), rn = resolve(n);

    HomBasis a = hom_basis(rm.cover, rn.kernel);
    HomBasis b1 = hom_basis(rm.kernel, rn.kernel);
    HomBasis b2 = hom_basis(rm.cover, rn.cover);
    HomBasis c = hom_basis(rm.kernel, rn.cover);
    Mat b1mat = hom_space_matrix(b1), b2mat = hom_space_matrix(b2), cmat = hom_space_matrix(c);

    // d^{-1}(f) = (f . incl_M, incl_N . f)
    Mat dminus(b1.dim + b2.dim, a.dim);
    for (int k = 0; k < a.dim; ++k) {
        Mat c1 = coords_in(b1mat, compose_blocks(a.elements[k], rm.incl, f), f);
        Mat c2 = coords_in(b2mat, compose_blocks(rn.incl, a.elements[k], f), f);
        for (int i = 0; i < b1.dim; ++i)
            dminus.at(i, k) = c1.at(i, 0);
        for (int i = 0; i < b2.dim; ++i)
            dminus.at(b1.dim + i, k) = c2.at(i, 0);
    }
    // d^0(g1, g2) = incl_N . g1 - g2 . incl_M
    Mat dzero(c.dim, b1.dim + b2.dim);
    for (int k = 0; k < b1.dim; ++k) {
        Mat col = coords_in(cmat, compose_blocks(rn.incl, b1.elements[k], f), f);
        for (int i = 0; i < c.dim; ++i)
            dzero.at(i, k) = col.at(i, 0);
    }
    for (int k = 0; k < b2.dim; ++k) {
        Mat col = coords_in(cmat, compose_blocks(b2.elements[k], rm.incl, f), f);
        for (int i = 0; i < c.dim; ++i)
            dzero.at(i, b1.dim + k) = f.neg(col.at(i, 0));
    }
    if (a.dim > 0 && !mat_mul(dzero, dminus, f).is_zero())
        throw std::logic_error("Hom complex differential does not square to zero");

    int rank_dm = rank(dminus, f);
    int rank_d0 = rank(dzero, f);
    switch (p) {
    case -1: return a.dim - rank_dm;
    case 0: return (b1.dim + b2.dim - rank_d0) - rank_dm;
    default: return c.dim - rank_d0;
    }
}

long long brute_orbit_hom(const OrbitObject& x, const OrbitObject& y, int bound) {
    if (bound < 0)
        throw precondition_error("brute_orbit_hom: bound must be nonnegative");
    OrbitObject cx = canonicalize(x), cy = canonicalize(y);
    long long headroom = bound + 1;
    if (cx.rep.quiver().leveled())
        headroom += cx.rep.quiver().cover().base().max_abs_step();
    auto [m, n] = align(cx.rep, cy.rep, headroom);
    long long total = 0;
    for (int p = -bound; p <= bound; ++p)
        total += derived_hom_dim(m, pull_back(n, -p), p);
    return total;
}

bool orbit_iso(const OrbitObject& x, const OrbitObject& y) {
    OrbitObject cx = canonicalize(x), cy = canonicalize(y);
    auto [m, n] = align(cx.rep, cy.rep, 0);
    if (m.dims() != n.dims())
        return false;
    if (m.is_zero())
        return true;
    Decomposition dm = decompose(m), dn = decompose(n);
    if (dm.summands.size() != dn.summands.size())
        return false;
    std::vector<bool> used(dn.summands.size(), false);
    for (const auto& sa : dm.summands) {
        bool matched = false;
        for (size_t i = 0; i < dn.summands.size(); ++i) {
            if (used[i])
                continue;
            if (indec_iso(sa, dn.summands[i])) {
                used[i] = true;
                matched = true;
                break;
            }
        }
        if (!matched)
            return false;
    }
    return true;
}

TransportReport verify_transport(const GradedQuiver& q, long long jmin, long long jmax,
                                 int max_shift) {
    if (!q.connected())
        throw precondition_error("verify_transport requires a connected quiver");
    TransportReport report;
    long long r = grading_period(q);
    report.grading_period = r;
    FieldSpec field = FieldSpec::rationals();

    CoveringQuiver qt = build_q_tilde(q, q.vertex_id(0), jmin, jmax);
    auto rq_t = RepQuiver::from_covering(qt);
    long long head = std::max<long long>(max_shift + 1, q.max_abs_step() + 1);
    CoveringQuiver pw = build_p_window(q, jmin - head, jmax + head);
    auto rq_p = RepQuiver::from_covering(pw);

    // samples: simples and window projectives based at middle-third vertices
    long long width = jmax - jmin + 1;
    long long mid_lo = jmin + width / 3, mid_hi = jmax - width / 3;
    std::vector<std::pair<std::string, Representation>> samples;
    for (int v = 0; v < qt.vertex_count(); ++v) {
        if (qt.vertex(v).level < mid_lo || qt.vertex(v).level > mid_hi)
            continue;
        samples.emplace_back("S(" + qt.vertex_name(v) + ")", simple_rep(rq_t, v, field));
        Representation proj = projective_rep(rq_t, v, field);
        if (proj.total_dim() > 1)
            samples.emplace_back("P(" + qt.vertex_name(v) + ")", proj);
    }

    for (const auto& [xname, xrep] : samples)
        for (const auto& [yname, yrep] : samples)
            for (long long a = -max_shift; a <= max_shift; ++a) {
                // P picture: hom(M, pull N by a) + ext1(M, pull N by a-1)
                Representation mp = embed(xrep, pw, rq_p);
                Representation np = embed(yrep, pw, rq_p);
                long long lhs = hom_dim(mp, pull_back(np, a)) +
                                ext1_dim(mp, pull_back(np, a - 1));

                // Qtilde picture: p-summands with a + r p in {0,1}
                long long rhs = 0;
                if (r == 0) {
                    if (a == 0)
                        rhs = hom_dim(xrep, yrep);
                    else if (a == 1)
                        rhs = ext1_dim(xrep, yrep);
                } else {
                    for (long long target : {0LL, 1LL}) {
                        if ((target - a) % r != 0)
                            continue;
                        long long p = (target - a) / r;
                        Representation pulled = pull_back_widening(yrep, -r * p);
                        auto [mm, nn] = align(xrep, pulled, q.max_abs_step() + 1);
                        rhs += target == 0 ? hom_dim(mm, nn) : ext1_dim(mm, nn);
                    }
                }
                TransportLine line;
                std::ostringstream d;
                d << "hom(" << xname << ", Sigma^" << a << " " << yname << ")";
                line.description = d.str();
                line.lhs = lhs;
                line.rhs = rhs;
                line.ok = lhs == rhs;
                if (!line.ok)
                    report.ok = false;
                report.lines.push_back(std::move(line));
            }
    return report;
}

} // namespace rsz
