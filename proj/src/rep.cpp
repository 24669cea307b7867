#include "rsz/rep.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace rsz {

unsigned long long decomposition_seed() {
    static unsigned long long seed = [] {
        const char* env = std::getenv("RSZ_SEED");
        if (!env)
            return 0xD5EEDULL;
        return std::strtoull(env, nullptr, 0);
    }();
    return seed;
}

std::shared_ptr<const RepQuiver> RepQuiver::from_graded(const GradedQuiver& q) {
    auto rq = std::make_shared<RepQuiver>();
    rq->name_ = q.name();
    rq->vertex_ids_ = q.vertices();
    for (const auto& a : q.arrows())
        rq->arrows_.push_back({a.id, a.src, a.tgt});
    for (int v = 0; v < rq->vertex_count(); ++v)
        rq->vertex_by_id_[rq->vertex_ids_[v]] = v;
    for (int a = 0; a < rq->arrow_count(); ++a)
        rq->arrow_by_id_[rq->arrows_[a].id] = a;
    return rq;
}

std::shared_ptr<const RepQuiver> RepQuiver::from_covering(const CoveringQuiver& c) {
    auto rq = std::make_shared<RepQuiver>();
    rq->cover_ = std::make_shared<CoveringQuiver>(c);
    rq->name_ = c.base().name() + (c.kind() == CoveringQuiver::Kind::P ? "_P" : "_Qtilde");
    for (int v = 0; v < c.vertex_count(); ++v)
        rq->vertex_ids_.push_back(c.vertex_name(v));
    for (int a = 0; a < c.arrow_count(); ++a)
        rq->arrows_.push_back({c.arrow_name(a), c.arrow_source(a), c.arrow_target(a)});
    for (int v = 0; v < rq->vertex_count(); ++v)
        rq->vertex_by_id_[rq->vertex_ids_[v]] = v;
    for (int a = 0; a < rq->arrow_count(); ++a)
        rq->arrow_by_id_[rq->arrows_[a].id] = a;
    return rq;
}

int RepQuiver::find_vertex(const std::string& id) const {
    auto it = vertex_by_id_.find(id);
    return it == vertex_by_id_.end() ? -1 : it->second;
}

int RepQuiver::find_arrow(const std::string& id) const {
    auto it = arrow_by_id_.find(id);
    return it == arrow_by_id_.end() ? -1 : it->second;
}

const CoveringQuiver& RepQuiver::cover() const {
    if (!cover_)
        throw precondition_error("representation quiver has no covering window structure");
    return *cover_;
}

long long RepQuiver::level(int v) const { return cover().vertex(v).level; }
int RepQuiver::base_vertex(int v) const { return cover().vertex(v).base_vertex; }

std::vector<int> RepQuiver::topological_order() const {
    std::vector<int> indeg(vertex_count(), 0);
    for (const auto& a : arrows_)
        ++indeg[a.tgt];
    std::vector<int> order;
    for (int v = 0; v < vertex_count(); ++v)
        if (indeg[v] == 0)
            order.push_back(v);
    for (size_t k = 0; k < order.size(); ++k)
        for (const auto& a : arrows_)
            if (a.src == order[k] && --indeg[a.tgt] == 0)
                order.push_back(a.tgt);
    if (static_cast<int>(order.size()) != vertex_count())
        throw precondition_error("quiver '" + name_ + "' has an oriented cycle");
    return order;
}

bool RepQuiver::acyclic() const {
    try {
        topological_order();
        return true;
    } catch (const precondition_error&) {
        return false;
    }
}

bool RepQuiver::structurally_equal(const RepQuiver& o) const {
    if (vertex_ids_ != o.vertex_ids_ || arrows_.size() != o.arrows_.size())
        return false;
    for (size_t a = 0; a < arrows_.size(); ++a)
        if (arrows_[a].id != o.arrows_[a].id || arrows_[a].src != o.arrows_[a].src ||
            arrows_[a].tgt != o.arrows_[a].tgt)
            return false;
    return true;
}

Representation::Representation(std::shared_ptr<const RepQuiver> quiver, FieldSpec field,
                               DimensionVector dims, std::map<int, Mat> maps)
    : quiver_(std::move(quiver)), field_(field), dims_(std::move(dims)) {
    if (static_cast<int>(dims_.size()) != quiver_->vertex_count())
        throw precondition_error("dimension vector size does not match the quiver");
    for (int d : dims_)
        if (d < 0)
            throw precondition_error("negative dimension");
    Field f(field_);
    maps_.reserve(quiver_->arrow_count());
    for (int a = 0; a < quiver_->arrow_count(); ++a) {
        int r = dims_[quiver_->arrow(a).tgt], c = dims_[quiver_->arrow(a).src];
        auto it = maps.find(a);
        if (it == maps.end()) {
            maps_.emplace_back(r, c);
            continue;
        }
        if (it->second.rows() != r || it->second.cols() != c)
            throw precondition_error("matrix for arrow '" + quiver_->arrow(a).id +
                             "' has shape " + std::to_string(it->second.rows()) + "x" +
                             std::to_string(it->second.cols()) + ", expected " + std::to_string(r) +
                             "x" + std::to_string(c));
        Mat m = it->second;
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                m.at(i, j) = f.norm(m.at(i, j));
        maps_.push_back(std::move(m));
    }
}

long long Representation::total_dim() const {
    long long t = 0;
    for (int d : dims_)
        t += d;
    return t;
}

Representation zero_rep(std::shared_ptr<const RepQuiver> q, FieldSpec f) {
    DimensionVector d(q->vertex_count(), 0);
    return Representation(std::move(q), f, std::move(d), {});
}

Representation simple_rep(std::shared_ptr<const RepQuiver> q, int vertex, FieldSpec f) {
    DimensionVector d(q->vertex_count(), 0);
    d.at(vertex) = 1;
    return Representation(std::move(q), f, std::move(d), {});
}

Representation thin_rep(std::shared_ptr<const RepQuiver> q, const std::vector<int>& support,
                        FieldSpec f) {
    DimensionVector d(q->vertex_count(), 0);
    for (int v : support)
        d.at(v) = 1;
    std::map<int, Mat> maps;
    for (int a = 0; a < q->arrow_count(); ++a)
        if (d[q->arrow(a).src] == 1 && d[q->arrow(a).tgt] == 1)
            maps[a] = Mat::identity(1);
    return Representation(std::move(q), f, std::move(d), std::move(maps));
}

namespace {

// all directed paths from v, as arrow sequences ordered by (length, lex)
std::vector<std::vector<int>> paths_from(const RepQuiver& q, int v) {
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
        for (const auto& [w, path] : next)
            all.push_back(path);
        if (all.size() > 200000)
            throw precondition_error("path explosion while building a projective; quiver cyclic?");
        frontier = std::move(next);
    }
    return all;
}

int path_end(const RepQuiver& q, int v, const std::vector<int>& path) {
    for (int a : path)
        v = q.arrow(a).tgt;
    return v;
}

} // namespace

Representation projective_rep(std::shared_ptr<const RepQuiver> q, int vertex, FieldSpec f) {
    if (!q->acyclic())
        throw precondition_error("projective_rep requires an acyclic quiver");
    auto paths = paths_from(*q, vertex);
    // fibre basis at w: the paths vertex ~> w, in enumeration order
    std::vector<std::vector<int>> fibre(q->vertex_count()); // indices into `paths`
    for (size_t k = 0; k < paths.size(); ++k)
        fibre[path_end(*q, vertex, paths[k])].push_back(static_cast<int>(k));
    DimensionVector dims(q->vertex_count(), 0);
    for (int w = 0; w < q->vertex_count(); ++w)
        dims[w] = static_cast<int>(fibre[w].size());
    std::map<int, int> slot; // path index -> position in its fibre
    for (int w = 0; w < q->vertex_count(); ++w)
        for (size_t i = 0; i < fibre[w].size(); ++i)
            slot[fibre[w][i]] = static_cast<int>(i);
    std::map<std::vector<int>, int> path_index;
    for (size_t k = 0; k < paths.size(); ++k)
        path_index[paths[k]] = static_cast<int>(k);

    std::map<int, Mat> maps;
    for (int a = 0; a < q->arrow_count(); ++a) {
        int s = q->arrow(a).src, t = q->arrow(a).tgt;
        if (dims[s] == 0 || dims[t] == 0)
            continue;
        Mat m(dims[t], dims[s]);
        for (int pk : fibre[s]) {
            auto ext = paths[pk];
            ext.push_back(a);
            m.at(slot[path_index[ext]], slot[pk]) = 1;
        }
        maps[a] = std::move(m);
    }
    return Representation(std::move(q), f, std::move(dims), std::move(maps));
}

Representation direct_sum(const Representation& a, const Representation& b) {
    if (!a.quiver().structurally_equal(b.quiver()) || !(a.field() == b.field()))
        throw precondition_error("direct_sum: mismatched quiver or field");
    const RepQuiver& q = a.quiver();
    DimensionVector dims(q.vertex_count());
    for (int v = 0; v < q.vertex_count(); ++v)
        dims[v] = a.dim(v) + b.dim(v);
    std::map<int, Mat> maps;
    for (int ar = 0; ar < q.arrow_count(); ++ar) {
        int s = q.arrow(ar).src, t = q.arrow(ar).tgt;
        Mat m(dims[t], dims[s]);
        for (int i = 0; i < a.dim(t); ++i)
            for (int j = 0; j < a.dim(s); ++j)
                m.at(i, j) = a.map(ar).at(i, j);
        for (int i = 0; i < b.dim(t); ++i)
            for (int j = 0; j < b.dim(s); ++j)
                m.at(a.dim(t) + i, a.dim(s) + j) = b.map(ar).at(i, j);
        maps[ar] = std::move(m);
    }
    return Representation(a.quiver_ptr(), a.field(), std::move(dims), std::move(maps));
}

Representation extension_rep(const Representation& n, const Representation& m,
                             const std::map<int, Mat>& xi) {
    if (!n.quiver().structurally_equal(m.quiver()) || !(n.field() == m.field()))
        throw precondition_error("extension_rep: mismatched quiver or field");
    const RepQuiver& q = n.quiver();
    DimensionVector dims(q.vertex_count());
    for (int v = 0; v < q.vertex_count(); ++v)
        dims[v] = n.dim(v) + m.dim(v);
    std::map<int, Mat> maps;
    for (int a = 0; a < q.arrow_count(); ++a) {
        int s = q.arrow(a).src, t = q.arrow(a).tgt;
        Mat e(dims[t], dims[s]);
        for (int i = 0; i < n.dim(t); ++i)
            for (int j = 0; j < n.dim(s); ++j)
                e.at(i, j) = n.map(a).at(i, j);
        for (int i = 0; i < m.dim(t); ++i)
            for (int j = 0; j < m.dim(s); ++j)
                e.at(n.dim(t) + i, n.dim(s) + j) = m.map(a).at(i, j);
        if (auto it = xi.find(a); it != xi.end()) {
            if (it->second.rows() != n.dim(t) || it->second.cols() != m.dim(s))
                throw precondition_error("extension_rep: cocycle shape mismatch");
            for (int i = 0; i < n.dim(t); ++i)
                for (int j = 0; j < m.dim(s); ++j)
                    e.at(i, n.dim(s) + j) = it->second.at(i, j);
        }
        maps[a] = std::move(e);
    }
    return Representation(n.quiver_ptr(), n.field(), std::move(dims), std::move(maps));
}

namespace {

void require_comparable(const Representation& m, const Representation& n) {
    if (!m.quiver().structurally_equal(n.quiver()))
        throw precondition_error("representations live on different quivers");
    if (!(m.field() == n.field()))
        throw precondition_error("representations live over different fields");
}

} // namespace

HomBasis hom_basis(const Representation& m, const Representation& n) {
    require_comparable(m, n);
    const RepQuiver& q = m.quiver();
    Field f(m.field());

    std::vector<int> offset(q.vertex_count() + 1, 0);
    for (int v = 0; v < q.vertex_count(); ++v)
        offset[v + 1] = offset[v] + n.dim(v) * m.dim(v);
    int unknowns = offset[q.vertex_count()];

    int rows = 0;
    for (int a = 0; a < q.arrow_count(); ++a)
        rows += n.dim(q.arrow(a).tgt) * m.dim(q.arrow(a).src);

    // phi_t . M_a - N_a . phi_s = 0, unknowns phi_v[i][j] row-major
    Mat sys(rows, unknowns);
    int row0 = 0;
    for (int a = 0; a < q.arrow_count(); ++a) {
        int s = q.arrow(a).src, t = q.arrow(a).tgt;
        const Mat& ma = m.map(a);
        const Mat& na = n.map(a);
        for (int i = 0; i < n.dim(t); ++i)
            for (int j = 0; j < m.dim(s); ++j) {
                int row = row0 + i * m.dim(s) + j;
                for (int k = 0; k < m.dim(t); ++k)
                    sys.at(row, offset[t] + i * m.dim(t) + k) =
                        f.add(sys.at(row, offset[t] + i * m.dim(t) + k), ma.at(k, j));
                for (int k = 0; k < n.dim(s); ++k)
                    sys.at(row, offset[s] + k * m.dim(s) + j) =
                        f.sub(sys.at(row, offset[s] + k * m.dim(s) + j), na.at(i, k));
            }
        row0 += n.dim(t) * m.dim(s);
    }

    Mat ker = nullspace(sys, f);
    HomBasis out;
    out.dim = ker.cols();
    for (int k = 0; k < ker.cols(); ++k) {
        std::vector<Mat> blocks;
        blocks.reserve(q.vertex_count());
        for (int v = 0; v < q.vertex_count(); ++v) {
            Mat b(n.dim(v), m.dim(v));
            for (int i = 0; i < n.dim(v); ++i)
                for (int j = 0; j < m.dim(v); ++j)
                    b.at(i, j) = ker.at(offset[v] + i * m.dim(v) + j, k);
            blocks.push_back(std::move(b));
        }
        out.elements.push_back(std::move(blocks));
    }
    return out;
}

int hom_dim(const Representation& m, const Representation& n) {
    return hom_basis(m, n).dim;
}

long long euler_form(const RepQuiver& q, const DimensionVector& d, const DimensionVector& e) {
    if (!q.acyclic())
        throw precondition_error("euler_form requires an acyclic quiver");
    long long val = 0;
    for (int v = 0; v < q.vertex_count(); ++v)
        val = checked_add(val, checked_mul(d.at(v), e.at(v)));
    for (int a = 0; a < q.arrow_count(); ++a)
        val = checked_add(val, -checked_mul(d.at(q.arrow(a).src), e.at(q.arrow(a).tgt)));
    return val;
}

int ext1_dim(const Representation& m, const Representation& n) {
    long long e = hom_dim(m, n) - euler_form(m.quiver(), m.dims(), n.dims());
    if (e < 0)
        throw std::logic_error("ext1_dim came out negative; hereditary identity violated");
    return static_cast<int>(e);
}

Representation pull_back(const Representation& m, long long k) {
    const RepQuiver& q = m.quiver();
    const CoveringQuiver& c = q.cover();
    DimensionVector dims(q.vertex_count(), 0);
    long long need_lo = c.jmin(), need_hi = c.jmax();
    bool exits = false;
    for (int v = 0; v < q.vertex_count(); ++v) {
        if (m.dim(v) == 0)
            continue;
        long long nj = checked_add(c.vertex(v).level, -k);
        int w = c.find_vertex(c.vertex(v).base_vertex, nj);
        if (w < 0) {
            exits = true;
            need_lo = std::min(need_lo, nj);
            need_hi = std::max(need_hi, nj);
        } else {
            dims[w] = m.dim(v);
        }
    }
    if (exits)
        throw window_error("pull_back(" + std::to_string(k) + ") leaves the window [" +
                               std::to_string(c.jmin()) + "," + std::to_string(c.jmax()) + "]",
                           need_lo, need_hi);
    std::map<int, Mat> maps;
    for (int a = 0; a < q.arrow_count(); ++a) {
        int s = q.arrow(a).src, t = q.arrow(a).tgt;
        if (dims[s] == 0 || dims[t] == 0)
            continue;
        int old_a = c.find_arrow(c.arrow(a).base_arrow, checked_add(c.arrow(a).level, k));
        if (old_a < 0)
            throw std::logic_error("pull_back: source arrow missing despite support fitting");
        maps[a] = m.map(old_a);
    }
    return Representation(m.quiver_ptr(), m.field(), std::move(dims), std::move(maps));
}

Representation rewindow(const Representation& m, const CoveringQuiver& wider) {
    const CoveringQuiver& c = m.quiver().cover();
    if (&wider.base() != &c.base() && !wider.base().structurally_equal(c.base()))
        throw precondition_error("rewindow: different base quiver");
    if (wider.kind() != c.kind())
        throw precondition_error("rewindow: different covering kind");
    auto rq = RepQuiver::from_covering(wider);
    DimensionVector dims(rq->vertex_count(), 0);
    for (int v = 0; v < m.quiver().vertex_count(); ++v) {
        if (m.dim(v) == 0)
            continue;
        int w = wider.find_vertex(c.vertex(v).base_vertex, c.vertex(v).level);
        if (w < 0)
            throw window_error("rewindow: support vertex " + m.quiver().vertex_id(v) +
                                   " not in the new window",
                               c.vertex(v).level, c.vertex(v).level);
        dims[w] = m.dim(v);
    }
    std::map<int, Mat> maps;
    for (int a = 0; a < m.quiver().arrow_count(); ++a) {
        int s = m.quiver().arrow(a).src, t = m.quiver().arrow(a).tgt;
        if (m.dim(s) == 0 || m.dim(t) == 0 || m.map(a).is_zero())
            continue;
        int na = wider.find_arrow(c.arrow(a).base_arrow, c.arrow(a).level);
        if (na < 0)
            throw std::logic_error("rewindow: arrow with supported endpoints missing");
        maps[na] = m.map(a);
    }
    return Representation(std::move(rq), m.field(), std::move(dims), std::move(maps));
}

namespace {

using Endo = std::vector<Mat>; // square block per vertex

Endo endo_identity(const Representation& m) {
    Endo e;
    for (int v = 0; v < m.quiver().vertex_count(); ++v)
        e.push_back(Mat::identity(m.dim(v)));
    return e;
}

Endo endo_add(const Endo& a, const Endo& b, const Field& f) {
    Endo r;
    for (size_t v = 0; v < a.size(); ++v)
        r.push_back(mat_add(a[v], b[v], f));
    return r;
}

Endo endo_shift(const Endo& a, const mpq_class& lambda, const Field& f) {
    Endo r;
    for (const auto& blk : a) {
        Mat m = blk;
        for (int i = 0; i < m.rows(); ++i)
            m.at(i, i) = f.sub(m.at(i, i), lambda);
        r.push_back(std::move(m));
    }
    return r;
}

struct Split {
    bool found = false;
    std::vector<Mat> ker, im; // per-vertex column bases
};

Split fitting_split(const Representation& m, const Endo& e) {
    Field f(m.field());
    unsigned long long d = static_cast<unsigned long long>(m.total_dim());
    Split s;
    long long kdim = 0, idim = 0;
    for (int v = 0; v < m.quiver().vertex_count(); ++v) {
        Mat p = mat_pow(e[v], d, f);
        s.ker.push_back(nullspace(p, f));
        s.im.push_back(column_space_basis(p, f));
        kdim += s.ker.back().cols();
        idim += s.im.back().cols();
    }
    s.found = kdim > 0 && idim > 0;
    return s;
}

} // namespace

// restrict m to the invariant subspaces given by per-vertex column bases
Representation subrepresentation(const Representation& m, const std::vector<Mat>& basis) {
    Field f(m.field());
    DimensionVector dims(m.quiver().vertex_count());
    for (int v = 0; v < m.quiver().vertex_count(); ++v)
        dims[v] = basis[v].cols();
    std::map<int, Mat> maps;
    for (int a = 0; a < m.quiver().arrow_count(); ++a) {
        int s = m.quiver().arrow(a).src, t = m.quiver().arrow(a).tgt;
        if (dims[s] == 0)
            continue;
        Mat img = mat_mul(m.map(a), basis[s], f);
        if (dims[t] == 0) {
            if (!img.is_zero())
                throw std::logic_error("subrep: subspace not invariant under the arrow maps");
            continue;
        }
        auto x = solve(basis[t], img, f);
        if (!x)
            throw std::logic_error("subrep: subspace not invariant under the arrow maps");
        maps[a] = *x;
    }
    return Representation(m.quiver_ptr(), m.field(), std::move(dims), std::move(maps));
}

namespace {

std::vector<long long> small_divisors(const mpz_class& z) {
    std::vector<long long> out;
    if (z == 0)
        return out;
    mpz_class a = abs(z);
    if (!a.fits_slong_p() || a.get_si() > 1000000000LL)
        return out;
    long long n = a.get_si();
    for (long long d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            out.push_back(n / d);
        }
    return out;
}

// rational eigenvalue candidates of a block endomorphism (rationals only)
std::vector<mpq_class> eigen_candidates(const Endo& e) {
    int total = 0;
    for (const auto& blk : e)
        total += blk.rows();
    if (total == 0 || total > 24)
        return {mpq_class(0)};
    Mat big(total, total);
    int off = 0;
    for (const auto& blk : e) {
        for (int i = 0; i < blk.rows(); ++i)
            for (int j = 0; j < blk.cols(); ++j)
                big.at(off + i, off + j) = blk.at(i, j);
        off += blk.rows();
    }
    auto poly = charpoly_rational(big);
    mpz_class denlcm(1);
    for (const auto& c : poly)
        mpz_lcm(denlcm.get_mpz_t(), denlcm.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<mpz_class> ip;
    for (const auto& c : poly) {
        mpq_class scaled = c * mpq_class(denlcm);
        ip.push_back(scaled.get_num());
    }
    while (!ip.empty() && ip.front() == 0)
        ip.erase(ip.begin()); // root 0 is always tried separately
    if (ip.empty())
        return {mpq_class(0)};
    std::set<mpq_class> cands{mpq_class(0)};
    for (long long a : small_divisors(ip.front()))
        for (long long b : small_divisors(ip.back()))
            for (int sign : {1, -1}) {
                // divisors are capped at 1e9, so long is exact here
                mpq_class lam(static_cast<long>(sign * a), static_cast<long>(b));
                lam.canonicalize();
                cands.insert(lam);
            }
    return {cands.begin(), cands.end()};
}

std::vector<mpq_class> lambda_candidates(const Representation& m, const Endo& e) {
    if (m.field().kind == FieldSpec::Kind::rationals)
        return eigen_candidates(e);
    if (m.field().p <= 64) {
        std::vector<mpq_class> all;
        for (unsigned v = 0; v < m.field().p; ++v)
            all.emplace_back(v);
        return all;
    }
    return {mpq_class(0)};
}

struct SearchResult {
    IndecStatus status;
    Split split;
};

Endo endo_mul(const Endo& a, const Endo& b, const Field& f) {
    Endo r;
    for (size_t v = 0; v < a.size(); ++v)
        r.push_back(mat_mul(a[v], b[v], f));
    return r;
}

Mat endo_flatten(const Endo& e) {
    int total = 0;
    for (const auto& blk : e)
        total += blk.rows() * blk.cols();
    Mat v(total, 1);
    int off = 0;
    for (const auto& blk : e)
        for (int i = 0; i < blk.rows(); ++i)
            for (int j = 0; j < blk.cols(); ++j)
                v.at(off++, 0) = blk.at(i, j);
    return v;
}

// roots in the field of t^2 - c1 t - c0
std::vector<mpq_class> quadratic_roots(const mpq_class& c1, const mpq_class& c0, const Field& f) {
    std::vector<mpq_class> roots;
    if (f.is_prime_field()) {
        for (unsigned v = 0; v < f.p(); ++v) {
            mpq_class lam(v);
            if (f.sub(f.mul(lam, lam), f.add(f.mul(c1, lam), c0)) == 0)
                roots.push_back(lam);
        }
        return roots;
    }
    mpq_class disc = c1 * c1 + 4 * c0;
    if (disc < 0)
        return roots;
    // a canonical rational is a square iff numerator and denominator are
    if (mpz_perfect_square_p(disc.get_num().get_mpz_t()) == 0 ||
        mpz_perfect_square_p(disc.get_den().get_mpz_t()) == 0)
        return roots;
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), disc.get_num().get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), disc.get_den().get_mpz_t());
    mpq_class s(sn, sd);
    s.canonicalize();
    roots.push_back((c1 + s) / 2);
    if (s != 0)
        roots.push_back((c1 - s) / 2);
    return roots;
}

// Exact decision when End(M) = k[e] is two-dimensional: M is decomposable
// iff the minimal polynomial of e has two distinct roots in the field.
std::optional<SearchResult> decide_end_dim_two(const Representation& m, const HomBasis& end,
                                               const Field& f) {
    Endo id = endo_identity(m);
    Mat id_vec = endo_flatten(id);
    const Endo* e = nullptr;
    for (const auto& cand : end.elements) {
        // pick a basis element that is not a multiple of the identity
        Mat cand_vec = endo_flatten(cand);
        Mat sys(id_vec.rows(), 1);
        for (int i = 0; i < id_vec.rows(); ++i)
            sys.at(i, 0) = id_vec.at(i, 0);
        if (!solve(sys, cand_vec, f)) {
            e = &cand;
            break;
        }
    }
    if (!e)
        return std::nullopt; // cannot happen for end.dim == 2
    Endo e2 = endo_mul(*e, *e, f);
    Mat lhs(id_vec.rows(), 2);
    Mat evec = endo_flatten(*e);
    for (int i = 0; i < id_vec.rows(); ++i) {
        lhs.at(i, 0) = id_vec.at(i, 0);
        lhs.at(i, 1) = evec.at(i, 0);
    }
    auto coeffs = solve(lhs, endo_flatten(e2), f);
    if (!coeffs)
        throw std::logic_error("two-dimensional endomorphism algebra is not closed");
    mpq_class c0 = coeffs->at(0, 0), c1 = coeffs->at(1, 0);
    for (const auto& lam : quadratic_roots(c1, c0, f)) {
        Split s = fitting_split(m, endo_shift(*e, lam, f));
        if (s.found)
            return SearchResult{IndecStatus::decomposable, std::move(s)};
    }
    // no split at any eigenvalue: k[e] is local
    return SearchResult{IndecStatus::indecomposable, {}};
}

SearchResult search_split(const Representation& m, unsigned long long seed) {
    Field f(m.field());
    HomBasis end = hom_basis(m, m);
    if (end.dim == 1)
        return {IndecStatus::indecomposable, {}};

    std::mt19937_64 rng(seed);
    std::vector<int> order(end.dim);
    for (int i = 0; i < end.dim; ++i)
        order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<Endo> candidates;
    for (int i : order)
        candidates.push_back(end.elements[i]);
    for (size_t i = 0; i < order.size(); ++i)
        for (size_t j = i + 1; j < order.size(); ++j)
            candidates.push_back(endo_add(end.elements[order[i]], end.elements[order[j]], f));

    for (const auto& cand : candidates)
        for (const auto& lam : lambda_candidates(m, cand)) {
            Split s = fitting_split(m, endo_shift(cand, lam, f));
            if (s.found)
                return {IndecStatus::decomposable, std::move(s)};
        }

    if (end.dim == 2) {
        if (auto decided = decide_end_dim_two(m, end, f))
            return std::move(*decided);
    }

    if (f.is_prime_field()) {
        // exhaust all End coefficient tuples when that is cheap; then the
        // absence of a Fitting split is a proof of indecomposability
        double space = 1;
        for (int i = 0; i < end.dim; ++i)
            space *= f.p();
        if (space <= 65536.0) {
            std::vector<unsigned> coef(end.dim, 0);
            while (true) {
                int pos = 0;
                while (pos < end.dim && ++coef[pos] == f.p()) {
                    coef[pos] = 0;
                    ++pos;
                }
                if (pos == end.dim)
                    break;
                Endo e = endo_identity(m);
                for (auto& blk : e)
                    blk = mat_scale(0, blk, f);
                for (int i = 0; i < end.dim; ++i)
                    if (coef[i] != 0)
                        e = endo_add(e, [&] {
                            Endo scaled;
                            for (const auto& blk : end.elements[i])
                                scaled.push_back(mat_scale(mpq_class(coef[i]), blk, f));
                            return scaled;
                        }(), f);
                Split s = fitting_split(m, e);
                if (s.found)
                    return {IndecStatus::decomposable, std::move(s)};
            }
            return {IndecStatus::indecomposable, {}};
        }
    }

    for (int trial = 0; trial < 64; ++trial) {
        Endo e = endo_identity(m);
        for (auto& blk : e)
            blk = mat_scale(0, blk, f);
        for (int i = 0; i < end.dim; ++i) {
            mpq_class c;
            if (f.is_prime_field())
                c = mpq_class(static_cast<unsigned long>(rng() % f.p()));
            else
                c = mpq_class(static_cast<long>(rng() % 9) - 4);
            if (c == 0)
                continue;
            Endo scaled;
            for (const auto& blk : end.elements[i])
                scaled.push_back(mat_scale(c, blk, f));
            e = endo_add(e, scaled, f);
        }
        for (const auto& lam : lambda_candidates(m, e)) {
            Split s = fitting_split(m, endo_shift(e, lam, f));
            if (s.found)
                return {IndecStatus::decomposable, std::move(s)};
        }
    }
    return {IndecStatus::probably_indecomposable, {}};
}

std::vector<std::vector<int>> support_components(const Representation& m) {
    const RepQuiver& q = m.quiver();
    std::vector<std::vector<int>> nbrs(q.vertex_count());
    for (int a = 0; a < q.arrow_count(); ++a) {
        if (m.dim(q.arrow(a).src) == 0 || m.dim(q.arrow(a).tgt) == 0)
            continue;
        nbrs[q.arrow(a).src].push_back(q.arrow(a).tgt);
        nbrs[q.arrow(a).tgt].push_back(q.arrow(a).src);
    }
    std::vector<int> comp(q.vertex_count(), -1);
    std::vector<std::vector<int>> out;
    for (int start = 0; start < q.vertex_count(); ++start) {
        if (m.dim(start) == 0 || comp[start] >= 0)
            continue;
        int id = static_cast<int>(out.size());
        out.emplace_back();
        std::vector<int> stack{start};
        comp[start] = id;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            out[id].push_back(v);
            for (int w : nbrs[v])
                if (m.dim(w) > 0 && comp[w] < 0) {
                    comp[w] = id;
                    stack.push_back(w);
                }
        }
        std::sort(out[id].begin(), out[id].end());
    }
    return out;
}

Representation restrict_to_support(const Representation& m, const std::vector<int>& vs) {
    std::vector<Mat> basis;
    std::set<int> keep(vs.begin(), vs.end());
    for (int v = 0; v < m.quiver().vertex_count(); ++v)
        basis.push_back(keep.count(v) ? Mat::identity(m.dim(v)) : Mat(m.dim(v), 0));
    return subrepresentation(m, basis);
}

} // namespace

const char* to_string(IndecStatus s) {
    switch (s) {
    case IndecStatus::indecomposable: return "indecomposable";
    case IndecStatus::probably_indecomposable: return "probably_indecomposable";
    case IndecStatus::decomposable: return "decomposable";
    }
    return "?";
}

IndecStatus indecomposability(const Representation& m, unsigned long long seed) {
    if (m.is_zero())
        throw precondition_error("indecomposability of the zero representation is undefined");
    if (support_components(m).size() > 1)
        return IndecStatus::decomposable;
    return search_split(m, seed).status;
}

bool is_indecomposable(const Representation& m, unsigned long long seed) {
    return indecomposability(m, seed) != IndecStatus::decomposable;
}

namespace {

void decompose_rec(const Representation& m, unsigned long long seed, Decomposition& out) {
    if (m.is_zero())
        return;
    auto comps = support_components(m);
    if (comps.size() > 1) {
        for (const auto& c : comps)
            decompose_rec(restrict_to_support(m, c), seed, out);
        return;
    }
    SearchResult r = search_split(m, seed);
    if (r.status == IndecStatus::decomposable) {
        decompose_rec(subrepresentation(m, r.split.ker), seed, out);
        decompose_rec(subrepresentation(m, r.split.im), seed, out);
        return;
    }
    if (r.status == IndecStatus::probably_indecomposable)
        out.certified = false;
    out.summands.push_back(m);
}

std::string rep_sort_key(const Representation& m) {
    std::ostringstream s;
    s << m.total_dim() << "|";
    for (int d : m.dims())
        s << d << ",";
    s << "|";
    for (int a = 0; a < m.quiver().arrow_count(); ++a)
        for (int i = 0; i < m.map(a).rows(); ++i)
            for (int j = 0; j < m.map(a).cols(); ++j)
                s << m.map(a).at(i, j).get_str() << ";";
    return s.str();
}

} // namespace

Decomposition decompose(const Representation& m, unsigned long long seed) {
    if (m.is_zero())
        throw precondition_error("decompose of the zero representation is undefined");
    Decomposition out;
    decompose_rec(m, seed, out);
    std::stable_sort(out.summands.begin(), out.summands.end(),
                     [](const Representation& a, const Representation& b) {
                         return rep_sort_key(a) < rep_sort_key(b);
                     });
    return out;
}

bool indec_iso(const Representation& a, const Representation& b) {
    if (!a.quiver().structurally_equal(b.quiver()) || !(a.field() == b.field()))
        return false;
    if (a.dims() != b.dims())
        return false;
    // a basis of Hom cannot lie inside rad(a,b), which for indecomposables
    // is exactly the set of non-invertible morphisms
    Field f(a.field());
    HomBasis h = hom_basis(a, b);
    for (const auto& el : h.elements) {
        bool inv = true;
        for (const auto& blk : el)
            if (!is_invertible(blk, f)) {
                inv = false;
                break;
            }
        if (inv)
            return true;
    }
    return false;
}

Representation graded_module_to_rep(const GradedModuleData& data, FieldSpec field) {
    if (!data.q)
        throw precondition_error("graded_module_to_rep: no quiver");
    const GradedQuiver& q = *data.q;
    long long lo = 0, hi = 0;
    bool any = false;
    for (const auto& [key, d] : data.dims) {
        if (d == 0)
            continue;
        if (key.first < 0 || key.first >= q.vertex_count())
            throw precondition_error("graded_module_to_rep: vertex out of range");
        lo = any ? std::min(lo, key.second) : key.second;
        hi = any ? std::max(hi, key.second) : key.second;
        any = true;
    }
    if (!any)
        throw precondition_error("graded_module_to_rep: zero module");
    long long pad = default_slack(q);
    CoveringQuiver window = build_p_window(q, lo - pad, hi + pad);
    auto rq = RepQuiver::from_covering(window);

    DimensionVector dims(rq->vertex_count(), 0);
    for (const auto& [key, d] : data.dims) {
        int v = window.find_vertex(key.first, key.second);
        if (v < 0)
            throw std::logic_error("graded_module_to_rep: window construction too small");
        dims[v] = d;
    }
    std::map<int, Mat> maps;
    for (const auto& [key, mat] : data.actions) {
        auto [arrow, j] = key;
        if (arrow < 0 || arrow >= q.arrow_count())
            throw precondition_error("graded_module_to_rep: arrow out of range");
        int a = window.find_arrow(arrow, j);
        if (a < 0)
            throw precondition_error("graded_module_to_rep: action outside the window");
        int s = rq->arrow(a).src, t = rq->arrow(a).tgt;
        if (mat.rows() != dims[t] || mat.cols() != dims[s])
            throw precondition_error("graded_module_to_rep: action shape mismatch at arrow '" +
                             q.arrow(arrow).id + "' degree " + std::to_string(j));
        maps[a] = mat;
    }
    return Representation(std::move(rq), field, std::move(dims), std::move(maps));
}

std::string rep_to_json(const Representation& m, std::optional<long long> shift) {
    nlohmann::ordered_json j;
    const RepQuiver& q = m.quiver();
    if (q.leveled())
        j["quiver"] = q.cover().base().name();
    else
        j["quiver"] = q.name();
    if (m.field().kind == FieldSpec::Kind::rationals)
        j["field"] = {{"kind", "Q"}};
    else
        j["field"] = {{"kind", "Fp"}, {"p", m.field().p}};
    if (q.leveled()) {
        const CoveringQuiver& c = q.cover();
        nlohmann::ordered_json w;
        w["kind"] = c.kind() == CoveringQuiver::Kind::P ? "P" : "tilde";
        w["jmin"] = c.jmin();
        w["jmax"] = c.jmax();
        if (c.kind() == CoveringQuiver::Kind::Qtilde)
            w["base"] = c.base().vertex_id(c.base_vertex());
        j["window"] = std::move(w);
    }
    nlohmann::ordered_json dims = nlohmann::ordered_json::object();
    for (int v = 0; v < q.vertex_count(); ++v)
        if (m.dim(v) > 0)
            dims[q.vertex_id(v)] = m.dim(v);
    j["dims"] = std::move(dims);
    nlohmann::ordered_json maps = nlohmann::ordered_json::object();
    for (int a = 0; a < q.arrow_count(); ++a) {
        const Mat& mat = m.map(a);
        if (mat.rows() == 0 || mat.cols() == 0)
            continue;
        nlohmann::ordered_json rowsj = nlohmann::ordered_json::array();
        for (int i = 0; i < mat.rows(); ++i) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (int jj = 0; jj < mat.cols(); ++jj)
                row.push_back(mat.at(i, jj).get_str());
            rowsj.push_back(std::move(row));
        }
        maps[q.arrow(a).id] = std::move(rowsj);
    }
    j["maps"] = std::move(maps);
    if (shift)
        j["shift"] = *shift;
    return j.dump(2) + "\n";
}

Representation rep_from_json(const std::string& text, const GradedQuiver& base,
                             long long* shift_out) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw input_error(std::string("invalid representation JSON: ") + e.what());
    }
    try {
        if (j.at("quiver").get<std::string>() != base.name())
            throw input_error("representation JSON references quiver '" +
                              j.at("quiver").get<std::string>() + "', expected '" + base.name() +
                              "'");
        FieldSpec spec;
        std::string kind = j.at("field").at("kind").get<std::string>();
        if (kind == "Q")
            spec = FieldSpec::rationals();
        else if (kind == "Fp")
            spec = FieldSpec::prime(j.at("field").at("p").get<unsigned>());
        else
            throw input_error("unknown field kind '" + kind + "'");

        std::shared_ptr<const RepQuiver> rq;
        if (j.contains("window")) {
            const auto& w = j.at("window");
            std::string wk = w.at("kind").get<std::string>();
            long long jmin = w.at("jmin").get<long long>(), jmax = w.at("jmax").get<long long>();
            if (wk == "P")
                rq = RepQuiver::from_covering(build_p_window(base, jmin, jmax));
            else if (wk == "tilde")
                rq = RepQuiver::from_covering(
                    build_q_tilde(base, w.at("base").get<std::string>(), jmin, jmax));
            else
                throw input_error("unknown window kind '" + wk + "'");
        } else {
            rq = RepQuiver::from_graded(base);
        }

        DimensionVector dims(rq->vertex_count(), 0);
        for (const auto& [key, val] : j.at("dims").items()) {
            int v = rq->find_vertex(key);
            if (v < 0)
                throw input_error("dims references unknown vertex '" + key + "'");
            dims[v] = val.get<int>();
        }
        std::map<int, Mat> maps;
        for (const auto& [key, val] : j.at("maps").items()) {
            int a = rq->find_arrow(key);
            if (a < 0)
                throw input_error("maps references unknown arrow '" + key + "'");
            int r = static_cast<int>(val.size());
            int c = r > 0 ? static_cast<int>(val.at(0).size()) : 0;
            Mat mat(r, c);
            for (int i = 0; i < r; ++i) {
                if (static_cast<int>(val.at(i).size()) != c)
                    throw input_error("ragged matrix for arrow '" + key + "'");
                for (int jj = 0; jj < c; ++jj) {
                    mpq_class entry(val.at(i).at(jj).get<std::string>());
                    entry.canonicalize();
                    mat.at(i, jj) = entry;
                }
            }
            maps[a] = std::move(mat);
        }
        if (shift_out)
            *shift_out = j.value("shift", 0LL);
        return Representation(std::move(rq), spec, std::move(dims), std::move(maps));
    } catch (const input_error&) {
        throw;
    } catch (const precondition_error& e) {
        throw input_error(std::string("invalid representation JSON: ") + e.what());
    } catch (const std::exception& e) {
        throw input_error(std::string("invalid representation JSON: ") + e.what());
    }
}

} // namespace rsz
