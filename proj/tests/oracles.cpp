#include "oracles.hpp"

#include <set>
#include <stdexcept>

namespace rsz::oracle {

std::vector<long long> closed_walk_degrees(const GradedQuiver& q, int max_len) {
    std::vector<long long> out;
    struct State {
        int at;
        long long deg;
    };
    for (int start = 0; start < q.vertex_count(); ++start) {
        std::vector<State> frontier{{start, 0}};
        for (int len = 1; len <= max_len; ++len) {
            std::vector<State> next;
            for (const auto& s : frontier)
                for (int a = 0; a < q.arrow_count(); ++a) {
                    long long d = q.virtual_degree_of_arrow(a);
                    if (q.arrow(a).src == s.at)
                        next.push_back({q.arrow(a).tgt, s.deg + d});
                    if (q.arrow(a).tgt == s.at)
                        next.push_back({q.arrow(a).src, s.deg - d});
                }
            for (const auto& s : next)
                if (s.at == start)
                    out.push_back(s.deg);
            if (next.size() > 2000000)
                throw std::runtime_error("closed_walk_degrees: too many walks");
            frontier = std::move(next);
        }
    }
    return out;
}

std::map<std::tuple<int, int, long long>, unsigned long long>
paths_by_arrow_degree(const GradedQuiver& q, int max_len) {
    std::map<std::tuple<int, int, long long>, unsigned long long> out;
    for (int src = 0; src < q.vertex_count(); ++src) {
        std::map<std::pair<int, long long>, unsigned long long> frontier{{{src, 0}, 1}};
        out[{src, src, 0}] += 1;
        for (int len = 1; len <= max_len; ++len) {
            std::map<std::pair<int, long long>, unsigned long long> next;
            for (const auto& [st, n] : frontier)
                for (int a = 0; a < q.arrow_count(); ++a) {
                    if (q.arrow(a).src != st.first)
                        continue;
                    next[{q.arrow(a).tgt, st.second + q.arrow(a).degree}] += n;
                }
            for (const auto& [st, n] : next)
                out[{src, st.first, st.second}] += n;
            frontier = std::move(next);
        }
    }
    return out;
}

namespace {

int entry_bit(const Mat& m, int i, int j) {
    mpq_class v = m.at(i, j);
    if (v == 0)
        return 0;
    if (v == 1)
        return 1;
    throw std::runtime_error("matrix entry is not an F2 bit");
}

} // namespace

int ext1_f2_brute(const Representation& m, const Representation& n) {
    const RepQuiver& q = m.quiver();
    // cocycle coordinates: one bit per (arrow a, i < n.dim(tgt), j < m.dim(src))
    std::vector<std::tuple<int, int, int>> xi_coords;
    for (int a = 0; a < q.arrow_count(); ++a)
        for (int i = 0; i < n.dim(q.arrow(a).tgt); ++i)
            for (int j = 0; j < m.dim(q.arrow(a).src); ++j)
                xi_coords.emplace_back(a, i, j);
    std::vector<std::tuple<int, int, int>> phi_coords; // (vertex, i < n.dim, j < m.dim)
    for (int v = 0; v < q.vertex_count(); ++v)
        for (int i = 0; i < n.dim(v); ++i)
            for (int j = 0; j < m.dim(v); ++j)
                phi_coords.emplace_back(v, i, j);
    size_t K = xi_coords.size(), L = phi_coords.size();
    if (K > 24 || L > 20)
        throw std::runtime_error("ext1_f2_brute: instance too large");

    // image of the coboundary phi -> (N_a phi_s - phi_t M_a)_a over all phi
    std::set<unsigned long long> image;
    for (unsigned long long phi_bits = 0; phi_bits < (1ULL << L); ++phi_bits) {
        auto phi = [&](int v, int i, int j) -> int {
            for (size_t k = 0; k < L; ++k)
                if (phi_coords[k] == std::make_tuple(v, i, j))
                    return (phi_bits >> k) & 1;
            return 0;
        };
        unsigned long long img = 0;
        for (size_t k = 0; k < K; ++k) {
            auto [a, i, j] = xi_coords[k];
            int s = q.arrow(a).src, t = q.arrow(a).tgt;
            int bit = 0;
            for (int u = 0; u < n.dim(s); ++u)
                bit ^= entry_bit(n.map(a), i, u) & phi(s, u, j);
            for (int u = 0; u < m.dim(t); ++u)
                bit ^= phi(t, i, u) & entry_bit(m.map(a), u, j);
            img |= static_cast<unsigned long long>(bit) << k;
        }
        image.insert(img);
    }
    // classes = 2^K / |image|; both are powers of two
    int dim = static_cast<int>(K);
    unsigned long long sz = image.size();
    while (sz > 1) {
        sz >>= 1;
        --dim;
    }
    return dim;
}

namespace {

// subspaces of F2^d as lists of their elements (bitmask vectors), d <= 3
std::vector<std::vector<unsigned>> subspaces_f2(int d) {
    std::vector<std::vector<unsigned>> out;
    unsigned full = 1u << d;
    for (unsigned mask = 1; mask < (1u << full); mask += 2) {
        std::vector<unsigned> elems;
        for (unsigned v = 0; v < full; ++v)
            if (mask & (1u << v))
                elems.push_back(v);
        bool closed = true;
        for (unsigned a : elems)
            for (unsigned b : elems)
                if (!(mask & (1u << (a ^ b)))) {
                    closed = false;
                    break;
                }
        if (closed)
            out.push_back(elems);
    }
    return out;
}

int subspace_dim(const std::vector<unsigned>& elems) {
    int d = 0;
    size_t n = elems.size();
    while (n > 1) {
        n >>= 1;
        ++d;
    }
    return d;
}

unsigned apply_f2(const Mat& m, unsigned v) {
    unsigned out = 0;
    for (int i = 0; i < m.rows(); ++i) {
        int bit = 0;
        for (int j = 0; j < m.cols(); ++j)
            bit ^= entry_bit(m, i, j) & ((v >> j) & 1);
        out |= static_cast<unsigned>(bit) << i;
    }
    return out;
}

} // namespace

bool decomposable_f2_exhaustive(const Representation& m) {
    const RepQuiver& q = m.quiver();
    if (!(m.field() == FieldSpec::prime(2)))
        throw std::runtime_error("decomposable_f2_exhaustive: representation must be over F2");
    std::vector<std::vector<std::vector<unsigned>>> choices(q.vertex_count());
    for (int v = 0; v < q.vertex_count(); ++v) {
        if (m.dim(v) > 3)
            throw std::runtime_error("decomposable_f2_exhaustive: dimension too large");
        choices[v] = subspaces_f2(m.dim(v));
    }
    auto invariant = [&](const std::vector<int>& pick) {
        for (int a = 0; a < q.arrow_count(); ++a) {
            int s = q.arrow(a).src, t = q.arrow(a).tgt;
            for (unsigned u : choices[s][pick[s]]) {
                unsigned img = apply_f2(m.map(a), u);
                bool inside = false;
                for (unsigned w : choices[t][pick[t]])
                    if (w == img)
                        inside = true;
                if (!inside)
                    return false;
            }
        }
        return true;
    };
    std::vector<std::vector<int>> invariant_picks;
    std::vector<int> pick(q.vertex_count(), 0);
    while (true) {
        if (invariant(pick))
            invariant_picks.push_back(pick);
        int pos = 0;
        while (pos < q.vertex_count() && ++pick[pos] == static_cast<int>(choices[pos].size())) {
            pick[pos] = 0;
            ++pos;
        }
        if (pos == q.vertex_count())
            break;
    }
    auto total_dim = [&](const std::vector<int>& p) {
        int t = 0;
        for (int v = 0; v < q.vertex_count(); ++v)
            t += subspace_dim(choices[v][p[v]]);
        return t;
    };
    long long full = m.total_dim();
    for (const auto& u : invariant_picks) {
        int du = total_dim(u);
        if (du == 0 || du == full)
            continue;
        for (const auto& w : invariant_picks) {
            if (total_dim(w) != full - du)
                continue;
            bool complement = true;
            for (int v = 0; v < q.vertex_count() && complement; ++v) {
                if (subspace_dim(choices[v][u[v]]) + subspace_dim(choices[v][w[v]]) != m.dim(v))
                    complement = false;
                for (unsigned x : choices[v][u[v]])
                    for (unsigned y : choices[v][w[v]])
                        if (x != 0 && x == y)
                            complement = false;
            }
            if (complement)
                return true;
        }
    }
    return false;
}

std::vector<Representation> all_f2_reps(std::shared_ptr<const RepQuiver> q,
                                        const DimensionVector& dims) {
    FieldSpec f2 = FieldSpec::prime(2);
    std::vector<int> bits_per_arrow(q->arrow_count());
    long long total_bits = 0;
    for (int a = 0; a < q->arrow_count(); ++a) {
        bits_per_arrow[a] = dims[q->arrow(a).tgt] * dims[q->arrow(a).src];
        total_bits += bits_per_arrow[a];
    }
    if (total_bits > 16)
        throw std::runtime_error("all_f2_reps: too many representations");
    std::vector<Representation> out;
    for (unsigned long long code = 0; code < (1ULL << total_bits); ++code) {
        std::map<int, Mat> maps;
        int off = 0;
        for (int a = 0; a < q->arrow_count(); ++a) {
            Mat m(dims[q->arrow(a).tgt], dims[q->arrow(a).src]);
            for (int i = 0; i < m.rows(); ++i)
                for (int j = 0; j < m.cols(); ++j)
                    m.at(i, j) = static_cast<long>((code >> (off + i * m.cols() + j)) & 1);
            off += bits_per_arrow[a];
            maps[a] = std::move(m);
        }
        out.emplace_back(q, f2, dims, std::move(maps));
    }
    return out;
}

bool rep_iso(const Representation& a, const Representation& b) {
    if (a.dims() != b.dims())
        return false;
    if (a.is_zero())
        return true;
    Decomposition da = decompose(a), db = decompose(b);
    if (da.summands.size() != db.summands.size())
        return false;
    std::vector<bool> used(db.summands.size(), false);
    for (const auto& sa : da.summands) {
        bool matched = false;
        for (size_t i = 0; i < db.summands.size(); ++i) {
            if (used[i])
                continue;
            if (indec_iso(sa, db.summands[i])) {
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

} // namespace rsz::oracle
