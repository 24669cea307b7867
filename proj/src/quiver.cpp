#include "rsz/quiver.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

namespace rsz {

GradedQuiver::GradedQuiver(
    std::string name, std::vector<std::string> vertices,
    std::vector<std::tuple<std::string, std::string, std::string, long long>> arrows)
    : name_(std::move(name)), vertices_(std::move(vertices)) {
    if (vertices_.empty())
        throw input_error("quiver '" + name_ + "' has no vertices");
    for (int i = 0; i < static_cast<int>(vertices_.size()); ++i) {
        if (!vertex_by_id_.emplace(vertices_[i], i).second)
            throw input_error("duplicate vertex id '" + vertices_[i] + "'");
    }
    for (const auto& [id, src, tgt, deg] : arrows) {
        Arrow a;
        a.id = id;
        a.degree = deg;
        a.src = vertex_index(src);
        a.tgt = vertex_index(tgt);
        if (a.src < 0)
            throw input_error("arrow '" + id + "': unknown source vertex '" + src + "'");
        if (a.tgt < 0)
            throw input_error("arrow '" + id + "': unknown target vertex '" + tgt + "'");
        if (!arrow_by_id_.emplace(id, static_cast<int>(arrows_.size())).second)
            throw input_error("duplicate arrow id '" + id + "'");
        arrows_.push_back(std::move(a));
    }
}

int GradedQuiver::vertex_index(const std::string& id) const {
    auto it = vertex_by_id_.find(id);
    return it == vertex_by_id_.end() ? -1 : it->second;
}

int GradedQuiver::arrow_index(const std::string& id) const {
    auto it = arrow_by_id_.find(id);
    return it == arrow_by_id_.end() ? -1 : it->second;
}

long long GradedQuiver::max_abs_step() const {
    long long m = 0;
    for (int a = 0; a < arrow_count(); ++a)
        m = std::max(m, std::abs(virtual_degree_of_arrow(a)));
    return m;
}

std::vector<int> GradedQuiver::undirected_components() const {
    std::vector<int> comp(vertices_.size(), -1);
    std::vector<std::vector<int>> nbrs(vertices_.size());
    for (const auto& a : arrows_) {
        nbrs[a.src].push_back(a.tgt);
        nbrs[a.tgt].push_back(a.src);
    }
    int next = 0;
    for (int start = 0; start < vertex_count(); ++start) {
        if (comp[start] >= 0)
            continue;
        std::vector<int> stack{start};
        comp[start] = next;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : nbrs[v])
                if (comp[w] < 0) {
                    comp[w] = next;
                    stack.push_back(w);
                }
        }
        ++next;
    }
    return comp;
}

bool GradedQuiver::connected() const {
    auto comp = undirected_components();
    return std::all_of(comp.begin(), comp.end(), [](int c) { return c == 0; });
}

bool GradedQuiver::structurally_equal(const GradedQuiver& other) const {
    if (vertices_ != other.vertices_ || arrows_.size() != other.arrows_.size())
        return false;
    for (size_t i = 0; i < arrows_.size(); ++i) {
        const Arrow &a = arrows_[i], &b = other.arrows_[i];
        if (a.id != b.id || a.src != b.src || a.tgt != b.tgt || a.degree != b.degree)
            return false;
    }
    return name_ == other.name_;
}

Walk Walk::trivial(const GradedQuiver& q, int vertex) {
    return Walk(q, vertex, {});
}

Walk::Walk(const GradedQuiver& q, int source, std::vector<WalkStep> steps)
    : q_(&q), source_(source), steps_(std::move(steps)) {
    if (source_ < 0 || source_ >= q.vertex_count())
        throw input_error("walk source out of range");
    int at = source_;
    for (const auto& s : steps_) {
        const auto& a = q.arrow(s.arrow);
        int from = s.inverse ? a.tgt : a.src;
        int to = s.inverse ? a.src : a.tgt;
        if (from != at)
            throw input_error("walk steps do not chain at arrow '" + a.id + "'");
        at = to;
    }
    target_ = at;
}

Walk Walk::inversed() const {
    std::vector<WalkStep> rev(steps_.rbegin(), steps_.rend());
    for (auto& s : rev)
        s.inverse = !s.inverse;
    return Walk(*q_, target_, std::move(rev));
}

Walk Walk::then(const Walk& next) const {
    if (q_ != next.q_)
        throw input_error("walk concatenation across different quivers");
    if (target_ != next.source_)
        throw input_error("walk concatenation: endpoints do not match");
    std::vector<WalkStep> steps = steps_;
    steps.insert(steps.end(), next.steps_.begin(), next.steps_.end());
    return Walk(*q_, source_, std::move(steps));
}

long long virtual_degree(const Walk& w) {
    long long d = 0;
    for (const auto& s : w.steps()) {
        long long da = w.quiver().virtual_degree_of_arrow(s.arrow);
        d = checked_add(d, s.inverse ? -da : da);
    }
    return d;
}

unsigned long long PathMultiset::count(int src, int tgt, long long vdeg) const {
    auto it = counts.find({src, tgt, vdeg});
    return it == counts.end() ? 0 : it->second;
}

unsigned long long PathMultiset::total_at_degree(long long vdeg) const {
    unsigned long long total = 0;
    for (const auto& [key, n] : counts)
        if (std::get<2>(key) == vdeg)
            total = checked_add_u(total, n);
    return total;
}

PathMultiset enumerate_paths(const GradedQuiver& q, int max_len) {
    if (max_len < 0)
        throw precondition_error("enumerate_paths: max_len must be nonnegative");
    PathMultiset out;
    out.max_len = max_len;
    // frontier: (current endpoint, virtual degree) -> count, per source
    for (int src = 0; src < q.vertex_count(); ++src) {
        std::map<std::pair<int, long long>, unsigned long long> frontier{{{src, 0}, 1}};
        out.counts[{src, src, 0}] = 1; // trivial path
        for (int len = 1; len <= max_len && !frontier.empty(); ++len) {
            std::map<std::pair<int, long long>, unsigned long long> next;
            for (const auto& [state, n] : frontier) {
                auto [v, deg] = state;
                for (int a = 0; a < q.arrow_count(); ++a) {
                    if (q.arrow(a).src != v)
                        continue;
                    long long nd = checked_add(deg, q.virtual_degree_of_arrow(a));
                    auto& slot = next[{q.arrow(a).tgt, nd}];
                    slot = checked_add_u(slot, n);
                }
            }
            for (const auto& [state, n] : next) {
                auto& slot = out.counts[{src, state.first, state.second}];
                slot = checked_add_u(slot, n);
            }
            frontier = std::move(next);
        }
    }
    return out;
}

GradedQuiver graded_opposite(const GradedQuiver& q) {
    std::vector<std::tuple<std::string, std::string, std::string, long long>> arrows;
    arrows.reserve(q.arrow_count());
    for (const auto& a : q.arrows())
        arrows.emplace_back(a.id + "_op", q.vertex_id(a.tgt), q.vertex_id(a.src),
                            checked_add(1, -a.degree));
    return GradedQuiver(q.name() + "_grop", q.vertices(), std::move(arrows));
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream in(line);
    std::string t;
    while (in >> t)
        toks.push_back(t);
    return toks;
}

[[noreturn]] void bad_line(int lineno, const std::string& why) {
    throw input_error("line " + std::to_string(lineno) + ": " + why);
}

long long parse_int(const std::string& s, int lineno) {
    try {
        size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size())
            bad_line(lineno, "malformed integer '" + s + "'");
        return v;
    } catch (const input_error&) {
        throw;
    } catch (const std::exception&) {
        bad_line(lineno, "malformed integer '" + s + "'");
    }
}

} // namespace

GradedQuiver parse_quiver(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::string name;
    bool have_name = false;
    std::vector<std::string> vertices;
    std::vector<std::tuple<std::string, std::string, std::string, long long>> arrows;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        auto toks = tokenize(line);
        if (toks.empty())
            continue;
        if (toks[0] == "quiver") {
            if (toks.size() != 2)
                bad_line(lineno, "expected: quiver NAME");
            if (have_name)
                bad_line(lineno, "repeated quiver declaration");
            name = toks[1];
            have_name = true;
        } else if (toks[0] == "vertex") {
            if (toks.size() != 2)
                bad_line(lineno, "expected: vertex ID");
            vertices.push_back(toks[1]);
        } else if (toks[0] == "arrow") {
            // arrow ID : SRC -> TGT [deg INT]
            if (toks.size() != 6 && toks.size() != 8)
                bad_line(lineno, "expected: arrow ID : SRC -> TGT [deg INT]");
            if (toks[2] != ":" || toks[4] != "->")
                bad_line(lineno, "expected: arrow ID : SRC -> TGT [deg INT]");
            long long deg = 0;
            if (toks.size() == 8) {
                if (toks[6] != "deg")
                    bad_line(lineno, "expected 'deg' before the degree");
                deg = parse_int(toks[7], lineno);
            }
            arrows.emplace_back(toks[1], toks[3], toks[5], deg);
        } else {
            bad_line(lineno, "unknown declaration '" + toks[0] + "'");
        }
    }
    if (!have_name)
        throw input_error("missing 'quiver NAME' declaration");
    try {
        return GradedQuiver(name, std::move(vertices), std::move(arrows));
    } catch (const input_error& e) {
        throw input_error(std::string("quiver '") + name + "': " + e.what());
    }
}

std::string serialize_quiver_text(const GradedQuiver& q) {
    std::ostringstream out;
    out << "quiver " << q.name() << "\n";
    for (const auto& v : q.vertices())
        out << "vertex " << v << "\n";
    for (const auto& a : q.arrows())
        out << "arrow " << a.id << " : " << q.vertex_id(a.src) << " -> " << q.vertex_id(a.tgt)
            << " deg " << a.degree << "\n";
    return out.str();
}

std::string serialize_quiver_json(const GradedQuiver& q) {
    nlohmann::ordered_json j;
    j["name"] = q.name();
    j["vertices"] = q.vertices();
    j["arrows"] = nlohmann::ordered_json::array();
    for (const auto& a : q.arrows()) {
        nlohmann::ordered_json ja;
        ja["name"] = a.id;
        ja["source"] = q.vertex_id(a.src);
        ja["target"] = q.vertex_id(a.tgt);
        ja["degree"] = a.degree;
        j["arrows"].push_back(std::move(ja));
    }
    return j.dump(2) + "\n";
}

GradedQuiver quiver_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw input_error(std::string("invalid quiver JSON: ") + e.what());
    }
    try {
        std::vector<std::string> vertices = j.at("vertices").get<std::vector<std::string>>();
        std::vector<std::tuple<std::string, std::string, std::string, long long>> arrows;
        for (const auto& ja : j.at("arrows"))
            arrows.emplace_back(ja.at("name").get<std::string>(), ja.at("source").get<std::string>(),
                                ja.at("target").get<std::string>(),
                                ja.value("degree", 0LL));
        return GradedQuiver(j.at("name").get<std::string>(), std::move(vertices), std::move(arrows));
    } catch (const input_error&) {
        throw;
    } catch (const std::exception& e) {
        throw input_error(std::string("invalid quiver JSON: ") + e.what());
    }
}

} // namespace rsz
