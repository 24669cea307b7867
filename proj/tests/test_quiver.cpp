#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rsz/quiver.hpp"

using namespace rsz;

TEST_CASE("parse: graded Kronecker") {
    GradedQuiver q = parse_quiver("quiver K\nvertex 1\nvertex 2\n"
                                  "arrow alpha : 1 -> 2 deg 1\narrow beta : 1 -> 2 deg -1\n");
    CHECK(q.name() == "K");
    CHECK(q.vertex_count() == 2);
    REQUIRE(q.arrow_count() == 2);
    CHECK(q.arrow(0).id == "alpha");
    CHECK(q.arrow(0).degree == 1);
    CHECK(q.arrow(1).degree == -1);
    CHECK(q.arrow(0).src == q.vertex_index("1"));
    CHECK(q.arrow(0).tgt == q.vertex_index("2"));
}

TEST_CASE("parse: Jordan quiver with loop of degree -1") {
    GradedQuiver q = parse_quiver("quiver J\nvertex v\narrow x : v -> v deg -1\n");
    CHECK(q.vertex_count() == 1);
    CHECK(q.arrow(0).src == q.arrow(0).tgt);
    CHECK(q.arrow(0).degree == -1);
}

TEST_CASE("parse: degree defaults to 0") {
    GradedQuiver q = parse_quiver("quiver A2\nvertex 1\nvertex 2\narrow g : 1 -> 2\n");
    CHECK(q.arrow(0).degree == 0);
}

TEST_CASE("parse: comments and blanks are ignored") {
    GradedQuiver q = parse_quiver("# a comment\nquiver A\n\nvertex 1  # trailing\n");
    CHECK(q.vertex_count() == 1);
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_WITH_AS(parse_quiver("quiver A\nvertex 1\nvertex 1\n"),
                         doctest::Contains("duplicate vertex id"), input_error);
    CHECK_THROWS_WITH_AS(parse_quiver("quiver A\nvertex 1\narrow a : 1 -> 2\n"),
                         doctest::Contains("unknown"), input_error);
    CHECK_THROWS_WITH_AS(parse_quiver("quiver A\nvertex 1\nnonsense here\n"),
                         doctest::Contains("line 3"), input_error);
    CHECK_THROWS_WITH_AS(parse_quiver("quiver A\nvertex 1\narrow a : 1 -> 1 deg x\n"),
                         doctest::Contains("line 3"), input_error);
    CHECK_THROWS_AS(parse_quiver("vertex 1\n"), input_error);
    CHECK_THROWS_AS(
        parse_quiver("quiver A\nvertex 1\narrow a : 1 -> 1\narrow a : 1 -> 1\n"),
        input_error);
}

TEST_CASE("serialize/parse round trip on all fixtures") {
    for (const char* name : kAllFixtures) {
        GradedQuiver q = fixture(name);
        CHECK(parse_quiver(serialize_quiver_text(q)).structurally_equal(q));
        CHECK(quiver_from_json_text(serialize_quiver_json(q)).structurally_equal(q));
    }
}

TEST_CASE("serializer normalizes the default degree to an explicit deg 0") {
    GradedQuiver q = parse_quiver("quiver A2\nvertex 1\nvertex 2\narrow g : 1 -> 2\n");
    CHECK(serialize_quiver_text(q).find("arrow g : 1 -> 2 deg 0") != std::string::npos);
}

TEST_CASE("json serialization carries explicit degrees") {
    GradedQuiver q = fixture("jordan_deg_minus1");
    CHECK(serialize_quiver_json(q).find("\"degree\": -1") != std::string::npos);
}

TEST_CASE("round trip on randomly generated quivers") {
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 25; ++trial) {
        int nv = 1 + static_cast<int>(rng() % 5);
        std::vector<std::string> vs;
        for (int v = 0; v < nv; ++v)
            vs.push_back("v" + std::to_string(v));
        int na = static_cast<int>(rng() % 6);
        std::vector<std::tuple<std::string, std::string, std::string, long long>> as;
        for (int a = 0; a < na; ++a)
            as.emplace_back("a" + std::to_string(a), vs[rng() % nv], vs[rng() % nv],
                            static_cast<long long>(rng() % 9) - 4);
        GradedQuiver q("rand" + std::to_string(trial), vs, as);
        CHECK(parse_quiver(serialize_quiver_text(q)).structurally_equal(q));
        CHECK(quiver_from_json_text(serialize_quiver_json(q)).structurally_equal(q));
    }
}

TEST_CASE("virtual degree of walks in the graded Kronecker quiver") {
    GradedQuiver q = fixture("kronecker_graded");
    int alpha = q.arrow_index("alpha"), beta = q.arrow_index("beta");
    CHECK(virtual_degree(Walk(q, 0, {{alpha, false}})) == 0);
    CHECK(virtual_degree(Walk(q, 0, {{beta, false}})) == 2);
    CHECK(virtual_degree(Walk::trivial(q, 0)) == 0);
    // beta^{-1} alpha: up along alpha, back along beta
    Walk w(q, 0, {{alpha, false}, {beta, true}});
    CHECK(w.closed());
    CHECK(virtual_degree(w) == -2);
}

TEST_CASE("walk construction validates chaining") {
    GradedQuiver q = fixture("kronecker_graded");
    int alpha = q.arrow_index("alpha");
    CHECK_THROWS_AS(Walk(q, 0, {{alpha, false}, {alpha, false}}), input_error);
    CHECK_THROWS_AS(Walk(q, 1, {{alpha, false}}), input_error);
}

namespace {

rsz::Walk random_walk(const GradedQuiver& q, std::mt19937_64& rng, int len) {
    int at = static_cast<int>(rng() % q.vertex_count());
    int source = at;
    std::vector<WalkStep> steps;
    for (int l = 0; l < len; ++l) {
        std::vector<WalkStep> options;
        for (int a = 0; a < q.arrow_count(); ++a) {
            if (q.arrow(a).src == at)
                options.push_back({a, false});
            if (q.arrow(a).tgt == at)
                options.push_back({a, true});
        }
        if (options.empty())
            break;
        WalkStep s = options[rng() % options.size()];
        steps.push_back(s);
        at = s.inverse ? q.arrow(s.arrow).src : q.arrow(s.arrow).tgt;
    }
    return Walk(q, source, steps);
}

} // namespace

TEST_CASE("walk inverse negates and concatenation adds virtual degree") {
    std::mt19937_64 rng(777);
    for (const char* name : kAllFixtures) {
        GradedQuiver q = fixture(name);
        for (int trial = 0; trial < 30; ++trial) {
            Walk w = random_walk(q, rng, 1 + static_cast<int>(rng() % 5));
            CHECK(virtual_degree(w.inversed()) == -virtual_degree(w));
            Walk back = random_walk(q, rng, 1 + static_cast<int>(rng() % 5));
            if (back.source() == w.target()) {
                Walk both = w.then(back);
                CHECK(virtual_degree(both) == virtual_degree(w) + virtual_degree(back));
            }
        }
    }
}

TEST_CASE("enumerate_paths on the graded Kronecker quiver") {
    GradedQuiver q = fixture("kronecker_graded");
    PathMultiset p = enumerate_paths(q, 5);
    int v1 = q.vertex_index("1"), v2 = q.vertex_index("2");
    CHECK(p.count(v1, v1, 0) == 1);
    CHECK(p.count(v2, v2, 0) == 1);
    CHECK(p.count(v1, v2, 0) == 1); // alpha
    CHECK(p.count(v1, v2, 2) == 1); // beta
    CHECK(p.counts.size() == 4);    // nothing longer composes
}

TEST_CASE("enumerate_paths on the ungraded loop") {
    GradedQuiver q = fixture("loop");
    PathMultiset p = enumerate_paths(q, 3);
    for (long long k = 0; k <= 3; ++k)
        CHECK(p.count(0, 0, k) == 1);
    CHECK(p.counts.size() == 4);
}

TEST_CASE("enumerate_paths with max_len 0 counts exactly the trivial paths") {
    for (const char* name : kAllFixtures) {
        GradedQuiver q = fixture(name);
        PathMultiset p = enumerate_paths(q, 0);
        CHECK(p.counts.size() == static_cast<size_t>(q.vertex_count()));
        for (int v = 0; v < q.vertex_count(); ++v)
            CHECK(p.count(v, v, 0) == 1);
    }
}

TEST_CASE("graded opposite of the Kronecker quiver") {
    GradedQuiver op = graded_opposite(fixture("kronecker_graded"));
    REQUIRE(op.arrow_count() == 2);
    CHECK(op.arrow(0).id == "alpha_op");
    CHECK(op.vertex_id(op.arrow(0).src) == "2");
    CHECK(op.vertex_id(op.arrow(0).tgt) == "1");
    CHECK(op.arrow(0).degree == 0);
    CHECK(op.arrow(1).degree == 2);
}

TEST_CASE("graded opposite of the Jordan quiver is the degree-2 loop") {
    GradedQuiver op = graded_opposite(fixture("jordan_deg_minus1"));
    CHECK(op.arrow(0).degree == 2);
    CHECK(op.arrow(0).src == op.arrow(0).tgt);
}

TEST_CASE("graded opposite is an involution on degrees and incidence") {
    for (const char* name : kAllFixtures) {
        GradedQuiver q = fixture(name);
        GradedQuiver opop = graded_opposite(graded_opposite(q));
        REQUIRE(opop.arrow_count() == q.arrow_count());
        for (int a = 0; a < q.arrow_count(); ++a) {
            CHECK(opop.arrow(a).degree == q.arrow(a).degree);
            CHECK(opop.arrow(a).src == q.arrow(a).src);
            CHECK(opop.arrow(a).tgt == q.arrow(a).tgt);
        }
    }
}

TEST_CASE("paths of virtual degree p match degree-p paths of the graded opposite") {
    for (const char* name : kAllFixtures) {
        GradedQuiver q = fixture(name);
        GradedQuiver op = graded_opposite(q);
        for (int len = 0; len <= 6; ++len) {
            PathMultiset mine = enumerate_paths(q, len);
            auto theirs = oracle::paths_by_arrow_degree(op, len);
            // a path i -> i' of virtual degree p reverses to an opposite path
            // i' -> i whose arrow degrees sum to p
            std::map<std::tuple<int, int, long long>, unsigned long long> flipped;
            for (const auto& [key, n] : theirs)
                flipped[{std::get<1>(key), std::get<0>(key), std::get<2>(key)}] = n;
            CHECK(mine.counts == flipped);
        }
    }
}
