#include "oracles.hpp"

#include "refhouse/errors.hpp"
#include "refhouse/random.hpp"
#include "refhouse/solve_arh.hpp"

#include <doctest.h>

using namespace refhouse;

namespace {

const std::vector<Edge> kCycle4{{0, 1}, {1, 2}, {2, 3}, {0, 3}};

Instance c4() {
    return Instance::anonymous(Topology(4, kCycle4), {0, 1}, {IntervalSet::range(0, 1), IntervalSet::range(0, 0)}, 1);
}

Instance triangle() {
    return Instance::anonymous(Topology(3, std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}}), {0},
                               {IntervalSet::from_values({0})}, 2);
}

Instance star(int leaves, VertexId extra_isolated, IntervalSet approval, int refugees) {
    std::vector<Edge> edges;
    for (int l = 1; l <= leaves; ++l) edges.emplace_back(0, l);
    return Instance::anonymous(Topology(leaves + 1 + extra_isolated, edges), {0}, {std::move(approval)}, refugees);
}

struct Sweep {
    int vertices = 10;
    int max_inhabitants = 4;
    int max_refugees = 4;
    bool max_degree_two = false;
    bool intervals_only = false;
};

Instance sweep_instance(const Sweep& s, std::uint64_t seed) {
    Rng rng(seed ^ 0x5eed);
    RandomShape shape;
    shape.vertices = rng.between(3, s.vertices);
    shape.inhabitants = rng.between(0, std::min(s.max_inhabitants, shape.vertices - 1));
    shape.refugees = rng.between(1, std::min(s.max_refugees, shape.vertices - shape.inhabitants));
    shape.edge_probability = 0.15 + 0.1 * rng.below(5);
    shape.max_degree_two = s.max_degree_two;
    shape.intervals_only = s.intervals_only;
    return random_instance(shape, seed);
}

void check_against_oracle(const Instance& in, const SolveResult& result) {
    const bool expected = oracle::arh(in).has_value();
    REQUIRE(result.status != Status::undecided);
    CHECK((result.status == Status::sat) == expected);
    if (result.witness) CHECK(oracle::arh_ok(in, {result.witness->placement().begin(), result.witness->placement().end()}));
}

} // namespace

TEST_CASE("every solver finds the single housing of the four-cycle") {
    const auto in = c4();
    for (auto solver : {solve_bruteforce, solve_maxdeg2, solve_signature_ip, solve_signature_sets, solve_delta_guess,
                        solve_neighborhood_guess, solve_vertex_cover}) {
        const auto r = solver(in, Budget{});
        REQUIRE(r.status == Status::sat);
        CHECK(*r.witness == Housing({3}));
    }
    CHECK(*solve_arh(in).witness == Housing({3}));
}

TEST_CASE("every solver rejects the intolerant triangle") {
    const auto in = triangle();
    for (auto solver : {solve_bruteforce, solve_maxdeg2, solve_signature_ip, solve_signature_sets, solve_delta_guess,
                        solve_neighborhood_guess, solve_vertex_cover})
        CHECK(solver(in, Budget{}).status == Status::unsat);
    for (auto s : {Strategy::automatic, Strategy::bruteforce, Strategy::maxdeg2, Strategy::signature_ip,
                   Strategy::signature_sets, Strategy::delta_guess, Strategy::neighborhood_guess, Strategy::vertex_cover}) {
        SolveOptions o;
        o.strategy = s;
        CHECK(solve_arh(in, o).status == Status::unsat);
        o.preprocess = false;
        CHECK(solve_arh(in, o).status == Status::unsat);
    }
}

TEST_CASE("brute force") {
    // All-permissive approvals with |R| = |V_U|: the only placement set works.
    const Instance full = star(3, 0, IntervalSet::range(0, 3), 3);
    CHECK(solve_bruteforce(full).status == Status::sat);
    CHECK(solve_bruteforce(full).stats.nodes == 1);
    const Instance big = star(60, 0, IntervalSet::range(0, 60), 30);
    const auto r = solve_bruteforce(big);
    CHECK(r.status == Status::undecided);
    CHECK(r.reason.find("too large") != std::string::npos);
}

TEST_CASE("degree-two dynamic programme") {
    // Variable gadget: path t - v - f, inhabitant on v approving exactly one refugee.
    const Instance gadget = Instance::anonymous(Topology(3, std::vector<Edge>{{0, 1}, {1, 2}}), {1},
                                                {IntervalSet::range(1, 1)}, 1);
    const auto r = solve_maxdeg2(gadget);
    REQUIRE(r.status == Status::sat);
    CHECK((*r.witness == Housing({0}) || *r.witness == Housing({2})));

    const Instance empty_path = Instance::anonymous(Topology(3, std::vector<Edge>{{0, 1}, {1, 2}}), {}, {}, 2);
    CHECK(solve_maxdeg2(empty_path).status == Status::sat);
    CHECK_THROWS_AS(solve_maxdeg2(star(3, 0, IntervalSet::range(0, 3), 1)), PreconditionViolated);

    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto in = sweep_instance({12, 5, 5, true, false}, seed);
        check_against_oracle(in, solve_maxdeg2(in));
    }
}

TEST_CASE("degree-two cycles close correctly") {
    // Cycle of 5 with inhabitants on 0 and 2; vertex 1 is seen by both.
    const Topology c5(5, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
    for (int lo0 = 0; lo0 <= 2; ++lo0)
        for (int lo2 = 0; lo2 <= 2; ++lo2)
            for (int r = 1; r <= 3; ++r) {
                const Instance in = Instance::anonymous(c5, {0, 2}, {IntervalSet::range(lo0, lo0), IntervalSet::range(lo2, 2)}, r);
                check_against_oracle(in, solve_maxdeg2(in));
            }
}

TEST_CASE("class program") {
    // Star with four leaves plus one isolated vertex, approval [2,3], three refugees.
    const Instance in = star(4, 1, IntervalSet::range(2, 3), 3);
    const auto classes = signature_classes(in);
    REQUIRE(classes.size() == 2);
    CHECK(classes[0].capacity() == 4);
    CHECK(classes[1].capacity() == 1);
    CHECK(classes[1].signature.empty());
    ClassProgram program{{4, 1}, {{0}, {}}, {IntervalSet::range(2, 3)}, 3};
    const auto out = solve_class_program(program, 1000);
    REQUIRE(out.status == Status::sat);
    CHECK((out.counts[0] == 2 || out.counts[0] == 3));
    CHECK(out.counts[0] + out.counts[1] == 3);
    CHECK(solve_signature_ip(in).status == Status::sat);

    program.targets[0] = IntervalSet::range(0, 1);
    CHECK(solve_class_program(program, 1000).status == Status::unsat);
    program.targets[0] = IntervalSet::from_values({});
    CHECK(solve_class_program(program, 1000).status == Status::unsat);
}

TEST_CASE("class program against enumeration of counts") {
    Rng rng(42);
    for (int trial = 0; trial < 300; ++trial) {
        ClassProgram p;
        const int classes = rng.between(1, 5), targets = rng.between(0, 3);
        for (int c = 0; c < classes; ++c) {
            p.capacity.push_back(rng.between(0, 3));
            std::vector<int> m;
            for (int t = 0; t < targets; ++t)
                if (rng.chance(0.5)) m.push_back(t);
            p.members.push_back(m);
        }
        for (int t = 0; t < targets; ++t) {
            std::vector<int> values;
            for (int v = 0; v <= 6; ++v)
                if (rng.chance(0.3)) values.push_back(v);
            p.targets.push_back(IntervalSet::from_values(values));
        }
        p.total = rng.between(0, 8);
        // Enumerate every count vector.
        bool expected = false;
        std::vector<int> y(classes, 0);
        std::function<void(int)> go = [&](int c) {
            if (expected) return;
            if (c == classes) {
                int sum = 0;
                std::vector<int> per(targets, 0);
                for (int k = 0; k < classes; ++k) {
                    sum += y[k];
                    for (int t : p.members[k]) per[t] += y[k];
                }
                bool ok = sum == p.total;
                for (int t = 0; t < targets; ++t) ok = ok && p.targets[t].contains(per[t]);
                expected = expected || ok;
                return;
            }
            for (y[c] = 0; y[c] <= p.capacity[c]; ++y[c]) go(c + 1);
        };
        go(0);
        const auto out = solve_class_program(p, 1'000'000);
        CHECK((out.status == Status::sat) == expected);
        if (out.status == Status::sat) {
            REQUIRE(out.counts.size() == static_cast<std::size_t>(classes));
            int sum = 0;
            std::vector<int> per(targets, 0);
            for (int k = 0; k < classes; ++k) {
                CHECK(out.counts[k] >= 0);
                CHECK(out.counts[k] <= p.capacity[k]);
                sum += out.counts[k];
                for (int t : p.members[k]) per[t] += out.counts[k];
            }
            CHECK(sum == p.total);
            for (int t = 0; t < targets; ++t) CHECK(p.targets[t].contains(per[t]));
        }
    }
}

TEST_CASE("class program decides large programs both ways") {
    // 255 classes: every non-empty subset of eight targets, ten vertices each.
    ClassProgram p;
    for (int mask = 1; mask < 256; ++mask) {
        p.capacity.push_back(10);
        std::vector<int> members;
        for (int t = 0; t < 8; ++t)
            if (mask >> t & 1) members.push_back(t);
        p.members.push_back(members);
    }
    // Each target sits in 128 classes; with 600 refugees, 300 per target is the proportional share.
    p.total = 600;
    p.targets.assign(8, IntervalSet::range(295, 305));
    auto out = solve_class_program(p, 100'000);
    CHECK(out.status == Status::sat);

    // Every target demands more than the whole population could supply on average.
    p.targets.assign(8, IntervalSet::range(560, 600));
    out = solve_class_program(p, 100'000);
    CHECK(out.status == Status::unsat);

    // A gapped target of odd values fed by every class: the parity of the total decides.
    ClassProgram g{{50, 50}, {{0}, {0}}, {IntervalSet::from_values({1, 3, 5, 7, 9, 11, 13, 15, 17, 19, 21})}, 20};
    CHECK(solve_class_program(g, 100'000).status == Status::unsat);
    g.total = 21;
    out = solve_class_program(g, 100'000);
    REQUIRE(out.status == Status::sat);
    CHECK(out.counts[0] + out.counts[1] == 21);
}

TEST_CASE("signature programme matches brute force on interval instances") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto in = sweep_instance({12, 6, 5, false, true}, seed);
        check_against_oracle(in, solve_signature_ip(in));
    }
    CHECK_THROWS_AS(solve_signature_ip(star(2, 0, IntervalSet::from_values({0, 2}), 2)), PreconditionViolated);
}

TEST_CASE("interval guessing") {
    const Instance gapped = star(2, 0, IntervalSet::from_values({0, 2}), 2);
    const auto r = solve_delta_guess(gapped);
    REQUIRE(r.status == Status::sat);
    CHECK(*r.witness == Housing({1, 2}));
    // With interval approvals the guess is unique and agrees with the signature programme.
    const Instance single = star(4, 1, IntervalSet::range(2, 3), 3);
    CHECK(solve_delta_guess(single).status == solve_signature_ip(single).status);

    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto in = sweep_instance({12, 4, 5, false, false}, seed);
        check_against_oracle(in, solve_delta_guess(in));
        check_against_oracle(in, solve_signature_sets(in));
    }
}

TEST_CASE("neighbourhood guessing") {
    const Instance none = Instance::anonymous(Topology(4, std::vector<Edge>{{0, 1}}), {}, {}, 4);
    CHECK(solve_neighborhood_guess(none).status == Status::sat);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto in = sweep_instance({12, 3, 3, false, false}, seed);
        check_against_oracle(in, solve_neighborhood_guess(in));
    }
}

TEST_CASE("minimum vertex cover") {
    CHECK(min_vertex_cover(Topology(4, std::vector<Edge>{}), 3)->empty());
    CHECK(min_vertex_cover(Topology(2, std::vector<Edge>{{0, 1}}), 3)->size() == 1);
    CHECK_FALSE(min_vertex_cover(Topology(4, std::vector<Edge>{{0, 1}, {2, 3}}), 1));
    Rng rng(3);
    for (int trial = 0; trial < 150; ++trial) {
        const Graph g = random_graph(rng.between(1, 12), 0.1 + 0.05 * rng.below(8), rng);
        const Topology t(g.vertices, g.edges);
        const auto cover = min_vertex_cover(t, g.vertices);
        REQUIRE(cover);
        CHECK(static_cast<int>(cover->size()) == oracle::vertex_cover_size(t));
        std::vector<char> in(g.vertices, 0);
        for (VertexId v : *cover) in[v] = 1;
        for (auto [u, v] : g.edges) CHECK((in[u] || in[v]));
    }
}

TEST_CASE("vertex-cover solver") {
    const Instance s = star(3, 1, IntervalSet::range(1, 1), 1);
    const auto r = solve_vertex_cover(s);
    REQUIRE(r.status == Status::sat);
    CHECK(((*r.witness)[0] >= 1 && (*r.witness)[0] <= 3));

    int checked = 0;
    for (std::uint64_t seed = 0; checked < 200; ++seed) {
        const auto in = sweep_instance({12, 5, 5, false, true}, seed);
        const auto cover = min_vertex_cover(in.topology(), 4);
        if (!cover) continue;
        ++checked;
        check_against_oracle(in, solve_vertex_cover(in));
    }
}

TEST_CASE("automatic dispatch") {
    const Instance path = Instance::anonymous(Topology(3, std::vector<Edge>{{0, 1}, {1, 2}}), {1},
                                              {IntervalSet::range(1, 1)}, 1);
    CHECK(solve_arh(path).algorithm == "dp2");
    CHECK(solve_arh(c4()).status == Status::sat);

    // Complete bipartite K_{6,14}, gapped approvals {1,3}, budgets too small for anything.
    std::vector<Edge> edges;
    for (int i = 0; i < 6; ++i)
        for (int v = 6; v < 20; ++v) edges.emplace_back(i, v);
    const Instance dense = Instance::anonymous(Topology(20, edges), {0, 1, 2, 3, 4, 5},
                                               std::vector<IntervalSet>(6, IntervalSet::from_values({1, 3})), 3);
    SolveOptions o;
    o.budget = Budget{0, 0, 0, 0};
    o.preprocess = false;
    const auto r = solve_arh(dense, o);
    CHECK(solve_arh(dense).status == Status::sat);
    CHECK(r.status == Status::undecided);
    CHECK(r.reason.find("exhausted") != std::string::npos);
}

TEST_CASE("solve_arh agrees with brute force under every strategy") {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        const auto in = sweep_instance({10, 4, 4, false, seed % 2 == 0}, seed);
        for (auto s : {Strategy::automatic, Strategy::signature_sets, Strategy::delta_guess, Strategy::neighborhood_guess}) {
            SolveOptions o;
            o.strategy = s;
            check_against_oracle(in, solve_arh(in, o));
        }
    }
}
