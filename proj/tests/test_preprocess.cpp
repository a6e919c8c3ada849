#include "oracles.hpp"

#include "refhouse/errors.hpp"
#include "refhouse/preprocess.hpp"
#include "refhouse/random.hpp"

#include <doctest.h>

#include <set>

using namespace refhouse;

namespace {

Instance triangle_intolerant() {
    return Instance::anonymous(Topology(3, std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}}), {0},
                               {IntervalSet::from_values({0})}, 2);
}

Instance random_arh(std::uint64_t seed, int n = 9) {
    Rng rng(seed * 7919 + 1);
    RandomShape shape;
    shape.vertices = n;
    shape.inhabitants = rng.between(1, n / 2);
    shape.refugees = rng.between(1, std::max(1, n - shape.inhabitants - 1));
    shape.edge_probability = 0.2 + 0.1 * rng.below(4);
    return random_instance(shape, seed);
}

// Original-vertex view of a simplified instance: kept vertices, edges and inhabitant approvals.
struct View {
    std::set<VertexId> vertices;
    std::set<Edge> edges;
    std::set<std::pair<VertexId, std::vector<Interval>>> inhabitants;
    bool operator==(const View&) const = default;
};

View view(const Preprocessed& p) {
    View out;
    const auto& map = p.transcript.to_original;
    out.vertices.insert(map.begin(), map.end());
    for (auto [u, v] : p.instance.topology().edges())
        out.edges.insert({std::min(map[u], map[v]), std::max(map[u], map[v])});
    for (int i = 0; i < p.instance.inhabitant_count(); ++i) {
        const auto iv = p.instance.anonymous_approval(i).intervals();
        out.inhabitants.insert({map[p.instance.vertex_of(i)], {iv.begin(), iv.end()}});
    }
    return out;
}

Preprocessed then(const Preprocessed& first, Preprocessed (*rule)(const Instance&)) {
    Preprocessed second = rule(first.instance);
    return {second.instance, compose(first.transcript, second.transcript)};
}

} // namespace

TEST_CASE("the intolerant triangle is flagged") {
    const auto in = triangle_intolerant();
    const auto removed = remove_intolerant(in);
    CHECK(removed.instance.vertex_count() == 0);
    CHECK(removed.instance.refugee_count() == 2);
    REQUIRE(trivial_checks(removed.instance));
    CHECK(trivial_checks(removed.instance)->status == Status::unsat);
    const auto pre = preprocess(in);
    CHECK(pre.transcript.infeasible);
    CHECK_FALSE(pre.transcript.reason.empty());
}

TEST_CASE("dropping the empty-empty edge of the triangle leaves a path") {
    const auto dropped = drop_homogeneous_edges(triangle_intolerant());
    CHECK(dropped.instance.topology().edges() == std::vector<Edge>{{0, 1}, {0, 2}});
    REQUIRE(dropped.transcript.steps.size() == 1);
    CHECK(dropped.transcript.steps[0].removed_edges == std::vector<Edge>{{1, 2}});
}

TEST_CASE("rules without work are the identity") {
    // Path 0-1-2 with the inhabitant in the middle tolerating one refugee.
    const Instance in = Instance::anonymous(Topology(3, std::vector<Edge>{{0, 1}, {1, 2}}), {1},
                                            {IntervalSet::range(1, 1)}, 1);
    for (auto rule : {remove_intolerant, drop_homogeneous_edges}) {
        const auto out = rule(in);
        CHECK(out.instance == in);
        CHECK(out.transcript.steps.empty());
        CHECK(lift_housing(out.transcript, Housing({2})) == Housing({2}));
    }
    CHECK_FALSE(trivial_checks(in));
}

TEST_CASE("an approval of {0} beyond the achievable range still counts as intolerant") {
    // Inhabitant 0 on a leaf with one empty neighbour approves {0, 5}: effectively only 0.
    const Instance in = Instance::anonymous(Topology(4, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}}), {0, 3},
                                            {IntervalSet::from_values({0}), IntervalSet::range(0, 1)}, 1);
    const auto out = remove_intolerant(in);
    CHECK(out.instance.inhabitant_count() == 1);
    CHECK(out.instance.vertex_count() == 2);
}

TEST_CASE("counting arguments") {
    const Topology path(4, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}});
    const auto too_many = Instance::anonymous(path, {0}, {IntervalSet::range(0, 1)}, 4);
    REQUIRE(trivial_checks(too_many));
    CHECK(trivial_checks(too_many)->status == Status::unsat);

    // Inhabitants 0 and 1 are adjacent to no empty vertex; inhabitant 0 insists on a refugee.
    const Instance stuck = Instance::anonymous(Topology(3, std::vector<Edge>{{0, 1}}), {0, 1},
                                               {IntervalSet::range(1, 1), IntervalSet::range(0, 1)}, 1);
    REQUIRE(trivial_checks(stuck));
    CHECK(trivial_checks(stuck)->status == Status::unsat);
}

TEST_CASE("lifting through remove_intolerant") {
    // Star centre 0 intolerant with leaves 1,2; a separate path 3-4-5 with inhabitant at 4.
    const Instance in = Instance::anonymous(Topology(6, std::vector<Edge>{{0, 1}, {0, 2}, {3, 4}, {4, 5}}), {0, 4},
                                            {IntervalSet::from_values({0}), IntervalSet::range(1, 2)}, 2);
    const auto out = remove_intolerant(in);
    REQUIRE(out.instance.vertex_count() == 3);
    CHECK(out.transcript.to_original == std::vector<VertexId>{3, 4, 5});
    const Housing lifted = lift_housing(out.transcript, Housing({0, 2}));
    CHECK(lifted == Housing({3, 5}));
    CHECK(verify_arh(in, lifted));
    CHECK_THROWS_AS(lift_housing(out.transcript, Housing({7})), InvalidHousing);
}

TEST_CASE("replay reproduces the simplified instance") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Instance in = random_arh(seed);
        const auto pre = preprocess(in);
        if (pre.transcript.infeasible) continue;
        CHECK(replay(in, pre.transcript).topology() == pre.instance.topology());
        CHECK(replay(in, pre.transcript).inhabitant_count() == pre.instance.inhabitant_count());
    }
}

TEST_CASE("each rule preserves solvability and lifted witnesses verify") {
    int changed = 0;
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        const Instance in = random_arh(seed, 6 + static_cast<int>(seed % 5));
        const bool expected = oracle::arh(in).has_value();
        for (auto rule : {remove_intolerant, drop_homogeneous_edges}) {
            const auto out = rule(in);
            changed += !out.transcript.steps.empty();
            const auto witness = oracle::arh(out.instance);
            CHECK(witness.has_value() == expected);
            if (witness) {
                const Housing lifted = lift_housing(out.transcript, Housing(*witness));
                CHECK(verify_arh(in, lifted));
                CHECK(verify_arh(out.instance, Housing(*witness)));
            }
        }
        if (auto verdict = trivial_checks(in)) CHECK_FALSE(expected);
        const auto pre = preprocess(in);
        if (pre.transcript.infeasible) CHECK_FALSE(expected);
    }
    CHECK(changed > 100);
}

TEST_CASE("the two rules commute") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const Instance in = random_arh(seed, 5 + static_cast<int>(seed % 6));
        const Preprocessed start{in, PreprocessTranscript::identity(in)};
        const auto a = then(then(start, remove_intolerant), drop_homogeneous_edges);
        const auto b = then(then(start, drop_homogeneous_edges), remove_intolerant);
        CHECK(view(a) == view(b));
    }
}

TEST_CASE("hedonic rules preserve solvability") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        RandomShape shape;
        shape.variant = Variant::hedonic;
        shape.vertices = 7;
        shape.inhabitants = 3;
        shape.refugees = 1 + static_cast<int>(seed % 3);
        const Instance in = random_instance(shape, seed);
        const bool expected = oracle::hrh(in).has_value();
        for (auto rule : {remove_intolerant_hedonic, drop_homogeneous_edges}) {
            const auto out = rule(in);
            const auto witness = oracle::hrh(out.instance);
            CHECK(witness.has_value() == expected);
            if (witness) CHECK(verify_hrh(in, lift_housing(out.transcript, Housing(*witness))));
        }
    }
}
