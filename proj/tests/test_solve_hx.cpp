#include "oracles.hpp"

#include "refhouse/errors.hpp"
#include "refhouse/random.hpp"
#include "refhouse/solve_arh.hpp"
#include "refhouse/solve_hx.hpp"

#include <doctest.h>

using namespace refhouse;

namespace {

const std::vector<Edge> kCycle4{{0, 1}, {1, 2}, {2, 3}, {0, 3}};

SubsetFamily fam(std::vector<std::vector<int>> sets) { return SubsetFamily(std::move(sets)); }
Palette pal(std::vector<Fraction> f) { return Palette(std::move(f)); }

Instance c4_hedonic() {
    return Instance::hedonic(Topology(4, kCycle4), {0, 1}, {fam({{0}, {1}}), fam({{1}, {0, 1}})},
                             {fam({{0}}), fam({{1}})});
}

Instance c4_diversity() {
    const Fraction half(1, 2);
    return Instance::diversity(Topology(4, kCycle4), {0, 1}, TypePartition{2, {0, 1, 0}},
                               {PaletteSet({pal({1, 0}), pal({half, half})}), PaletteSet({pal({1, 0})})},
                               {PaletteSet({pal({1, 0})})});
}

Instance random_of(Variant variant, std::uint64_t seed) {
    Rng rng(seed * 31 + 7);
    RandomShape shape;
    shape.variant = variant;
    shape.vertices = rng.between(3, 9);
    shape.inhabitants = rng.between(0, std::min(4, shape.vertices - 1));
    shape.refugees = rng.between(1, std::min(5, shape.vertices - shape.inhabitants));
    shape.edge_probability = 0.2 + 0.1 * rng.below(5);
    shape.types = rng.between(1, 3);
    return random_instance(shape, seed);
}

} // namespace

TEST_CASE("hedonic four-cycle") {
    const auto r = solve_hrh_bruteforce(c4_hedonic());
    REQUIRE(r.status == Status::sat);
    CHECK(*r.witness == Housing({3, 2}));
    CHECK(*solve(c4_hedonic()).witness == Housing({3, 2}));
}

TEST_CASE("a refugee with an empty family blocks everything") {
    const Instance in = Instance::hedonic(Topology(3, std::vector<Edge>{{0, 1}}), {0}, {fam({{}, {0}})},
                                          {fam({{}}), SubsetFamily()});
    CHECK(solve_hrh_bruteforce(in).status == Status::unsat);
    CHECK(solve(in).status == Status::unsat);
}

TEST_CASE("diversity four-cycle") {
    const auto r = solve_drh_bruteforce(c4_diversity());
    REQUIRE(r.status == Status::sat);
    CHECK(*r.witness == Housing({3}));
    CHECK(*solve(c4_diversity()).witness == Housing({3}));
}

TEST_CASE("single type: everyone satisfied") {
    // k = 1; approvals {(1), (0)} accept every neighbourhood.
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const Graph g = random_graph(8, 0.4, rng);
        const int ni = rng.between(0, 4), nr = rng.between(1, 8 - ni);
        std::vector<VertexId> homes(ni);
        std::iota(homes.begin(), homes.end(), 0);
        const PaletteSet any({pal({1}), Palette::zero(1)});
        const Instance in = Instance::diversity(Topology(8, g.edges), homes, TypePartition{1, std::vector<int>(ni + nr, 0)},
                                                std::vector<PaletteSet>(ni, any), std::vector<PaletteSet>(nr, any));
        CHECK(solve_drh_bruteforce(in).status == Status::sat);
    }
}

TEST_CASE("pruned backtrackers agree with unpruned enumeration") {
    int sat = 0, unsat = 0;
    for (Variant variant : {Variant::hedonic, Variant::diversity}) {
        for (std::uint64_t seed = 0; seed < 300; ++seed) {
            const Instance in = random_of(variant, seed);
            const bool expected = oracle::solvable(in);
            const auto r = variant == Variant::hedonic ? solve_hrh_bruteforce(in) : solve_drh_bruteforce(in);
            REQUIRE(r.status != Status::undecided);
            CHECK((r.status == Status::sat) == expected);
            if (r.witness) CHECK(verify(in, *r.witness));
            CHECK(solve(in).status == r.status);
            (expected ? sat : unsat)++;
        }
    }
    CHECK(sat > 50);
    CHECK(unsat > 50);
}

TEST_CASE("only automatic and brute strategies apply beyond the anonymous variant") {
    SolveOptions o;
    o.strategy = Strategy::maxdeg2;
    CHECK_THROWS_AS(solve(c4_hedonic(), o), PreconditionViolated);
    o.strategy = Strategy::bruteforce;
    CHECK(solve(c4_hedonic(), o).status == Status::sat);
}

TEST_CASE("budget exhaustion is undecided") {
    RandomShape shape;
    shape.variant = Variant::hedonic;
    shape.vertices = 12;
    shape.inhabitants = 2;
    shape.refugees = 6;
    Budget tiny;
    tiny.nodes = 1;
    int undecided = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        undecided += solve_hrh_bruteforce(random_instance(shape, seed), tiny).status == Status::undecided;
    CHECK(undecided > 0);
}

TEST_CASE("anonymous to hedonic on the four-cycle") {
    const Instance source = Instance::anonymous(Topology(4, kCycle4), {0, 1},
                                                {IntervalSet::range(0, 1), IntervalSet::range(0, 0)}, 1);
    const auto image = arh_to_hrh(source);
    // Two vertex refugees, a guard inhabitant and one guard leaf.
    CHECK(image.instance.refugee_count() == 2);
    CHECK(image.instance.inhabitant_count() == 3);
    CHECK(image.instance.vertex_count() == 4 + 2);
    const auto r = solve_hrh_bruteforce(image.instance);
    REQUIRE(r.status == Status::sat);
    const Housing back = image.certificate.to_source(*r.witness);
    CHECK(back == Housing({3}));
    CHECK(verify_arh(source, back));
}

TEST_CASE("anonymous to hedonic with no spare vertices") {
    const Instance source = Instance::anonymous(Topology(3, std::vector<Edge>{{0, 1}, {1, 2}}), {1},
                                                {IntervalSet::range(2, 2)}, 2);
    const auto image = arh_to_hrh(source);
    const int guard = image.instance.inhabitant_count() - 1;
    CHECK(image.instance.topology().degree(image.instance.vertex_of(guard)) == 0);
    REQUIRE(image.instance.inhabitant_family(guard).size() == 1);
    CHECK(image.instance.inhabitant_family(guard).sets()[0].empty());
    CHECK(solve_hrh_bruteforce(image.instance).status == Status::sat);
}

TEST_CASE("anonymous to hedonic preserves solvability") {
    int checked = 0;
    for (std::uint64_t seed = 0; checked < 100; ++seed) {
        Rng rng(seed);
        RandomShape shape;
        shape.vertices = rng.between(3, 9);
        shape.inhabitants = rng.between(0, std::min(3, shape.vertices - 1));
        shape.refugees = rng.between(1, shape.vertices - shape.inhabitants);
        const Instance source = random_instance(shape, seed);
        if (source.empty_vertices().size() > 8) continue;
        ++checked;
        const auto image = arh_to_hrh(source);
        const auto r = solve_hrh_bruteforce(image.instance);
        REQUIRE(r.status != Status::undecided);
        CHECK((r.status == Status::sat) == oracle::arh(source).has_value());
        if (r.witness) CHECK(verify_arh(source, image.certificate.to_source(*r.witness)));
    }
}

TEST_CASE("anonymous to hedonic refuses oversized families") {
    std::vector<Edge> edges;
    for (int v = 1; v <= 30; ++v) edges.emplace_back(0, v);
    const Instance wide = Instance::anonymous(Topology(31, edges), {0}, {IntervalSet::range(0, 30)}, 15);
    CHECK_THROWS_AS(arh_to_hrh(wide, 1000), BudgetExceeded);
}
