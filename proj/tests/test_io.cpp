#include "refhouse/io.hpp"
#include "refhouse/random.hpp"
#include "refhouse/solve_hx.hpp"

#include <doctest.h>

using namespace refhouse;
using nlohmann::json;

namespace {

std::string fixture(const std::string& name) { return read_file(std::string(REFHOUSE_FIXTURES) + "/" + name); }

std::string error_of(const std::string& text) {
    try {
        parse_instance(text, "doc");
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

json c4() { return parse_json(fixture("c4_anonymous.json"), "c4"); }

} // namespace

TEST_CASE("generated instances round-trip") {
    for (Variant variant : {Variant::anonymous, Variant::hedonic, Variant::diversity}) {
        for (std::uint64_t seed = 0; seed < 60; ++seed) {
            RandomShape shape;
            shape.variant = variant;
            shape.vertices = 5 + static_cast<int>(seed % 6);
            shape.types = 1 + static_cast<int>(seed % 3);
            const Instance in = random_instance(shape, seed);
            const std::string text = serialize_instance(in);
            const Instance back = parse_instance(text);
            CHECK(back == in);
            CHECK(serialize_instance(back) == text);
        }
    }
}

TEST_CASE("canonical form ignores key order and spacing") {
    const std::string a = R"({"vertices":3,"variant":"arh","refugees":1,"edges":[[0,1]],
        "inhabitants":[{"approval":[0],"vertex":0,"id":0}]})";
    const std::string b = R"({ "inhabitants": [ {"id": 0, "vertex": 0, "approval": [[0, 0]]} ],
        "edges": [ [0, 1] ], "refugees": 1, "variant": "arh", "vertices": 3 })";
    const std::string ca = serialize_instance(parse_instance(a)), cb = serialize_instance(parse_instance(b));
    CHECK(ca == cb);
    CHECK(ca.back() == '\n');
    CHECK(dump_canonical(json::parse(ca)) == ca);
    CHECK(ca.find("\"approval\": [[0,0]]") != std::string::npos);
}

TEST_CASE("fixtures load") {
    const Instance a = parse_instance(fixture("c4_anonymous.json"));
    CHECK(a.variant() == Variant::anonymous);
    CHECK(a.vertex_count() == 4);
    const Instance h = parse_instance(fixture("c4_hedonic.json"));
    CHECK(h.refugee_count() == 2);
    const Instance d = parse_instance(fixture("c4_diversity.json"));
    CHECK(d.variant() == Variant::diversity);
    std::optional<Variant> named;
    const Housing w = housing_from_json(parse_json(fixture("c4_diversity_housing.json"), "h"), &named);
    CHECK(named == Variant::diversity);
    CHECK(verify(d, w));
}

TEST_CASE("errors name their position") {
    json doc = c4();
    doc["edges"][2] = {1, 1};
    CHECK(error_of(doc.dump()).find("$.edges[2]: self-loop") != std::string::npos);

    doc = c4();
    doc["edges"].push_back({1, 0});
    CHECK(error_of(doc.dump()).find("$.edges[4]: edge listed twice") != std::string::npos);

    doc = c4();
    doc["inhabitants"][1]["approval"] = json::array({json::array({2, 1})});
    CHECK(error_of(doc.dump()).find("approval[0]: interval is reversed") != std::string::npos);

    doc = c4();
    doc["colour"] = 3;
    CHECK(error_of(doc.dump()).find("unexpected key 'colour'") != std::string::npos);

    doc = c4();
    doc.erase("vertices");
    CHECK(error_of(doc.dump()).find("missing key 'vertices'") != std::string::npos);

    doc = c4();
    doc["inhabitants"][1]["vertex"] = 0;
    CHECK(error_of(doc.dump()).find("already hosts inhabitant 0") != std::string::npos);

    doc = c4();
    doc["refugees"] = 0;
    CHECK(error_of(doc.dump()).find("$.refugees") != std::string::npos);

    doc = c4();
    doc["variant"] = "xrh";
    CHECK(error_of(doc.dump()).find("$.variant") != std::string::npos);

    CHECK_THROWS_AS(parse_instance(fixture("truncated.json")), FormatError);
    CHECK(error_of("{\"vertices\": 3,").rfind("doc: ", 0) == 0);
    CHECK_THROWS_AS(read_file(std::string(REFHOUSE_FIXTURES) + "/absent.json"), MissingInput);
}

TEST_CASE("hedonic entry cap") {
    json doc = parse_json(fixture("c4_hedonic.json"), "h");
    json huge = json::array();
    for (std::size_t i = 0; i <= kMaxHedonicEntries; ++i) huge.push_back(json::array({0}));
    doc["inhabitants"][0]["approval"] = huge;
    CHECK(error_of(doc.dump()).find("exceed") != std::string::npos);
}

TEST_CASE("diversity palettes accept fractions and reduce them") {
    json doc = parse_json(fixture("c4_diversity.json"), "d");
    doc["inhabitants"][0]["approval"][1] = json::array({json::array({2, 4}), json::array({3, 6})});
    const Instance in = parse_instance(doc.dump());
    CHECK(serialize_instance(in).find("[[1,2],[1,2]]") != std::string::npos);
    doc["inhabitants"][0]["approval"][1] = json::array({1});
    CHECK(error_of(doc.dump()).find("palette has 1 entries, expected 2") != std::string::npos);
}

TEST_CASE("housing and result documents") {
    const Housing h({3, 2});
    const json doc = housing_to_json(h, Variant::hedonic);
    std::optional<Variant> named;
    CHECK(housing_from_json(doc, &named) == h);
    CHECK(named == Variant::hedonic);

    SolveResult r;
    r.status = Status::sat;
    r.algorithm = "hrh-brute";
    r.witness = h;
    const json out = result_to_json(r, Variant::hedonic);
    CHECK(out.at("status") == "sat");
    CHECK(housing_from_json(out) == h);

    r.status = Status::unsat;
    r.witness.reset();
    CHECK_THROWS_AS(housing_from_json(result_to_json(r, Variant::hedonic)), FormatError);
}

TEST_CASE("DIMACS") {
    const Cnf f = parse_dimacs(fixture("balanced.cnf"));
    CHECK(f.variables == 3);
    REQUIRE(f.clauses.size() == 3);
    CHECK(f.clauses[0] == std::vector<Literal>{{0, true}, {1, false}});
    CHECK(parse_dimacs(write_dimacs(f)).clauses == f.clauses);
    CHECK(parse_dimacs("c hi\np cnf 1 1\n1 0\n%\n0\n").clauses.size() == 1);
    CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n2 0\n"), FormatError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 1 2\n1 0\n"), FormatError);
}

TEST_CASE("graph-based source formats") {
    const Graph g = parse_graph("# path\n3 2\n0 1\n1 2\n");
    CHECK(g.vertices == 3);
    CHECK(g.edges.size() == 2);
    CHECK_THROWS_AS(parse_graph("3 2\n0 1\n"), FormatError);
    CHECK_THROWS_AS(parse_graph("2 1\n0 5\n"), FormatError);

    const auto c = parse_clique("4 1\n0 2\ncolours 0 0 1 1\n");
    CHECK(c.colours == 2);
    CHECK(c.colour == std::vector<int>{0, 0, 1, 1});

    const auto ch = parse_channel("2 1\n0 1 2\n", 3);
    CHECK(ch.separation == std::vector<int>{2});
    CHECK(ch.channels == 3);

    const auto bp = parse_bin_packing("3 2 1 2 1\n");
    CHECK(bp.capacity == 3);
    CHECK(bp.bins == 2);
    CHECK(bp.items == std::vector<int>{1, 2, 1});

    const auto sc = parse_set_cover("3 2\n2 0 1\n1 2\n");
    CHECK(sc.universe == 3);
    CHECK(sc.k == 2);
    CHECK(sc.sets == std::vector<std::vector<int>>{{0, 1}, {2}});
    const std::string message = [] {
        try {
            parse_set_cover("3 2\n2 0 x\n");
        } catch (const FormatError& e) {
            return std::string(e.what());
        }
        return std::string();
    }();
    CHECK(message.find("setcover: line 2") != std::string::npos);
}
