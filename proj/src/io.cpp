#include "refhouse/io.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <fstream>
#include <set>
#include <sstream>

namespace refhouse {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw FormatError(path + ": " + message);
}

std::string at(const std::string& path, std::size_t index) { return path + "[" + std::to_string(index) + "]"; }
std::string dot(const std::string& path, std::string_view key) { return path + "." + std::string(key); }

const json& field(const json& object, std::string_view key, const std::string& path) {
    if (!object.is_object()) fail(path, "expected an object");
    auto it = object.find(key);
    if (it == object.end()) fail(path, "missing key '" + std::string(key) + "'");
    return *it;
}

void only_keys(const json& object, std::initializer_list<std::string_view> allowed, const std::string& path) {
    for (auto it = object.begin(); it != object.end(); ++it)
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            fail(path, "unexpected key '" + it.key() + "'");
}

const json& array(const json& value, const std::string& path) {
    if (!value.is_array()) fail(path, "expected an array");
    return value;
}

std::int64_t integer(const json& value, const std::string& path, std::int64_t lo = 0, std::int64_t hi = INT_MAX) {
    if (!value.is_number_integer()) fail(path, "expected an integer");
    const bool negative = value.is_number_unsigned() ? false : value.get<std::int64_t>() < 0;
    if (!negative && value.is_number_unsigned() && value.get<std::uint64_t>() > static_cast<std::uint64_t>(hi))
        fail(path, "value out of range");
    const auto v = value.get<std::int64_t>();
    if (v < lo || v > hi)
        fail(path, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
    return v;
}

Topology parse_topology(const json& doc) {
    const int n = static_cast<int>(integer(field(doc, "vertices", "$"), "$.vertices"));
    const json& edges = array(field(doc, "edges", "$"), "$.edges");
    std::vector<Edge> list;
    list.reserve(edges.size());
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const std::string path = at("$.edges", k);
        const json& e = array(edges[k], path);
        if (e.size() != 2) fail(path, "expected a pair [u, v]");
        int u = static_cast<int>(integer(e[0], at(path, 0), 0, n - 1));
        int v = static_cast<int>(integer(e[1], at(path, 1), 0, n - 1));
        if (u == v) fail(path, "self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
        list.emplace_back(u, v);
    }
    std::set<Edge> seen;
    for (std::size_t k = 0; k < list.size(); ++k)
        if (!seen.insert(list[k]).second) fail(at("$.edges", k), "edge listed twice");
    return Topology(n, list);
}

IntervalSet parse_interval_set(const json& value, const std::string& path, int degree) {
    std::vector<Interval> pieces;
    for (std::size_t k = 0; k < array(value, path).size(); ++k) {
        const std::string p = at(path, k);
        const json& item = value[k];
        if (item.is_array()) {
            if (item.size() != 2) fail(p, "expected a count or an interval [lo, hi]");
            const int lo = static_cast<int>(integer(item[0], at(p, 0), 0, degree));
            const int hi = static_cast<int>(integer(item[1], at(p, 1), 0, degree));
            if (lo > hi) fail(p, "interval is reversed");
            pieces.push_back({lo, hi});
        } else {
            const int c = static_cast<int>(integer(item, p, 0, degree));
            pieces.push_back({c, c});
        }
    }
    return IntervalSet::from_intervals(std::move(pieces));
}

SubsetFamily parse_family(const json& value, const std::string& path, int universe, std::size_t& entries) {
    std::vector<std::vector<int>> sets;
    for (std::size_t k = 0; k < array(value, path).size(); ++k) {
        const std::string p = at(path, k);
        const json& set = array(value[k], p);
        std::vector<int> members;
        for (std::size_t t = 0; t < set.size(); ++t)
            members.push_back(static_cast<int>(integer(set[t], at(p, t), 0, universe - 1)));
        std::sort(members.begin(), members.end());
        if (std::adjacent_find(members.begin(), members.end()) != members.end()) fail(p, "set lists an agent twice");
        entries += members.size() + 1;
        if (entries > kMaxHedonicEntries)
            fail(p, "hedonic families exceed " + std::to_string(kMaxHedonicEntries) +
                        " subset entries; implicit encodings are not supported");
        sets.push_back(std::move(members));
    }
    return SubsetFamily(std::move(sets));
}

Fraction parse_fraction(const json& value, const std::string& path) {
    if (!value.is_array()) return Fraction(integer(value, path, 0, 1));
    if (value.size() != 2) fail(path, "expected a fraction [num, den]");
    const auto num = integer(value[0], at(path, 0), 0, INT_MAX);
    const auto den = integer(value[1], at(path, 1), 1, INT_MAX);
    return Fraction(num, den);
}

PaletteSet parse_palettes(const json& value, const std::string& path, int types) {
    std::vector<Palette> list;
    for (std::size_t k = 0; k < array(value, path).size(); ++k) {
        const std::string p = at(path, k);
        const json& entries = array(value[k], p);
        if (static_cast<int>(entries.size()) != types)
            fail(p, "palette has " + std::to_string(entries.size()) + " entries, expected " + std::to_string(types));
        std::vector<Fraction> fractions;
        for (std::size_t t = 0; t < entries.size(); ++t) fractions.push_back(parse_fraction(entries[t], at(p, t)));
        try {
            list.emplace_back(std::move(fractions));
        } catch (const InvalidInstance& e) {
            fail(p, e.what());
        }
    }
    return PaletteSet(std::move(list));
}

/// Objects in `list` carry dense ids; returns them ordered by id.
std::vector<const json*> by_id(const json& list, const std::string& path) {
    std::vector<const json*> out(array(list, path).size(), nullptr);
    for (std::size_t k = 0; k < list.size(); ++k) {
        const std::string p = at(path, k);
        const auto id = integer(field(list[k], "id", p), dot(p, "id"), 0, static_cast<std::int64_t>(list.size()) - 1);
        if (out[id]) fail(dot(p, "id"), "duplicate id " + std::to_string(id));
        out[id] = &list[k];
    }
    return out;
}

std::vector<int> parse_types(const json& value, const std::string& path, std::size_t count, int k) {
    if (array(value, path).size() != count)
        fail(path, "expected " + std::to_string(count) + " type indices, got " + std::to_string(value.size()));
    std::vector<int> out;
    for (std::size_t t = 0; t < value.size(); ++t) out.push_back(static_cast<int>(integer(value[t], at(path, t), 0, k - 1)));
    return out;
}

json fraction_json(const Fraction& f) { return json::array({f.numerator(), f.denominator()}); }

json palettes_json(const PaletteSet& set) {
    json out = json::array();
    for (const Palette& p : set.palettes()) {
        json entries = json::array();
        for (const Fraction& f : p.entries()) entries.push_back(fraction_json(f));
        out.push_back(std::move(entries));
    }
    return out;
}

json family_json(const SubsetFamily& family) {
    json out = json::array();
    for (const auto& s : family.sets()) out.push_back(s);
    return out;
}

} // namespace

json instance_to_json(const Instance& instance) {
    json doc;
    doc["variant"] = std::string(to_string(instance.variant()));
    doc["vertices"] = instance.vertex_count();
    json edges = json::array();
    for (auto [u, v] : instance.topology().edges()) edges.push_back({u, v});
    doc["edges"] = std::move(edges);

    json inhabitants = json::array();
    for (int i = 0; i < instance.inhabitant_count(); ++i) {
        json entry{{"id", i}, {"vertex", instance.vertex_of(i)}};
        switch (instance.variant()) {
        case Variant::anonymous: {
            json approval = json::array();
            for (const Interval& iv : instance.anonymous_approval(i).intervals()) approval.push_back({iv.lo, iv.hi});
            entry["approval"] = std::move(approval);
            break;
        }
        case Variant::hedonic: entry["approval"] = family_json(instance.inhabitant_family(i)); break;
        case Variant::diversity: entry["approval"] = palettes_json(instance.inhabitant_palettes(i)); break;
        }
        inhabitants.push_back(std::move(entry));
    }
    doc["inhabitants"] = std::move(inhabitants);

    if (instance.variant() == Variant::anonymous) {
        doc["refugees"] = instance.refugee_count();
    } else {
        json refugees = json::array();
        for (int r = 0; r < instance.refugee_count(); ++r)
            refugees.push_back({{"id", r},
                                {"approval", instance.variant() == Variant::hedonic
                                                 ? family_json(instance.refugee_family(r))
                                                 : palettes_json(instance.refugee_palettes(r))}});
        doc["refugees"] = std::move(refugees);
    }
    if (instance.variant() == Variant::diversity) {
        const auto& types = instance.types().type_of;
        const auto split = types.begin() + instance.inhabitant_count();
        doc["types"] = {{"k", instance.types().types},
                        {"inhabitants", std::vector<int>(types.begin(), split)},
                        {"refugees", std::vector<int>(split, types.end())}};
    }
    doc["meta"] = json::object();
    for (const auto& [key, value] : instance.meta()) doc["meta"][key] = value;
    return doc;
}

Instance instance_from_json(const json& doc) {
    if (!doc.is_object()) fail("$", "expected an instance object");
    const json& variant_field = field(doc, "variant", "$");
    if (!variant_field.is_string()) fail("$.variant", "expected a string");
    Variant variant;
    try {
        variant = parse_variant(variant_field.get<std::string>());
    } catch (const InvalidInstance& e) {
        fail("$.variant", e.what());
    }
    if (variant == Variant::diversity)
        only_keys(doc, {"variant", "vertices", "edges", "inhabitants", "refugees", "types", "meta"}, "$");
    else
        only_keys(doc, {"variant", "vertices", "edges", "inhabitants", "refugees", "meta"}, "$");

    Topology topology = parse_topology(doc);
    const int n = topology.vertex_count();

    const auto inhabitants = by_id(field(doc, "inhabitants", "$"), "$.inhabitants");
    const int ni = static_cast<int>(inhabitants.size());
    std::vector<VertexId> homes;
    std::vector<int> owner(n, kNone);
    for (int i = 0; i < ni; ++i) {
        const std::string p = "$.inhabitants[id=" + std::to_string(i) + "]";
        only_keys(*inhabitants[i], {"id", "vertex", "approval"}, p);
        const int v = static_cast<int>(integer(field(*inhabitants[i], "vertex", p), dot(p, "vertex"), 0, n - 1));
        if (owner[v] != kNone)
            fail(dot(p, "vertex"), "vertex " + std::to_string(v) + " already hosts inhabitant " + std::to_string(owner[v]));
        owner[v] = i;
        homes.push_back(v);
    }
    auto approval_of = [&](int i) -> const json& {
        return field(*inhabitants[i], "approval", "$.inhabitants[id=" + std::to_string(i) + "]");
    };
    auto approval_path = [](const char* group, int id) {
        return std::string("$.") + group + "[id=" + std::to_string(id) + "].approval";
    };

    Metadata meta;
    if (auto it = doc.find("meta"); it != doc.end()) {
        if (!it->is_object()) fail("$.meta", "expected an object");
        for (auto m = it->begin(); m != it->end(); ++m) meta[m.key()] = m->is_string() ? m->get<std::string>() : m->dump();
    }

    try {
        if (variant == Variant::anonymous) {
            const int nr = static_cast<int>(integer(field(doc, "refugees", "$"), "$.refugees", 1));
            std::vector<IntervalSet> approvals;
            for (int i = 0; i < ni; ++i)
                approvals.push_back(parse_interval_set(approval_of(i), approval_path("inhabitants", i), topology.degree(homes[i])));
            return Instance::anonymous(std::move(topology), std::move(homes), std::move(approvals), nr).with_meta(meta);
        }

        const auto refugees = by_id(field(doc, "refugees", "$"), "$.refugees");
        const int nr = static_cast<int>(refugees.size());
        if (nr == 0) fail("$.refugees", "an instance needs at least one refugee");
        for (int r = 0; r < nr; ++r) only_keys(*refugees[r], {"id", "approval"}, "$.refugees[id=" + std::to_string(r) + "]");
        auto refugee_approval = [&](int r) -> const json& {
            return field(*refugees[r], "approval", "$.refugees[id=" + std::to_string(r) + "]");
        };

        if (variant == Variant::hedonic) {
            std::size_t entries = 0;
            std::vector<SubsetFamily> fi, fr;
            for (int i = 0; i < ni; ++i) fi.push_back(parse_family(approval_of(i), approval_path("inhabitants", i), nr, entries));
            for (int r = 0; r < nr; ++r) fr.push_back(parse_family(refugee_approval(r), approval_path("refugees", r), ni, entries));
            return Instance::hedonic(std::move(topology), std::move(homes), std::move(fi), std::move(fr)).with_meta(meta);
        }

        const json& types = field(doc, "types", "$");
        only_keys(types, {"k", "inhabitants", "refugees"}, "$.types");
        const int k = static_cast<int>(integer(field(types, "k", "$.types"), "$.types.k", 1, 1 << 16));
        TypePartition partition{k, parse_types(field(types, "inhabitants", "$.types"), "$.types.inhabitants", ni, k)};
        const auto rt = parse_types(field(types, "refugees", "$.types"), "$.types.refugees", nr, k);
        partition.type_of.insert(partition.type_of.end(), rt.begin(), rt.end());
        std::vector<PaletteSet> pi, pr;
        for (int i = 0; i < ni; ++i) pi.push_back(parse_palettes(approval_of(i), approval_path("inhabitants", i), k));
        for (int r = 0; r < nr; ++r) pr.push_back(parse_palettes(refugee_approval(r), approval_path("refugees", r), k));
        return Instance::diversity(std::move(topology), std::move(homes), std::move(partition), std::move(pi), std::move(pr))
            .with_meta(meta);
    } catch (const InvalidInstance& e) {
        throw InvalidInstance(std::string("$: ") + e.what());
    }
}

namespace {

bool holds_object(const json& value) {
    if (value.is_object()) return true;
    if (value.is_array())
        for (const json& item : value)
            if (holds_object(item)) return true;
    return false;
}

// Objects one key per line; arrays without objects inside stay on a single line, so edge lists
// and approvals read as [[0,1],[1,2]].
void pretty(const json& value, int depth, std::string& out) {
    const std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
    if (value.is_object() && !value.empty()) {
        out += "{\n";
        for (auto it = value.begin(); it != value.end(); ++it) {
            out += pad + json(it.key()).dump() + ": ";
            pretty(*it, depth + 1, out);
            out += std::next(it) == value.end() ? "\n" : ",\n";
        }
        out += close + "}";
    } else if (value.is_array() && holds_object(value)) {
        out += "[\n";
        for (std::size_t k = 0; k < value.size(); ++k) {
            out += pad;
            pretty(value[k], depth + 1, out);
            out += k + 1 == value.size() ? "\n" : ",\n";
        }
        out += close + "]";
    } else {
        out += value.dump();
    }
}

} // namespace

std::string dump_canonical(const json& document) {
    std::string out;
    pretty(document, 0, out);
    return out + "\n";
}

json parse_json(std::string_view text, std::string_view origin) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw FormatError(std::string(origin) + ": " + e.what());
    }
}

std::string serialize_instance(const Instance& instance) { return dump_canonical(instance_to_json(instance)); }

Instance parse_instance(std::string_view text, std::string_view origin) {
    const json doc = parse_json(text, origin);
    try {
        return instance_from_json(doc);
    } catch (const FormatError& e) {
        throw FormatError(std::string(origin) + ": " + e.what());
    } catch (const InvalidInstance& e) {
        throw InvalidInstance(std::string(origin) + ": " + e.what());
    }
}

json housing_to_json(const Housing& housing, Variant variant) {
    return {{"variant", std::string(to_string(variant))},
            {"witness", std::vector<VertexId>(housing.placement().begin(), housing.placement().end())}};
}

Housing housing_from_json(const json& doc, std::optional<Variant>* variant) {
    if (!doc.is_object()) fail("$", "expected a housing object");
    if (auto it = doc.find("variant"); it != doc.end() && variant) {
        if (!it->is_string()) fail("$.variant", "expected a string");
        try {
            *variant = parse_variant(it->get<std::string>());
        } catch (const InvalidInstance& e) {
            fail("$.variant", e.what());
        }
    }
    if (auto it = doc.find("status"); it != doc.end() && (!it->is_string() || it->get<std::string>() != "sat"))
        fail("$.status", "only a sat result carries a housing");
    const json& witness = array(field(doc, "witness", "$"), "$.witness");
    std::vector<VertexId> placement;
    for (std::size_t r = 0; r < witness.size(); ++r)
        placement.push_back(static_cast<VertexId>(integer(witness[r], at("$.witness", r))));
    return Housing(std::move(placement));
}

json result_to_json(const SolveResult& result, Variant variant) {
    json doc{{"variant", std::string(to_string(variant))},
             {"status", std::string(to_string(result.status))},
             {"algorithm", result.algorithm},
             {"stats", {{"nodes", result.stats.nodes}, {"millis", result.stats.millis}}},
             {"preprocessing", result.preprocessing}};
    if (result.witness)
        doc["witness"] = std::vector<VertexId>(result.witness->placement().begin(), result.witness->placement().end());
    if (!result.reason.empty()) doc["reason"] = result.reason;
    return doc;
}

// ---------------------------------------------------------------------------
// Source formats

namespace {

struct Token {
    std::string text;
    int line;
};

/// Whitespace tokens, skipping '#' comment lines (and DIMACS 'c' lines when asked).
std::vector<Token> tokenize(std::string_view text, bool dimacs_comments = false) {
    std::vector<Token> out;
    std::istringstream in{std::string(text)};
    std::string line;
    for (int number = 1; std::getline(in, line); ++number) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        if (dimacs_comments && line[first] == 'c' && (first + 1 == line.size() || std::isspace(static_cast<unsigned char>(line[first + 1]))))
            continue;
        if (dimacs_comments && line[first] == '%') break;
        std::istringstream words(line);
        for (std::string w; words >> w;) out.push_back({w, number});
    }
    return out;
}

class Reader {
public:
    Reader(std::vector<Token> tokens, std::string what) : tokens_(std::move(tokens)), what_(std::move(what)) {}

    bool done() const { return pos_ >= tokens_.size(); }
    const Token* peek() const { return done() ? nullptr : &tokens_[pos_]; }

    [[noreturn]] void error(const std::string& message) const {
        const std::string where = done() ? "end of input" : "line " + std::to_string(tokens_[pos_].line);
        throw FormatError(what_ + ": " + where + ": " + message);
    }

    std::string word(const char* expected) {
        if (done()) error(std::string("expected ") + expected);
        return tokens_[pos_++].text;
    }

    int number(const char* expected, long lo = 0, long hi = INT_MAX) {
        if (done()) error(std::string("expected ") + expected);
        const std::string& t = tokens_[pos_].text;
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != t.size()) error(std::string("expected ") + expected + ", got '" + t + "'");
        if (v < lo || v > hi)
            error(std::string(expected) + " " + t + " outside [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
        ++pos_;
        return static_cast<int>(v);
    }

    void finish() const {
        if (!done()) error("unexpected trailing token '" + tokens_[pos_].text + "'");
    }

private:
    std::vector<Token> tokens_;
    std::string what_;
    std::size_t pos_ = 0;
};

Graph read_graph(Reader& in, std::vector<int>* separation) {
    Graph g;
    g.vertices = in.number("vertex count");
    const int m = in.number("edge count");
    for (int e = 0; e < m; ++e) {
        const int u = in.number("edge endpoint", 0, g.vertices - 1);
        const int v = in.number("edge endpoint", 0, g.vertices - 1);
        g.edges.emplace_back(std::min(u, v), std::max(u, v));
        if (separation) separation->push_back(in.number("separation"));
    }
    return g;
}

} // namespace

Cnf parse_dimacs(std::string_view text) {
    Reader in(tokenize(text, true), "dimacs");
    if (in.word("'p cnf' header") != "p" || in.word("'cnf'") != "cnf") in.error("expected 'p cnf <variables> <clauses>'");
    Cnf f;
    f.variables = in.number("variable count");
    const int clauses = in.number("clause count");
    std::vector<Literal> clause;
    while (!in.done()) {
        const int lit = in.number("literal", -static_cast<long>(f.variables), f.variables);
        if (lit == 0) {
            f.clauses.push_back(std::move(clause));
            clause.clear();
        } else {
            clause.push_back({std::abs(lit) - 1, lit > 0});
        }
    }
    if (!clause.empty()) in.error("clause not terminated by 0");
    if (static_cast<int>(f.clauses.size()) != clauses)
        in.error("header announces " + std::to_string(clauses) + " clauses, found " + std::to_string(f.clauses.size()));
    return f;
}

std::string write_dimacs(const Cnf& formula) {
    std::ostringstream out;
    out << "p cnf " << formula.variables << ' ' << formula.clauses.size() << '\n';
    for (const auto& clause : formula.clauses) {
        for (const Literal& l : clause) out << (l.positive ? "" : "-") << l.variable + 1 << ' ';
        out << "0\n";
    }
    return out.str();
}

Graph parse_graph(std::string_view text) {
    Reader in(tokenize(text), "graph");
    Graph g = read_graph(in, nullptr);
    in.finish();
    return g;
}

MulticolouredClique parse_clique(std::string_view text) {
    Reader in(tokenize(text), "clique");
    MulticolouredClique p;
    p.graph = read_graph(in, nullptr);
    if (in.word("'colours' line") != "colours") in.error("expected 'colours' followed by one colour per vertex");
    for (int v = 0; v < p.graph.vertices; ++v) {
        p.colour.push_back(in.number("colour"));
        p.colours = std::max(p.colours, p.colour.back() + 1);
    }
    in.finish();
    return p;
}

ChannelAssignment parse_channel(std::string_view text, int channels) {
    Reader in(tokenize(text), "channel");
    ChannelAssignment p;
    p.graph = read_graph(in, &p.separation);
    p.channels = channels;
    in.finish();
    return p;
}

BinPacking parse_bin_packing(std::string_view text) {
    Reader in(tokenize(text), "binpacking");
    BinPacking p;
    p.capacity = in.number("capacity");
    p.bins = in.number("bin count");
    while (!in.done()) p.items.push_back(in.number("item size", 1));
    return p;
}

SetCover parse_set_cover(std::string_view text) {
    Reader in(tokenize(text), "setcover");
    SetCover p;
    p.universe = in.number("universe size");
    p.k = in.number("k");
    while (!in.done()) {
        const int size = in.number("set size", 0, p.universe);
        std::vector<int> set;
        for (int t = 0; t < size; ++t) set.push_back(in.number("element", 0, p.universe - 1));
        p.sets.push_back(std::move(set));
    }
    return p;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingInput("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content)) throw Error("cannot write '" + path + "'");
}

} // namespace refhouse
