#include "refhouse/reductions.hpp"

#include "refhouse/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace refhouse {
namespace {

std::vector<char> occupied_mask(const Housing& housing, int vertices) {
    std::vector<char> mask(vertices, 0);
    for (VertexId v : housing.placement())
        if (v >= 0 && v < vertices) mask[v] = 1;
    return mask;
}

int max_vertex(const Housing& housing) {
    int top = 0;
    for (VertexId v : housing.placement()) top = std::max(top, v + 1);
    return top;
}

/// Validates a formula and removes repeated literals inside a clause.
Cnf normalized(const Cnf& formula, const char* generator) {
    Cnf out{formula.variables, {}};
    for (const auto& clause : formula.clauses) {
        std::vector<Literal> unique;
        for (const auto& lit : clause) {
            if (lit.variable < 0 || lit.variable >= formula.variables)
                throw PreconditionViolated(std::string(generator) + ": literal refers to unknown variable " +
                                           std::to_string(lit.variable + 1));
            if (std::find(unique.begin(), unique.end(), lit) == unique.end()) unique.push_back(lit);
        }
        out.clauses.push_back(std::move(unique));
    }
    if (!is_two_balanced(out))
        throw PreconditionViolated(std::string(generator) + ": formula is not a 2-balanced 3-CNF");
    return out;
}

/// Path t-v-f per variable, one clause vertex per clause joined to the literal ports.
std::vector<Edge> variable_clause_edges(const Cnf& f) {
    const int n = f.variables;
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        edges.emplace_back(3 * i, 3 * i + 1);
        edges.emplace_back(3 * i + 1, 3 * i + 2);
    }
    for (std::size_t j = 0; j < f.clauses.size(); ++j)
        for (const auto& lit : f.clauses[j])
            edges.emplace_back(3 * lit.variable + (lit.positive ? 0 : 2), 3 * n + static_cast<int>(j));
    return edges;
}

std::vector<int> clause_variables(const std::vector<Literal>& clause) {
    std::vector<int> vars;
    for (const auto& lit : clause) vars.push_back(lit.variable);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

Metadata cnf_meta(const char* construction, const Cnf& f) {
    return {{"construction", construction},
            {"source", "cnf"},
            {"variables", std::to_string(f.variables)},
            {"clauses", std::to_string(f.clauses.size())}};
}

AssignmentMap ports_of(const Cnf& f) {
    AssignmentMap map;
    for (int i = 0; i < f.variables; ++i) map.true_port.push_back(3 * i);
    return map;
}

struct ColourClasses {
    int k = 0;
    int size = 0;
    std::vector<std::vector<int>> members;  // sorted
    std::vector<int> position;              // index of each vertex inside its class
    // edges[i][j] for i < j: (position in i, position in j), sorted
    std::vector<std::vector<std::vector<std::pair<int, int>>>> edges;
};

ColourClasses colour_classes(const MulticolouredClique& p, const char* generator) {
    const std::string name(generator);
    if (p.colours < 2) throw PreconditionViolated(name + ": needs at least two colour classes");
    if (static_cast<int>(p.colour.size()) != p.graph.vertices)
        throw PreconditionViolated(name + ": colour list does not match the vertex count");
    Topology(p.graph.vertices, p.graph.edges);  // validates simplicity
    ColourClasses c;
    c.k = p.colours;
    c.members.resize(c.k);
    c.position.resize(p.graph.vertices);
    for (int v = 0; v < p.graph.vertices; ++v) {
        if (p.colour[v] < 0 || p.colour[v] >= c.k) throw PreconditionViolated(name + ": colour out of range");
        c.position[v] = static_cast<int>(c.members[p.colour[v]].size());
        c.members[p.colour[v]].push_back(v);
    }
    c.size = static_cast<int>(c.members[0].size());
    for (const auto& m : c.members)
        if (static_cast<int>(m.size()) != c.size || c.size == 0)
            throw PreconditionViolated(name + ": colour classes must be non-empty and of equal size");
    c.edges.assign(c.k, std::vector<std::vector<std::pair<int, int>>>(c.k));
    for (auto [u, v] : p.graph.edges) {
        int a = u, b = v;
        if (p.colour[a] == p.colour[b]) throw PreconditionViolated(name + ": edge inside a colour class");
        if (p.colour[a] > p.colour[b]) std::swap(a, b);
        c.edges[p.colour[a]][p.colour[b]].push_back({c.position[a], c.position[b]});
    }
    for (auto& row : c.edges)
        for (auto& list : row) std::sort(list.begin(), list.end());
    return c;
}

Palette unit_palette(int types, int at) {
    std::vector<Fraction> entries(types, Fraction(0));
    entries[at] = 1;
    return Palette(std::move(entries));
}

Palette split_palette(int types, std::vector<std::pair<int, Fraction>> parts) {
    std::vector<Fraction> entries(types, Fraction(0));
    for (auto [t, f] : parts) entries[t] += f;
    return Palette(std::move(entries));
}

} // namespace

std::vector<bool> AssignmentMap::decode(const Housing& housing) const {
    int top = max_vertex(housing);
    for (VertexId v : true_port) top = std::max(top, v + 1);
    const auto mask = occupied_mask(housing, top);
    std::vector<bool> out;
    for (VertexId v : true_port) out.push_back(mask[v] != 0);
    return out;
}

std::vector<int> SelectionMap::decode(const Housing& housing) const {
    int top = max_vertex(housing);
    for (VertexId v : port) top = std::max(top, v + 1);
    const auto mask = occupied_mask(housing, top);
    std::vector<int> out;
    for (std::size_t i = 0; i < port.size(); ++i)
        if (mask[port[i]]) out.push_back(static_cast<int>(i));
    return out;
}

std::vector<int> CliqueArhMap::decode(const Housing& housing) const {
    const auto mask = occupied_mask(housing, max_vertex(housing));
    std::vector<int> out;
    for (std::size_t i = 0; i < selection.size(); ++i) {
        int count = 0;
        for (VertexId v : selection[i]) count += v < static_cast<int>(mask.size()) && mask[v];
        out.push_back(count >= 1 && count <= static_cast<int>(members[i].size()) ? members[i][count - 1] : kNone);
    }
    return out;
}

std::vector<int> CliqueHrhMap::decode(const Housing& housing) const {
    const int n = members.empty() ? 0 : static_cast<int>(members[0].size());
    std::vector<int> out(selection_leaf.size(), kNone);
    for (int r = 0; r < housing.size(); ++r)
        for (std::size_t i = 0; i < selection_leaf.size(); ++i)
            if (housing[r] == selection_leaf[i] && r / n == static_cast<int>(i)) out[i] = members[i][r % n];
    return out;
}

std::vector<int> PackingMap::decode(const Housing& housing) const {
    const auto mask = occupied_mask(housing, max_vertex(housing));
    auto filled = [&](VertexId v) { return v < static_cast<int>(mask.size()) && mask[v]; };
    std::vector<int> out;
    for (const auto& copies : leaves) {
        int bin = kNone;
        for (std::size_t b = 0; b < copies.size() && bin == kNone; ++b)
            if (std::any_of(copies[b].begin(), copies[b].end(), filled)) bin = static_cast<int>(b);
        out.push_back(bin);
    }
    return out;
}

std::vector<int> ChannelMap::decode(const Housing& housing) const {
    std::vector<int> out(vertices, 0);
    for (int r = 0; r < housing.size() && r < vertices * channels; ++r) {
        const int v = r / channels;
        const auto& leaves = parking[v];
        if (std::find(leaves.begin(), leaves.end(), housing[r]) == leaves.end() && out[v] == 0)
            out[v] = r % channels + 1;
    }
    return out;
}

Reduction<AssignmentMap> sat_to_arh(const Cnf& formula) {
    const Cnf f = normalized(formula, "sat_to_arh");
    const int n = f.variables;
    const int m = static_cast<int>(f.clauses.size());
    std::vector<VertexId> vertices;
    std::vector<IntervalSet> approvals;
    for (int i = 0; i < n; ++i) {
        vertices.push_back(3 * i + 1);
        approvals.push_back(IntervalSet::range(1, 1));
    }
    for (int j = 0; j < m; ++j) {
        vertices.push_back(3 * n + j);
        approvals.push_back(IntervalSet::range(1, static_cast<int>(f.clauses[j].size())));
    }
    auto instance = Instance::anonymous(Topology(3 * n + m, variable_clause_edges(f)), std::move(vertices),
                                        std::move(approvals), n);
    return {instance.with_meta(cnf_meta("sat-arh", f)), ports_of(f)};
}

Reduction<SelectionMap> dominating_set_to_arh(const DominatingSet& problem) {
    const int n = problem.graph.vertices;
    if (n < 1) throw PreconditionViolated("dominating_set_to_arh: graph has no vertices");
    if (problem.k < 1) throw PreconditionViolated("dominating_set_to_arh: k must be at least 1");
    const Topology g(n, problem.graph.edges);
    std::vector<Edge> edges;
    std::vector<VertexId> vertices;
    std::vector<IntervalSet> approvals;
    for (int v = 0; v < n; ++v) {
        edges.emplace_back(v, n + v);
        for (VertexId w : g.neighbors(v)) edges.emplace_back(w, n + v);
        vertices.push_back(n + v);
        approvals.push_back(IntervalSet::range(1, g.degree(v) + 1));
    }
    // More refugees than vertices could never be housed although a dominating set exists.
    const int refugees = std::min(problem.k, n);
    auto instance = Instance::anonymous(Topology(2 * n, edges), std::move(vertices), std::move(approvals), refugees);
    SelectionMap map;
    for (int v = 0; v < n; ++v) map.port.push_back(v);
    return {instance.with_meta({{"construction", "ds-arh"},
                                {"source", "dominating-set"},
                                {"vertices", std::to_string(n)},
                                {"k", std::to_string(problem.k)}}),
            map};
}

Reduction<CliqueArhMap> clique_to_arh(const MulticolouredClique& problem) {
    const ColourClasses c = colour_classes(problem, "clique_to_arh");
    const int k = c.k, n = c.size;
    const std::size_t m = c.edges[0][1].size();
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (c.edges[i][j].size() != m || m == 0)
                throw PreconditionViolated("clique_to_arh: every pair of colour classes needs the same positive "
                                           "number of edges");
    const long long nn = static_cast<long long>(n) * n;
    const long long block = static_cast<long long>(m) * nn;
    const long long pairs = static_cast<long long>(k) * (k - 1) / 2;
    const long long refugees = pairs * block + static_cast<long long>(k) * n;
    const long long total = k * n + pairs * (3 + block) + refugees;
    if (total > 10'000'000) throw BudgetExceeded("clique_to_arh: construction exceeds ten million vertices");

    CliqueArhMap map;
    map.members = c.members;
    std::vector<Edge> edges;
    std::vector<VertexId> vertices;
    std::vector<IntervalSet> approvals;
    for (int i = 0; i < k; ++i) {
        map.selection.emplace_back();
        for (int p = 0; p < n; ++p) map.selection.back().push_back(i * n + p);
    }
    int cursor = k * n;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            const int mid = cursor++, gij = cursor++, gji = cursor++;
            for (long long t = 0; t < block; ++t) {
                const int v = cursor++;
                edges.emplace_back(mid, v);
                edges.emplace_back(gij, v);
                edges.emplace_back(gji, v);
            }
            for (int p = 0; p < n; ++p) {
                edges.emplace_back(i * n + p, gij);
                edges.emplace_back(j * n + p, gji);
            }
            std::vector<int> multiples, left, right;
            for (std::size_t e = 0; e < m; ++e) {
                const int eps = static_cast<int>(e) + 1;
                multiples.push_back(static_cast<int>(eps * nn));
                left.push_back(static_cast<int>(eps * nn) + c.edges[i][j][e].first + 1);
                right.push_back(static_cast<int>(eps * nn) + c.edges[i][j][e].second + 1);
            }
            vertices.insert(vertices.end(), {mid, gij, gji});
            approvals.push_back(IntervalSet::from_values(multiples));
            approvals.push_back(IntervalSet::from_values(left));
            approvals.push_back(IntervalSet::from_values(right));
        }
    cursor += static_cast<int>(refugees);  // isolated auxiliary vertices
    auto instance = Instance::anonymous(Topology(cursor, edges), std::move(vertices), std::move(approvals),
                                        static_cast<int>(refugees));
    return {instance.with_meta({{"construction", "clique-arh"},
                                {"source", "multicoloured-clique"},
                                {"colours", std::to_string(k)},
                                {"class_size", std::to_string(n)},
                                {"edges_per_pair", std::to_string(m)}}),
            map};
}

Reduction<PackingMap> binpacking_to_arh(const BinPacking& problem, std::uint64_t size_budget) {
    const int k = problem.bins;
    const int items = static_cast<int>(problem.items.size());
    if (k < 1) throw PreconditionViolated("binpacking_to_arh: needs at least one bin");
    if (problem.capacity < 0) throw PreconditionViolated("binpacking_to_arh: negative capacity");
    long long sum = 0;
    for (int a : problem.items) {
        if (a < 1) throw PreconditionViolated("binpacking_to_arh: item sizes must be positive");
        sum += a;
    }
    if (static_cast<std::uint64_t>(sum) * static_cast<std::uint64_t>(k) > size_budget)
        throw BudgetExceeded("binpacking_to_arh: total gadget size exceeds the budget");

    PackingMap map;
    map.leaves.assign(items, std::vector<std::vector<VertexId>>(k));
    std::vector<Edge> edges;
    std::vector<VertexId> vertices;
    std::vector<IntervalSet> approvals;
    for (int b = 0; b < k; ++b) {
        vertices.push_back(b);
        approvals.push_back(IntervalSet::range(0, static_cast<int>(std::min<long long>(problem.capacity, sum))));
    }
    int cursor = k;
    for (int j = 0; j < items; ++j)
        for (int b = 0; b < k; ++b) {
            const int centre = cursor++;
            vertices.push_back(centre);
            approvals.push_back(IntervalSet::from_values({0, problem.items[j]}));
            for (int t = 0; t < problem.items[j]; ++t) {
                const int leaf = cursor++;
                map.leaves[j][b].push_back(leaf);
                edges.emplace_back(centre, leaf);
                edges.emplace_back(b, leaf);
            }
        }
    for (int j = 0; j < items; ++j) {
        const int guard = cursor++;
        vertices.push_back(guard);
        approvals.push_back(IntervalSet::from_values({problem.items[j]}));
        for (int b = 0; b < k; ++b)
            for (VertexId leaf : map.leaves[j][b]) edges.emplace_back(leaf, guard);
    }
    auto instance = Instance::anonymous(Topology(cursor, edges), std::move(vertices), std::move(approvals),
                                        static_cast<int>(sum));
    return {instance.with_meta({{"construction", "binpacking-arh"},
                                {"source", "bin-packing"},
                                {"capacity", std::to_string(problem.capacity)},
                                {"bins", std::to_string(k)},
                                {"items", std::to_string(items)}}),
            map};
}

Reduction<AssignmentMap> sat_to_hrh(const Cnf& formula) {
    const Cnf f = normalized(formula, "sat_to_hrh");
    const int n = f.variables;
    const int m = static_cast<int>(f.clauses.size());
    std::vector<std::vector<int>> clauses_of(n);
    for (int j = 0; j < m; ++j)
        for (int x : clause_variables(f.clauses[j])) clauses_of[x].push_back(n + j);

    std::vector<VertexId> vertices;
    std::vector<SubsetFamily> inhabitants, refugees;
    for (int i = 0; i < n; ++i) {
        vertices.push_back(3 * i + 1);
        inhabitants.emplace_back(std::vector<std::vector<int>>{{i}});
    }
    for (int j = 0; j < m; ++j) {
        vertices.push_back(3 * n + j);
        const auto vars = clause_variables(f.clauses[j]);
        std::vector<std::vector<int>> sets;
        for (unsigned mask = 1; mask < (1u << vars.size()); ++mask) {
            std::vector<int> s;
            for (std::size_t b = 0; b < vars.size(); ++b)
                if (mask >> b & 1) s.push_back(vars[b]);
            sets.push_back(std::move(s));
        }
        inhabitants.emplace_back(std::move(sets));
    }
    for (int i = 0; i < n; ++i) {
        const auto& cs = clauses_of[i];
        std::vector<std::vector<int>> sets;
        for (unsigned mask = 0; mask < (1u << cs.size()); ++mask) {
            std::vector<int> s{i};
            for (std::size_t b = 0; b < cs.size(); ++b)
                if (mask >> b & 1) s.push_back(cs[b]);
            sets.push_back(std::move(s));
        }
        refugees.emplace_back(std::move(sets));
    }
    auto instance = Instance::hedonic(Topology(3 * n + m, variable_clause_edges(f)), std::move(vertices),
                                      std::move(inhabitants), std::move(refugees));
    return {instance.with_meta(cnf_meta("sat-hrh", f)), ports_of(f)};
}

Reduction<CliqueHrhMap> clique_to_hrh(const MulticolouredClique& problem) {
    const ColourClasses c = colour_classes(problem, "clique_to_hrh");
    const int k = c.k, n = c.size;
    CliqueHrhMap map;
    map.members = c.members;
    std::vector<Edge> edges;
    std::vector<VertexId> vertices;
    std::vector<SubsetFamily> inhabitants, refugees;
    for (int i = 0; i < k; ++i) {
        const int centre = i * (n + 1);
        for (int p = 0; p < n; ++p) edges.emplace_back(centre, centre + 1 + p);
        map.selection_leaf.push_back(centre + 1);
        vertices.push_back(centre);
        std::vector<int> all(n);
        std::iota(all.begin(), all.end(), i * n);
        inhabitants.emplace_back(std::vector<std::vector<int>>{all});
    }
    std::vector<std::vector<int>> guards_of(k);
    int guard = k * (n + 1);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j, ++guard) {
            const int id = static_cast<int>(vertices.size());
            guards_of[i].push_back(id);
            guards_of[j].push_back(id);
            edges.emplace_back(map.selection_leaf[i], guard);
            edges.emplace_back(map.selection_leaf[j], guard);
            vertices.push_back(guard);
            std::vector<std::vector<int>> pairs;
            for (auto [p, q] : c.edges[i][j]) pairs.push_back({i * n + p, j * n + q});
            inhabitants.emplace_back(std::move(pairs));
        }
    for (int i = 0; i < k; ++i)
        for (int p = 0; p < n; ++p) {
            std::vector<int> selected{i};
            selected.insert(selected.end(), guards_of[i].begin(), guards_of[i].end());
            refugees.emplace_back(std::vector<std::vector<int>>{{i}, selected});
        }
    auto instance = Instance::hedonic(Topology(guard, edges), std::move(vertices), std::move(inhabitants),
                                      std::move(refugees));
    return {instance.with_meta({{"construction", "clique-hrh"},
                                {"source", "multicoloured-clique"},
                                {"colours", std::to_string(k)},
                                {"class_size", std::to_string(n)}}),
            map};
}

Reduction<ChannelMap> channel_to_hrh(const ChannelAssignment& problem, std::uint64_t size_budget) {
    const int nv = problem.graph.vertices;
    const int ne = static_cast<int>(problem.graph.edges.size());
    const int lambda = problem.channels;
    if (lambda < 1) throw PreconditionViolated("channel_to_hrh: needs at least one channel");
    if (static_cast<int>(problem.separation.size()) != ne)
        throw PreconditionViolated("channel_to_hrh: one separation per edge required");
    for (int s : problem.separation)
        if (s < 0) throw PreconditionViolated("channel_to_hrh: separations must be non-negative");
    const Topology g(nv, problem.graph.edges);
    const std::uint64_t entries = static_cast<std::uint64_t>(ne) * lambda * lambda * 2 +
                                  static_cast<std::uint64_t>(nv) * lambda * lambda;
    if (entries > size_budget) throw BudgetExceeded("channel_to_hrh: approval families exceed the budget");

    ChannelMap map{nv, lambda, std::vector<std::vector<VertexId>>(nv)};
    std::vector<Edge> edges;
    std::vector<VertexId> vertices;
    std::vector<SubsetFamily> inhabitants, refugees;
    std::vector<std::vector<int>> incident(nv);
    for (int e = 0; e < ne; ++e) {
        auto [u, w] = problem.graph.edges[e];
        const int mid = nv + e;
        edges.emplace_back(u, mid);
        edges.emplace_back(w, mid);
        incident[u].push_back(e);
        incident[w].push_back(e);
        vertices.push_back(mid);
        std::vector<std::vector<int>> pairs;
        for (int i = 0; i < lambda; ++i)
            for (int j = 0; j < lambda; ++j)
                if (std::abs(i - j) >= problem.separation[e]) pairs.push_back({u * lambda + i, w * lambda + j});
        inhabitants.emplace_back(std::move(pairs));
    }
    int cursor = nv + ne;
    for (int v = 0; v < nv; ++v) {
        const int centre = cursor++;
        vertices.push_back(centre);
        for (int t = 0; t + 1 < lambda; ++t) {
            const int leaf = cursor++;
            edges.emplace_back(centre, leaf);
            map.parking[v].push_back(leaf);
        }
        // Every (lambda-1)-subset of v's refugees: all of them but one.
        std::vector<std::vector<int>> parked;
        for (int skip = 0; skip < lambda; ++skip) {
            std::vector<int> s;
            for (int i = 0; i < lambda; ++i)
                if (i != skip) s.push_back(v * lambda + i);
            parked.push_back(std::move(s));
        }
        inhabitants.emplace_back(std::move(parked));
    }
    for (int v = 0; v < nv; ++v)
        for (int i = 0; i < lambda; ++i)
            refugees.emplace_back(std::vector<std::vector<int>>{incident[v], {ne + v}});
    auto instance = Instance::hedonic(Topology(cursor, edges), std::move(vertices), std::move(inhabitants),
                                      std::move(refugees));
    return {instance.with_meta({{"construction", "channel-hrh"},
                                {"source", "channel-assignment"},
                                {"vertices", std::to_string(nv)},
                                {"channels", std::to_string(lambda)}}),
            map};
}

Reduction<AssignmentMap> sat_to_drh(const Cnf& formula) {
    const Cnf f = normalized(formula, "sat_to_drh");
    const int n = f.variables;
    const int m = static_cast<int>(f.clauses.size());
    const int types = n + 1;
    const int clause_type = n;

    TypePartition partition{types, {}};
    std::vector<VertexId> vertices;
    std::vector<PaletteSet> inhabitants, refugees;
    for (int i = 0; i < n; ++i) {
        vertices.push_back(3 * i + 1);
        partition.type_of.push_back(i);
        inhabitants.emplace_back(std::vector<Palette>{unit_palette(types, i)});
    }
    for (int j = 0; j < m; ++j) {
        vertices.push_back(3 * n + j);
        partition.type_of.push_back(clause_type);
        const auto vars = clause_variables(f.clauses[j]);
        std::vector<Palette> palettes;
        for (int a : vars) palettes.push_back(unit_palette(types, a));
        for (std::size_t a = 0; a < vars.size(); ++a)
            for (std::size_t b = a + 1; b < vars.size(); ++b)
                palettes.push_back(split_palette(types, {{vars[a], Fraction(1, 2)}, {vars[b], Fraction(1, 2)}}));
        if (vars.size() == 3)
            palettes.push_back(split_palette(
                types, {{vars[0], Fraction(1, 3)}, {vars[1], Fraction(1, 3)}, {vars[2], Fraction(1, 3)}}));
        inhabitants.emplace_back(std::move(palettes));
    }
    for (int i = 0; i < n; ++i) {
        partition.type_of.push_back(i);
        refugees.emplace_back(std::vector<Palette>{
            unit_palette(types, i),
            split_palette(types, {{i, Fraction(1, 2)}, {clause_type, Fraction(1, 2)}}),
            split_palette(types, {{i, Fraction(1, 3)}, {clause_type, Fraction(2, 3)}}),
        });
    }
    auto instance = Instance::diversity(Topology(3 * n + m, variable_clause_edges(f)), std::move(vertices),
                                        std::move(partition), std::move(inhabitants), std::move(refugees));
    return {instance.with_meta(cnf_meta("sat-drh", f)), ports_of(f)};
}

Reduction<SelectionMap> setcover_to_drh(const SetCover& problem) {
    const int u = problem.universe;
    if (u < 1) throw PreconditionViolated("setcover_to_drh: universe must be non-empty");
    if (problem.k < 1) throw PreconditionViolated("setcover_to_drh: k must be at least 1");
    const int s = static_cast<int>(problem.sets.size());
    std::vector<Edge> edges;
    int nonempty = 0;
    for (int f = 0; f < s; ++f) {
        std::set<int> members;
        for (int e : problem.sets[f]) {
            if (e < 0 || e >= u) throw PreconditionViolated("setcover_to_drh: set element out of range");
            members.insert(e);
        }
        nonempty += !members.empty();
        for (int e : members) edges.emplace_back(e, u + f);
    }
    // A refugee on an empty set's vertex has no neighbours, so only non-empty sets can host one.
    const int refugees = std::max(1, std::min(problem.k, nonempty));
    TypePartition partition{2, {}};
    std::vector<VertexId> vertices(u);
    std::iota(vertices.begin(), vertices.end(), 0);
    std::vector<PaletteSet> inhabitants(u, PaletteSet({unit_palette(2, 1)}));
    std::vector<PaletteSet> refugee_palettes(refugees, PaletteSet({unit_palette(2, 0)}));
    partition.type_of.assign(u, 0);
    partition.type_of.resize(u + refugees, 1);
    auto instance = Instance::diversity(Topology(u + s, edges), std::move(vertices), std::move(partition),
                                        std::move(inhabitants), std::move(refugee_palettes));
    SelectionMap map;
    for (int f = 0; f < s; ++f) map.port.push_back(u + f);
    return {instance.with_meta({{"construction", "setcover-drh"},
                                {"source", "set-cover"},
                                {"universe", std::to_string(u)},
                                {"sets", std::to_string(s)},
                                {"k", std::to_string(problem.k)}}),
            map};
}

} // namespace refhouse
