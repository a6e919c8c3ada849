#include "refhouse/random.hpp"

#include "refhouse/errors.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace refhouse {
namespace {

std::vector<Edge> random_edges(int n, double p, bool max_degree_two, Rng& rng) {
    std::vector<Edge> edges;
    if (!max_degree_two) {
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.chance(p)) edges.emplace_back(u, v);
        return edges;
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    for (int start = 0; start < n;) {
        const int len = std::min(n - start, rng.between(1, 6));
        for (int t = 1; t < len; ++t) edges.emplace_back(order[start + t - 1], order[start + t]);
        if (len >= 3 && rng.chance(0.5)) edges.emplace_back(order[start + len - 1], order[start]);
        start += len;
    }
    for (auto& [u, v] : edges)
        if (u > v) std::swap(u, v);
    return edges;
}

std::vector<int> random_subset(int universe, int max_size, Rng& rng) {
    std::vector<int> all(universe);
    std::iota(all.begin(), all.end(), 0);
    rng.shuffle(all);
    const int size = rng.between(0, std::min(universe, std::max(0, max_size)));
    std::vector<int> out(all.begin(), all.begin() + size);
    std::sort(out.begin(), out.end());
    return out;
}

IntervalSet random_approval(int degree, const RandomShape& shape, Rng& rng) {
    if (shape.intervals_only) {
        const int lo = rng.between(0, degree);
        return IntervalSet::range(lo, rng.between(lo, degree));
    }
    std::vector<Interval> pieces;
    const int count = rng.between(1, std::max(1, shape.max_intervals));
    for (int c = 0; c < count; ++c) {
        const int lo = rng.between(0, degree);
        pieces.push_back({lo, std::min(degree, lo + rng.below(2))});
    }
    return IntervalSet::from_intervals(pieces);
}

} // namespace

Instance random_instance(const RandomShape& shape, std::uint64_t seed) {
    const int n = shape.vertices, ni = shape.inhabitants, nr = shape.refugees;
    if (n < 0 || ni < 0 || nr < 0 || ni + nr > n)
        throw InvalidInstance("infeasible shape: " + std::to_string(ni) + " inhabitants and " + std::to_string(nr) +
                              " refugees on " + std::to_string(n) + " vertices");
    Rng rng(seed);
    Topology topology(n, random_edges(n, shape.edge_probability, shape.max_degree_two, rng));
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    std::vector<VertexId> homes(order.begin(), order.begin() + ni);
    const Metadata meta{{"construction", "random"}, {"seed", std::to_string(seed)}};

    if (shape.variant == Variant::anonymous) {
        std::vector<IntervalSet> approvals;
        for (VertexId v : homes) approvals.push_back(random_approval(topology.degree(v), shape, rng));
        return Instance::anonymous(topology, homes, std::move(approvals), nr).with_meta(meta);
    }

    // Planted housing on the vertices after the inhabitants in the shuffled order.
    const bool plant = rng.chance(0.5);
    std::vector<VertexId> planted(order.begin() + ni, order.begin() + ni + nr);
    std::vector<int> inhabitant_at(n, kNone), refugee_at(n, kNone);
    for (int i = 0; i < ni; ++i) inhabitant_at[homes[i]] = i;
    for (int r = 0; r < nr; ++r) refugee_at[planted[r]] = r;

    if (shape.variant == Variant::hedonic) {
        std::vector<SubsetFamily> inhabitants, refugees;
        for (int i = 0; i < ni; ++i) {
            std::vector<std::vector<int>> sets;
            for (int t = 0; t < shape.family_size; ++t)
                sets.push_back(random_subset(nr, topology.degree(homes[i]), rng));
            if (plant) {
                std::vector<int> seen;
                for (VertexId w : topology.neighbors(homes[i]))
                    if (refugee_at[w] != kNone) seen.push_back(refugee_at[w]);
                std::sort(seen.begin(), seen.end());
                sets.push_back(seen);
            }
            inhabitants.emplace_back(std::move(sets));
        }
        for (int r = 0; r < nr; ++r) {
            std::vector<std::vector<int>> sets;
            for (int t = 0; t < shape.family_size; ++t) {
                // Half the time a neighbourhood some empty vertex actually has.
                const VertexId v = n > ni ? order[ni + rng.below(n - ni)] : kNone;
                std::vector<int> seen;
                if (v != kNone && rng.chance(0.5)) {
                    for (VertexId w : topology.neighbors(v))
                        if (inhabitant_at[w] != kNone) seen.push_back(inhabitant_at[w]);
                    std::sort(seen.begin(), seen.end());
                } else {
                    seen = random_subset(ni, 3, rng);
                }
                sets.push_back(std::move(seen));
            }
            if (plant) {
                std::vector<int> seen;
                for (VertexId w : topology.neighbors(planted[r]))
                    if (inhabitant_at[w] != kNone) seen.push_back(inhabitant_at[w]);
                std::sort(seen.begin(), seen.end());
                sets.push_back(seen);
            }
            refugees.emplace_back(std::move(sets));
        }
        return Instance::hedonic(topology, homes, std::move(inhabitants), std::move(refugees)).with_meta(meta);
    }

    const int k = std::max(1, shape.types);
    TypePartition partition{k, {}};
    for (int a = 0; a < ni + nr; ++a) partition.type_of.push_back(rng.below(k));
    auto random_palette = [&]() {
        std::vector<int> counts(k, 0);
        const int size = rng.between(0, 3);
        for (int s = 0; s < size; ++s) ++counts[rng.below(k)];
        return Palette::from_counts(counts);
    };
    auto planted_palette = [&](VertexId v) {
        std::vector<int> counts(k, 0);
        for (VertexId w : topology.neighbors(v)) {
            if (inhabitant_at[w] != kNone) ++counts[partition.type_of[inhabitant_at[w]]];
            else if (refugee_at[w] != kNone) ++counts[partition.type_of[ni + refugee_at[w]]];
        }
        return Palette::from_counts(counts);
    };
    auto palettes_for = [&](VertexId v) {
        std::vector<Palette> list;
        for (int t = 0; t < shape.family_size; ++t) list.push_back(random_palette());
        if (plant) list.push_back(planted_palette(v));
        return PaletteSet(std::move(list));
    };
    std::vector<PaletteSet> inhabitants, refugees;
    for (int i = 0; i < ni; ++i) inhabitants.push_back(palettes_for(homes[i]));
    for (int r = 0; r < nr; ++r) refugees.push_back(palettes_for(planted[r]));
    return Instance::diversity(topology, homes, std::move(partition), std::move(inhabitants), std::move(refugees))
        .with_meta(meta);
}

Cnf random_two_balanced_cnf(int variables, int clauses, Rng& rng) {
    Cnf f{variables, {}};
    std::vector<int> positive(variables, 2), negative(variables, 2);
    for (int j = 0; j < clauses; ++j) {
        std::vector<int> open;
        for (int x = 0; x < variables; ++x)
            if (positive[x] + negative[x] > 0) open.push_back(x);
        if (open.empty()) break;
        rng.shuffle(open);
        const int size = std::min<int>(static_cast<int>(open.size()), rng.between(1, 3));
        std::vector<Literal> clause;
        for (int t = 0; t < size; ++t) {
            const int x = open[t];
            bool sign = rng.chance(0.5);
            if ((sign ? positive : negative)[x] == 0) sign = !sign;
            --(sign ? positive : negative)[x];
            clause.push_back({x, sign});
        }
        f.clauses.push_back(std::move(clause));
    }
    return f;
}

Graph random_graph(int vertices, double edge_probability, Rng& rng) {
    return {vertices, random_edges(vertices, edge_probability, false, rng)};
}

MulticolouredClique random_clique_instance(int colours, int class_size, int edges_per_pair, Rng& rng) {
    MulticolouredClique p;
    p.colours = colours;
    p.graph.vertices = colours * class_size;
    for (int v = 0; v < p.graph.vertices; ++v) p.colour.push_back(v / class_size);
    const int m = std::min(edges_per_pair, class_size * class_size);
    for (int i = 0; i < colours; ++i)
        for (int j = i + 1; j < colours; ++j) {
            std::vector<int> cells(class_size * class_size);
            std::iota(cells.begin(), cells.end(), 0);
            rng.shuffle(cells);
            for (int t = 0; t < m; ++t)
                p.graph.edges.emplace_back(i * class_size + cells[t] / class_size, j * class_size + cells[t] % class_size);
        }
    std::sort(p.graph.edges.begin(), p.graph.edges.end());
    return p;
}

BinPacking random_bin_packing(int max_total, int max_bins, Rng& rng) {
    BinPacking p;
    p.bins = rng.between(1, std::max(1, max_bins));
    int total = 0;
    const int count = rng.between(1, 4);
    for (int t = 0; t < count && total < max_total; ++t) {
        const int a = std::min(max_total - total, rng.between(1, 3));
        p.items.push_back(a);
        total += a;
    }
    p.capacity = rng.between(1, std::max(1, total));
    return p;
}

ChannelAssignment random_channel_assignment(int vertices, int max_channels, Rng& rng) {
    ChannelAssignment p;
    p.graph = random_graph(vertices, 0.5, rng);
    p.channels = rng.between(1, std::max(1, max_channels));
    for (std::size_t e = 0; e < p.graph.edges.size(); ++e) p.separation.push_back(rng.between(0, p.channels));
    return p;
}

SetCover random_set_cover(int universe, int sets, Rng& rng) {
    SetCover p;
    p.universe = universe;
    for (int s = 0; s < sets; ++s) {
        std::vector<int> members;
        for (int e = 0; e < universe; ++e)
            if (rng.chance(0.4)) members.push_back(e);
        p.sets.push_back(std::move(members));
    }
    p.k = rng.between(1, std::max(1, sets));
    return p;
}

} // namespace refhouse
