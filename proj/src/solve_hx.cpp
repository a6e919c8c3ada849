#include "refhouse/solve_hx.hpp"

#include "refhouse/errors.hpp"
#include "refhouse/preprocess.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <string>

namespace refhouse {
namespace {

Housing placement_of(const std::vector<int>& refugee_at, int refugees) {
    std::vector<VertexId> placement(refugees, kNone);
    for (VertexId v = 0; v < static_cast<int>(refugee_at.size()); ++v)
        if (refugee_at[v] != kNone) placement[refugee_at[v]] = v;
    return Housing(std::move(placement));
}

} // namespace

SolveResult solve_hrh_bruteforce(const Instance& instance, const Budget& budget) {
    if (instance.variant() != Variant::hedonic)
        throw PreconditionViolated("hrh-brute solves hedonic instances only");
    const int inhabitants = instance.inhabitant_count();
    const int refugees = instance.refugee_count();
    const auto empty = instance.empty_vertices();
    if (refugees > static_cast<int>(empty.size()))
        return SolveResult::unsat("hrh-brute", "fewer empty vertices than refugees");

    std::vector<std::vector<int>> watchers(instance.vertex_count());
    for (VertexId v : empty) watchers[v] = instance.inhabitant_neighbors(v);
    std::vector<std::vector<VertexId>> candidates(refugees);
    for (int r = 0; r < refugees; ++r) {
        for (VertexId v : empty)
            if (instance.refugee_family(r).contains(watchers[v])) candidates[r].push_back(v);
        if (candidates[r].empty())
            return SolveResult::unsat("hrh-brute", "refugee " + std::to_string(r) + " accepts no empty vertex");
    }
    std::vector<int> order(refugees);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (candidates[a].size() != candidates[b].size()) return candidates[a].size() < candidates[b].size();
        return instance.refugee_family(a).sets().size() < instance.refugee_family(b).sets().size();
    });
    std::vector<int> refugee_at(instance.vertex_count(), kNone);
    std::vector<char> placed(refugees, 0);
    std::vector<std::vector<char>> near(inhabitants, std::vector<char>(refugees, 0));
    std::vector<int> near_count(inhabitants, 0), free_slots(inhabitants, 0);
    for (int i = 0; i < inhabitants; ++i) free_slots[i] = static_cast<int>(instance.empty_neighbors(i).size());

    // Is some approved set S with P_i ⊆ S reachable using unplaced refugees and free neighbours?
    auto extendable = [&](int i, int remaining) {
        const int size = near_count[i];
        const bool closed = free_slots[i] == 0 || remaining == 0;
        for (const auto& set : instance.inhabitant_family(i).sets()) {
            const int extra = static_cast<int>(set.size()) - size;
            if (extra < 0 || (closed && extra != 0) || extra > free_slots[i]) continue;
            int inside = 0;
            bool ok = true;
            for (int x : set) {
                if (near[i][x]) ++inside;
                else if (placed[x]) {
                    ok = false;
                    break;
                }
            }
            if (ok && inside == size) return true;
        }
        return false;
    };
    for (int i = 0; i < inhabitants; ++i)
        if (!extendable(i, refugees)) {
            auto result = SolveResult::unsat("hrh-brute", "inhabitant " + std::to_string(i) + " cannot be satisfied");
            return result;
        }

    std::uint64_t nodes = 0;
    bool exhausted = false;
    std::function<bool(int)> search = [&](int depth) -> bool {
        if (depth == refugees) return verify_hrh(instance, placement_of(refugee_at, refugees));
        const int r = order[depth];
        for (VertexId v : candidates[r]) {
            if (refugee_at[v] != kNone) continue;
            if (++nodes > budget.nodes) {
                exhausted = true;
                return false;
            }
            refugee_at[v] = r;
            placed[r] = 1;
            for (int i : watchers[v]) {
                near[i][r] = 1;
                ++near_count[i];
                --free_slots[i];
            }
            bool ok = true;
            for (int i = 0; i < inhabitants && ok; ++i) ok = extendable(i, refugees - depth - 1);
            if (ok && search(depth + 1)) return true;
            for (int i : watchers[v]) {
                near[i][r] = 0;
                --near_count[i];
                ++free_slots[i];
            }
            placed[r] = 0;
            refugee_at[v] = kNone;
            if (exhausted) return false;
        }
        return false;
    };
    SolveResult result;
    if (search(0))
        result = SolveResult::sat(placement_of(refugee_at, refugees), "hrh-brute");
    else if (exhausted)
        result = SolveResult::undecided("hrh-brute", "node budget exhausted");
    else
        result = SolveResult::unsat("hrh-brute");
    result.stats.nodes = nodes;
    return result;
}

SolveResult solve_drh_bruteforce(const Instance& instance, const Budget& budget) {
    if (instance.variant() != Variant::diversity)
        throw PreconditionViolated("drh-brute solves diversity instances only");
    const auto& g = instance.topology();
    const int n = g.vertex_count();
    const int inhabitants = instance.inhabitant_count();
    const int refugees = instance.refugee_count();
    const int types = instance.types().types;
    const auto& type_of = instance.types().type_of;
    const auto empty = instance.empty_vertices();
    if (refugees > static_cast<int>(empty.size()))
        return SolveResult::unsat("drh-brute", "fewer empty vertices than refugees");

    std::vector<int> agent_at(n, kNone), refugee_at(n, kNone);
    for (int i = 0; i < inhabitants; ++i) agent_at[instance.vertex_of(i)] = i;
    std::vector<std::vector<int>> counts(n, std::vector<int>(types, 0));
    std::vector<int> free_slots(n, 0);
    for (VertexId v = 0; v < n; ++v)
        for (VertexId w : g.neighbors(v)) {
            if (agent_at[w] != kNone) ++counts[v][type_of[agent_at[w]]];
            else ++free_slots[v];
        }
    auto approves = [&](VertexId v) {
        const int agent = agent_at[v];
        const Palette palette = Palette::from_counts(counts[v]);
        return agent < inhabitants ? instance.inhabitant_palettes(agent).contains(palette)
                                   : instance.refugee_palettes(agent - inhabitants).contains(palette);
    };
    if (refugees > 0)
        for (int i = 0; i < inhabitants; ++i)
            if (free_slots[instance.vertex_of(i)] == 0 && !approves(instance.vertex_of(i)))
                return SolveResult::unsat("drh-brute", "inhabitant " + std::to_string(i) + " is already unhappy");

    std::vector<int> order(refugees);
    std::iota(order.begin(), order.end(), 0);
    auto key = [&](int r) { return std::make_pair(instance.refugee_palettes(r).size(), type_of[inhabitants + r]); };
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return key(a) < key(b); });
    // Refugees of equal type and approval are interchangeable: place them on increasing vertices.
    std::vector<char> same_as_previous(refugees, 0);
    for (int d = 1; d < refugees; ++d) {
        const int a = order[d], b = order[d - 1];
        same_as_previous[d] = type_of[inhabitants + a] == type_of[inhabitants + b] &&
                              instance.refugee_palettes(a) == instance.refugee_palettes(b);
    }
    std::vector<VertexId> vertex_of(refugees, kNone);

    std::uint64_t nodes = 0;
    bool exhausted = false;
    std::function<bool(int)> search = [&](int depth) -> bool {
        if (depth == refugees) return verify_drh(instance, placement_of(refugee_at, refugees));
        const int r = order[depth];
        const int agent = inhabitants + r;
        const VertexId floor = same_as_previous[depth] ? vertex_of[order[depth - 1]] : kNone;
        const bool last = depth + 1 == refugees;
        for (VertexId v : empty) {
            if (v <= floor || agent_at[v] != kNone) continue;
            if (++nodes > budget.nodes) {
                exhausted = true;
                return false;
            }
            agent_at[v] = agent;
            refugee_at[v] = r;
            vertex_of[r] = v;
            for (VertexId w : g.neighbors(v)) {
                ++counts[w][type_of[agent]];
                --free_slots[w];
            }
            bool ok = true;
            if (!last) {
                if (free_slots[v] == 0) ok = approves(v);
                for (VertexId w : g.neighbors(v))
                    if (ok && agent_at[w] != kNone && free_slots[w] == 0) ok = approves(w);
            }
            if (ok && search(depth + 1)) return true;
            for (VertexId w : g.neighbors(v)) {
                --counts[w][type_of[agent]];
                ++free_slots[w];
            }
            vertex_of[r] = kNone;
            refugee_at[v] = kNone;
            agent_at[v] = kNone;
            if (exhausted) return false;
        }
        return false;
    };
    SolveResult result;
    if (search(0))
        result = SolveResult::sat(placement_of(refugee_at, refugees), "drh-brute");
    else if (exhausted)
        result = SolveResult::undecided("drh-brute", "node budget exhausted");
    else
        result = SolveResult::unsat("drh-brute");
    result.stats.nodes = nodes;
    return result;
}

SolveResult solve(const Instance& instance, const SolveOptions& options) {
    if (instance.variant() == Variant::anonymous) return solve_arh(instance, options);
    if (options.strategy != Strategy::automatic && options.strategy != Strategy::bruteforce)
        throw PreconditionViolated("algorithm '" + std::string(to_string(options.strategy)) +
                                   "' applies to anonymous instances only");
    const auto start = std::chrono::steady_clock::now();
    Preprocessed pre{instance, PreprocessTranscript::identity(instance)};
    if (options.preprocess) pre = preprocess(instance);
    const char* name = instance.variant() == Variant::hedonic ? "hrh-brute" : "drh-brute";
    SolveResult result;
    if (pre.transcript.infeasible) {
        result = SolveResult::unsat(name, pre.transcript.reason);
    } else {
        result = instance.variant() == Variant::hedonic ? solve_hrh_bruteforce(pre.instance, options.budget)
                                                        : solve_drh_bruteforce(pre.instance, options.budget);
        if (result.witness) {
            Housing lifted = lift_housing(pre.transcript, *result.witness);
            if (!verify(instance, lifted))
                throw Error("internal error: " + result.algorithm + " produced a housing that does not verify");
            result.witness = std::move(lifted);
        }
    }
    result.preprocessing = pre.transcript.rule_names();
    result.stats.millis =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return result;
}

namespace {

// Calls visit(subset) for every k-subset of items, in lexicographic order.
template <class Visit>
void for_each_subset(const std::vector<int>& items, int k, Visit&& visit) {
    const int n = static_cast<int>(items.size());
    if (k < 0 || k > n) return;
    std::vector<int> index(k);
    std::iota(index.begin(), index.end(), 0);
    std::vector<int> subset(k);
    for (;;) {
        for (int j = 0; j < k; ++j) subset[j] = items[index[j]];
        visit(subset);
        int j = k - 1;
        while (j >= 0 && index[j] == n - k + j) --j;
        if (j < 0) return;
        ++index[j];
        for (int t = j + 1; t < k; ++t) index[t] = index[t - 1] + 1;
    }
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long double value = 1;
    for (int i = 1; i <= k; ++i) value = value * (n - k + i) / i;
    return value > 1.8e19L ? UINT64_MAX : static_cast<std::uint64_t>(value + 0.5L);
}

} // namespace

Housing ArhToHrhCertificate::to_source(const Housing& housing) const {
    std::vector<VertexId> vertices;
    for (VertexId v : housing.placement())
        if (v < source_vertex_count) vertices.push_back(v);
    std::sort(vertices.begin(), vertices.end());
    return Housing(std::move(vertices));
}

ArhToHrh arh_to_hrh(const Instance& source, std::uint64_t size_budget) {
    if (source.variant() != Variant::anonymous)
        throw PreconditionViolated("arh_to_hrh expects an anonymous instance");
    const int n = source.vertex_count();
    const int inhabitants = source.inhabitant_count();
    const auto empty = source.empty_vertices();
    const int slots = static_cast<int>(empty.size());
    const bool enough = source.refugee_count() <= slots;
    const int leaves = enough ? slots - source.refugee_count() : 0;
    const int guard = inhabitants;

    // Refugee k stands for the k-th empty vertex.
    std::vector<int> refugee_index(n, kNone);
    for (int k = 0; k < slots; ++k) refugee_index[empty[k]] = k;

    std::uint64_t entries = 0;
    auto charge = [&](std::uint64_t count, int size) {
        entries += count * static_cast<std::uint64_t>(std::max(size, 1));
        if (count > size_budget || entries > size_budget)
            throw BudgetExceeded("hedonic image needs more than " + std::to_string(size_budget) +
                                 " approval entries");
    };

    std::vector<SubsetFamily> inhabitant_families;
    for (int i = 0; i < inhabitants; ++i) {
        std::vector<int> nearby;
        for (VertexId v : source.empty_neighbors(i)) nearby.push_back(refugee_index[v]);
        std::sort(nearby.begin(), nearby.end());
        std::vector<std::vector<int>> sets;
        for (int a : source.anonymous_approval(i).clamped(0, static_cast<int>(nearby.size())).values()) {
            charge(binomial(static_cast<int>(nearby.size()), a), a);
            for_each_subset(nearby, a, [&](const std::vector<int>& s) { sets.push_back(s); });
        }
        inhabitant_families.emplace_back(std::move(sets));
    }
    std::vector<std::vector<int>> guard_sets;
    if (enough) {
        std::vector<int> all(slots);
        std::iota(all.begin(), all.end(), 0);
        charge(binomial(slots, leaves), leaves);
        for_each_subset(all, leaves, [&](const std::vector<int>& s) { guard_sets.push_back(s); });
    }
    inhabitant_families.emplace_back(std::move(guard_sets));

    std::vector<SubsetFamily> refugee_families;
    for (int k = 0; k < slots; ++k)
        refugee_families.emplace_back(std::vector<std::vector<int>>{source.inhabitant_neighbors(empty[k]), {guard}});

    std::vector<Edge> edges = source.topology().edges();
    for (int leaf = 0; leaf < leaves; ++leaf) edges.emplace_back(n, n + 1 + leaf);
    std::vector<VertexId> vertices(source.inhabitant_vertices().begin(), source.inhabitant_vertices().end());
    vertices.push_back(n);

    Instance image = Instance::hedonic(Topology(n + 1 + leaves, edges), std::move(vertices),
                                       std::move(inhabitant_families), std::move(refugee_families));
    image = image.with_meta({{"construction", "arh-hrh"},
                             {"source_vertices", std::to_string(n)},
                             {"guard_leaves", std::to_string(leaves)}});
    return {std::move(image), {n, source.refugee_count()}};
}

} // namespace refhouse
