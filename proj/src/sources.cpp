#include "refhouse/sources.hpp"

#include "refhouse/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>

namespace refhouse {
namespace {

struct Counter {
    std::uint64_t budget;
    std::uint64_t used = 0;
    const char* what;
    void tick() {
        if (++used > budget) throw BudgetExceeded(std::string(what) + " oracle exceeded its budget");
    }
};

std::vector<std::vector<int>> adjacency(const Graph& graph) {
    std::vector<std::vector<int>> adj(graph.vertices);
    for (auto [u, v] : graph.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

// Calls visit on every subset of {0..n-1} of size at most k, smallest first; stops when visit
// returns true.
bool for_small_subsets(int n, int k, Counter& counter, const std::function<bool(const std::vector<int>&)>& visit) {
    std::vector<int> pick;
    std::function<bool(int, int)> rec = [&](int from, int size) -> bool {
        if (static_cast<int>(pick.size()) == size) {
            counter.tick();
            return visit(pick);
        }
        for (int x = from; x < n; ++x) {
            pick.push_back(x);
            if (rec(x + 1, size)) return true;
            pick.pop_back();
        }
        return false;
    };
    for (int size = 0; size <= std::min(k, n); ++size)
        if (rec(0, size)) return true;
    return false;
}

} // namespace

bool is_two_balanced(const Cnf& formula) {
    std::vector<int> positive(formula.variables, 0), negative(formula.variables, 0);
    for (const auto& clause : formula.clauses) {
        if (clause.size() > 3) return false;
        for (const auto& lit : clause) {
            if (lit.variable < 0 || lit.variable >= formula.variables) return false;
            if (++(lit.positive ? positive : negative)[lit.variable] > 2) return false;
        }
    }
    return true;
}

bool check_assignment(const Cnf& formula, const std::vector<bool>& assignment) {
    if (static_cast<int>(assignment.size()) != formula.variables) return false;
    for (const auto& clause : formula.clauses) {
        bool satisfied = false;
        for (const auto& lit : clause) satisfied |= assignment[lit.variable] == lit.positive;
        if (!satisfied) return false;
    }
    return true;
}

std::optional<std::vector<bool>> solve_cnf(const Cnf& formula, std::uint64_t budget) {
    if (formula.variables >= 63 || (std::uint64_t{1} << formula.variables) > budget)
        throw BudgetExceeded("truth-table oracle exceeded its budget");
    std::vector<bool> assignment(formula.variables);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << formula.variables); ++mask) {
        for (int x = 0; x < formula.variables; ++x) assignment[x] = (mask >> x) & 1;
        if (check_assignment(formula, assignment)) return assignment;
    }
    return std::nullopt;
}

bool check_dominating_set(const DominatingSet& problem, const std::vector<int>& chosen) {
    const int n = problem.graph.vertices;
    if (static_cast<int>(chosen.size()) > problem.k) return false;
    std::vector<char> dominated(n, 0), in(n, 0);
    for (int v : chosen) {
        if (v < 0 || v >= n || in[v]) return false;
        in[v] = dominated[v] = 1;
    }
    for (auto [u, v] : problem.graph.edges) {
        if (in[u]) dominated[v] = 1;
        if (in[v]) dominated[u] = 1;
    }
    return std::all_of(dominated.begin(), dominated.end(), [](char d) { return d != 0; });
}

std::optional<std::vector<int>> solve_dominating_set(const DominatingSet& problem, std::uint64_t budget) {
    Counter counter{budget, 0, "dominating-set"};
    std::optional<std::vector<int>> found;
    for_small_subsets(problem.graph.vertices, problem.k, counter, [&](const std::vector<int>& s) {
        if (!check_dominating_set(problem, s)) return false;
        found = s;
        return true;
    });
    return found;
}

bool check_clique(const MulticolouredClique& problem, const std::vector<int>& chosen) {
    if (static_cast<int>(chosen.size()) != problem.colours) return false;
    std::set<Edge> edges;
    for (auto [u, v] : problem.graph.edges) edges.insert({std::min(u, v), std::max(u, v)});
    for (int c = 0; c < problem.colours; ++c) {
        const int v = chosen[c];
        if (v < 0 || v >= problem.graph.vertices || problem.colour[v] != c) return false;
        for (int d = 0; d < c; ++d)
            if (!edges.count({std::min(v, chosen[d]), std::max(v, chosen[d])})) return false;
    }
    return true;
}

std::optional<std::vector<int>> solve_clique(const MulticolouredClique& problem, std::uint64_t budget) {
    Counter counter{budget, 0, "clique"};
    const auto adj = adjacency(problem.graph);
    std::vector<std::vector<int>> members(problem.colours);
    for (int v = 0; v < problem.graph.vertices; ++v) members[problem.colour[v]].push_back(v);
    std::vector<int> chosen;
    std::function<bool(int)> rec = [&](int c) -> bool {
        if (c == problem.colours) return true;
        for (int v : members[c]) {
            counter.tick();
            bool ok = true;
            for (int u : chosen) ok = ok && std::find(adj[v].begin(), adj[v].end(), u) != adj[v].end();
            if (!ok) continue;
            chosen.push_back(v);
            if (rec(c + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    if (rec(0)) return chosen;
    return std::nullopt;
}

bool check_bin_packing(const BinPacking& problem, const std::vector<int>& bin_of) {
    if (bin_of.size() != problem.items.size()) return false;
    std::vector<int> load(problem.bins, 0);
    for (std::size_t j = 0; j < bin_of.size(); ++j) {
        if (bin_of[j] < 0 || bin_of[j] >= problem.bins) return false;
        load[bin_of[j]] += problem.items[j];
    }
    return std::all_of(load.begin(), load.end(), [&](int l) { return l <= problem.capacity; });
}

std::optional<std::vector<int>> solve_bin_packing(const BinPacking& problem, std::uint64_t budget) {
    Counter counter{budget, 0, "bin-packing"};
    const std::size_t n = problem.items.size();
    std::vector<int> load(problem.bins, 0), bin_of(n, -1);
    std::function<bool(std::size_t)> rec = [&](std::size_t j) -> bool {
        if (j == n) return true;
        for (int b = 0; b < problem.bins; ++b) {
            counter.tick();
            if (load[b] + problem.items[j] > problem.capacity) continue;
            load[b] += problem.items[j];
            bin_of[j] = b;
            if (rec(j + 1)) return true;
            load[b] -= problem.items[j];
        }
        return false;
    };
    if (rec(0)) return bin_of;
    return std::nullopt;
}

bool check_channel_assignment(const ChannelAssignment& problem, const std::vector<int>& channel) {
    if (static_cast<int>(channel.size()) != problem.graph.vertices) return false;
    for (int c : channel)
        if (c < 1 || c > problem.channels) return false;
    for (std::size_t e = 0; e < problem.graph.edges.size(); ++e) {
        auto [u, v] = problem.graph.edges[e];
        if (std::abs(channel[u] - channel[v]) < problem.separation[e]) return false;
    }
    return true;
}

std::optional<std::vector<int>> solve_channel_assignment(const ChannelAssignment& problem, std::uint64_t budget) {
    Counter counter{budget, 0, "channel-assignment"};
    const int n = problem.graph.vertices;
    std::vector<std::vector<std::pair<int, int>>> earlier(n);  // (neighbour < v, separation)
    for (std::size_t e = 0; e < problem.graph.edges.size(); ++e) {
        auto [u, v] = problem.graph.edges[e];
        earlier[std::max(u, v)].push_back({std::min(u, v), problem.separation[e]});
    }
    std::vector<int> channel(n, 0);
    std::function<bool(int)> rec = [&](int v) -> bool {
        if (v == n) return true;
        for (int c = 1; c <= problem.channels; ++c) {
            counter.tick();
            bool ok = true;
            for (auto [u, sep] : earlier[v]) ok = ok && std::abs(channel[u] - c) >= sep;
            if (!ok) continue;
            channel[v] = c;
            if (rec(v + 1)) return true;
        }
        return false;
    };
    if (rec(0)) return channel;
    return std::nullopt;
}

bool check_set_cover(const SetCover& problem, const std::vector<int>& chosen) {
    if (static_cast<int>(chosen.size()) > problem.k) return false;
    std::vector<char> covered(problem.universe, 0), used(problem.sets.size(), 0);
    for (int s : chosen) {
        if (s < 0 || s >= static_cast<int>(problem.sets.size()) || used[s]) return false;
        used[s] = 1;
        for (int u : problem.sets[s]) covered[u] = 1;
    }
    return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

std::optional<std::vector<int>> solve_set_cover(const SetCover& problem, std::uint64_t budget) {
    Counter counter{budget, 0, "set-cover"};
    std::optional<std::vector<int>> found;
    for_small_subsets(static_cast<int>(problem.sets.size()), problem.k, counter, [&](const std::vector<int>& s) {
        if (!check_set_cover(problem, s)) return false;
        found = s;
        return true;
    });
    return found;
}

} // namespace refhouse
