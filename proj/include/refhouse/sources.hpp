#pragma once

#include "refhouse/model.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace refhouse {

// Source problems the hardness gadgets start from, with exhaustive deciders and certificate checks.
// Vertex, variable, element and item indices are 0-based throughout.

struct Literal {
    int variable = 0;
    bool positive = true;
    bool operator==(const Literal&) const = default;
};

struct Cnf {
    int variables = 0;
    std::vector<std::vector<Literal>> clauses;
};

/// At most three literals per clause, every variable at most twice positive and twice negative.
bool is_two_balanced(const Cnf& formula);

struct Graph {
    int vertices = 0;
    std::vector<Edge> edges;
};

struct DominatingSet {
    Graph graph;
    int k = 0;
};

struct MulticolouredClique {
    Graph graph;
    int colours = 0;
    std::vector<int> colour;  // per vertex
};

struct BinPacking {
    int capacity = 0;
    std::vector<int> items;
    int bins = 0;
};

struct ChannelAssignment {
    Graph graph;
    std::vector<int> separation;  // per edge, aligned with graph.edges
    int channels = 0;             // lambda; channels are 1..lambda
};

struct SetCover {
    int universe = 0;
    std::vector<std::vector<int>> sets;
    int k = 0;
};

// Exhaustive deciders. Each returns a certificate when one exists and throws BudgetExceeded when
// the search space exceeds `budget` candidates.
inline constexpr std::uint64_t kOracleBudget = 50'000'000;

std::optional<std::vector<bool>> solve_cnf(const Cnf& formula, std::uint64_t budget = kOracleBudget);
std::optional<std::vector<int>> solve_dominating_set(const DominatingSet& problem,
                                                     std::uint64_t budget = kOracleBudget);
/// One vertex per colour, indexed by colour.
std::optional<std::vector<int>> solve_clique(const MulticolouredClique& problem,
                                             std::uint64_t budget = kOracleBudget);
/// Bin index per item.
std::optional<std::vector<int>> solve_bin_packing(const BinPacking& problem, std::uint64_t budget = kOracleBudget);
/// Channel in 1..lambda per vertex.
std::optional<std::vector<int>> solve_channel_assignment(const ChannelAssignment& problem,
                                                         std::uint64_t budget = kOracleBudget);
/// Indices of the chosen sets.
std::optional<std::vector<int>> solve_set_cover(const SetCover& problem, std::uint64_t budget = kOracleBudget);

bool check_assignment(const Cnf& formula, const std::vector<bool>& assignment);
bool check_dominating_set(const DominatingSet& problem, const std::vector<int>& chosen);
bool check_clique(const MulticolouredClique& problem, const std::vector<int>& chosen);
bool check_bin_packing(const BinPacking& problem, const std::vector<int>& bin_of);
bool check_channel_assignment(const ChannelAssignment& problem, const std::vector<int>& channel);
bool check_set_cover(const SetCover& problem, const std::vector<int>& chosen);

} // namespace refhouse
