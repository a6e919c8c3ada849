#pragma once

#include "refhouse/model.hpp"
#include "refhouse/result.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace refhouse {

/// Empty vertices that see exactly the same inhabitants. Only the number of refugees per class
/// matters to the anonymous constraints.
struct SignatureClass {
    std::vector<int> signature;       // sorted inhabitant indices
    std::vector<VertexId> vertices;   // increasing vertex ids
    int capacity() const { return static_cast<int>(vertices.size()); }
};

/// Partition of V_U by inhabitant neighbourhood, ordered by first vertex.
std::vector<SignatureClass> signature_classes(const Instance& instance);

/// Integer program over signature classes: choose y_s in [0, capacity_s] with sum y_s = total and,
/// for every constrained inhabitant i, sum over classes containing i of y_s in targets[i].
struct ClassProgram {
    std::vector<int> capacity;
    std::vector<std::vector<int>> members;  // per class, indices into targets
    std::vector<IntervalSet> targets;
    int total = 0;
};

struct ClassProgramResult {
    Status status = Status::undecided;  // sat = feasible, unsat = infeasible, undecided = budget
    std::vector<int> counts;            // y_s when feasible
    std::uint64_t nodes = 0;
};

/// Branch and bound on the LP relaxation (gapped targets are relaxed to their hull and split at
/// the gap when a candidate falls into it). Exact; simplex pivots and search nodes both count
/// against `node_budget`.
ClassProgramResult solve_class_program(const ClassProgram& program, std::uint64_t node_budget);

/// Exhaustive enumeration of all |R|-subsets of V_U. Reports undecided when C(|V_U|,|R|)
/// exceeds the node budget.
SolveResult solve_bruteforce(const Instance& instance, const Budget& budget = {});

/// Polynomial dynamic programme for topologies of maximum degree 2.
/// Throws PreconditionViolated on a vertex of degree 3 or more.
SolveResult solve_maxdeg2(const Instance& instance, const Budget& budget = {});

/// Class program with one interval per inhabitant. Throws PreconditionViolated when an approval
/// has more than one interval.
SolveResult solve_signature_ip(const Instance& instance, const Budget& budget = {});

/// Class program with the full (possibly gapped) approval sets as targets.
SolveResult solve_signature_sets(const Instance& instance, const Budget& budget = {});

/// Tries every choice of one interval per inhabitant and solves the interval program for each.
SolveResult solve_delta_guess(const Instance& instance, const Budget& budget = {});

/// Guesses the inhabitant neighbourhood of each refugee in turn; a guess is realised by a
/// still-unused empty vertex with exactly that neighbourhood.
SolveResult solve_neighborhood_guess(const Instance& instance, const Budget& budget = {});

/// Exact minimum vertex cover by branching, or nothing if every cover is larger than max_size.
std::optional<std::vector<VertexId>> min_vertex_cover(const Topology& topology, int max_size);

/// Enumerates refugee placements on the empty cover vertices; the remaining refugees go to
/// non-cover vertices whose inhabitant neighbours all lie in the cover, which is a class program
/// over at most |cover| inhabitants. Interval approvals only.
SolveResult solve_vertex_cover(const Instance& instance, const Budget& budget = {});

enum class Strategy {
    automatic,
    bruteforce,
    maxdeg2,
    signature_ip,
    signature_sets,
    delta_guess,
    neighborhood_guess,
    vertex_cover,
};

std::string_view to_string(Strategy strategy);
/// Accepts the CLI names: auto, brute, dp2, sig-ip, sig-sets, delta, guess, vc.
Strategy parse_strategy(std::string_view name);

struct SolveOptions {
    Strategy strategy = Strategy::automatic;
    Budget budget;
    bool preprocess = true;
};

/// Preprocesses, runs the requested strategy (or the automatic fall-through portfolio), lifts the
/// witness to the input instance and re-verifies it.
SolveResult solve_arh(const Instance& instance, const SolveOptions& options = {});

} // namespace refhouse
