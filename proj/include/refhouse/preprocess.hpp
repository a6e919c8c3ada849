#pragma once

#include "refhouse/model.hpp"
#include "refhouse/result.hpp"

#include <optional>
#include <string>
#include <vector>

namespace refhouse {

/// One applied simplification. Vertex ids refer to the instance the rule was applied to.
struct RuleApplication {
    std::string rule;
    std::vector<VertexId> removed_vertices;
    std::vector<Edge> removed_edges;
    std::vector<int> removed_inhabitants;
};

/// Ordered record of simplifications with the composed vertex map back to the original instance.
struct PreprocessTranscript {
    int original_vertex_count = 0;
    std::vector<VertexId> to_original;  // simplified vertex id -> original vertex id
    std::vector<RuleApplication> steps;
    bool infeasible = false;
    std::string reason;

    static PreprocessTranscript identity(const Instance& instance);
    std::vector<std::string> rule_names() const;
};

struct Preprocessed {
    Instance instance;
    PreprocessTranscript transcript;
};

struct PreprocessOptions {
    /// Also delete hedonic inhabitants whose family is exactly {{}} together with their empty
    /// neighbours. Off by default.
    bool hedonic_intolerant = false;
};

/// Deletes every inhabitant that can tolerate no refugee neighbour together with its empty
/// neighbourhood, to a fixpoint. An inhabitant counts as intolerant when its approval restricted
/// to the achievable range [0, |U_i|] is exactly {0}. Anonymous instances only.
Preprocessed remove_intolerant(const Instance& instance);

/// Hedonic analogue: removes inhabitants approving only the empty set.
Preprocessed remove_intolerant_hedonic(const Instance& instance);

/// Drops edges joining two occupied or two empty vertices. Anonymous and hedonic instances only.
Preprocessed drop_homogeneous_edges(const Instance& instance);

/// Returns an unsat result when the instance is decided by a counting argument alone.
std::optional<SolveResult> trivial_checks(const Instance& instance);

/// trivial_checks, remove_intolerant (fixpoint), drop_homogeneous_edges, trivial_checks.
/// Diversity instances only receive the trivial checks.
Preprocessed preprocess(const Instance& instance, const PreprocessOptions& options = {});

/// Replays the transcript steps on the original instance.
Instance replay(const Instance& original, const PreprocessTranscript& transcript);

/// Maps a housing of the simplified instance to one of the original instance.
/// Throws InvalidHousing if it references vertices the transcript does not know.
Housing lift_housing(const PreprocessTranscript& transcript, const Housing& housing);

/// Composes two transcripts: `second` was applied to the output of `first`.
PreprocessTranscript compose(const PreprocessTranscript& first, const PreprocessTranscript& second);

} // namespace refhouse
