#pragma once

#include "refhouse/model.hpp"
#include "refhouse/sources.hpp"

#include <vector>

namespace refhouse {

// Generators from the source problems to housing instances. Each returns the instance together
// with a certificate map turning a respecting housing into a source certificate. Malformed or
// non-conforming inputs throw PreconditionViolated naming the generator.

template <class Certificate>
struct Reduction {
    Instance instance;
    Certificate certificate;
};

/// Variable i is true iff its true-port vertex hosts a refugee.
struct AssignmentMap {
    std::vector<VertexId> true_port;
    std::vector<bool> decode(const Housing& housing) const;
};

/// Item i is selected iff port[i] hosts a refugee (dominating set, set cover).
struct SelectionMap {
    std::vector<VertexId> port;
    std::vector<int> decode(const Housing& housing) const;
};

/// The number of refugees in selection gadget i picks the member of colour class i.
struct CliqueArhMap {
    std::vector<std::vector<VertexId>> selection;  // S_i
    std::vector<std::vector<int>> members;         // colour class i, sorted source vertices
    std::vector<int> decode(const Housing& housing) const;
};

/// The refugee on the selection leaf of star i picks the member of colour class i.
struct CliqueHrhMap {
    std::vector<VertexId> selection_leaf;
    std::vector<std::vector<int>> members;
    std::vector<int> decode(const Housing& housing) const;
};

/// Item j goes to the bin whose copy of the item gadget is filled.
struct PackingMap {
    std::vector<std::vector<std::vector<VertexId>>> leaves;  // [item][bin] -> gadget leaves
    std::vector<int> decode(const Housing& housing) const;
};

/// Vertex v gets channel i when refugee (v, i) is housed off the parking star of v.
struct ChannelMap {
    int vertices = 0;
    int channels = 0;
    std::vector<std::vector<VertexId>> parking;  // per source vertex, its star leaves
    std::vector<int> decode(const Housing& housing) const;
};

Reduction<AssignmentMap> sat_to_arh(const Cnf& formula);
Reduction<SelectionMap> dominating_set_to_arh(const DominatingSet& problem);
Reduction<CliqueArhMap> clique_to_arh(const MulticolouredClique& problem);
Reduction<PackingMap> binpacking_to_arh(const BinPacking& problem, std::uint64_t size_budget = 1'000'000);
Reduction<AssignmentMap> sat_to_hrh(const Cnf& formula);
Reduction<CliqueHrhMap> clique_to_hrh(const MulticolouredClique& problem);
Reduction<ChannelMap> channel_to_hrh(const ChannelAssignment& problem, std::uint64_t size_budget = 1'000'000);
Reduction<AssignmentMap> sat_to_drh(const Cnf& formula);
Reduction<SelectionMap> setcover_to_drh(const SetCover& problem);

} // namespace refhouse
