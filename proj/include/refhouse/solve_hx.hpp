#pragma once

#include "refhouse/model.hpp"
#include "refhouse/result.hpp"
#include "refhouse/solve_arh.hpp"

#include <cstdint>

namespace refhouse {

/// Backtracking over refugees (most constrained first). A refugee may only use vertices whose
/// inhabitant neighbourhood it approves; an inhabitant prunes as soon as no approved set can
/// still extend its current refugee neighbourhood.
SolveResult solve_hrh_bruteforce(const Instance& instance, const Budget& budget = {});

/// Backtracking over refugees; an agent's palette is checked once all its empty neighbours are
/// filled. Every leaf is verified in full.
SolveResult solve_drh_bruteforce(const Instance& instance, const Budget& budget = {});

/// Solves any variant: anonymous via solve_arh, hedonic via preprocessing plus backtracking,
/// diversity via backtracking. Only Strategy::automatic and Strategy::bruteforce apply to the
/// hedonic and diversity variants.
SolveResult solve(const Instance& instance, const SolveOptions& options = {});

/// Maps a housing of the hedonic image back to the anonymous source.
struct ArhToHrhCertificate {
    int source_vertex_count = 0;
    int source_refugee_count = 0;
    Housing to_source(const Housing& housing) const;
};

struct ArhToHrh {
    Instance instance;
    ArhToHrhCertificate certificate;
};

/// Hedonic instance that is solvable iff the anonymous one is. One refugee per empty vertex; a
/// guard star absorbs the refugees that stand for unused vertices. Throws BudgetExceeded when the
/// explicit approval families would hold more than `size_budget` subset entries.
ArhToHrh arh_to_hrh(const Instance& anonymous, std::uint64_t size_budget = 1'000'000);

} // namespace refhouse
