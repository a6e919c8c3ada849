#pragma once

#include "refhouse/model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace refhouse {

enum class Status { sat, unsat, undecided };

std::string_view to_string(Status status);

struct SolveStats {
    std::uint64_t nodes = 0;
    double millis = 0.0;
};

struct SolveResult {
    Status status = Status::undecided;
    std::optional<Housing> witness;  // present iff status == sat
    std::string algorithm;
    std::string reason;  // why unsat was concluded early, or why the run was undecided
    SolveStats stats;
    std::vector<std::string> preprocessing;  // names of the applied simplification rules

    static SolveResult sat(Housing witness, std::string algorithm);
    static SolveResult unsat(std::string algorithm, std::string reason = {});
    static SolveResult undecided(std::string algorithm, std::string reason);
};

/// Work limits shared by every solver. A solver that would exceed one reports Status::undecided.
struct Budget {
    std::uint64_t nodes = 20'000'000;       // search nodes / enumerated candidates
    std::uint64_t guesses = 1'000'000;      // outer guess loops (delta^|I|, 2^|M|, ...)
    int max_signature_inhabitants = 20;     // 2^|I| signature classes are tolerated up to this |I|
    int max_cover = 24;                     // largest vertex cover searched for
};

} // namespace refhouse
