#pragma once

#include <cstdint>
#include <vector>

namespace refhouse {

/// Feasibility of { A x = b, lower <= x <= upper } with small integer data and few rows.
struct BoundedLp {
    struct Entry {
        int row;
        int coefficient;
    };
    int rows = 0;
    std::vector<std::vector<Entry>> columns;
    std::vector<long> lower, upper;
    std::vector<long> rhs;
};

struct LpPoint {
    enum class Status { feasible, infeasible, stalled } status = Status::stalled;
    std::vector<double> x;       // a basic feasible point: at most `rows` entries off their bounds
    std::vector<double> farkas;  // row multipliers when infeasible (not yet checked exactly)
    std::uint64_t pivots = 0;
};

/// Phase-one bounded-variable simplex with Bland's rule.
LpPoint find_feasible_point(const BoundedLp& lp, std::uint64_t pivot_limit);

/// Exact integer check that `multipliers` (rounded to integers) prove the system infeasible:
/// max over the box of (yA)x < y b, or the mirrored inequality.
bool certifies_infeasible(const BoundedLp& lp, const std::vector<double>& multipliers);

} // namespace refhouse
