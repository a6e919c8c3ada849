#include "refhouse/solve_arh.hpp"

#include "bounded_lp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>

namespace refhouse {

std::vector<SignatureClass> signature_classes(const Instance& instance) {
    std::vector<SignatureClass> classes;
    std::map<std::vector<int>, std::size_t> index;
    for (VertexId v : instance.empty_vertices()) {
        auto signature = instance.inhabitant_neighbors(v);
        auto [it, inserted] = index.try_emplace(signature, classes.size());
        if (inserted) classes.push_back({std::move(signature), {}});
        classes[it->second].vertices.push_back(v);
    }
    return classes;
}

namespace {

// LP-relaxation branch and bound. Unsat is only concluded from an exactly checked Farkas
// certificate or from fully fixed counts, so floating-point error can cost time but not answers.
struct BranchAndBound {
    const ClassProgram& program;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    bool exhausted = false;

    std::vector<int> row;  // per target: LP row, or -1 when no class counts towards it
    int rows = 0;
    std::vector<long> lower, upper;  // per class
    std::vector<int> low, high;      // per target: hull still allowed
    std::vector<int> counts;

    BranchAndBound(const ClassProgram& p, std::uint64_t node_budget) : program(p), budget(node_budget) {
        row.assign(p.targets.size(), -1);
        for (const auto& members : p.members)
            for (int i : members)
                if (row[i] < 0) row[i] = rows++;
        ++rows;  // the total
        for (int cap : p.capacity) {
            lower.push_back(0);
            upper.push_back(cap);
        }
        for (const auto& t : p.targets) {
            low.push_back(t.min());
            high.push_back(t.max());
        }
    }

    BoundedLp relaxation() const {
        BoundedLp lp;
        lp.rows = rows;
        lp.rhs.assign(rows, 0);
        lp.rhs[rows - 1] = program.total;
        for (std::size_t s = 0; s < program.capacity.size(); ++s) {
            std::vector<BoundedLp::Entry> column{{rows - 1, 1}};
            for (int i : program.members[s]) column.push_back({row[i], 1});
            lp.columns.push_back(std::move(column));
            lp.lower.push_back(lower[s]);
            lp.upper.push_back(upper[s]);
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (row[i] < 0) continue;
            lp.columns.push_back({{row[i], -1}});
            lp.lower.push_back(low[i]);
            lp.upper.push_back(high[i]);
        }
        return lp;
    }

    // Exact check of integral counts; on a gapped target, branches around the gap instead.
    std::optional<bool> settle(const std::vector<long>& y) {
        long sum = 0;
        for (long v : y) sum += v;
        if (sum != program.total) return std::nullopt;
        std::vector<int> value(program.targets.size(), 0);
        for (std::size_t s = 0; s < y.size(); ++s)
            for (int i : program.members[s]) value[i] += static_cast<int>(y[s]);
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (row[i] < 0) continue;
            if (value[i] < low[i] || value[i] > high[i]) return std::nullopt;
            if (program.targets[i].contains(value[i])) continue;
            const IntervalSet below = program.targets[i].clamped(low[i], value[i] - 1);
            const IntervalSet above = program.targets[i].clamped(value[i] + 1, high[i]);
            const int saved_low = low[i], saved_high = high[i];
            bool found = false;
            if (!below.empty()) {
                high[i] = below.max();
                found = run();
                high[i] = saved_high;
            }
            if (!found && !exhausted && !above.empty()) {
                low[i] = above.min();
                found = run();
                low[i] = saved_low;
            }
            return found;
        }
        counts.assign(y.begin(), y.end());
        return true;
    }

    bool restrict(int s, long lo, long hi) {
        const long saved_lo = lower[s], saved_hi = upper[s];
        lower[s] = lo;
        upper[s] = hi;
        const bool found = run();
        lower[s] = saved_lo;
        upper[s] = saved_hi;
        return found;
    }

    // Halves the widest domain; used when the relaxation gives no usable guidance.
    bool split() {
        int widest = -1;
        for (std::size_t s = 0; s < lower.size(); ++s)
            if (upper[s] > lower[s] && (widest < 0 || upper[s] - lower[s] > upper[widest] - lower[widest]))
                widest = static_cast<int>(s);
        if (widest < 0) return false;
        const long mid = (lower[widest] + upper[widest]) / 2;
        return restrict(widest, lower[widest], mid) || (!exhausted && restrict(widest, mid + 1, upper[widest]));
    }

    bool run() {
        if (++nodes > budget) {
            exhausted = true;
            return false;
        }
        if (std::equal(lower.begin(), lower.end(), upper.begin())) return settle(lower).value_or(false);

        const BoundedLp lp = relaxation();
        const LpPoint point = find_feasible_point(lp, budget - std::min(budget, nodes));
        nodes += point.pivots;
        if (point.status == LpPoint::Status::stalled) {
            exhausted = true;
            return false;
        }
        if (point.status == LpPoint::Status::infeasible)
            return certifies_infeasible(lp, point.farkas) ? false : split();

        int fractional = -1;
        double spread = 1e-6;
        std::vector<long> y(lower.size());
        for (std::size_t s = 0; s < lower.size(); ++s) {
            const double v = point.x[s];
            const double off = std::abs(v - std::round(v));
            if (off > spread) {
                spread = off;
                fractional = static_cast<int>(s);
            }
            y[s] = std::clamp(std::lround(v), lower[s], upper[s]);
        }
        if (fractional < 0) {
            if (auto verdict = settle(y)) return *verdict;
            return split();
        }
        const double v = point.x[fractional];
        const long down = static_cast<long>(std::floor(v));
        const long lo = lower[fractional], hi = upper[fractional];
        if (v - down < 0.5)
            return restrict(fractional, lo, down) || (!exhausted && restrict(fractional, down + 1, hi));
        return restrict(fractional, down + 1, hi) || (!exhausted && restrict(fractional, lo, down));
    }
};

} // namespace

ClassProgramResult solve_class_program(const ClassProgram& program, std::uint64_t node_budget) {
    ClassProgramResult result;
    if (program.total < 0) {
        result.status = Status::unsat;
        return result;
    }
    std::vector<char> constrained(program.targets.size(), 0);
    for (const auto& members : program.members)
        for (int i : members) constrained[i] = 1;
    for (std::size_t i = 0; i < program.targets.size(); ++i) {
        // An empty target, or an unconstrained target that excludes zero, is infeasible outright.
        if (program.targets[i].empty() || (!constrained[i] && !program.targets[i].contains(0))) {
            result.status = Status::unsat;
            return result;
        }
    }
    BranchAndBound search(program, node_budget);
    const bool found = search.run();
    result.nodes = search.nodes;
    if (found) {
        result.status = Status::sat;
        result.counts = std::move(search.counts);
    } else {
        result.status = search.exhausted ? Status::undecided : Status::unsat;
    }
    return result;
}

} // namespace refhouse
