#include "refhouse/solve_arh.hpp"

#include "refhouse/errors.hpp"
#include "refhouse/preprocess.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <limits>
#include <string>

namespace refhouse {
namespace {

void require_anonymous(const Instance& instance, const char* algorithm) {
    if (instance.variant() != Variant::anonymous)
        throw PreconditionViolated(std::string(algorithm) + " solves anonymous instances only");
}

/// C(n, k), or cap + 1 if it exceeds cap.
std::uint64_t binomial_capped(int n, int k, std::uint64_t cap) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 value = 1;
    for (int i = 1; i <= k; ++i) {
        value = value * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (value > cap) return cap + 1;
    }
    return static_cast<std::uint64_t>(value);
}

std::optional<SolveResult> empty_approval(const Instance& instance, const char* algorithm) {
    for (int i = 0; i < instance.inhabitant_count(); ++i)
        if (instance.anonymous_approval(i).empty())
            return SolveResult::unsat(algorithm, "inhabitant " + std::to_string(i) + " approves nothing");
    return std::nullopt;
}

Housing materialize(const std::vector<SignatureClass>& classes, const std::vector<int>& counts,
                    std::vector<VertexId> extra = {}) {
    for (std::size_t s = 0; s < classes.size(); ++s)
        for (int k = 0; k < counts[s]; ++k) extra.push_back(classes[s].vertices[k]);
    std::sort(extra.begin(), extra.end());
    return Housing(std::move(extra));
}

/// Class program over all inhabitants with the given targets.
ClassProgram whole_program(const Instance& instance, const std::vector<SignatureClass>& classes,
                           std::vector<IntervalSet> targets) {
    ClassProgram program;
    for (const auto& c : classes) {
        program.capacity.push_back(c.capacity());
        program.members.push_back(c.signature);
    }
    program.targets = std::move(targets);
    program.total = instance.refugee_count();
    return program;
}

SolveResult from_program(const ClassProgramResult& outcome, const std::vector<SignatureClass>& classes,
                         const char* algorithm) {
    SolveResult result;
    switch (outcome.status) {
    case Status::sat: result = SolveResult::sat(materialize(classes, outcome.counts), algorithm); break;
    case Status::unsat: result = SolveResult::unsat(algorithm); break;
    case Status::undecided: result = SolveResult::undecided(algorithm, "node budget exhausted"); break;
    }
    result.stats.nodes = outcome.nodes;
    return result;
}

} // namespace

SolveResult solve_bruteforce(const Instance& instance, const Budget& budget) {
    require_anonymous(instance, "brute");
    const auto empty = instance.empty_vertices();
    const int n = static_cast<int>(empty.size());
    const int r = instance.refugee_count();
    if (r > n) return SolveResult::unsat("brute", "fewer empty vertices than refugees");
    if (binomial_capped(n, r, budget.nodes) > budget.nodes)
        return SolveResult::undecided("brute", "instance too large for oracle");

    std::vector<int> count(instance.inhabitant_count(), 0);
    std::vector<std::vector<int>> watchers(n);
    for (int k = 0; k < n; ++k) watchers[k] = instance.inhabitant_neighbors(empty[k]);
    std::vector<int> pick;
    std::uint64_t leaves = 0;

    std::function<bool(int)> search = [&](int from) -> bool {
        if (static_cast<int>(pick.size()) == r) {
            ++leaves;
            for (int i = 0; i < instance.inhabitant_count(); ++i)
                if (!instance.anonymous_approval(i).contains(count[i])) return false;
            return true;
        }
        for (int k = from; k <= n - (r - static_cast<int>(pick.size())); ++k) {
            pick.push_back(k);
            for (int i : watchers[k]) ++count[i];
            if (search(k + 1)) return true;
            for (int i : watchers[k]) --count[i];
            pick.pop_back();
        }
        return false;
    };
    SolveResult result;
    if (search(0)) {
        std::vector<VertexId> vertices;
        for (int k : pick) vertices.push_back(empty[k]);
        result = SolveResult::sat(Housing(std::move(vertices)), "brute");
    } else {
        result = SolveResult::unsat("brute");
    }
    result.stats.nodes = leaves;
    return result;
}

SolveResult solve_signature_ip(const Instance& instance, const Budget& budget) {
    require_anonymous(instance, "sig-ip");
    if (auto unsat = empty_approval(instance, "sig-ip")) return *unsat;
    if (instance.max_interval_count() > 1) throw PreconditionViolated("non-interval approvals");
    const auto classes = signature_classes(instance);
    const std::vector<IntervalSet> targets(instance.anonymous_approvals().begin(),
                                           instance.anonymous_approvals().end());
    return from_program(solve_class_program(whole_program(instance, classes, targets), budget.nodes),
                        classes, "sig-ip");
}

SolveResult solve_signature_sets(const Instance& instance, const Budget& budget) {
    require_anonymous(instance, "sig-sets");
    if (auto unsat = empty_approval(instance, "sig-sets")) return *unsat;
    const auto classes = signature_classes(instance);
    const std::vector<IntervalSet> targets(instance.anonymous_approvals().begin(),
                                           instance.anonymous_approvals().end());
    return from_program(solve_class_program(whole_program(instance, classes, targets), budget.nodes),
                        classes, "sig-sets");
}

SolveResult solve_delta_guess(const Instance& instance, const Budget& budget) {
    require_anonymous(instance, "delta");
    if (auto unsat = empty_approval(instance, "delta")) return *unsat;
    const int inhabitants = instance.inhabitant_count();
    std::uint64_t guesses = 1;
    for (int i = 0; i < inhabitants; ++i) {
        guesses *= static_cast<std::uint64_t>(instance.anonymous_approval(i).interval_count());
        if (guesses > budget.guesses) return SolveResult::undecided("delta", "too many interval guesses");
    }
    const auto classes = signature_classes(instance);
    auto program = whole_program(instance, classes, std::vector<IntervalSet>(inhabitants));
    std::vector<int> choice(inhabitants, 0);
    std::uint64_t nodes = 0;
    bool exhausted = false;
    for (;;) {
        for (int i = 0; i < inhabitants; ++i) {
            const Interval piece = instance.anonymous_approval(i).intervals()[choice[i]];
            program.targets[i] = IntervalSet::range(piece.lo, piece.hi);
        }
        const std::uint64_t left = budget.nodes > nodes ? budget.nodes - nodes : 0;
        const auto outcome = solve_class_program(program, left);
        nodes += outcome.nodes;
        if (outcome.status == Status::sat) {
            auto result = from_program(outcome, classes, "delta");
            result.stats.nodes = nodes;
            return result;
        }
        if (outcome.status == Status::undecided) {
            exhausted = true;
            break;
        }
        int i = 0;
        while (i < inhabitants && ++choice[i] == instance.anonymous_approval(i).interval_count()) choice[i++] = 0;
        if (i == inhabitants) break;
    }
    auto result = exhausted ? SolveResult::undecided("delta", "node budget exhausted") : SolveResult::unsat("delta");
    result.stats.nodes = nodes;
    return result;
}

SolveResult solve_neighborhood_guess(const Instance& instance, const Budget& budget) {
    require_anonymous(instance, "guess");
    if (auto unsat = empty_approval(instance, "guess")) return *unsat;
    const auto classes = signature_classes(instance);
    const int r = instance.refugee_count();
    const int inhabitants = instance.inhabitant_count();
    std::vector<int> used(classes.size(), 0), count(inhabitants, 0);
    std::uint64_t nodes = 0;
    bool exhausted = false;

    // Refugees are interchangeable, so guesses are taken in non-decreasing class order.
    std::function<bool(int, std::size_t)> search = [&](int placed, std::size_t from) -> bool {
        if (++nodes > budget.nodes) {
            exhausted = true;
            return false;
        }
        if (placed == r) {
            for (int i = 0; i < inhabitants; ++i)
                if (!instance.anonymous_approval(i).contains(count[i])) return false;
            return true;
        }
        for (std::size_t s = from; s < classes.size(); ++s) {
            if (used[s] == classes[s].capacity()) continue;
            bool ok = true;
            for (int i : classes[s].signature)
                if (count[i] + 1 > instance.anonymous_approval(i).max()) ok = false;
            if (!ok) continue;
            ++used[s];
            for (int i : classes[s].signature) ++count[i];
            if (search(placed + 1, s)) return true;
            for (int i : classes[s].signature) --count[i];
            --used[s];
            if (exhausted) return false;
        }
        return false;
    };
    SolveResult result;
    if (search(0, 0))
        result = SolveResult::sat(materialize(classes, used), "guess");
    else if (exhausted)
        result = SolveResult::undecided("guess", "node budget exhausted");
    else
        result = SolveResult::unsat("guess");
    result.stats.nodes = nodes;
    return result;
}

std::optional<std::vector<VertexId>> min_vertex_cover(const Topology& topology, int max_size) {
    const int n = topology.vertex_count();
    std::vector<char> removed(n, 0);
    std::vector<VertexId> cover, best;
    int best_size = max_size + 1;

    auto live_degree = [&](VertexId v) {
        int d = 0;
        for (VertexId w : topology.neighbors(v)) d += !removed[w];
        return d;
    };

    std::function<void()> branch = [&]() {
        const int size = static_cast<int>(cover.size());
        if (size >= best_size) return;
        // Pick the vertex of maximum live degree; a vertex of degree one forces its neighbour.
        VertexId pick = kNone, leaf = kNone;
        int pick_degree = 0, edges = 0;
        for (VertexId v = 0; v < n; ++v) {
            if (removed[v]) continue;
            const int d = live_degree(v);
            edges += d;
            if (d > pick_degree) pick_degree = d, pick = v;
            if (d == 1 && leaf == kNone) leaf = v;
        }
        if (pick == kNone) {
            best = cover;
            best_size = size;
            return;
        }
        // Each cover vertex covers at most pick_degree of the edges still present.
        const int lower = (edges / 2 + pick_degree - 1) / pick_degree;
        if (size + lower >= best_size) return;

        auto take = [&](std::vector<VertexId> vertices) {
            for (VertexId v : vertices) {
                removed[v] = 1;
                cover.push_back(v);
            }
            branch();
            for (VertexId v : vertices) {
                removed[v] = 0;
                cover.pop_back();
            }
        };
        if (leaf != kNone) {
            for (VertexId w : topology.neighbors(leaf))
                if (!removed[w]) return take({w});
        }
        take({pick});
        std::vector<VertexId> others;
        for (VertexId w : topology.neighbors(pick))
            if (!removed[w]) others.push_back(w);
        if (size + static_cast<int>(others.size()) < best_size) {
            removed[pick] = 1;  // pick is not in the cover, so all its edges go via the neighbours
            take(others);
            removed[pick] = 0;
        }
    };
    branch();
    if (best_size > max_size) return std::nullopt;
    std::sort(best.begin(), best.end());
    return best;
}

SolveResult solve_vertex_cover(const Instance& instance, const Budget& budget) {
    require_anonymous(instance, "vc");
    if (auto unsat = empty_approval(instance, "vc")) return *unsat;
    if (instance.max_interval_count() > 1) throw PreconditionViolated("non-interval approvals");

    // Only occupied-empty edges matter; the cover of the remaining bipartite graph splits the
    // problem into a guessed part (empty cover vertices) and a class program.
    const Instance reduced = drop_homogeneous_edges(instance).instance;
    if (auto unsat = empty_approval(reduced, "vc")) return *unsat;  // approvals were clamped to the new degrees
    const auto cover = min_vertex_cover(reduced.topology(), budget.max_cover);
    if (!cover) return SolveResult::undecided("vc", "vertex cover exceeds budget");

    const int n = reduced.vertex_count();
    std::vector<char> in_cover(n, 0);
    for (VertexId v : *cover) in_cover[v] = 1;
    std::vector<VertexId> cover_empty;
    std::vector<int> cover_inhabitants, outside_inhabitants;
    for (VertexId v : *cover)
        if (!reduced.occupied(v)) cover_empty.push_back(v);
    for (int i = 0; i < reduced.inhabitant_count(); ++i)
        (in_cover[reduced.vertex_of(i)] ? cover_inhabitants : outside_inhabitants).push_back(i);
    if (cover_empty.size() >= 63 || (std::uint64_t{1} << cover_empty.size()) > budget.guesses)
        return SolveResult::undecided("vc", "too many cover placements");

    // Classes of empty vertices outside the cover; their inhabitant neighbours all lie in it.
    std::vector<SignatureClass> classes;
    for (const auto& c : signature_classes(reduced)) {
        SignatureClass outside{c.signature, {}};
        for (VertexId v : c.vertices)
            if (!in_cover[v]) outside.vertices.push_back(v);
        if (!outside.vertices.empty()) classes.push_back(std::move(outside));
    }
    ClassProgram program;
    for (const auto& c : classes) {
        program.capacity.push_back(c.capacity());
        program.members.push_back(c.signature);
    }
    program.targets.resize(reduced.inhabitant_count());

    const int r = reduced.refugee_count();
    const std::size_t m = cover_empty.size();
    std::vector<int> count(reduced.inhabitant_count());
    std::uint64_t nodes = 0;
    bool exhausted = false;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        std::vector<VertexId> placed;
        for (std::size_t k = 0; k < m; ++k)
            if (mask >> k & 1) placed.push_back(cover_empty[k]);
        if (static_cast<int>(placed.size()) > r) continue;
        std::fill(count.begin(), count.end(), 0);
        for (VertexId v : placed)
            for (int i : reduced.inhabitant_neighbors(v)) ++count[i];
        bool ok = true;
        for (int i : outside_inhabitants)
            if (!reduced.anonymous_approval(i).contains(count[i])) ok = false;
        // Inhabitants outside the cover see no class vertex; an exact check above suffices, and
        // their target in the program must admit zero.
        for (int i = 0; ok && i < reduced.inhabitant_count(); ++i) {
            const auto& a = reduced.anonymous_approval(i);
            if (in_cover[reduced.vertex_of(i)]) {
                program.targets[i] = IntervalSet::range(std::max(0, a.low() - count[i]), a.high() - count[i]);
                if (program.targets[i].empty()) ok = false;
            } else {
                program.targets[i] = IntervalSet::range(0, 0);
            }
        }
        if (!ok) continue;
        ++nodes;
        program.total = r - static_cast<int>(placed.size());
        const std::uint64_t left = budget.nodes > nodes ? budget.nodes - nodes : 0;
        const auto outcome = solve_class_program(program, left);
        nodes += outcome.nodes;
        if (outcome.status == Status::sat) {
            auto result = SolveResult::sat(materialize(classes, outcome.counts, placed), "vc");
            result.stats.nodes = nodes;
            return result;
        }
        if (outcome.status == Status::undecided) {
            exhausted = true;
            break;
        }
    }
    auto result = exhausted ? SolveResult::undecided("vc", "node budget exhausted") : SolveResult::unsat("vc");
    result.stats.nodes = nodes;
    return result;
}

std::string_view to_string(Strategy strategy) {
    switch (strategy) {
    case Strategy::automatic: return "auto";
    case Strategy::bruteforce: return "brute";
    case Strategy::maxdeg2: return "dp2";
    case Strategy::signature_ip: return "sig-ip";
    case Strategy::signature_sets: return "sig-sets";
    case Strategy::delta_guess: return "delta";
    case Strategy::neighborhood_guess: return "guess";
    case Strategy::vertex_cover: return "vc";
    }
    return "auto";
}

Strategy parse_strategy(std::string_view name) {
    for (auto s : {Strategy::automatic, Strategy::bruteforce, Strategy::maxdeg2, Strategy::signature_ip,
                   Strategy::signature_sets, Strategy::delta_guess, Strategy::neighborhood_guess,
                   Strategy::vertex_cover})
        if (to_string(s) == name) return s;
    throw Error("unknown algorithm '" + std::string(name) + "'");
}

namespace {

SolveResult run_strategy(const Instance& instance, Strategy strategy, const Budget& budget) {
    switch (strategy) {
    case Strategy::bruteforce: return solve_bruteforce(instance, budget);
    case Strategy::maxdeg2: return solve_maxdeg2(instance, budget);
    case Strategy::signature_ip: return solve_signature_ip(instance, budget);
    case Strategy::signature_sets: return solve_signature_sets(instance, budget);
    case Strategy::delta_guess: return solve_delta_guess(instance, budget);
    case Strategy::neighborhood_guess: return solve_neighborhood_guess(instance, budget);
    case Strategy::vertex_cover: return solve_vertex_cover(instance, budget);
    case Strategy::automatic: break;
    }
    // Portfolio: each applicable strategy in turn, falling through while undecided.
    std::uint64_t nodes = 0;
    std::vector<std::string> tried;
    auto attempt = [&](SolveResult r) -> std::optional<SolveResult> {
        nodes += r.stats.nodes;
        tried.push_back(r.algorithm);
        if (r.status == Status::undecided) return std::nullopt;
        r.stats.nodes = nodes;
        return r;
    };
    const int delta = instance.max_interval_count();
    if (instance.topology().max_degree() <= 2)
        if (auto r = attempt(solve_maxdeg2(instance, budget))) return *r;
    if (delta <= 1 && instance.inhabitant_count() <= budget.max_signature_inhabitants)
        if (auto r = attempt(solve_signature_ip(instance, budget))) return *r;
    if (delta > 1)
        if (auto r = attempt(solve_delta_guess(instance, budget))) return *r;
    if (delta <= 1)
        if (auto r = attempt(solve_vertex_cover(instance, budget))) return *r;
    if (!(delta <= 1 && instance.inhabitant_count() <= budget.max_signature_inhabitants))
        if (auto r = attempt(solve_signature_sets(instance, budget))) return *r;
    if (auto r = attempt(solve_bruteforce(instance, budget))) return *r;
    std::string list;
    for (const auto& name : tried) list += (list.empty() ? "" : ",") + name;
    auto result = SolveResult::undecided("auto", "all strategies exhausted their budgets (" + list + ")");
    result.stats.nodes = nodes;
    return result;
}

} // namespace

SolveResult solve_arh(const Instance& instance, const SolveOptions& options) {
    require_anonymous(instance, "solve_arh");
    const auto start = std::chrono::steady_clock::now();
    Preprocessed pre{instance, PreprocessTranscript::identity(instance)};
    if (options.preprocess) pre = preprocess(instance);

    SolveResult result;
    if (pre.transcript.infeasible) {
        result = SolveResult::unsat(std::string(to_string(options.strategy)), pre.transcript.reason);
    } else {
        result = run_strategy(pre.instance, options.strategy, options.budget);
        if (result.witness) {
            Housing lifted = lift_housing(pre.transcript, *result.witness);
            if (!verify_arh(instance, lifted))
                throw Error("internal error: " + result.algorithm + " produced a housing that does not verify");
            result.witness = std::move(lifted);
        }
    }
    result.preprocessing = pre.transcript.rule_names();
    result.stats.millis =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace refhouse
