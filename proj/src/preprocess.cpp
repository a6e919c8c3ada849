#include "refhouse/preprocess.hpp"

#include "refhouse/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace refhouse {

namespace {

// Rebuilds `instance` on a new topology and inhabitant subset. `new_id[v]` gives the new id
// of v or kNone; inhabitants on removed vertices disappear.
Instance rebuild(const Instance& instance, const std::vector<VertexId>& new_id, int new_vertex_count,
                 std::span<const Edge> new_edges)
{
    Topology topology(new_vertex_count, new_edges);
    std::vector<int> inhabitant_map(static_cast<std::size_t>(instance.inhabitant_count()), kNone);
    std::vector<VertexId> vertices;
    for (int i = 0; i < instance.inhabitant_count(); ++i) {
        VertexId v = new_id[instance.vertex_of(i)];
        if (v == kNone) continue;
        inhabitant_map[i] = static_cast<int>(vertices.size());
        vertices.push_back(v);
    }

    Instance out;
    switch (instance.variant()) {
    case Variant::anonymous: {
        std::vector<IntervalSet> approvals;
        for (int i = 0; i < instance.inhabitant_count(); ++i) {
            if (inhabitant_map[i] == kNone) continue;
            int degree = topology.degree(vertices[inhabitant_map[i]]);
            approvals.push_back(instance.anonymous_approval(i).clamped(0, degree));
        }
        out = Instance::anonymous(std::move(topology), std::move(vertices), std::move(approvals),
                                  instance.refugee_count());
        break;
    }
    case Variant::hedonic: {
        std::vector<SubsetFamily> inhabitant_families;
        for (int i = 0; i < instance.inhabitant_count(); ++i)
            if (inhabitant_map[i] != kNone) inhabitant_families.push_back(instance.inhabitant_family(i));
        // Sets naming a removed inhabitant can no longer be realised.
        std::vector<SubsetFamily> refugee_families;
        for (int r = 0; r < instance.refugee_count(); ++r) {
            std::vector<std::vector<int>> sets;
            for (const auto& s : instance.refugee_family(r).sets()) {
                std::vector<int> mapped;
                bool ok = true;
                for (int i : s) {
                    if (inhabitant_map[i] == kNone) {
                        ok = false;
                        break;
                    }
                    mapped.push_back(inhabitant_map[i]);
                }
                if (ok) sets.push_back(std::move(mapped));
            }
            refugee_families.emplace_back(std::move(sets));
        }
        out = Instance::hedonic(std::move(topology), std::move(vertices), std::move(inhabitant_families),
                                std::move(refugee_families));
        break;
    }
    case Variant::diversity:
        throw PreconditionViolated("diversity instances are never structurally simplified");
    }
    return out.with_meta(instance.meta());
}

Instance without_vertices(const Instance& instance, std::span<const VertexId> removed,
                          std::vector<VertexId>* kept_out = nullptr)
{
    const int n = instance.vertex_count();
    std::vector<char> gone(static_cast<std::size_t>(n), 0);
    for (VertexId v : removed) gone[v] = 1;
    std::vector<VertexId> new_id(static_cast<std::size_t>(n), kNone);
    std::vector<VertexId> kept;
    for (VertexId v = 0; v < n; ++v) {
        if (gone[v]) continue;
        new_id[v] = static_cast<VertexId>(kept.size());
        kept.push_back(v);
    }
    std::vector<Edge> edges;
    for (auto [u, v] : instance.topology().edges())
        if (!gone[u] && !gone[v]) edges.emplace_back(new_id[u], new_id[v]);
    if (kept_out) *kept_out = kept;
    return rebuild(instance, new_id, static_cast<int>(kept.size()), edges);
}

Instance without_edges(const Instance& instance, std::span<const Edge> removed)
{
    std::vector<Edge> dropped(removed.begin(), removed.end());
    std::sort(dropped.begin(), dropped.end());
    std::vector<Edge> edges;
    for (const Edge& e : instance.topology().edges())
        if (!std::binary_search(dropped.begin(), dropped.end(), e)) edges.push_back(e);
    std::vector<VertexId> identity(static_cast<std::size_t>(instance.vertex_count()));
    std::iota(identity.begin(), identity.end(), 0);
    return rebuild(instance, identity, instance.vertex_count(), edges);
}

bool intolerant(const Instance& instance, int inhabitant)
{
    auto effective = instance.anonymous_approval(inhabitant).clamped(
        0, static_cast<int>(instance.empty_neighbors(inhabitant).size()));
    return effective == IntervalSet::range(0, 0);
}

Preprocessed remove_inhabitants_fixpoint(const Instance& instance, const std::string& rule,
                                         const std::function<bool(const Instance&, int)>& removable)
{
    Preprocessed out{instance, PreprocessTranscript::identity(instance)};
    while (true) {
        const Instance& current = out.instance;
        std::vector<char> mark(static_cast<std::size_t>(current.vertex_count()), 0);
        RuleApplication step{rule, {}, {}, {}};
        for (int j = 0; j < current.inhabitant_count(); ++j) {
            if (!removable(current, j)) continue;
            step.removed_inhabitants.push_back(j);
            mark[current.vertex_of(j)] = 1;
            for (VertexId u : current.empty_neighbors(j)) mark[u] = 1;
        }
        if (step.removed_inhabitants.empty()) break;
        for (VertexId v = 0; v < current.vertex_count(); ++v)
            if (mark[v]) step.removed_vertices.push_back(v);
        std::vector<VertexId> kept;
        Instance next = without_vertices(current, step.removed_vertices, &kept);
        for (VertexId& v : kept) v = out.transcript.to_original[v];
        out.transcript.to_original = std::move(kept);
        out.transcript.steps.push_back(std::move(step));
        out.instance = std::move(next);
    }
    if (static_cast<int>(out.instance.empty_vertices().size()) < out.instance.refugee_count()) {
        out.transcript.infeasible = true;
        out.transcript.reason = "fewer empty vertices than refugees after removing intolerant inhabitants";
    }
    return out;
}

} // namespace

std::string_view to_string(Status status)
{
    switch (status) {
    case Status::sat: return "sat";
    case Status::unsat: return "unsat";
    case Status::undecided: return "undecided";
    }
    return "?";
}

SolveResult SolveResult::sat(Housing witness, std::string algorithm)
{
    SolveResult r;
    r.status = Status::sat;
    r.witness = std::move(witness);
    r.algorithm = std::move(algorithm);
    return r;
}

SolveResult SolveResult::unsat(std::string algorithm, std::string reason)
{
    SolveResult r;
    r.status = Status::unsat;
    r.algorithm = std::move(algorithm);
    r.reason = std::move(reason);
    return r;
}

SolveResult SolveResult::undecided(std::string algorithm, std::string reason)
{
    SolveResult r;
    r.status = Status::undecided;
    r.algorithm = std::move(algorithm);
    r.reason = std::move(reason);
    return r;
}

PreprocessTranscript PreprocessTranscript::identity(const Instance& instance)
{
    PreprocessTranscript t;
    t.original_vertex_count = instance.vertex_count();
    t.to_original.resize(static_cast<std::size_t>(instance.vertex_count()));
    std::iota(t.to_original.begin(), t.to_original.end(), 0);
    return t;
}

std::vector<std::string> PreprocessTranscript::rule_names() const
{
    std::vector<std::string> names;
    for (const auto& s : steps) names.push_back(s.rule);
    return names;
}

Preprocessed remove_intolerant(const Instance& instance)
{
    if (instance.variant() != Variant::anonymous)
        throw PreconditionViolated("remove_intolerant applies to anonymous instances");
    return remove_inhabitants_fixpoint(instance, "remove_intolerant", intolerant);
}

Preprocessed remove_intolerant_hedonic(const Instance& instance)
{
    if (instance.variant() != Variant::hedonic)
        throw PreconditionViolated("remove_intolerant_hedonic applies to hedonic instances");
    const SubsetFamily only_empty(std::vector<std::vector<int>>{{}});
    return remove_inhabitants_fixpoint(instance, "remove_intolerant_hedonic", [&](const Instance& current, int j) {
        return current.inhabitant_family(j) == only_empty;
    });
}

Preprocessed drop_homogeneous_edges(const Instance& instance)
{
    if (instance.variant() == Variant::diversity)
        throw PreconditionViolated("edges cannot be dropped in diversity instances");
    Preprocessed out{instance, PreprocessTranscript::identity(instance)};
    RuleApplication step{"drop_homogeneous_edges", {}, {}, {}};
    for (auto [u, v] : instance.topology().edges())
        if (instance.occupied(u) == instance.occupied(v)) step.removed_edges.emplace_back(u, v);
    if (step.removed_edges.empty()) return out;
    out.instance = without_edges(instance, step.removed_edges);
    out.transcript.steps.push_back(std::move(step));
    return out;
}

std::optional<SolveResult> trivial_checks(const Instance& instance)
{
    const std::string algorithm = "preprocess";
    if (static_cast<int>(instance.empty_vertices().size()) < instance.refugee_count())
        return SolveResult::unsat(algorithm, "fewer empty vertices than refugees");
    switch (instance.variant()) {
    case Variant::anonymous:
        for (int i = 0; i < instance.inhabitant_count(); ++i) {
            int reachable = static_cast<int>(instance.empty_neighbors(i).size());
            if (instance.anonymous_approval(i).clamped(0, reachable).empty())
                return SolveResult::unsat(algorithm, "inhabitant " + std::to_string(i) +
                                                         " approves no achievable refugee count");
        }
        break;
    case Variant::hedonic:
        for (int i = 0; i < instance.inhabitant_count(); ++i)
            if (instance.inhabitant_family(i).empty())
                return SolveResult::unsat(algorithm, "inhabitant " + std::to_string(i) + " approves nothing");
        for (int r = 0; r < instance.refugee_count(); ++r)
            if (instance.refugee_family(r).empty())
                return SolveResult::unsat(algorithm, "refugee " + std::to_string(r) + " approves nothing");
        break;
    case Variant::diversity:
        for (int i = 0; i < instance.inhabitant_count(); ++i)
            if (instance.inhabitant_palettes(i).empty())
                return SolveResult::unsat(algorithm, "inhabitant " + std::to_string(i) + " approves no palette");
        for (int r = 0; r < instance.refugee_count(); ++r)
            if (instance.refugee_palettes(r).empty())
                return SolveResult::unsat(algorithm, "refugee " + std::to_string(r) + " approves no palette");
        break;
    }
    return std::nullopt;
}

PreprocessTranscript compose(const PreprocessTranscript& first, const PreprocessTranscript& second)
{
    PreprocessTranscript out;
    out.original_vertex_count = first.original_vertex_count;
    out.to_original.reserve(second.to_original.size());
    for (VertexId v : second.to_original) out.to_original.push_back(first.to_original[v]);
    out.steps = first.steps;
    out.steps.insert(out.steps.end(), second.steps.begin(), second.steps.end());
    out.infeasible = first.infeasible || second.infeasible;
    out.reason = first.infeasible ? first.reason : second.reason;
    return out;
}

Preprocessed preprocess(const Instance& instance, const PreprocessOptions& options)
{
    Preprocessed out{instance, PreprocessTranscript::identity(instance)};
    auto flag = [&](const std::optional<SolveResult>& verdict) {
        if (!verdict) return false;
        out.transcript.infeasible = true;
        out.transcript.reason = verdict->reason;
        return true;
    };
    if (flag(trivial_checks(instance))) return out;

    auto apply = [&](Preprocessed next) {
        out.transcript = compose(out.transcript, next.transcript);
        out.instance = std::move(next.instance);
        return out.transcript.infeasible;
    };
    switch (instance.variant()) {
    case Variant::anonymous:
        if (apply(remove_intolerant(out.instance))) return out;
        apply(drop_homogeneous_edges(out.instance));
        break;
    case Variant::hedonic:
        if (options.hedonic_intolerant && apply(remove_intolerant_hedonic(out.instance))) return out;
        apply(drop_homogeneous_edges(out.instance));
        break;
    case Variant::diversity:
        break;
    }
    flag(trivial_checks(out.instance));
    return out;
}

Instance replay(const Instance& original, const PreprocessTranscript& transcript)
{
    Instance current = original;
    for (const auto& step : transcript.steps) {
        if (!step.removed_vertices.empty())
            current = without_vertices(current, step.removed_vertices);
        else if (!step.removed_edges.empty())
            current = without_edges(current, step.removed_edges);
    }
    return current;
}

Housing lift_housing(const PreprocessTranscript& transcript, const Housing& housing)
{
    std::vector<VertexId> placement;
    placement.reserve(static_cast<std::size_t>(housing.size()));
    for (VertexId v : housing.placement()) {
        if (v < 0 || v >= static_cast<int>(transcript.to_original.size()))
            throw InvalidHousing("housing references vertex " + std::to_string(v) +
                                 " that does not exist in the simplified instance");
        placement.push_back(transcript.to_original[v]);
    }
    return Housing(std::move(placement));
}

} // namespace refhouse
