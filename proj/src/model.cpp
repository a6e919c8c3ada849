#include "refhouse/model.hpp"

#include "refhouse/errors.hpp"

#include <algorithm>
#include <numeric>

namespace refhouse {

std::string_view to_string(Variant variant)
{
    switch (variant) {
    case Variant::anonymous: return "arh";
    case Variant::hedonic: return "hrh";
    case Variant::diversity: return "drh";
    }
    return "?";
}

Variant parse_variant(std::string_view text)
{
    if (text == "arh") return Variant::anonymous;
    if (text == "hrh") return Variant::hedonic;
    if (text == "drh") return Variant::diversity;
    throw InvalidInstance("unknown variant '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Topology

Topology::Topology(int vertex_count, std::span<const Edge> edges)
    : adjacency_(vertex_count < 0 ? 0 : static_cast<std::size_t>(vertex_count))
{
    if (vertex_count < 0) throw InvalidInstance("negative vertex count");
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
            throw InvalidInstance("edge {" + std::to_string(u) + "," + std::to_string(v) + "} out of range");
        if (u == v) throw InvalidInstance("self-loop at vertex " + std::to_string(u));
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
    }
    for (std::size_t v = 0; v < adjacency_.size(); ++v) {
        auto& list = adjacency_[v];
        std::sort(list.begin(), list.end());
        if (std::adjacent_find(list.begin(), list.end()) != list.end())
            throw InvalidInstance("parallel edge at vertex " + std::to_string(v));
    }
    edge_count_ = edges.size();
}

int Topology::max_degree() const
{
    int best = 0;
    for (const auto& list : adjacency_) best = std::max(best, static_cast<int>(list.size()));
    return best;
}

bool Topology::adjacent(VertexId u, VertexId v) const
{
    const auto& list = adjacency_[u];
    return std::binary_search(list.begin(), list.end(), v);
}

std::vector<Edge> Topology::edges() const
{
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (VertexId u = 0; u < vertex_count(); ++u)
        for (VertexId v : adjacency_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

// ---------------------------------------------------------------------------
// IntervalSet

IntervalSet IntervalSet::from_values(std::vector<int> values)
{
    std::vector<Interval> intervals;
    intervals.reserve(values.size());
    for (int x : values) intervals.push_back({x, x});
    return from_intervals(std::move(intervals));
}

IntervalSet IntervalSet::from_intervals(std::vector<Interval> intervals)
{
    for (const auto& iv : intervals) {
        if (iv.lo < 0) throw InvalidInstance("approval contains a negative count");
        if (iv.lo > iv.hi)
            throw InvalidInstance("interval [" + std::to_string(iv.lo) + "," + std::to_string(iv.hi) + "] is reversed");
    }
    std::sort(intervals.begin(), intervals.end());
    IntervalSet out;
    for (const auto& iv : intervals) {
        if (!out.intervals_.empty() && iv.lo <= out.intervals_.back().hi + 1)
            out.intervals_.back().hi = std::max(out.intervals_.back().hi, iv.hi);
        else
            out.intervals_.push_back(iv);
    }
    return out;
}

IntervalSet IntervalSet::range(int lo, int hi)
{
    if (lo > hi) return {};
    return from_intervals({{lo, hi}});
}

bool IntervalSet::contains(int value) const
{
    auto it = std::upper_bound(intervals_.begin(), intervals_.end(), value,
                               [](int x, const Interval& iv) { return x < iv.lo; });
    if (it == intervals_.begin()) return false;
    --it;
    return value <= it->hi;
}

int IntervalSet::low() const
{
    if (!is_interval()) throw PreconditionViolated("approval is not a single interval");
    return intervals_.front().lo;
}

int IntervalSet::high() const
{
    if (!is_interval()) throw PreconditionViolated("approval is not a single interval");
    return intervals_.front().hi;
}

std::vector<int> IntervalSet::values() const
{
    std::vector<int> out;
    for (const auto& iv : intervals_)
        for (int x = iv.lo; x <= iv.hi; ++x) out.push_back(x);
    return out;
}

IntervalSet IntervalSet::clamped(int lo, int hi) const
{
    IntervalSet out;
    for (const auto& iv : intervals_) {
        int a = std::max(iv.lo, lo);
        int b = std::min(iv.hi, hi);
        if (a <= b) out.intervals_.push_back({a, b});
    }
    return out;
}

// ---------------------------------------------------------------------------
// SubsetFamily

SubsetFamily::SubsetFamily(std::vector<std::vector<int>> sets) : sets_(std::move(sets))
{
    for (auto& s : sets_) {
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw InvalidInstance("approved subset lists an agent twice");
    }
    std::sort(sets_.begin(), sets_.end());
    sets_.erase(std::unique(sets_.begin(), sets_.end()), sets_.end());
}

bool SubsetFamily::contains(std::span<const int> sorted_members) const
{
    auto it = std::lower_bound(sets_.begin(), sets_.end(), sorted_members,
                               [](const std::vector<int>& a, std::span<const int> b) {
                                   return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
                               });
    return it != sets_.end() && std::equal(it->begin(), it->end(), sorted_members.begin(), sorted_members.end());
}

std::size_t SubsetFamily::total_entries() const
{
    std::size_t total = 0;
    for (const auto& s : sets_) total += s.size();
    return total;
}

// ---------------------------------------------------------------------------
// Palette

Palette::Palette(std::vector<Fraction> entries) : entries_(std::move(entries))
{
    Fraction sum(0);
    bool all_zero = true;
    for (const auto& f : entries_) {
        if (f < Fraction(0) || f > Fraction(1)) throw InvalidInstance("palette entry outside [0,1]");
        if (f != Fraction(0)) all_zero = false;
        sum += f;
    }
    if (!all_zero && sum != Fraction(1)) throw InvalidInstance("palette entries must sum to 1 or all be 0");
}

Palette Palette::from_counts(std::span<const int> counts)
{
    std::int64_t total = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
    std::vector<Fraction> entries;
    entries.reserve(counts.size());
    for (int c : counts) entries.push_back(total == 0 ? Fraction(0) : Fraction(c, total));
    Palette p;
    p.entries_ = std::move(entries);
    return p;
}

Palette Palette::zero(int types)
{
    Palette p;
    p.entries_.assign(static_cast<std::size_t>(types), Fraction(0));
    return p;
}

bool Palette::is_zero() const
{
    return std::all_of(entries_.begin(), entries_.end(), [](const Fraction& f) { return f == Fraction(0); });
}

bool operator<(const Palette& a, const Palette& b)
{
    return std::lexicographical_compare(a.entries_.begin(), a.entries_.end(), b.entries_.begin(), b.entries_.end());
}

PaletteSet::PaletteSet(std::vector<Palette> palettes) : palettes_(std::move(palettes))
{
    std::sort(palettes_.begin(), palettes_.end());
    palettes_.erase(std::unique(palettes_.begin(), palettes_.end()), palettes_.end());
}

bool PaletteSet::contains(const Palette& palette) const
{
    return std::binary_search(palettes_.begin(), palettes_.end(), palette);
}

Palette palette_of(std::span<const AgentId> members, const TypePartition& partition)
{
    std::vector<int> counts(static_cast<std::size_t>(partition.types), 0);
    for (AgentId a : members) {
        if (a < 0 || a >= static_cast<int>(partition.type_of.size()))
            throw InvalidInstance("unknown agent id " + std::to_string(a));
        ++counts[partition.type_of[a]];
    }
    return Palette::from_counts(counts);
}

// ---------------------------------------------------------------------------
// Instance

namespace {

void check_inhabitant_vertices(const Topology& topology, std::span<const VertexId> vertices)
{
    std::vector<char> used(static_cast<std::size_t>(topology.vertex_count()), 0);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        VertexId v = vertices[i];
        if (v < 0 || v >= topology.vertex_count())
            throw InvalidInstance("inhabitant " + std::to_string(i) + " assigned to missing vertex " + std::to_string(v));
        if (used[v]) throw InvalidInstance("two inhabitants assigned to vertex " + std::to_string(v));
        used[v] = 1;
    }
}

void check_family(const SubsetFamily& family, int universe, const std::string& owner)
{
    for (const auto& s : family.sets())
        for (int a : s)
            if (a < 0 || a >= universe)
                throw InvalidInstance(owner + " approves a set containing unknown agent " + std::to_string(a));
}

} // namespace

Instance Instance::anonymous(Topology topology, std::vector<VertexId> inhabitant_vertices,
                             std::vector<IntervalSet> approvals, int refugee_count)
{
    check_inhabitant_vertices(topology, inhabitant_vertices);
    if (refugee_count < 1) throw InvalidInstance("an instance needs at least one refugee");
    if (approvals.size() != inhabitant_vertices.size())
        throw InvalidInstance("expected one approval per inhabitant");
    for (std::size_t i = 0; i < approvals.size(); ++i) {
        if (!approvals[i].empty() && approvals[i].max() > topology.degree(inhabitant_vertices[i]))
            throw InvalidInstance("inhabitant " + std::to_string(i) + " approves a count above its degree");
    }
    Instance out;
    out.variant_ = Variant::anonymous;
    out.topology_ = std::move(topology);
    out.inhabitant_vertices_ = std::move(inhabitant_vertices);
    out.anonymous_ = std::move(approvals);
    out.refugee_count_ = refugee_count;
    out.index_vertices();
    return out;
}

Instance Instance::hedonic(Topology topology, std::vector<VertexId> inhabitant_vertices,
                           std::vector<SubsetFamily> inhabitant_approvals,
                           std::vector<SubsetFamily> refugee_approvals)
{
    check_inhabitant_vertices(topology, inhabitant_vertices);
    if (refugee_approvals.empty()) throw InvalidInstance("an instance needs at least one refugee");
    if (inhabitant_approvals.size() != inhabitant_vertices.size())
        throw InvalidInstance("expected one approval family per inhabitant");
    const int inhabitants = static_cast<int>(inhabitant_vertices.size());
    const int refugees = static_cast<int>(refugee_approvals.size());
    for (int i = 0; i < inhabitants; ++i)
        check_family(inhabitant_approvals[i], refugees, "inhabitant " + std::to_string(i));
    for (int r = 0; r < refugees; ++r)
        check_family(refugee_approvals[r], inhabitants, "refugee " + std::to_string(r));
    Instance out;
    out.variant_ = Variant::hedonic;
    out.topology_ = std::move(topology);
    out.inhabitant_vertices_ = std::move(inhabitant_vertices);
    out.inhabitant_family_ = std::move(inhabitant_approvals);
    out.refugee_family_ = std::move(refugee_approvals);
    out.refugee_count_ = refugees;
    out.index_vertices();
    return out;
}

Instance Instance::diversity(Topology topology, std::vector<VertexId> inhabitant_vertices, TypePartition types,
                             std::vector<PaletteSet> inhabitant_approvals, std::vector<PaletteSet> refugee_approvals)
{
    check_inhabitant_vertices(topology, inhabitant_vertices);
    if (refugee_approvals.empty()) throw InvalidInstance("an instance needs at least one refugee");
    if (inhabitant_approvals.size() != inhabitant_vertices.size())
        throw InvalidInstance("expected one palette set per inhabitant");
    const std::size_t agents = inhabitant_vertices.size() + refugee_approvals.size();
    if (types.types < 1) throw InvalidInstance("at least one type is required");
    if (types.type_of.size() != agents) throw InvalidInstance("every agent needs exactly one type");
    for (int t : types.type_of)
        if (t < 0 || t >= types.types) throw InvalidInstance("type index " + std::to_string(t) + " out of range");
    auto check_palettes = [&](const PaletteSet& set) {
        for (const auto& p : set.palettes())
            if (p.size() != types.types) throw InvalidInstance("palette length differs from the number of types");
    };
    for (const auto& s : inhabitant_approvals) check_palettes(s);
    for (const auto& s : refugee_approvals) check_palettes(s);
    Instance out;
    out.variant_ = Variant::diversity;
    out.topology_ = std::move(topology);
    out.inhabitant_vertices_ = std::move(inhabitant_vertices);
    out.types_ = std::move(types);
    out.inhabitant_palettes_ = std::move(inhabitant_approvals);
    out.refugee_count_ = static_cast<int>(refugee_approvals.size());
    out.refugee_palettes_ = std::move(refugee_approvals);
    out.index_vertices();
    return out;
}

void Instance::index_vertices()
{
    inhabitant_at_.assign(static_cast<std::size_t>(topology_.vertex_count()), kNone);
    for (int i = 0; i < inhabitant_count(); ++i) inhabitant_at_[inhabitant_vertices_[i]] = i;
    empty_vertices_.clear();
    for (VertexId v = 0; v < topology_.vertex_count(); ++v)
        if (inhabitant_at_[v] == kNone) empty_vertices_.push_back(v);
}

std::vector<VertexId> Instance::empty_neighbors(int inhabitant) const
{
    std::vector<VertexId> out;
    for (VertexId u : topology_.neighbors(vertex_of(inhabitant)))
        if (!occupied(u)) out.push_back(u);
    return out;
}

std::vector<int> Instance::inhabitant_neighbors(VertexId v) const
{
    std::vector<int> out;
    for (VertexId u : topology_.neighbors(v))
        if (occupied(u)) out.push_back(inhabitant_at_[u]);
    std::sort(out.begin(), out.end());
    return out;
}

int Instance::max_interval_count() const
{
    int best = 0;
    for (const auto& a : anonymous_) best = std::max(best, a.interval_count());
    return best;
}

Instance Instance::with_meta(Metadata meta) const
{
    Instance out = *this;
    out.meta_ = std::move(meta);
    return out;
}

// ---------------------------------------------------------------------------
// Housing and verification

Housing::Housing(std::vector<VertexId> placement) : placement_(std::move(placement))
{
    std::vector<VertexId> sorted = placement_;
    std::sort(sorted.begin(), sorted.end());
    if (!sorted.empty() && sorted.front() < 0) throw InvalidHousing("housing places a refugee on a negative vertex id");
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InvalidHousing("housing is not injective");
}

void validate_housing(const Instance& instance, const Housing& housing)
{
    if (housing.size() != instance.refugee_count())
        throw InvalidHousing("housing places " + std::to_string(housing.size()) + " refugees, instance has " +
                             std::to_string(instance.refugee_count()));
    for (int r = 0; r < housing.size(); ++r) {
        VertexId v = housing[r];
        if (v < 0 || v >= instance.vertex_count())
            throw InvalidHousing("refugee " + std::to_string(r) + " placed on missing vertex " + std::to_string(v));
        if (instance.occupied(v))
            throw InvalidHousing("refugee " + std::to_string(r) + " placed on occupied vertex " + std::to_string(v));
    }
}

Occupancy::Occupancy(const Instance& instance, const Housing& housing)
    : instance_(&instance), refugee_at_(static_cast<std::size_t>(instance.vertex_count()), kNone)
{
    validate_housing(instance, housing);
    for (int r = 0; r < housing.size(); ++r) refugee_at_[housing[r]] = r;
}

NeighborhoodCensus Occupancy::census(VertexId v) const
{
    NeighborhoodCensus out;
    for (VertexId u : instance_->topology().neighbors(v)) {
        if (int i = instance_->inhabitant_at(u); i != kNone)
            out.inhabitants.push_back(i);
        else if (refugee_at_[u] != kNone)
            out.refugees.push_back(refugee_at_[u]);
    }
    std::sort(out.inhabitants.begin(), out.inhabitants.end());
    std::sort(out.refugees.begin(), out.refugees.end());
    return out;
}

int Occupancy::refugee_neighbor_count(VertexId v) const
{
    int count = 0;
    for (VertexId u : instance_->topology().neighbors(v))
        if (refugee_at_[u] != kNone) ++count;
    return count;
}

NeighborhoodCensus neighborhood_census(const Instance& instance, const Housing& housing, VertexId v)
{
    if (v < 0 || v >= instance.vertex_count()) throw InvalidInstance("vertex " + std::to_string(v) + " does not exist");
    return Occupancy(instance, housing).census(v);
}

namespace {

void require_variant(const Instance& instance, Variant expected)
{
    if (instance.variant() != expected)
        throw PreconditionViolated("expected a " + std::string(to_string(expected)) + " instance, got " +
                                   std::string(to_string(instance.variant())));
}

std::vector<AgentId> occupied_agents(const Instance& instance, const NeighborhoodCensus& census)
{
    std::vector<AgentId> agents = census.inhabitants;
    for (int r : census.refugees) agents.push_back(instance.refugee_agent(r));
    return agents;
}

} // namespace

bool verify_arh(const Instance& instance, const Housing& housing)
{
    require_variant(instance, Variant::anonymous);
    Occupancy occupancy(instance, housing);
    for (int i = 0; i < instance.inhabitant_count(); ++i)
        if (!instance.anonymous_approval(i).contains(occupancy.refugee_neighbor_count(instance.vertex_of(i))))
            return false;
    return true;
}

bool verify_hrh(const Instance& instance, const Housing& housing)
{
    require_variant(instance, Variant::hedonic);
    Occupancy occupancy(instance, housing);
    for (int i = 0; i < instance.inhabitant_count(); ++i)
        if (!instance.inhabitant_family(i).contains(occupancy.census(instance.vertex_of(i)).refugees)) return false;
    for (int r = 0; r < instance.refugee_count(); ++r)
        if (!instance.refugee_family(r).contains(occupancy.census(housing[r]).inhabitants)) return false;
    return true;
}

bool verify_drh(const Instance& instance, const Housing& housing)
{
    require_variant(instance, Variant::diversity);
    Occupancy occupancy(instance, housing);
    const auto& types = instance.types();
    for (int i = 0; i < instance.inhabitant_count(); ++i) {
        auto census = occupancy.census(instance.vertex_of(i));
        if (!instance.inhabitant_palettes(i).contains(palette_of(occupied_agents(instance, census), types)))
            return false;
    }
    for (int r = 0; r < instance.refugee_count(); ++r) {
        auto census = occupancy.census(housing[r]);
        if (!instance.refugee_palettes(r).contains(palette_of(occupied_agents(instance, census), types)))
            return false;
    }
    return true;
}

bool verify(const Instance& instance, const Housing& housing)
{
    switch (instance.variant()) {
    case Variant::anonymous: return verify_arh(instance, housing);
    case Variant::hedonic: return verify_hrh(instance, housing);
    case Variant::diversity: return verify_drh(instance, housing);
    }
    return false;
}

} // namespace refhouse
