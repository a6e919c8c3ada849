#pragma once

#include <boost/rational.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace refhouse {

using VertexId = int;
using AgentId = int;
using Edge = std::pair<VertexId, VertexId>;

inline constexpr int kNone = -1;

enum class Variant { anonymous, hedonic, diversity };

std::string_view to_string(Variant variant);
Variant parse_variant(std::string_view text);

/// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
class Topology {
public:
    Topology() = default;
    /// Throws InvalidInstance on self-loops, parallel edges or out-of-range endpoints.
    Topology(int vertex_count, std::span<const Edge> edges);

    int vertex_count() const { return static_cast<int>(adjacency_.size()); }
    std::size_t edge_count() const { return edge_count_; }
    std::span<const VertexId> neighbors(VertexId v) const { return adjacency_[v]; }
    int degree(VertexId v) const { return static_cast<int>(adjacency_[v].size()); }
    int max_degree() const;
    bool adjacent(VertexId u, VertexId v) const;
    /// Canonical edge list: u < v, lexicographically sorted.
    std::vector<Edge> edges() const;

    bool operator==(const Topology&) const = default;

private:
    std::vector<std::vector<VertexId>> adjacency_;
    std::size_t edge_count_ = 0;
};

struct Interval {
    int lo = 0;
    int hi = 0;
    auto operator<=>(const Interval&) const = default;
};

/// A finite set of non-negative integers stored as maximal disjoint intervals.
/// The anonymous approval of an inhabitant; interval_count() is its number of maximal intervals (delta).
class IntervalSet {
public:
    IntervalSet() = default;

    static IntervalSet from_values(std::vector<int> values);
    /// Merges overlapping and adjacent intervals. Rejects negative bounds and lo > hi.
    static IntervalSet from_intervals(std::vector<Interval> intervals);
    static IntervalSet range(int lo, int hi);

    bool empty() const { return intervals_.empty(); }
    bool contains(int value) const;
    int interval_count() const { return static_cast<int>(intervals_.size()); }
    bool is_interval() const { return intervals_.size() == 1; }
    /// Endpoints of the unique interval; throws PreconditionViolated unless is_interval().
    int low() const;
    int high() const;
    /// Smallest / largest member; the set must be non-empty.
    int min() const { return intervals_.front().lo; }
    int max() const { return intervals_.back().hi; }
    std::span<const Interval> intervals() const { return intervals_; }
    std::vector<int> values() const;

    /// Intersection with [lo, hi].
    IntervalSet clamped(int lo, int hi) const;

    bool operator==(const IntervalSet&) const = default;

private:
    std::vector<Interval> intervals_;
};

using AnonymousApproval = IntervalSet;

/// Family of agent subsets, each stored sorted, without duplicates.
class SubsetFamily {
public:
    SubsetFamily() = default;
    explicit SubsetFamily(std::vector<std::vector<int>> sets);

    bool contains(std::span<const int> sorted_members) const;
    std::span<const std::vector<int>> sets() const { return sets_; }
    std::size_t size() const { return sets_.size(); }
    bool empty() const { return sets_.empty(); }
    std::size_t total_entries() const;

    bool operator==(const SubsetFamily&) const = default;

private:
    std::vector<std::vector<int>> sets_;
};

using HedonicApproval = SubsetFamily;

using Fraction = boost::rational<std::int64_t>;

/// Per-type fractions of a neighbourhood. Either sums to exactly one or is all zero.
class Palette {
public:
    Palette() = default;
    /// Throws InvalidInstance if an entry leaves [0,1] or the entries neither sum to 1 nor are all 0.
    explicit Palette(std::vector<Fraction> entries);

    static Palette from_counts(std::span<const int> counts);
    static Palette zero(int types);

    int size() const { return static_cast<int>(entries_.size()); }
    const Fraction& operator[](int type) const { return entries_[type]; }
    std::span<const Fraction> entries() const { return entries_; }
    bool is_zero() const;

    friend bool operator==(const Palette&, const Palette&) = default;
    friend bool operator<(const Palette& a, const Palette& b);

private:
    std::vector<Fraction> entries_;
};

class PaletteSet {
public:
    PaletteSet() = default;
    explicit PaletteSet(std::vector<Palette> palettes);

    bool contains(const Palette& palette) const;
    std::span<const Palette> palettes() const { return palettes_; }
    std::size_t size() const { return palettes_.size(); }
    bool empty() const { return palettes_.empty(); }

    bool operator==(const PaletteSet&) const = default;

private:
    std::vector<Palette> palettes_;
};

using DiversityApproval = PaletteSet;

/// Agent ids are dense: inhabitants occupy [0, |I|), refugees [|I|, |I|+|R|).
struct TypePartition {
    int types = 0;
    std::vector<int> type_of;

    bool operator==(const TypePartition&) const = default;
};

Palette palette_of(std::span<const AgentId> members, const TypePartition& partition);

using Metadata = std::map<std::string, std::string>;

/// Immutable problem instance for one of the three variants.
class Instance {
public:
    Instance() = default;

    static Instance anonymous(Topology topology, std::vector<VertexId> inhabitant_vertices,
                              std::vector<IntervalSet> approvals, int refugee_count);
    static Instance hedonic(Topology topology, std::vector<VertexId> inhabitant_vertices,
                            std::vector<SubsetFamily> inhabitant_approvals,
                            std::vector<SubsetFamily> refugee_approvals);
    static Instance diversity(Topology topology, std::vector<VertexId> inhabitant_vertices,
                              TypePartition types, std::vector<PaletteSet> inhabitant_approvals,
                              std::vector<PaletteSet> refugee_approvals);

    Variant variant() const { return variant_; }
    const Topology& topology() const { return topology_; }
    int vertex_count() const { return topology_.vertex_count(); }
    int inhabitant_count() const { return static_cast<int>(inhabitant_vertices_.size()); }
    int refugee_count() const { return refugee_count_; }
    AgentId refugee_agent(int refugee) const { return inhabitant_count() + refugee; }

    VertexId vertex_of(int inhabitant) const { return inhabitant_vertices_[inhabitant]; }
    std::span<const VertexId> inhabitant_vertices() const { return inhabitant_vertices_; }
    /// Inhabitant on v, or kNone.
    int inhabitant_at(VertexId v) const { return inhabitant_at_[v]; }
    bool occupied(VertexId v) const { return inhabitant_at_[v] != kNone; }
    /// V_U in increasing order.
    std::span<const VertexId> empty_vertices() const { return empty_vertices_; }
    /// U_i: empty neighbours of the inhabitant's vertex.
    std::vector<VertexId> empty_neighbors(int inhabitant) const;
    /// Inhabitants adjacent to v, sorted.
    std::vector<int> inhabitant_neighbors(VertexId v) const;

    const IntervalSet& anonymous_approval(int inhabitant) const { return anonymous_[inhabitant]; }
    std::span<const IntervalSet> anonymous_approvals() const { return anonymous_; }
    /// Largest interval count over all inhabitants (0 when every approval is empty).
    int max_interval_count() const;

    const SubsetFamily& inhabitant_family(int inhabitant) const { return inhabitant_family_[inhabitant]; }
    const SubsetFamily& refugee_family(int refugee) const { return refugee_family_[refugee]; }

    const TypePartition& types() const { return types_; }
    const PaletteSet& inhabitant_palettes(int inhabitant) const { return inhabitant_palettes_[inhabitant]; }
    const PaletteSet& refugee_palettes(int refugee) const { return refugee_palettes_[refugee]; }

    const Metadata& meta() const { return meta_; }
    Instance with_meta(Metadata meta) const;

    bool operator==(const Instance&) const = default;

private:
    void index_vertices();

    Variant variant_ = Variant::anonymous;
    Topology topology_;
    std::vector<VertexId> inhabitant_vertices_;
    std::vector<int> inhabitant_at_;
    std::vector<VertexId> empty_vertices_;
    int refugee_count_ = 0;
    std::vector<IntervalSet> anonymous_;
    std::vector<SubsetFamily> inhabitant_family_;
    std::vector<SubsetFamily> refugee_family_;
    TypePartition types_;
    std::vector<PaletteSet> inhabitant_palettes_;
    std::vector<PaletteSet> refugee_palettes_;
    Metadata meta_;
};

/// Injective map from refugees to vertices. Range membership in V_U is checked against an
/// instance by validate_housing.
class Housing {
public:
    Housing() = default;
    /// Throws InvalidHousing on negative or repeated vertices.
    explicit Housing(std::vector<VertexId> placement);

    int size() const { return static_cast<int>(placement_.size()); }
    VertexId operator[](int refugee) const { return placement_[refugee]; }
    std::span<const VertexId> placement() const { return placement_; }

    bool operator==(const Housing&) const = default;

private:
    std::vector<VertexId> placement_;
};

/// Throws InvalidHousing unless the housing is total over R and maps into V_U.
void validate_housing(const Instance& instance, const Housing& housing);

struct NeighborhoodCensus {
    std::vector<int> inhabitants;  // inhabitant indices adjacent to the vertex
    std::vector<int> refugees;     // refugee indices housed on adjacent vertices
};

/// Refugee-per-vertex index for a fixed housing.
class Occupancy {
public:
    Occupancy(const Instance& instance, const Housing& housing);

    int refugee_at(VertexId v) const { return refugee_at_[v]; }
    NeighborhoodCensus census(VertexId v) const;
    int refugee_neighbor_count(VertexId v) const;

private:
    const Instance* instance_;
    std::vector<int> refugee_at_;
};

NeighborhoodCensus neighborhood_census(const Instance& instance, const Housing& housing, VertexId v);

bool verify_arh(const Instance& instance, const Housing& housing);
bool verify_hrh(const Instance& instance, const Housing& housing);
bool verify_drh(const Instance& instance, const Housing& housing);
/// Dispatches on the instance variant.
bool verify(const Instance& instance, const Housing& housing);

} // namespace refhouse
