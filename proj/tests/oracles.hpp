#pragma once

// Reference deciders written straight from the definitions. They share nothing with the solvers
// beyond the Instance accessors: no pruning, no incremental bookkeeping, no model verifiers.

#include "refhouse/model.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

namespace oracle {

using namespace refhouse;

inline std::vector<int> occupant_map(const Instance& in, const std::vector<VertexId>& place) {
    std::vector<int> who(in.vertex_count(), kNone);  // agent id per vertex
    for (int i = 0; i < in.inhabitant_count(); ++i) who[in.vertex_of(i)] = i;
    for (std::size_t r = 0; r < place.size(); ++r) who[place[r]] = in.inhabitant_count() + static_cast<int>(r);
    return who;
}

inline std::vector<int> agents_around(const Instance& in, const std::vector<int>& who, VertexId v) {
    std::vector<int> out;
    for (VertexId w : in.topology().neighbors(v))
        if (who[w] != kNone) out.push_back(who[w]);
    std::sort(out.begin(), out.end());
    return out;
}

inline bool arh_ok(const Instance& in, const std::vector<VertexId>& place) {
    const auto who = occupant_map(in, place);
    for (int i = 0; i < in.inhabitant_count(); ++i) {
        int refugees = 0;
        for (int a : agents_around(in, who, in.vertex_of(i))) refugees += a >= in.inhabitant_count();
        if (!in.anonymous_approval(i).contains(refugees)) return false;
    }
    return true;
}

inline bool family_has(const SubsetFamily& family, const std::vector<int>& set) {
    for (const auto& s : family.sets())
        if (s == set) return true;
    return false;
}

inline bool hrh_ok(const Instance& in, const std::vector<VertexId>& place) {
    const int ni = in.inhabitant_count();
    const auto who = occupant_map(in, place);
    for (int i = 0; i < ni; ++i) {
        std::vector<int> seen;
        for (int a : agents_around(in, who, in.vertex_of(i)))
            if (a >= ni) seen.push_back(a - ni);
        if (!family_has(in.inhabitant_family(i), seen)) return false;
    }
    for (std::size_t r = 0; r < place.size(); ++r) {
        std::vector<int> seen;
        for (int a : agents_around(in, who, place[r]))
            if (a < ni) seen.push_back(a);
        if (!family_has(in.refugee_family(static_cast<int>(r)), seen)) return false;
    }
    return true;
}

/// Palette membership by cross-multiplication against raw type counts.
inline bool palette_matches(const Palette& p, const std::vector<long>& counts) {
    long total = 0;
    for (long c : counts) total += c;
    for (std::size_t t = 0; t < counts.size(); ++t) {
        const auto& f = p[static_cast<int>(t)];
        const bool equal = total == 0 ? f.numerator() == 0 : f.numerator() * total == counts[t] * f.denominator();
        if (!equal) return false;
    }
    return true;
}

inline bool drh_ok(const Instance& in, const std::vector<VertexId>& place) {
    const int ni = in.inhabitant_count();
    const auto who = occupant_map(in, place);
    auto approves = [&](const PaletteSet& set, VertexId v) {
        std::vector<long> counts(in.types().types, 0);
        for (int a : agents_around(in, who, v)) ++counts[in.types().type_of[a]];
        for (const Palette& p : set.palettes())
            if (palette_matches(p, counts)) return true;
        return false;
    };
    for (int i = 0; i < ni; ++i)
        if (!approves(in.inhabitant_palettes(i), in.vertex_of(i))) return false;
    for (std::size_t r = 0; r < place.size(); ++r)
        if (!approves(in.refugee_palettes(static_cast<int>(r)), place[r])) return false;
    return true;
}

/// Every injective refugee placement (ordered), stopping at the first accepted one.
inline std::optional<std::vector<VertexId>> enumerate(const Instance& in,
                                                      const std::function<bool(const std::vector<VertexId>&)>& ok) {
    std::vector<VertexId> empty(in.empty_vertices().begin(), in.empty_vertices().end());
    const int nr = in.refugee_count();
    std::vector<VertexId> place;
    std::vector<char> used(empty.size(), 0);
    std::optional<std::vector<VertexId>> found;
    std::function<void()> go = [&] {
        if (found) return;
        if (static_cast<int>(place.size()) == nr) {
            if (ok(place)) found = place;
            return;
        }
        for (std::size_t k = 0; k < empty.size() && !found; ++k) {
            if (used[k]) continue;
            used[k] = 1;
            place.push_back(empty[k]);
            go();
            place.pop_back();
            used[k] = 0;
        }
    };
    go();
    return found;
}

/// Anonymous refugees: subsets suffice.
inline std::optional<std::vector<VertexId>> arh(const Instance& in) {
    std::vector<VertexId> empty(in.empty_vertices().begin(), in.empty_vertices().end());
    const int m = static_cast<int>(empty.size()), nr = in.refugee_count();
    if (nr > m) return std::nullopt;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        if (std::popcount(mask) != nr) continue;
        std::vector<VertexId> place;
        for (int k = 0; k < m; ++k)
            if (mask >> k & 1) place.push_back(empty[k]);
        if (arh_ok(in, place)) return place;
    }
    return std::nullopt;
}

inline std::optional<std::vector<VertexId>> hrh(const Instance& in) {
    return enumerate(in, [&](const std::vector<VertexId>& p) { return hrh_ok(in, p); });
}

inline std::optional<std::vector<VertexId>> drh(const Instance& in) {
    return enumerate(in, [&](const std::vector<VertexId>& p) { return drh_ok(in, p); });
}

inline bool solvable(const Instance& in) {
    switch (in.variant()) {
    case Variant::anonymous: return arh(in).has_value();
    case Variant::hedonic: return hrh(in).has_value();
    case Variant::diversity: return drh(in).has_value();
    }
    return false;
}

/// Size of a minimum vertex cover, by subset enumeration (n <= 20).
inline int vertex_cover_size(const Topology& g) {
    const int n = g.vertex_count();
    int best = n;
    const auto edges = g.edges();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        const int size = std::popcount(mask);
        if (size >= best) continue;
        bool covers = true;
        for (auto [u, v] : edges)
            if (!(mask >> u & 1) && !(mask >> v & 1)) covers = false;
        if (covers) best = size;
    }
    return best;
}

} // namespace oracle
