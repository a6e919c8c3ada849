#pragma once

#include "refhouse/model.hpp"
#include "refhouse/sources.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace refhouse {

/// Seeded generator whose outputs are identical on every platform: std::mt19937_64 is fully
/// specified, and the derived helpers avoid the implementation-defined std distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, bound); bound must be positive.
    int below(int bound) { return static_cast<int>(next() % static_cast<std::uint64_t>(bound)); }
    /// Uniform in [lo, hi].
    int between(int lo, int hi) { return lo + below(hi - lo + 1); }
    bool chance(double p) { return static_cast<double>(next() >> 11) * 0x1.0p-53 < p; }

    template <class T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[below(static_cast<int>(i))]);
    }

private:
    std::mt19937_64 engine_;
};

struct RandomShape {
    Variant variant = Variant::anonymous;
    int vertices = 8;
    int inhabitants = 3;
    int refugees = 2;
    double edge_probability = 0.35;
    bool max_degree_two = false;   // disjoint paths and cycles only
    bool intervals_only = false;   // anonymous approvals with a single interval
    int max_intervals = 3;         // anonymous approvals: at most this many intervals
    int types = 2;                 // diversity
    int family_size = 3;           // hedonic / diversity: random approved sets per agent
};

/// Deterministic per seed. Throws InvalidInstance when the shape cannot be realised, e.g. more
/// agents than vertices. Hedonic and diversity instances plant a random housing half of the time
/// so that both outcomes are common.
Instance random_instance(const RandomShape& shape, std::uint64_t seed);

/// Random source problems for the reduction sweeps.
Cnf random_two_balanced_cnf(int variables, int clauses, Rng& rng);
Graph random_graph(int vertices, double edge_probability, Rng& rng);
MulticolouredClique random_clique_instance(int colours, int class_size, int edges_per_pair, Rng& rng);
BinPacking random_bin_packing(int max_total, int max_bins, Rng& rng);
ChannelAssignment random_channel_assignment(int vertices, int max_channels, Rng& rng);
SetCover random_set_cover(int universe, int sets, Rng& rng);

} // namespace refhouse
