#include "refhouse/errors.hpp"
#include "refhouse/solve_arh.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

// Every component of a max-degree-2 graph is a path or a cycle. All components are laid out as
// one sequence of steps; the DP state after placing v_j is (x_{j-1}, x_j, x_0, x_1) and holds a
// bitset of achievable refugee totals. An inhabitant is checked once both neighbours are decided;
// on a cycle v_0 and v_{s-1} are checked when the component closes.

namespace refhouse {
namespace {

constexpr int kStates = 16;
constexpr int kPrev = 1, kCur = 2, kFirst = 4, kSecond = 8;

struct Step {
    bool close = false;
    bool cycle = false;
    int index = 0;          // j within the component (place steps)
    int size = 0;           // component size
    VertexId vertex = kNone;
    VertexId previous = kNone;  // v_{j-1} (place)
    VertexId first = kNone;     // v_0 (close)
    VertexId last = kNone;      // v_{s-1} (close)
};

int bit(int state, int mask) { return (state & mask) ? 1 : 0; }

class Dp {
public:
    Dp(const Instance& instance, std::vector<Step> steps)
        : instance_(instance), steps_(std::move(steps)),
          words_((instance.refugee_count() + 1 + 63) / 64) {
        const int top = instance.refugee_count() % 64;
        last_mask_ = top == 63 ? ~0ULL : ((1ULL << (top + 1)) - 1);
    }

    using Layer = std::vector<std::uint64_t>;

    Layer initial() const {
        Layer layer(static_cast<std::size_t>(kStates) * words_, 0);
        layer[0] = 1;
        return layer;
    }

    bool allowed(VertexId v, int count) const {
        const int i = instance_.inhabitant_at(v);
        return i == kNone || instance_.anonymous_approval(i).contains(count);
    }

    // Successor state of `state` under step t when x is chosen (always 0 for close steps).
    std::optional<int> next(int t, int state, int x) const {
        const Step& step = steps_[t];
        const int prev = bit(state, kPrev), cur = bit(state, kCur);
        const int first = bit(state, kFirst), second = bit(state, kSecond);
        if (step.close) {
            if (step.cycle) {
                if (!allowed(step.last, prev + first)) return std::nullopt;
                if (!allowed(step.first, cur + second)) return std::nullopt;
            } else if (!allowed(step.last, prev)) {
                return std::nullopt;
            }
            return 0;
        }
        if (x == 1 && instance_.occupied(step.vertex)) return std::nullopt;
        const int j = step.index;
        if (j == 0) {
            if (state != 0) return std::nullopt;
            return (x ? kCur : 0) | (step.cycle && x ? kFirst : 0);
        }
        if (!(step.cycle && j == 1) && !allowed(step.previous, (j >= 2 ? prev : 0) + x)) return std::nullopt;
        int result = (cur ? kPrev : 0) | (x ? kCur : 0) | (first ? kFirst : 0) | (second ? kSecond : 0);
        if (step.cycle && j == 1 && x) result |= kSecond;
        return result;
    }

    std::uint64_t advance(int t, const Layer& from, Layer& to) const {
        std::fill(to.begin(), to.end(), 0);
        std::uint64_t work = 0;
        for (int s = 0; s < kStates; ++s) {
            const std::uint64_t* src = &from[static_cast<std::size_t>(s) * words_];
            if (std::all_of(src, src + words_, [](std::uint64_t w) { return w == 0; })) continue;
            for (int x = 0; x <= (steps_[t].close ? 0 : 1); ++x) {
                const auto target = next(t, s, x);
                if (!target) continue;
                ++work;
                std::uint64_t* dst = &to[static_cast<std::size_t>(*target) * words_];
                if (x == 0) {
                    for (std::size_t w = 0; w < words_; ++w) dst[w] |= src[w];
                } else {
                    std::uint64_t carry = 0;
                    for (std::size_t w = 0; w < words_; ++w) {
                        dst[w] |= (src[w] << 1) | carry;
                        carry = src[w] >> 63;
                    }
                    dst[words_ - 1] &= last_mask_;
                }
            }
        }
        return work;
    }

    bool test(const Layer& layer, int state, int count) const {
        if (count < 0) return false;
        return (layer[static_cast<std::size_t>(state) * words_ + count / 64] >> (count % 64)) & 1ULL;
    }

    std::size_t size() const { return steps_.size(); }
    const Step& step(std::size_t t) const { return steps_[t]; }

private:
    const Instance& instance_;
    std::vector<Step> steps_;
    std::size_t words_;
    std::uint64_t last_mask_;
};

std::vector<Step> layout(const Instance& instance) {
    const auto& g = instance.topology();
    const int n = g.vertex_count();
    std::vector<char> seen(n, 0);
    std::vector<Step> steps;
    auto walk = [&](VertexId start, bool cycle) {
        std::vector<VertexId> order;
        VertexId prev = kNone, v = start;
        while (v != kNone && !seen[v]) {
            seen[v] = 1;
            order.push_back(v);
            VertexId next = kNone;
            for (VertexId w : g.neighbors(v))
                if (w != prev && !seen[w]) {
                    next = w;
                    break;
                }
            prev = v;
            v = next;
        }
        const int s = static_cast<int>(order.size());
        for (int j = 0; j < s; ++j) {
            Step step;
            step.cycle = cycle;
            step.index = j;
            step.size = s;
            step.vertex = order[j];
            step.previous = j ? order[j - 1] : kNone;
            steps.push_back(step);
        }
        Step close;
        close.close = true;
        close.cycle = cycle;
        close.size = s;
        close.first = order.front();
        close.last = order.back();
        steps.push_back(close);
    };
    for (VertexId v = 0; v < n; ++v)
        if (!seen[v] && g.degree(v) <= 1) walk(v, false);
    for (VertexId v = 0; v < n; ++v)
        if (!seen[v]) walk(v, true);  // remaining components are cycles of length >= 3
    return steps;
}

} // namespace

SolveResult solve_maxdeg2(const Instance& instance, const Budget&) {
    if (instance.variant() != Variant::anonymous)
        throw PreconditionViolated("dp2 solves anonymous instances only");
    if (instance.topology().max_degree() > 2)
        throw PreconditionViolated("dp2 requires maximum degree at most 2");
    const int refugees = instance.refugee_count();
    if (refugees > static_cast<int>(instance.empty_vertices().size()))
        return SolveResult::unsat("dp2", "fewer empty vertices than refugees");

    Dp dp(instance, layout(instance));
    const std::size_t steps = dp.size();
    const std::size_t stride = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(double(steps))));

    // Forward pass keeping one layer per checkpoint.
    std::vector<Dp::Layer> checkpoints{dp.initial()};
    Dp::Layer current = dp.initial(), scratch = current;
    std::uint64_t work = 0;
    for (std::size_t t = 0; t < steps; ++t) {
        work += dp.advance(static_cast<int>(t), current, scratch);
        std::swap(current, scratch);
        if ((t + 1) % stride == 0) checkpoints.push_back(current);
    }
    if (!dp.test(current, 0, refugees)) {
        auto result = SolveResult::unsat("dp2");
        result.stats.nodes = work;
        return result;
    }

    // Backward pass: rebuild each segment from its checkpoint and trace the choices.
    std::vector<VertexId> chosen;
    int state = 0, count = refugees;
    std::size_t end = steps;
    while (end > 0) {
        const std::size_t begin = ((end - 1) / stride) * stride;
        std::vector<Dp::Layer> segment{checkpoints[begin / stride]};
        for (std::size_t t = begin; t + 1 < end; ++t) {
            Dp::Layer layer(segment.back().size());
            work += dp.advance(static_cast<int>(t), segment.back(), layer);
            segment.push_back(std::move(layer));
        }
        for (std::size_t t = end; t-- > begin;) {
            const Dp::Layer& before = segment[t - begin];
            bool found = false;
            for (int s = 0; s < kStates && !found; ++s)
                for (int x = 0; x <= (dp.step(t).close ? 0 : 1) && !found; ++x) {
                    const auto target = dp.next(static_cast<int>(t), s, x);
                    if (target && *target == state && dp.test(before, s, count - x)) {
                        if (x) chosen.push_back(dp.step(t).vertex);
                        state = s;
                        count -= x;
                        found = true;
                    }
                }
            if (!found) throw Error("dp2 reconstruction failed");
        }
        end = begin;
    }
    std::sort(chosen.begin(), chosen.end());
    auto result = SolveResult::sat(Housing(std::move(chosen)), "dp2");
    result.stats.nodes = work;
    return result;
}

} // namespace refhouse
